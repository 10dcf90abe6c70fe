#pragma once

#include <cmath>
#include <span>

namespace wiretap {

// Neumaier-compensated running sum. Reduction order is the caller's index
// order, which keeps results independent of how trials were scheduled.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct SampleSummary {
  double mean = 0.0;
  double std_err = 0.0;
  double variance = 0.0;  // unbiased sample variance (0 for n < 2)
};

inline double mean_of(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return xs.empty() ? 0.0 : s.value() / static_cast<double>(xs.size());
}

// Unbiased sample covariance of two equally long series.
inline double covariance_of(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  if (n < 2) return 0.0;
  const double ma = mean_of(a);
  const double mb = mean_of(b);
  CompensatedSum s;
  for (std::size_t i = 0; i < n; ++i) s.add((a[i] - ma) * (b[i] - mb));
  return s.value() / static_cast<double>(n - 1);
}

inline SampleSummary summarize(std::span<const double> xs) {
  SampleSummary out;
  out.mean = mean_of(xs);
  if (xs.size() >= 2) {
    out.variance = covariance_of(xs, xs);
    out.std_err = std::sqrt(out.variance / static_cast<double>(xs.size()));
  }
  return out;
}

}  // namespace wiretap
