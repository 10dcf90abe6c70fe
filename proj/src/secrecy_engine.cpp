#include "wiretap/secrecy_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>

#include "wiretap/errors.hpp"
#include "wiretap/linalg.hpp"
#include "wiretap/stats.hpp"

namespace wiretap {

namespace {

constexpr double kLn2 = std::numbers::ln2;

bool is_zero(const Eigen::MatrixXcd& S) { return S.cwiseAbs().maxCoeff() == 0.0; }

// log2 det(K + H T (p T^H H^H)) - log2 det(K) for the data part only, with the
// data covariance p T T^H.
double data_rate(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& T,
                 double power_per_stream, const Cholesky& K_llt,
                 const Eigen::MatrixXcd& K) {
  if (power_per_stream <= 0.0) return 0.0;
  const Eigen::MatrixXcd G = H * T;
  const Eigen::MatrixXcd total = K + power_per_stream * (G * G.adjoint());
  const double r = (log_det(factor_hpd(total, "signal-plus-noise covariance")) -
                    log_det(K_llt)) / kLn2;
  return std::max(r, 0.0);
}

void check_trials(int trials) {
  if (trials < 1) throw ConfigError("trials: must be at least 1");
}

}  // namespace

double rate_term(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& S,
                 const Eigen::MatrixXcd& K) {
  if (H.rows() != K.rows() || H.cols() != S.rows() || S.rows() != S.cols() ||
      K.rows() != K.cols())
    throw ConfigError("rate_term: non-conformable dimensions");
  const Cholesky K_llt = factor_hpd(K, "interference-plus-noise covariance");
  if (S.size() == 0 || is_zero(S)) return 0.0;
  const Eigen::MatrixXcd total = K + H * S * H.adjoint();
  const double r =
      (log_det(factor_hpd(total, "signal-plus-noise covariance")) - log_det(K_llt)) /
      kLn2;
  return std::max(r, 0.0);
}

ScenarioConfig with_split(ScenarioConfig cfg, double rho, int d) {
  cfg.rho = rho;
  cfg.d = d;
  return cfg;
}

RateTerms rate_terms(const ChannelSet& ch, const Eigen::MatrixXcd& basis,
                     const ScenarioConfig& cfg, ActionPair actions) {
  const TransmitParams tp = transmit_params(cfg, actions.alice);
  const PrecoderPair pre = split_basis(basis, tp.d);
  const double per_stream = tp.rho * cfg.Pa / tp.d;

  RateTerms out;
  const Eigen::MatrixXcd K_b = bob_noise_cov(cfg, ch, actions.eve);
  out.bob = data_rate(ch.H_ba, pre.T, per_stream, factor_hpd(K_b, "K_b"), K_b);

  if (actions.eve == EveAction::E && cfg.g1 > 0.0) {
    const Eigen::MatrixXcd K_e = eve_noise_cov(cfg, ch, pre, actions.alice);
    out.eve = data_rate(std::sqrt(cfg.g1) * ch.H_ea, pre.T, per_stream,
                        factor_hpd(K_e, "K_e"), K_e);
  }
  return out;
}

RateTerms rate_terms(const ChannelSet& ch, const ScenarioConfig& cfg,
                     ActionPair actions) {
  return rate_terms(ch, right_singular_basis(ch.H_ba), cfg, actions);
}

double instantaneous_secrecy_rate(const ChannelSet& ch, const ScenarioConfig& cfg,
                                  ActionPair actions, ClipMode clip) {
  const RateTerms t = rate_terms(ch, cfg, actions);
  if (actions.eve == EveAction::J) return t.bob;
  return clip == ClipMode::PerDraw ? std::max(0.0, t.difference()) : t.difference();
}

namespace {

RateEstimate to_estimate(std::span<const double> xs, bool clip_mean) {
  const SampleSummary s = summarize(xs);
  RateEstimate out{s.mean, s.std_err, static_cast<int>(xs.size())};
  if (clip_mean) out.mean = std::max(0.0, out.mean);
  return out;
}

double secrecy_value(const RateTerms& t, EveAction eve, ClipMode clip) {
  if (eve == EveAction::J) return t.bob;
  return clip == ClipMode::PerDraw ? std::max(0.0, t.difference()) : t.difference();
}

}  // namespace

RateEstimate ergodic_rate(const ScenarioConfig& cfg, ActionPair actions,
                          int trials, std::uint64_t seed, ClipMode clip) {
  cfg.validate();
  check_trials(trials);
  std::vector<double> xs(static_cast<std::size_t>(trials));
  for (int i = 0; i < trials; ++i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    const ChannelSet ch = sample_channels(cfg, rng);
    xs[i] = secrecy_value(rate_terms(ch, cfg, actions), actions.eve, clip);
  }
  return to_estimate(xs, clip == ClipMode::Mean && actions.eve == EveAction::E);
}

PowerSplitSearch PowerSplitSearch::defaults(const ScenarioConfig& cfg) {
  PowerSplitSearch s;
  for (int k = 1; k <= 20; ++k) s.rho_grid.push_back(0.05 * k);
  s.rho_grid.back() = 1.0;
  s.d_candidates = {cfg.d};
  return s;
}

namespace {

struct Candidate {
  double rho;
  int d;
};

std::vector<Candidate> enumerate_candidates(const ScenarioConfig& cfg,
                                            const PowerSplitSearch& search) {
  if (search.rho_grid.empty()) throw ConfigError("rho_grid: must not be empty");
  if (search.d_candidates.empty()) throw ConfigError("d_candidates: must not be empty");
  std::vector<Candidate> out;
  for (int d : search.d_candidates) {
    if (d < 1 || d > cfg.rank())
      throw ConfigError("d_candidates: " + std::to_string(d) +
                        " outside [1, min(Na, Nb)]");
    for (double rho : search.rho_grid) {
      if (!(rho > 0.0 && rho <= 1.0))
        throw ConfigError("rho_grid: values must lie in (0, 1]");
      // No room for artificial interference.
      if (d == cfg.Na && rho < 1.0) continue;
      out.push_back({rho, d});
    }
  }
  if (search.include_full_power) {
    const Candidate full{1.0, cfg.rank()};
    const bool present = std::any_of(out.begin(), out.end(), [&](const Candidate& c) {
      return c.rho == full.rho && c.d == full.d;
    });
    if (!present) out.push_back(full);
  }
  if (out.empty()) throw ConfigError("power split grid has no feasible points");
  return out;
}

bool preferred(const Candidate& a, double mean_a, const Candidate& b, double mean_b) {
  if (mean_a != mean_b) return mean_a > mean_b;
  if (a.rho != b.rho) return a.rho > b.rho;
  return a.d < b.d;
}

}  // namespace

PowerSplit optimize_power_split(const ScenarioConfig& cfg,
                                const PowerSplitSearch& search, int trials,
                                std::uint64_t seed) {
  cfg.validate();
  check_trials(trials);
  const std::vector<Candidate> cands = enumerate_candidates(cfg, search);
  const std::size_t n = static_cast<std::size_t>(trials);
  std::vector<std::vector<double>> samples(cands.size(), std::vector<double>(n));

  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(seed, i);
    const ChannelSet ch = sample_channels(cfg, rng);
    const Eigen::MatrixXcd basis = right_singular_basis(ch.H_ba);
    for (std::size_t c = 0; c < cands.size(); ++c) {
      const ScenarioConfig point = with_split(cfg, cands[c].rho, cands[c].d);
      const RateTerms t = rate_terms(ch, basis, point, {AliceAction::A, EveAction::E});
      samples[c][i] = secrecy_value(t, EveAction::E, search.clip);
    }
  }

  const bool clip_mean = search.clip == ClipMode::Mean;
  std::size_t best = 0;
  RateEstimate best_est = to_estimate(samples[0], clip_mean);
  for (std::size_t c = 1; c < cands.size(); ++c) {
    const RateEstimate est = to_estimate(samples[c], clip_mean);
    if (preferred(cands[c], est.mean, cands[best], best_est.mean)) {
      best = c;
      best_est = est;
    }
  }
  return {cands[best].rho, cands[best].d, best_est};
}

PayoffMatrix payoff_matrix(const ScenarioConfig& cfg, int trials,
                           std::uint64_t seed, const PowerSplitSearch& search) {
  const PowerSplit split = optimize_power_split(cfg, search, trials, seed);
  const ScenarioConfig a_cfg = with_split(cfg, split.rho_star, split.d_star);
  const std::size_t n = static_cast<std::size_t>(trials);

  constexpr ActionPair kCells[4] = {{AliceAction::F, EveAction::E},
                                    {AliceAction::F, EveAction::J},
                                    {AliceAction::A, EveAction::E},
                                    {AliceAction::A, EveAction::J}};
  std::array<std::vector<double>, 4> xs;
  for (auto& v : xs) v.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(seed, i);
    const ChannelSet ch = sample_channels(cfg, rng);
    const Eigen::MatrixXcd basis = right_singular_basis(ch.H_ba);
    for (int c = 0; c < 4; ++c) {
      const RateTerms t = rate_terms(ch, basis, a_cfg, kCells[c]);
      xs[c][i] = secrecy_value(t, kCells[c].eve, search.clip);
    }
  }

  PayoffMatrix R;
  const bool clip_mean = search.clip == ClipMode::Mean;
  R.FE = to_estimate(xs[0], clip_mean);
  R.FJ = to_estimate(xs[1], false);
  R.AE = to_estimate(xs[2], clip_mean);
  R.AJ = to_estimate(xs[3], false);
  R.rho_star = split.rho_star;
  R.d_star = split.d_star;
  const double dn = static_cast<double>(n);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) R.cov[a][b] = covariance_of(xs[a], xs[b]) / dn;
  return R;
}

PayoffMatrix payoff_matrix(const ScenarioConfig& cfg, int trials, std::uint64_t seed) {
  return payoff_matrix(cfg, trials, seed, PowerSplitSearch::defaults(cfg));
}

}  // namespace wiretap
