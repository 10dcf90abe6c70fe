#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "wiretap/channel_model.hpp"
#include "wiretap/payoff.hpp"

namespace wiretap {

// Where the secrecy difference is clipped at zero on eavesdropping cells.
enum class ClipMode {
  PerDraw,  // E[max(0, I_b - I_e)]
  Mean,     // max(0, E[I_b - I_e])
};

// log2 det(I + H S H^H K^{-1}), computed as log2 det(K + H S H^H) - log2 det(K).
double rate_term(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& S,
                 const Eigen::MatrixXcd& K);

// Bob's and Eve's mutual-information terms for one channel draw. Eve's term is
// zero when she jams.
struct RateTerms {
  double bob = 0.0;
  double eve = 0.0;
  double difference() const { return bob - eve; }
};

RateTerms rate_terms(const ChannelSet& ch, const ScenarioConfig& cfg,
                     ActionPair actions);

// Same as rate_terms with a precomputed right_singular_basis(ch.H_ba).
RateTerms rate_terms(const ChannelSet& ch, const Eigen::MatrixXcd& basis,
                     const ScenarioConfig& cfg, ActionPair actions);

// Per-draw secrecy rate. Under ClipMode::Mean the eavesdropping difference is
// returned unclipped so the caller can clip the average.
double instantaneous_secrecy_rate(const ChannelSet& ch, const ScenarioConfig& cfg,
                                  ActionPair actions,
                                  ClipMode clip = ClipMode::PerDraw);

// Trial i draws its channels from Rng(seed, i), so equal seeds give common
// random numbers across strategies and grid points.
RateEstimate ergodic_rate(const ScenarioConfig& cfg, ActionPair actions,
                          int trials, std::uint64_t seed,
                          ClipMode clip = ClipMode::PerDraw);

struct PowerSplitSearch {
  std::vector<double> rho_grid;
  std::vector<int> d_candidates;
  // Adds (rho, d) = (1, min(Na, Nb)), the full-power point, to the search so
  // the A row can never do worse than F against an eavesdropper.
  bool include_full_power = true;
  ClipMode clip = ClipMode::PerDraw;

  // rho in {0.05, 0.10, ..., 1.00} with d fixed at cfg.d.
  static PowerSplitSearch defaults(const ScenarioConfig& cfg);
};

struct PowerSplit {
  double rho_star = 1.0;
  int d_star = 1;
  RateEstimate rate_AE;
};

// Grid maximizer of the (A, E) ergodic rate over common channel draws. Ties go
// to larger rho, then smaller d.
PowerSplit optimize_power_split(const ScenarioConfig& cfg,
                                const PowerSplitSearch& search, int trials,
                                std::uint64_t seed);

// All four cells on common channel draws; the A row uses the optimized split.
PayoffMatrix payoff_matrix(const ScenarioConfig& cfg, int trials,
                           std::uint64_t seed, const PowerSplitSearch& search);

PayoffMatrix payoff_matrix(const ScenarioConfig& cfg, int trials,
                           std::uint64_t seed);

// Scenario with the A-row parameters replaced by the optimized split.
ScenarioConfig with_split(ScenarioConfig cfg, double rho, int d);

}  // namespace wiretap
