#pragma once

#include <array>

#include "wiretap/channel_model.hpp"

namespace wiretap {

// Ergodic rate in bits per channel use.
struct RateEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  int trials = 0;
};

// The 2x2 strategic-form table. Alice (rows F, A) maximizes; Eve (columns
// E, J) minimizes.
struct PayoffMatrix {
  RateEstimate FE, FJ, AE, AJ;
  double rho_star = 1.0;  // power split used on the A row
  int d_star = 1;         // streams used on the A row

  // Covariance of the four cell means in the order FE, FJ, AE, AJ. Cells are
  // estimated on common channel draws, so off-diagonal terms are nonzero.
  std::array<std::array<double, 4>, 4> cov{};

  // Payoffs known exactly, e.g. hand-built games.
  static PayoffMatrix exact(double fe, double fj, double ae, double aj);

  const RateEstimate& cell(AliceAction a, EveAction e) const;
  double value(AliceAction a, EveAction e) const { return cell(a, e).mean; }

  // Standard error of (cell x) - (cell y) using the cell covariance.
  double diff_std_err(ActionPair x, ActionPair y) const;
};

int cell_index(ActionPair ap);

}  // namespace wiretap
