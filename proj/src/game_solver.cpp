#include "wiretap/game_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "wiretap/errors.hpp"

namespace wiretap {

std::string_view to_string(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::PureAE: return "PureAE";
    case EquilibriumKind::PureFJ: return "PureFJ";
    case EquilibriumKind::Mixed: return "Mixed";
  }
  return "?";
}

namespace {

constexpr ActionPair kFE{AliceAction::F, EveAction::E};
constexpr ActionPair kFJ{AliceAction::F, EveAction::J};
constexpr ActionPair kAE{AliceAction::A, EveAction::E};
constexpr ActionPair kAJ{AliceAction::A, EveAction::J};

double scale(const PayoffMatrix& R) {
  return std::max({std::abs(R.FE.mean), std::abs(R.FJ.mean), std::abs(R.AE.mean),
                   std::abs(R.AJ.mean), 1.0});
}

void check_finite(const PayoffMatrix& R) {
  for (double x : {R.FE.mean, R.FJ.mean, R.AE.mean, R.AJ.mean})
    if (!std::isfinite(x)) throw NumericalError("payoff matrix has non-finite cells");
}

// Denominator shared by the belief thresholds; positive whenever P1/P2 hold
// and at least one of them is strict.
double belief_denominator(const PayoffMatrix& R) {
  return R.AE.mean - R.FE.mean + R.FJ.mean - R.AJ.mean;
}

}  // namespace

void check_payoff_consistency(const PayoffMatrix& R) {
  check_finite(R);
  const double slack = 1e-12 * scale(R);
  const double p1_tol = 3.0 * R.diff_std_err(kFE, kAE) + slack;
  if (R.FE.mean - R.AE.mean > p1_tol)
    throw InconsistentPayoffError("R_FE exceeds R_AE beyond tolerance (P1)");
  const double p2_tol = 3.0 * R.diff_std_err(kAJ, kFJ) + slack;
  if (R.AJ.mean - R.FJ.mean > p2_tol)
    throw InconsistentPayoffError("R_AJ exceeds R_FJ beyond tolerance (P2)");
}

std::optional<EquilibriumResult> pure_ne(const PayoffMatrix& R) {
  check_payoff_consistency(R);
  const bool ae = R.AE.mean <= R.AJ.mean;
  const bool fj = R.FJ.mean <= R.FE.mean;
  const bool near = std::abs(R.AE.mean - R.AJ.mean) <= 3.0 * R.diff_std_err(kAE, kAJ) ||
                    std::abs(R.FJ.mean - R.FE.mean) <= 3.0 * R.diff_std_err(kFJ, kFE);
  EquilibriumResult out;
  out.near_boundary = near && (R.diff_std_err(kAE, kAJ) > 0.0 || R.diff_std_err(kFJ, kFE) > 0.0);
  if (ae) {
    out.kind = EquilibriumKind::PureAE;
    out.p_star = 0.0;
    out.q_star = 1.0;
    out.value = R.AE.mean;
    out.degenerate = fj;
    return out;
  }
  if (fj) {
    out.kind = EquilibriumKind::PureFJ;
    out.p_star = 1.0;
    out.q_star = 0.0;
    out.value = R.FJ.mean;
    return out;
  }
  return std::nullopt;
}

EquilibriumResult mixed_ne(const PayoffMatrix& R) {
  if (pure_ne(R)) throw ConfigError("mixed_ne: game has a pure-strategy equilibrium");
  const double fe = R.FE.mean, fj = R.FJ.mean, ae = R.AE.mean, aj = R.AJ.mean;
  const double D = fe + aj - fj - ae;
  if (std::abs(D) <= 1e-12 * scale(R))
    throw DegenerateGameError("mixed_ne: payoff denominator vanishes");
  EquilibriumResult out;
  out.kind = EquilibriumKind::Mixed;
  out.p_star = (aj - ae) / D;
  out.q_star = (aj - fj) / D;
  out.value = (fe * aj - fj * ae) / D;
  const double se = std::max(R.diff_std_err(kAE, kAJ), R.diff_std_err(kFJ, kFE));
  out.near_boundary = se > 0.0 && (std::abs(ae - aj) <= 3.0 * R.diff_std_err(kAE, kAJ) ||
                                   std::abs(fj - fe) <= 3.0 * R.diff_std_err(kFJ, kFE));
  return out;
}

EquilibriumResult solve_strategic(const PayoffMatrix& R) {
  if (auto pure = pure_ne(R)) return *pure;
  return mixed_ne(R);
}

double expected_payoff(const PayoffMatrix& R, double p, double q) {
  return p * (q * R.FE.mean + (1.0 - q) * R.FJ.mean) +
         (1.0 - p) * (q * R.AE.mean + (1.0 - q) * R.AJ.mean);
}

SaddleGrid saddle_oracle(const PayoffMatrix& R, double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 0.5))
    throw ConfigError("grid_step: must lie in (0, 0.5]");
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double x = i * grid_step;
    if (x >= 1.0 - 1e-12) break;
    grid.push_back(x);
  }
  grid.push_back(1.0);

  const std::size_t n = grid.size();
  std::vector<double> col_max(n, -std::numeric_limits<double>::infinity());
  SaddleGrid out;
  out.lower = -std::numeric_limits<double>::infinity();
  for (double p : grid) {
    double row_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      const double f = expected_payoff(R, p, grid[j]);
      row_min = std::min(row_min, f);
      col_max[j] = std::max(col_max[j], f);
    }
    if (row_min > out.lower) {
      out.lower = row_min;
      out.p = p;
    }
  }
  out.upper = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    if (col_max[j] < out.upper) {
      out.upper = col_max[j];
      out.q = grid[j];
    }
  }
  return out;
}

SPEOutcome spe_alice_first(const PayoffMatrix& R) {
  check_payoff_consistency(R);
  // Eve's reply in each subgame; ties go to E.
  const EveAction after_f = R.FE.mean <= R.FJ.mean ? EveAction::E : EveAction::J;
  const EveAction after_a = R.AE.mean <= R.AJ.mean ? EveAction::E : EveAction::J;
  const double v_f = R.value(AliceAction::F, after_f);
  const double v_a = R.value(AliceAction::A, after_a);
  SPEOutcome out;
  out.first_mover = Player::Alice;
  if (v_a >= v_f)
    out.path = {AliceAction::A, after_a};
  else
    out.path = {AliceAction::F, after_f};
  out.value = R.value(out.path.alice, out.path.eve);
  return out;
}

SPEOutcome spe_eve_first(const PayoffMatrix& R) {
  check_payoff_consistency(R);
  // Alice's reply in each subgame; ties go to A after E and F after J.
  const AliceAction after_e = R.AE.mean >= R.FE.mean ? AliceAction::A : AliceAction::F;
  const AliceAction after_j = R.FJ.mean >= R.AJ.mean ? AliceAction::F : AliceAction::A;
  const double v_e = R.value(after_e, EveAction::E);
  const double v_j = R.value(after_j, EveAction::J);
  SPEOutcome out;
  out.first_mover = Player::Eve;
  if (v_e <= v_j)
    out.path = {after_e, EveAction::E};
  else
    out.path = {after_j, EveAction::J};
  out.value = R.value(out.path.alice, out.path.eve);
  return out;
}

double repeated_value(const PayoffMatrix& R, double delta, std::optional<int> horizon) {
  if (!(delta >= 0.0 && delta < 1.0)) throw ConfigError("delta: must lie in [0, 1)");
  if (horizon && *horizon < 1) throw ConfigError("horizon: must be at least 1");
  const double v = solve_strategic(R).value;
  if (!horizon) return v;
  double weight = 0.0, acc = 0.0, dk = 1.0;
  for (int k = 0; k < *horizon; ++k) {
    weight += (1.0 - delta) * dk;
    acc += (1.0 - delta) * dk * v;
    dk *= delta;
  }
  return acc / weight;
}

double alice_threshold(const PayoffMatrix& R) {
  const double den = belief_denominator(R);
  if (den <= 0.0) return 1.0;  // indifferent everywhere; F by the tie rule
  return (R.FJ.mean - R.AJ.mean) / den;
}

double eve_threshold(const PayoffMatrix& R) {
  const double den = belief_denominator(R);
  if (den <= 0.0) return 0.0;  // indifferent everywhere; E by the tie rule
  return (R.AE.mean - R.AJ.mean) / den;
}

AliceAction best_response_alice(double alpha0, const PayoffMatrix& R) {
  if (!(alpha0 >= 0.0 && alpha0 <= 1.0)) throw ConfigError("alpha0: must lie in [0, 1]");
  return alpha0 <= alice_threshold(R) ? AliceAction::F : AliceAction::A;
}

EveAction best_response_eve(double alpha0, const PayoffMatrix& R) {
  if (!(alpha0 >= 0.0 && alpha0 <= 1.0)) throw ConfigError("alpha0: must lie in [0, 1]");
  // Eavesdropping costs Alice (1 - alpha0)(R_AE - R_AJ) - alpha0 (R_FJ - R_FE)
  // relative to jamming; Eve listens once her belief in F reaches the threshold.
  return alpha0 >= eve_threshold(R) ? EveAction::E : EveAction::J;
}

}  // namespace wiretap
