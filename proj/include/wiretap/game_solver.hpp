#pragma once

#include <optional>
#include <string_view>

#include "wiretap/payoff.hpp"

namespace wiretap {

enum class EquilibriumKind { PureAE, PureFJ, Mixed };

std::string_view to_string(EquilibriumKind k);

// Equilibrium of the simultaneous-move game. p_star is the probability that
// Alice plays F, q_star the probability that Eve plays E.
struct EquilibriumResult {
  EquilibriumKind kind = EquilibriumKind::Mixed;
  double p_star = 0.0;
  double q_star = 0.0;
  double value = 0.0;
  // Both pure conditions hold at once (payoff ties); PureAE is reported.
  bool degenerate = false;
  // A pure-NE condition is within three standard errors of flipping, so the
  // classification is not statistically settled.
  bool near_boundary = false;
};

// Throws InconsistentPayoffError when R_FE <= R_AE or R_AJ <= R_FJ fails by
// more than three standard errors of the cell difference.
void check_payoff_consistency(const PayoffMatrix& R);

// PureAE when R_AE <= R_AJ, PureFJ when R_FJ <= R_FE, nothing otherwise.
std::optional<EquilibriumResult> pure_ne(const PayoffMatrix& R);

// Closed-form mixed equilibrium. Refuses games that have a pure equilibrium.
EquilibriumResult mixed_ne(const PayoffMatrix& R);

EquilibriumResult solve_strategic(const PayoffMatrix& R);

// Alice's expected payoff when she plays F with probability p and Eve plays E
// with probability q.
double expected_payoff(const PayoffMatrix& R, double p, double q);

// Brute-force grid search over (p, q). `lower` is max_p min_q, `upper` is
// min_q max_p; (p, q) are the grid maximin and minimax points.
struct SaddleGrid {
  double p = 0.0;
  double q = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double value() const { return lower; }
};

SaddleGrid saddle_oracle(const PayoffMatrix& R, double grid_step);

enum class Player { Alice, Eve };

// Subgame-perfect outcome of a perfect-information sequential game. `path` is
// the realized pair of actions.
struct SPEOutcome {
  Player first_mover = Player::Alice;
  ActionPair path{AliceAction::F, EveAction::E};
  double value = 0.0;
};

SPEOutcome spe_alice_first(const PayoffMatrix& R);
SPEOutcome spe_eve_first(const PayoffMatrix& R);

// Normalized discounted payoff (1 - delta) sum delta^k R[k] when both players
// repeat the stage equilibrium. A finite horizon renormalizes by
// 1 - delta^horizon so the weights still sum to one.
double repeated_value(const PayoffMatrix& R, double delta,
                      std::optional<int> horizon = std::nullopt);

// Belief thresholds at which the second mover is indifferent.
double alice_threshold(const PayoffMatrix& R);
double eve_threshold(const PayoffMatrix& R);

// alpha0 is Alice's posterior that Eve eavesdropped.
AliceAction best_response_alice(double alpha0, const PayoffMatrix& R);

// alpha0 is Eve's posterior that Alice transmitted at full power.
EveAction best_response_eve(double alpha0, const PayoffMatrix& R);

}  // namespace wiretap
