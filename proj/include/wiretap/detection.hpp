#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "wiretap/channel_model.hpp"
#include "wiretap/game_solver.hpp"
#include "wiretap/payoff.hpp"
#include "wiretap/random.hpp"
#include "wiretap/secrecy_engine.hpp"

namespace wiretap {

enum class Hypothesis { H0, H1 };

struct Priors {
  double pi0 = 0.5;
  double pi1 = 0.5;
};

// Zero-mean complex Gaussian models for the M sensing snapshots. `Z_alt` is the
// full covariance under H1 (for Bob's test this is Z0 + Z1).
struct HypothesisPair {
  Eigen::MatrixXcd Z0;
  Eigen::MatrixXcd Z_alt;
  Priors priors;
};

struct Beliefs {
  double alpha0 = 0.5;  // Pr(H0 | Y)
  double alpha1 = 0.5;
};

// N x M matrix of snapshots; columns are i.i.d. and the channel is fixed.
struct SensingSample {
  Eigen::MatrixXcd Y;
  int M() const { return static_cast<int>(Y.cols()); }
};

// Bob's test on Eve's move. H0: Eve listens, Y ~ CN(0, H_ba Q_a H_ba^H + s_b I).
// H1: Eve jams, adding g2 (Pe / Ne) H_be H_be^H. `pre` and `sensing_action`
// describe what Alice transmits while Bob senses.
HypothesisPair bob_hypotheses(const ScenarioConfig& cfg, const ChannelSet& ch,
                              const PrecoderPair& pre, AliceAction sensing_action,
                              Priors priors);

// Eve's test on Alice's move. H0: Alice plays F, H1: Alice plays A, each with
// the covariance Eve actually receives under that strategy. `basis` is
// right_singular_basis(ch.H_ba); cfg.rho and cfg.d define the A strategy.
HypothesisPair eve_hypotheses(const ScenarioConfig& cfg, const ChannelSet& ch,
                              const Eigen::MatrixXcd& basis, Priors priors);

SensingSample simulate_sensing(const HypothesisPair& hyp, Hypothesis truth, int M,
                               Rng& rng);

// ln f(Y | H1) - ln f(Y | H0)
//   = Tr((Z0^{-1} - Z_alt^{-1}) Y Y^H) - M (ln det Z_alt - ln det Z0).
double log_likelihood_ratio(const SensingSample& sample, const HypothesisPair& hyp);

// Minimum-probability-of-error decision: H1 iff pi1 f(Y|H1) >= pi0 f(Y|H0),
// i.e. llr >= ln(pi0 / pi1). Ties go to H1.
Hypothesis mpe_decide(double llr, Priors priors);

Beliefs posterior(double llr, Priors priors);
Beliefs posterior(const SensingSample& sample, const HypothesisPair& hyp);

// Who transmits what while Bob senses in the Eve-first game.
enum class SensingTransmit {
  MaximinDraw,  // an independent draw from Alice's maximin mixture
  Full,
  Artificial,
};

struct ImperfectPlayOptions {
  ClipMode clip = ClipMode::PerDraw;
  SensingTransmit sensing_transmit = SensingTransmit::MaximinDraw;
};

struct ImperfectPlayResult {
  RateEstimate payoff;          // Alice's ergodic payoff
  double detection_error = 0.0; // MPE decision error rate of the second mover
  double detection_error_std_err = 0.0;
  int trials = 0;
};

// Alice moves first with her maximin mixture; Eve senses M snapshots, forms a
// posterior and best-responds. The A row uses R.rho_star and R.d_star.
ImperfectPlayResult play_gamma_e3(const ScenarioConfig& cfg, const PayoffMatrix& R,
                                  int M, int trials, std::uint64_t seed,
                                  const ImperfectPlayOptions& opts = {});

// Eve moves first with her minimax mixture; Bob senses M snapshots and feeds
// the posterior back to Alice, who best-responds.
ImperfectPlayResult play_gamma_e4(const ScenarioConfig& cfg, const PayoffMatrix& R,
                                  int M, int trials, std::uint64_t seed,
                                  const ImperfectPlayOptions& opts = {});

// Payoffs in the limit of perfect detection while the first mover keeps its
// equilibrium mixture.
double gamma_e3_perfect_detection_limit(const PayoffMatrix& R);
double gamma_e4_perfect_detection_limit(const PayoffMatrix& R);

}  // namespace wiretap
