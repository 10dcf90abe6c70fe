#include "wiretap/detection.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "wiretap/errors.hpp"
#include "wiretap/linalg.hpp"
#include "wiretap/stats.hpp"

namespace wiretap {

HypothesisPair bob_hypotheses(const ScenarioConfig& cfg, const ChannelSet& ch,
                              const PrecoderPair& pre, AliceAction sensing_action,
                              Priors priors) {
  const Eigen::MatrixXcd Q = alice_covariance(cfg, pre, sensing_action);
  HypothesisPair h;
  h.Z0 = ch.H_ba * Q * ch.H_ba.adjoint() +
         cfg.sigma_b2 * Eigen::MatrixXcd::Identity(cfg.Nb, cfg.Nb);
  h.Z_alt = h.Z0;
  if (cfg.g2 > 0.0 && cfg.Pe > 0.0)
    h.Z_alt += (cfg.g2 * cfg.Pe / cfg.Ne) * (ch.H_be * ch.H_be.adjoint());
  h.priors = priors;
  return h;
}

HypothesisPair eve_hypotheses(const ScenarioConfig& cfg, const ChannelSet& ch,
                              const Eigen::MatrixXcd& basis, Priors priors) {
  const Eigen::MatrixXcd noise =
      cfg.sigma_e2 * Eigen::MatrixXcd::Identity(cfg.Ne, cfg.Ne);
  auto received = [&](AliceAction a) {
    const PrecoderPair pre = split_basis(basis, transmit_params(cfg, a).d);
    const Eigen::MatrixXcd Q = alice_covariance(cfg, pre, a);
    return Eigen::MatrixXcd(cfg.g1 * (ch.H_ea * Q * ch.H_ea.adjoint()) + noise);
  };
  return {received(AliceAction::F), received(AliceAction::A), priors};
}

SensingSample simulate_sensing(const HypothesisPair& hyp, Hypothesis truth, int M,
                               Rng& rng) {
  if (M < 0) throw ConfigError("M: sample count must be non-negative");
  const Eigen::MatrixXcd& Z = truth == Hypothesis::H0 ? hyp.Z0 : hyp.Z_alt;
  const Cholesky llt = factor_hpd(Z, "sensing covariance");
  const Eigen::MatrixXcd W = rng.complex_normal_matrix(Z.rows(), M);
  return {llt.matrixL() * W};
}

double log_likelihood_ratio(const SensingSample& sample, const HypothesisPair& hyp) {
  if (sample.Y.rows() != hyp.Z0.rows() || hyp.Z0.rows() != hyp.Z_alt.rows())
    throw ConfigError("log_likelihood_ratio: dimension mismatch");
  if (sample.M() == 0) return 0.0;
  const Cholesky l0 = factor_hpd(hyp.Z0, "Z0");
  const Cholesky l1 = factor_hpd(hyp.Z_alt, "Z_alt");
  const double quad = trace_inv_gram(l0, sample.Y) - trace_inv_gram(l1, sample.Y);
  return quad - sample.M() * (log_det(l1) - log_det(l0));
}

namespace {

void check_priors(Priors p) {
  if (!(p.pi0 >= 0.0 && p.pi1 >= 0.0 && p.pi0 + p.pi1 > 0.0) ||
      std::abs(p.pi0 + p.pi1 - 1.0) > 1e-9)
    throw ConfigError("priors: must be probabilities summing to one");
}

}  // namespace

Hypothesis mpe_decide(double llr, Priors priors) {
  check_priors(priors);
  if (priors.pi1 == 0.0) return Hypothesis::H0;
  if (priors.pi0 == 0.0) return Hypothesis::H1;
  return llr >= std::log(priors.pi0 / priors.pi1) ? Hypothesis::H1 : Hypothesis::H0;
}

Beliefs posterior(double llr, Priors priors) {
  check_priors(priors);
  Beliefs b;
  if (priors.pi1 == 0.0) {
    b.alpha0 = 1.0;
  } else if (priors.pi0 == 0.0) {
    b.alpha0 = 0.0;
  } else {
    // alpha0 = 1 / (1 + exp(t)) with t = ln(pi1 / pi0) + llr, written to avoid
    // overflow at either tail.
    const double t = std::log(priors.pi1) - std::log(priors.pi0) + llr;
    if (t > 0.0) {
      const double e = std::exp(-t);
      b.alpha0 = e / (1.0 + e);
    } else {
      b.alpha0 = 1.0 / (1.0 + std::exp(t));
    }
  }
  b.alpha1 = 1.0 - b.alpha0;
  return b;
}

Beliefs posterior(const SensingSample& sample, const HypothesisPair& hyp) {
  return posterior(log_likelihood_ratio(sample, hyp), hyp.priors);
}

double gamma_e3_perfect_detection_limit(const PayoffMatrix& R) {
  const EquilibriumResult eq = solve_strategic(R);
  return eq.p_star * std::min(R.FE.mean, R.FJ.mean) +
         (1.0 - eq.p_star) * std::min(R.AE.mean, R.AJ.mean);
}

double gamma_e4_perfect_detection_limit(const PayoffMatrix& R) {
  const EquilibriumResult eq = solve_strategic(R);
  return eq.q_star * std::max(R.FE.mean, R.AE.mean) +
         (1.0 - eq.q_star) * std::max(R.FJ.mean, R.AJ.mean);
}

namespace {

double played_rate(const ChannelSet& ch, const Eigen::MatrixXcd& basis,
                   const ScenarioConfig& cfg, ActionPair ap, ClipMode clip) {
  const RateTerms t = rate_terms(ch, basis, cfg, ap);
  if (ap.eve == EveAction::J) return t.bob;
  return clip == ClipMode::PerDraw ? std::max(0.0, t.difference()) : t.difference();
}

// Under ClipMode::Mean the per-trial eavesdropping values are unclipped, and the
// mixture of cells is averaged as is.
ImperfectPlayResult finish(const std::vector<double>& payoff,
                           const std::vector<double>& errors) {
  ImperfectPlayResult out;
  const SampleSummary p = summarize(payoff);
  out.payoff = {p.mean, p.std_err, static_cast<int>(payoff.size())};
  const SampleSummary e = summarize(errors);
  out.detection_error = e.mean;
  out.detection_error_std_err = e.std_err;
  out.trials = static_cast<int>(payoff.size());
  return out;
}

void check_play_args(const ScenarioConfig& cfg, int M, int trials) {
  cfg.validate();
  if (M < 0) throw ConfigError("M: sample count must be non-negative");
  if (trials < 1) throw ConfigError("trials: must be at least 1");
}

}  // namespace

ImperfectPlayResult play_gamma_e3(const ScenarioConfig& cfg, const PayoffMatrix& R,
                                  int M, int trials, std::uint64_t seed,
                                  const ImperfectPlayOptions& opts) {
  check_play_args(cfg, M, trials);
  const ScenarioConfig a_cfg = with_split(cfg, R.rho_star, R.d_star);
  const EquilibriumResult eq = solve_strategic(R);
  const Priors priors{eq.p_star, 1.0 - eq.p_star};

  std::vector<double> payoff(static_cast<std::size_t>(trials));
  std::vector<double> errors(payoff.size());
  for (std::size_t i = 0; i < payoff.size(); ++i) {
    Rng rng(seed, i);
    const ChannelSet ch = sample_channels(a_cfg, rng);
    const Eigen::MatrixXcd basis = right_singular_basis(ch.H_ba);
    const AliceAction alice = rng.bernoulli(eq.p_star) ? AliceAction::F : AliceAction::A;
    const Hypothesis truth = alice == AliceAction::F ? Hypothesis::H0 : Hypothesis::H1;

    double llr = 0.0;
    if (M > 0) {
      const HypothesisPair hyp = eve_hypotheses(a_cfg, ch, basis, priors);
      llr = log_likelihood_ratio(simulate_sensing(hyp, truth, M, rng), hyp);
    }
    const EveAction eve = best_response_eve(posterior(llr, priors).alpha0, R);
    payoff[i] = played_rate(ch, basis, a_cfg, {alice, eve}, opts.clip);
    errors[i] = mpe_decide(llr, priors) != truth ? 1.0 : 0.0;
  }
  return finish(payoff, errors);
}

ImperfectPlayResult play_gamma_e4(const ScenarioConfig& cfg, const PayoffMatrix& R,
                                  int M, int trials, std::uint64_t seed,
                                  const ImperfectPlayOptions& opts) {
  check_play_args(cfg, M, trials);
  const ScenarioConfig a_cfg = with_split(cfg, R.rho_star, R.d_star);
  const EquilibriumResult eq = solve_strategic(R);
  const Priors priors{eq.q_star, 1.0 - eq.q_star};

  std::vector<double> payoff(static_cast<std::size_t>(trials));
  std::vector<double> errors(payoff.size());
  for (std::size_t i = 0; i < payoff.size(); ++i) {
    Rng rng(seed, i);
    const ChannelSet ch = sample_channels(a_cfg, rng);
    const Eigen::MatrixXcd basis = right_singular_basis(ch.H_ba);
    const EveAction eve = rng.bernoulli(eq.q_star) ? EveAction::E : EveAction::J;
    const Hypothesis truth = eve == EveAction::E ? Hypothesis::H0 : Hypothesis::H1;

    AliceAction sensing = AliceAction::F;
    switch (opts.sensing_transmit) {
      case SensingTransmit::MaximinDraw:
        sensing = rng.bernoulli(eq.p_star) ? AliceAction::F : AliceAction::A;
        break;
      case SensingTransmit::Full: sensing = AliceAction::F; break;
      case SensingTransmit::Artificial: sensing = AliceAction::A; break;
    }

    double llr = 0.0;
    if (M > 0) {
      const PrecoderPair pre = split_basis(basis, transmit_params(a_cfg, sensing).d);
      const HypothesisPair hyp = bob_hypotheses(a_cfg, ch, pre, sensing, priors);
      llr = log_likelihood_ratio(simulate_sensing(hyp, truth, M, rng), hyp);
    }
    const AliceAction alice = best_response_alice(posterior(llr, priors).alpha0, R);
    payoff[i] = played_rate(ch, basis, a_cfg, {alice, eve}, opts.clip);
    errors[i] = mpe_decide(llr, priors) != truth ? 1.0 : 0.0;
  }
  return finish(payoff, errors);
}

}  // namespace wiretap
