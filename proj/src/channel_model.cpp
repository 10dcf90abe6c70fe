#include "wiretap/channel_model.hpp"

#include <cmath>
#include <string>

#include "wiretap/errors.hpp"

namespace wiretap {

std::string_view to_string(AliceAction a) { return a == AliceAction::F ? "F" : "A"; }
std::string_view to_string(EveAction e) { return e == EveAction::E ? "E" : "J"; }

namespace {

void require(bool ok, const char* field, const std::string& why) {
  if (!ok) throw ConfigError(std::string(field) + ": " + why);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

void ScenarioConfig::validate() const {
  require(Na >= 1, "Na", "antenna count must be positive");
  require(Nb >= 1, "Nb", "antenna count must be positive");
  require(Ne >= 1, "Ne", "antenna count must be positive");
  require(finite_nonneg(Pa), "Pa", "power must be finite and >= 0");
  require(finite_nonneg(Pe), "Pe", "power must be finite and >= 0");
  require(finite_nonneg(g1), "g1", "gain must be finite and >= 0");
  require(finite_nonneg(g2), "g2", "gain must be finite and >= 0");
  require(std::isfinite(sigma_b2) && sigma_b2 > 0.0, "sigma_b2",
          "noise variance must be positive");
  require(std::isfinite(sigma_e2) && sigma_e2 > 0.0, "sigma_e2",
          "noise variance must be positive");
  require(d >= 1 && d <= rank(), "d", "must lie in [1, min(Na, Nb)]");
  require(rho >= 0.0 && rho <= 1.0, "rho", "must lie in [0, 1]");
  require(trials >= 1, "trials", "must be at least 1");
}

TransmitParams transmit_params(const ScenarioConfig& cfg, AliceAction alice) {
  if (alice == AliceAction::F) return {cfg.rank(), 1.0};
  return {cfg.d, cfg.rho};
}

double interference_power(const ScenarioConfig& cfg, TransmitParams tp) {
  if (tp.rho >= 1.0) return 0.0;
  if (tp.d >= cfg.Na)
    throw ConfigError("rho: d = Na leaves no dimensions for artificial interference");
  return (1.0 - tp.rho) * cfg.Pa / static_cast<double>(cfg.Na - tp.d);
}

ChannelSet sample_channels(const ScenarioConfig& cfg, Rng& rng) {
  if (cfg.Na < 1 || cfg.Nb < 1 || cfg.Ne < 1)
    throw ConfigError("antenna counts must be positive");
  ChannelSet ch;
  ch.H_ba = rng.complex_normal_matrix(cfg.Nb, cfg.Na);
  ch.H_be = rng.complex_normal_matrix(cfg.Nb, cfg.Ne);
  ch.H_ea = rng.complex_normal_matrix(cfg.Ne, cfg.Na);
  return ch;
}

Eigen::MatrixXcd right_singular_basis(const Eigen::MatrixXcd& H) {
  if (!H.allFinite()) throw NumericalError("channel matrix has non-finite entries");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(H, Eigen::ComputeFullV);
  Eigen::MatrixXcd V = svd.matrixV();
  for (Eigen::Index c = 0; c < V.cols(); ++c) {
    Eigen::Index arg = 0;
    V.col(c).cwiseAbs().maxCoeff(&arg);
    const std::complex<double> pivot = V(arg, c);
    const double mag = std::abs(pivot);
    if (mag > 0.0) V.col(c) *= std::conj(pivot) / mag;
  }
  return V;
}

PrecoderPair split_basis(const Eigen::MatrixXcd& V, int d) {
  const Eigen::Index na = V.cols();
  if (d < 1 || d > na) throw ConfigError("d: precoder dimension out of range");
  return {V.leftCols(d), V.rightCols(na - d)};
}

PrecoderPair build_precoders(const Eigen::MatrixXcd& H_ba, int d) {
  const auto r = std::min(H_ba.rows(), H_ba.cols());
  if (d < 1 || d > r)
    throw ConfigError("d: must lie in [1, min(Na, Nb)] = [1, " + std::to_string(r) + "]");
  return split_basis(right_singular_basis(H_ba), d);
}

Eigen::MatrixXcd alice_covariance(const ScenarioConfig& cfg,
                                  const PrecoderPair& pre, AliceAction alice) {
  const TransmitParams tp = transmit_params(cfg, alice);
  if (pre.T.cols() != tp.d || pre.T.rows() != cfg.Na)
    throw ConfigError("precoder does not match strategy " +
                      std::string(to_string(alice)) + " (d = " +
                      std::to_string(tp.d) + ")");
  const double eta = interference_power(cfg, tp);
  Eigen::MatrixXcd Q = (tp.rho * cfg.Pa / tp.d) * (pre.T * pre.T.adjoint());
  if (eta > 0.0) Q += eta * (pre.Tp * pre.Tp.adjoint());
  return Q;
}

Eigen::MatrixXcd bob_noise_cov(const ScenarioConfig& cfg, const ChannelSet& ch,
                               EveAction eve) {
  Eigen::MatrixXcd K = cfg.sigma_b2 * Eigen::MatrixXcd::Identity(cfg.Nb, cfg.Nb);
  if (eve == EveAction::J && cfg.g2 > 0.0 && cfg.Pe > 0.0)
    K += (cfg.g2 * cfg.Pe / cfg.Ne) * (ch.H_be * ch.H_be.adjoint());
  return K;
}

Eigen::MatrixXcd eve_noise_cov(const ScenarioConfig& cfg, const ChannelSet& ch,
                               const PrecoderPair& pre, AliceAction alice) {
  Eigen::MatrixXcd K = cfg.sigma_e2 * Eigen::MatrixXcd::Identity(cfg.Ne, cfg.Ne);
  const double eta = interference_power(cfg, transmit_params(cfg, alice));
  if (eta > 0.0 && cfg.g1 > 0.0) {
    const Eigen::MatrixXcd G = ch.H_ea * pre.Tp;
    K += (cfg.g1 * eta) * (G * G.adjoint());
  }
  return K;
}

}  // namespace wiretap
