#pragma once

#include <cstdint>
#include <string_view>

#include <Eigen/Dense>

#include "wiretap/random.hpp"

namespace wiretap {

enum class AliceAction { F, A };  // full power / artificial interference
enum class EveAction { E, J };    // eavesdrop / jam

std::string_view to_string(AliceAction a);
std::string_view to_string(EveAction e);

struct ActionPair {
  AliceAction alice;
  EveAction eve;
};

// All powers, gains and noise variances are linear scale.
struct ScenarioConfig {
  int Na = 1;
  int Nb = 1;
  int Ne = 1;
  double Pa = 1.0;
  double Pe = 1.0;
  double g1 = 1.0;  // Eve receive gain (amplitude sqrt(g1))
  double g2 = 1.0;  // Eve transmit gain (amplitude sqrt(g2))
  double sigma_b2 = 1.0;
  double sigma_e2 = 1.0;
  int d = 1;          // information streams under strategy A
  double rho = 1.0;   // fraction of Pa on the information streams under A
  int trials = 5000;
  std::uint64_t seed = 1;

  int rank() const { return Na < Nb ? Na : Nb; }

  // Throws ConfigError naming the first offending field.
  void validate() const;
};

// Streams and power split actually used by a strategy. F always means
// (min(Na, Nb), 1) regardless of the stored d and rho.
struct TransmitParams {
  int d;
  double rho;
};

TransmitParams transmit_params(const ScenarioConfig& cfg, AliceAction alice);

// Interference power per artificial-noise dimension, (1 - rho) Pa / (Na - d).
double interference_power(const ScenarioConfig& cfg, TransmitParams tp);

struct ChannelSet {
  Eigen::MatrixXcd H_ba;  // Nb x Na
  Eigen::MatrixXcd H_be;  // Nb x Ne
  Eigen::MatrixXcd H_ea;  // Ne x Na
};

struct PrecoderPair {
  Eigen::MatrixXcd T;   // Na x d, information streams
  Eigen::MatrixXcd Tp;  // Na x (Na - d), artificial interference basis
};

// Draw order is H_ba, H_be, H_ea, each column-major.
ChannelSet sample_channels(const ScenarioConfig& cfg, Rng& rng);

// Full set of right singular vectors of H (Na x Na), ordered by descending
// singular value with null-space vectors last. Each column is rotated so its
// largest-magnitude entry is real and positive.
Eigen::MatrixXcd right_singular_basis(const Eigen::MatrixXcd& H);

// Splits a basis from right_singular_basis into the first d columns and the
// remainder.
PrecoderPair split_basis(const Eigen::MatrixXcd& V, int d);

PrecoderPair build_precoders(const Eigen::MatrixXcd& H_ba, int d);

// Q_a = (rho Pa / d) T T^H + eta T' T'^H for the effective (d, rho) of `alice`.
Eigen::MatrixXcd alice_covariance(const ScenarioConfig& cfg,
                                  const PrecoderPair& pre, AliceAction alice);

// Interference-plus-noise covariance at Bob.
Eigen::MatrixXcd bob_noise_cov(const ScenarioConfig& cfg, const ChannelSet& ch,
                               EveAction eve);

// Interference-plus-noise covariance at Eve while she listens.
Eigen::MatrixXcd eve_noise_cov(const ScenarioConfig& cfg, const ChannelSet& ch,
                               const PrecoderPair& pre, AliceAction alice);

}  // namespace wiretap
