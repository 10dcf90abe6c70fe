#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "wiretap/channel_model.hpp"
#include "wiretap/errors.hpp"
#include "wiretap/random.hpp"

using namespace wiretap;

namespace {

ScenarioConfig cfg(int na, int nb, int ne, int d) {
  ScenarioConfig c;
  c.Na = na;
  c.Nb = nb;
  c.Ne = ne;
  c.d = d;
  c.Pa = 100.0;
  c.Pe = 100.0;
  c.g1 = 1.1;
  c.g2 = 0.9;
  return c;
}

double herm_residual(const Eigen::MatrixXcd& A) { return (A - A.adjoint()).norm(); }

double min_eig(const Eigen::MatrixXcd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
  return es.eigenvalues().minCoeff();
}

std::string error_of(const ScenarioConfig& c) {
  try {
    c.validate();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("validate names the offending field") {
  ScenarioConfig c = cfg(5, 3, 4, 2);
  CHECK(error_of(c).empty());

  auto bad = c;
  bad.Na = 0;
  CHECK(error_of(bad).rfind("Na", 0) == 0);
  bad = c;
  bad.d = 4;
  CHECK(error_of(bad).rfind("d", 0) == 0);
  bad = c;
  bad.rho = 1.2;
  CHECK(error_of(bad).rfind("rho", 0) == 0);
  bad = c;
  bad.Pe = -1.0;
  CHECK(error_of(bad).rfind("Pe", 0) == 0);
  bad = c;
  bad.g2 = std::nan("");
  CHECK(error_of(bad).rfind("g2", 0) == 0);
  bad = c;
  bad.trials = 0;
  CHECK(error_of(bad).rfind("trials", 0) == 0);
}

TEST_CASE("full power ignores stored split") {
  ScenarioConfig c = cfg(5, 3, 4, 2);
  c.rho = 0.3;
  const TransmitParams f = transmit_params(c, AliceAction::F);
  CHECK(f.d == 3);
  CHECK(f.rho == 1.0);
  const TransmitParams a = transmit_params(c, AliceAction::A);
  CHECK(a.d == 2);
  CHECK(a.rho == 0.3);
}

TEST_CASE("channel dimensions") {
  Rng rng(1, 0);
  const ChannelSet ch = sample_channels(cfg(5, 3, 4, 2), rng);
  CHECK(ch.H_ba.rows() == 3);
  CHECK(ch.H_ba.cols() == 5);
  CHECK(ch.H_be.rows() == 3);
  CHECK(ch.H_be.cols() == 4);
  CHECK(ch.H_ea.rows() == 4);
  CHECK(ch.H_ea.cols() == 5);

  Rng r1(1, 0);
  const ChannelSet siso = sample_channels(cfg(1, 1, 1, 1), r1);
  CHECK(siso.H_ba.size() == 1);
  CHECK(siso.H_be.size() == 1);
  CHECK(siso.H_ea.size() == 1);
}

TEST_CASE("sampling is reproducible per stream") {
  const ScenarioConfig c = cfg(4, 3, 2, 2);
  Rng a(7, 3), b(7, 3), other(7, 4);
  const ChannelSet x = sample_channels(c, a);
  const ChannelSet y = sample_channels(c, b);
  const ChannelSet z = sample_channels(c, other);
  CHECK(x.H_ba == y.H_ba);
  CHECK(x.H_be == y.H_be);
  CHECK(x.H_ea == y.H_ea);
  CHECK(x.H_ba != z.H_ba);
}

TEST_CASE("CN(0,1) sampler moments") {
  const int n = 100000;
  Rng rng(2024);
  double sum_re = 0, sum_im = 0, sum_p = 0, sum_p2 = 0, sum_re2 = 0, sum_reim = 0;
  for (int i = 0; i < n; ++i) {
    const auto z = rng.complex_normal();
    const double p = std::norm(z);
    sum_re += z.real();
    sum_im += z.imag();
    sum_p += p;
    sum_p2 += p * p;
    sum_re2 += z.real() * z.real();
    sum_reim += z.real() * z.imag();
  }
  const double N = n;
  // |z|^2 is Exp(1): variance 1. Re z is N(0, 1/2).
  CHECK(std::abs(sum_re / N) <= 3.0 * std::sqrt(0.5 / N));
  CHECK(std::abs(sum_im / N) <= 3.0 * std::sqrt(0.5 / N));
  CHECK(std::abs(sum_p / N - 1.0) <= 0.02);
  CHECK(std::abs(sum_p / N - 1.0) <= 3.0 * std::sqrt(1.0 / N));
  CHECK(std::abs(sum_p2 / N - 2.0) <= 0.1);
  CHECK(std::abs(sum_re2 / N - 0.5) <= 3.0 * std::sqrt(0.5 / N));
  // Re and Im independent: E[Re Im] = 0 with variance 1/4.
  CHECK(std::abs(sum_reim / N) <= 3.0 * std::sqrt(0.25 / N));
}

TEST_CASE("channel entries have unit power over many draws") {
  const ScenarioConfig c = cfg(2, 2, 2, 1);
  double total = 0.0;
  int count = 0;
  for (int i = 0; i < 10000; ++i) {
    Rng rng(5, i);
    const ChannelSet ch = sample_channels(c, rng);
    total += ch.H_ba.squaredNorm() + ch.H_be.squaredNorm() + ch.H_ea.squaredNorm();
    count += 12;
  }
  CHECK(std::abs(total / count - 1.0) <= 0.02);
}

TEST_CASE("precoders are orthonormal and span the dominant subspace") {
  for (int seed = 0; seed < 20; ++seed) {
    Rng rng(11, seed);
    const Eigen::MatrixXcd H = rng.complex_normal_matrix(3, 5);
    const PrecoderPair pre = build_precoders(H, 2);
    REQUIRE(pre.T.cols() == 2);
    REQUIRE(pre.Tp.cols() == 3);
    CHECK((pre.T.adjoint() * pre.T - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-10);
    CHECK((pre.Tp.adjoint() * pre.Tp - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-10);
    CHECK((pre.T.adjoint() * pre.Tp).norm() < 1e-10);

    // Projector onto span(T) equals the projector from the eigenvectors of
    // H^H H with the two largest eigenvalues.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.adjoint() * H);
    const Eigen::MatrixXcd top = es.eigenvectors().rightCols(2);
    const Eigen::MatrixXcd P1 = pre.T * pre.T.adjoint();
    const Eigen::MatrixXcd P2 = top * top.adjoint();
    CHECK((P1 - P2).norm() < 1e-8);
  }
}

TEST_CASE("precoder phase convention") {
  Rng rng(3);
  const Eigen::MatrixXcd H = rng.complex_normal_matrix(4, 4);
  const Eigen::MatrixXcd V = right_singular_basis(H);
  for (Eigen::Index c = 0; c < V.cols(); ++c) {
    Eigen::Index k;
    V.col(c).cwiseAbs().maxCoeff(&k);
    CHECK(std::abs(V(k, c).imag()) < 1e-12);
    CHECK(V(k, c).real() > 0.0);
  }
  CHECK(right_singular_basis(H) == V);
}

TEST_CASE("identity channel gives identity precoder") {
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(3, 3);
  const PrecoderPair pre = build_precoders(I, 3);
  CHECK(pre.Tp.cols() == 0);
  CHECK((pre.T * pre.T.adjoint() - I).norm() < 1e-12);
  CHECK((pre.T.cwiseAbs() - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("full-rank precoder on a wide channel leaves the null space to Tp") {
  Rng rng(4);
  const Eigen::MatrixXcd H = rng.complex_normal_matrix(3, 5);
  const PrecoderPair pre = build_precoders(H, 3);
  CHECK(pre.Tp.cols() == 2);
  CHECK((H * pre.Tp).norm() < 1e-10);
}

TEST_CASE("d out of range is rejected") {
  Rng rng(4);
  const Eigen::MatrixXcd H = rng.complex_normal_matrix(3, 5);
  CHECK_THROWS_AS(build_precoders(H, 4), ConfigError);
  CHECK_THROWS_AS(build_precoders(H, 0), ConfigError);
}

TEST_CASE("alice covariance") {
  Rng rng(9);
  const Eigen::MatrixXcd H = rng.complex_normal_matrix(3, 5);

  SUBCASE("eigenvalues for a 60/40 split") {
    ScenarioConfig c = cfg(5, 3, 4, 2);
    c.rho = 0.6;
    const PrecoderPair pre = build_precoders(H, 2);
    const Eigen::MatrixXcd Q = alice_covariance(c, pre, AliceAction::A);
    CHECK(herm_residual(Q) < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Q);
    const Eigen::VectorXd ev = es.eigenvalues();
    CHECK(ev(0) == doctest::Approx(40.0 / 3.0).epsilon(1e-10));
    CHECK(ev(1) == doctest::Approx(40.0 / 3.0).epsilon(1e-10));
    CHECK(ev(2) == doctest::Approx(40.0 / 3.0).epsilon(1e-10));
    CHECK(ev(3) == doctest::Approx(30.0).epsilon(1e-10));
    CHECK(ev(4) == doctest::Approx(30.0).epsilon(1e-10));
    CHECK(interference_power(c, transmit_params(c, AliceAction::A)) ==
          doctest::Approx(40.0 / 3.0));
  }

  SUBCASE("even split puts half the power in each part") {
    ScenarioConfig c = cfg(4, 3, 2, 2);
    c.rho = 0.5;
    Rng r(10);
    const Eigen::MatrixXcd H4 = r.complex_normal_matrix(3, 4);
    const PrecoderPair pre = build_precoders(H4, 2);
    const Eigen::MatrixXcd Q = alice_covariance(c, pre, AliceAction::A);
    const double data = (pre.T.adjoint() * Q * pre.T).trace().real();
    const double noise = (pre.Tp.adjoint() * Q * pre.Tp).trace().real();
    CHECK(data == doctest::Approx(50.0).epsilon(1e-10));
    CHECK(noise == doctest::Approx(50.0).epsilon(1e-10));
  }

  SUBCASE("no interference at full split") {
    ScenarioConfig c = cfg(5, 3, 4, 2);
    c.rho = 1.0;
    const PrecoderPair pre = build_precoders(H, 2);
    const Eigen::MatrixXcd Q = alice_covariance(c, pre, AliceAction::A);
    CHECK((Q - (c.Pa / 2.0) * pre.T * pre.T.adjoint()).norm() < 1e-10);
  }

  SUBCASE("trace is always Pa") {
    for (double rho : {0.05, 0.3, 0.75, 1.0}) {
      ScenarioConfig c = cfg(5, 3, 4, 2);
      c.rho = rho;
      const PrecoderPair pa = build_precoders(H, 2);
      const PrecoderPair pf = build_precoders(H, 3);
      CHECK(std::abs(alice_covariance(c, pa, AliceAction::A).trace().real() - c.Pa) <= 1e-8 * c.Pa);
      CHECK(std::abs(alice_covariance(c, pf, AliceAction::F).trace().real() - c.Pa) <= 1e-8 * c.Pa);
    }
  }

  SUBCASE("no interference dimensions left") {
    ScenarioConfig c = cfg(3, 3, 2, 3);
    c.rho = 0.5;
    Rng r(12);
    const PrecoderPair pre = build_precoders(r.complex_normal_matrix(3, 3), 3);
    CHECK_THROWS_AS(alice_covariance(c, pre, AliceAction::A), ConfigError);
  }

  SUBCASE("precoder width must match the strategy") {
    ScenarioConfig c = cfg(5, 3, 4, 2);
    const PrecoderPair pre = build_precoders(H, 2);
    CHECK_THROWS_AS(alice_covariance(c, pre, AliceAction::F), ConfigError);
  }
}

TEST_CASE("bob noise covariance") {
  ScenarioConfig c = cfg(1, 1, 1, 1);
  c.Pe = 100.0;
  c.g2 = 0.9;
  c.sigma_b2 = 1.0;
  ChannelSet ch;
  ch.H_ba = Eigen::MatrixXcd::Ones(1, 1);
  ch.H_be = Eigen::MatrixXcd::Ones(1, 1);
  ch.H_ea = Eigen::MatrixXcd::Ones(1, 1);
  CHECK(bob_noise_cov(c, ch, EveAction::J)(0, 0).real() == doctest::Approx(91.0));
  CHECK(bob_noise_cov(c, ch, EveAction::E)(0, 0).real() == 1.0);

  const ScenarioConfig m = cfg(5, 3, 4, 2);
  Rng rng(2);
  const ChannelSet big = sample_channels(m, rng);
  CHECK(bob_noise_cov(m, big, EveAction::E) == Eigen::MatrixXcd::Identity(3, 3));
  auto silent = m;
  silent.g2 = 0.0;
  CHECK((bob_noise_cov(silent, big, EveAction::J) - Eigen::MatrixXcd::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("eve noise covariance") {
  ScenarioConfig c = cfg(5, 3, 4, 2);
  c.rho = 0.4;
  Rng rng(21);
  const ChannelSet ch = sample_channels(c, rng);
  const Eigen::MatrixXcd I4 = Eigen::MatrixXcd::Identity(4, 4);

  CHECK((eve_noise_cov(c, ch, build_precoders(ch.H_ba, 3), AliceAction::F) - I4).norm() == 0.0);

  auto full = c;
  full.rho = 1.0;
  CHECK((eve_noise_cov(full, ch, build_precoders(ch.H_ba, 2), AliceAction::A) - I4).norm() < 1e-12);

  auto deaf = c;
  deaf.g1 = 0.0;
  CHECK((eve_noise_cov(deaf, ch, build_precoders(ch.H_ba, 2), AliceAction::A) - I4).norm() == 0.0);

  const Eigen::MatrixXcd K = eve_noise_cov(c, ch, build_precoders(ch.H_ba, 2), AliceAction::A);
  CHECK((K - I4).norm() > 1.0);
}

TEST_CASE("noise covariances stay above the noise floor") {
  ScenarioConfig c = cfg(5, 3, 4, 2);
  c.rho = 0.3;
  c.sigma_b2 = 0.5;
  c.sigma_e2 = 2.0;
  for (int i = 0; i < 50; ++i) {
    Rng rng(31, i);
    const ChannelSet ch = sample_channels(c, rng);
    for (EveAction e : {EveAction::E, EveAction::J}) {
      const Eigen::MatrixXcd K = bob_noise_cov(c, ch, e);
      CHECK(herm_residual(K) < 1e-10);
      CHECK(min_eig(K) >= 0.5 - 1e-10);
    }
    for (AliceAction a : {AliceAction::F, AliceAction::A}) {
      const PrecoderPair pre = build_precoders(ch.H_ba, transmit_params(c, a).d);
      const Eigen::MatrixXcd K = eve_noise_cov(c, ch, pre, a);
      CHECK(herm_residual(K) < 1e-10);
      CHECK(min_eig(K) >= 0.5 - 1e-10);
    }
  }
}
