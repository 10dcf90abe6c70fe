#include "wiretap/sweep.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "wiretap/errors.hpp"
#include "wiretap/random.hpp"

namespace wiretap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool needs(const SweepSpec& spec, std::initializer_list<Output> any) {
  for (Output o : spec.outputs)
    for (Output a : any)
      if (o == a) return true;
  return false;
}

double cell_std_err(const PayoffMatrix& R, ActionPair ap) { return R.cell(ap.alice, ap.eve).std_err; }

// Propagated variance g^T C g for a gradient over (FE, FJ, AE, AJ).
double propagate(const PayoffMatrix& R, const std::array<double, 4>& g) {
  double var = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) var += g[a] * R.cov[a][b] * g[b];
  return std::sqrt(std::max(var, 0.0));
}

Estimate quantity(Output o, const PointResult& res) {
  const PayoffMatrix& R = res.R;
  switch (o) {
    case Output::R_FE: return {R.FE.mean, R.FE.std_err};
    case Output::R_FJ: return {R.FJ.mean, R.FJ.std_err};
    case Output::R_AE: return {R.AE.mean, R.AE.std_err};
    case Output::R_AJ: return {R.AJ.mean, R.AJ.std_err};
    case Output::rho_star: return {R.rho_star, 0.0};
    case Output::d_star: return {static_cast<double>(R.d_star), 0.0};
    default: break;
  }
  if (!res.eq) return {kNaN, kNaN};
  const EquilibriumResult& eq = *res.eq;
  const EquilibriumStdErr se = equilibrium_std_err(R, eq);
  switch (o) {
    case Output::kind: return {static_cast<double>(static_cast<int>(eq.kind)), 0.0};
    case Output::p_star: return {eq.p_star, se.p};
    case Output::q_star: return {eq.q_star, se.q};
    case Output::value: return {eq.value, se.value};
    case Output::spe_alice_first:
      return {res.spe_alice->value, cell_std_err(R, res.spe_alice->path)};
    case Output::spe_eve_first:
      return {res.spe_eve->value, cell_std_err(R, res.spe_eve->path)};
    case Output::gamma_e3: return {res.e3->payoff.mean, res.e3->payoff.std_err};
    case Output::gamma_e4: return {res.e4->payoff.mean, res.e4->payoff.std_err};
    case Output::e3_detection_error:
      return {res.e3->detection_error, res.e3->detection_error_std_err};
    case Output::e4_detection_error:
      return {res.e4->detection_error, res.e4->detection_error_std_err};
    default: break;
  }
  return {kNaN, kNaN};
}

std::string fmt9(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

}  // namespace

EquilibriumStdErr equilibrium_std_err(const PayoffMatrix& R, const EquilibriumResult& eq) {
  EquilibriumStdErr out;
  if (eq.kind != EquilibriumKind::Mixed) {
    out.value = eq.kind == EquilibriumKind::PureAE ? R.AE.std_err : R.FJ.std_err;
    return out;
  }
  const double fe = R.FE.mean, fj = R.FJ.mean, ae = R.AE.mean, aj = R.AJ.mean;
  const double D = fe + aj - fj - ae;
  const std::array<double, 4> dD{1.0, -1.0, -1.0, 1.0};
  auto ratio_grad = [&](double num, const std::array<double, 4>& dnum) {
    std::array<double, 4> g{};
    for (int k = 0; k < 4; ++k) g[k] = (dnum[k] * D - num * dD[k]) / (D * D);
    return g;
  };
  out.p = propagate(R, ratio_grad(aj - ae, {0.0, 0.0, -1.0, 1.0}));
  out.q = propagate(R, ratio_grad(aj - fj, {0.0, -1.0, 0.0, 1.0}));
  out.value = propagate(R, ratio_grad(fe * aj - fj * ae, {aj, -ae, -fj, fe}));
  return out;
}

std::uint64_t point_seed(std::uint64_t base_seed, std::size_t index) {
  return stream_seed(base_seed, static_cast<std::uint64_t>(index));
}

PointResult evaluate_point(const SweepSpec& spec, const SweepPoint& pt,
                           std::uint64_t seed, bool with_e3, bool with_e4) {
  PointResult res;
  const int trials = pt.cfg.trials;
  res.R = payoff_matrix(pt.cfg, trials, seed, spec.search);
  try {
    res.eq = solve_strategic(res.R);
    res.spe_alice = spe_alice_first(res.R);
    res.spe_eve = spe_eve_first(res.R);
  } catch (const InconsistentPayoffError& e) {
    res.eq.reset();
    res.error = e.what();
    return res;
  }
  if (with_e3)
    res.e3 = play_gamma_e3(pt.cfg, res.R, pt.sensing_samples, trials,
                           stream_seed(seed, 3), spec.play);
  if (with_e4)
    res.e4 = play_gamma_e4(pt.cfg, res.R, pt.sensing_samples, trials,
                           stream_seed(seed, 4), spec.play);
  return res;
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec) {
  if (spec.swept_parameter == SweepParameter::None || spec.values.empty())
    throw ConfigError("sweep: scenario does not define a sweep");
  const bool e3 = needs(spec, {Output::gamma_e3, Output::e3_detection_error});
  const bool e4 = needs(spec, {Output::gamma_e4, Output::e4_detection_error});

  std::vector<ResultRow> rows;
  rows.reserve(spec.values.size());
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    const SweepPoint pt = derive_point(spec, spec.values[i]);
    ResultRow row;
    row.swept_value = spec.values[i];
    row.seed = point_seed(spec.base.seed, i);
    row.trials = pt.cfg.trials;
    const PointResult res = evaluate_point(spec, pt, row.seed, e3, e4);
    row.error = res.error;
    for (Output o : spec.outputs) row.quantities.push_back(quantity(o, res));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_csv(std::ostream& out, const SweepSpec& spec, const std::vector<ResultRow>& rows) {
  out << to_string(spec.swept_parameter);
  for (Output o : spec.outputs) out << ',' << to_string(o) << "_mean," << to_string(o) << "_stderr";
  out << '\n';
  for (const ResultRow& row : rows) {
    out << fmt9(row.swept_value);
    for (const Estimate& e : row.quantities) out << ',' << fmt9(e.mean) << ',' << fmt9(e.std_err);
    out << '\n';
  }
}

void write_csv_file(const std::string& path, const SweepSpec& spec,
                    const std::vector<ResultRow>& rows) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + tmp.string() + "' for writing");
    write_csv(f, spec, rows);
    f.flush();
    if (!f) throw IoError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move CSV into place at '" + path + "'");
  }
}

std::string report_equilibrium(const SweepSpec& spec) {
  const SweepPoint pt = base_point(spec);
  const ScenarioConfig& c = pt.cfg;
  const PointResult res = evaluate_point(spec, pt, c.seed, false, false);
  const PayoffMatrix& R = res.R;

  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "Scenario: Na=%d Nb=%d Ne=%d Pa=%.4g Pe=%.4g g1=%.4g g2=%.4g "
                "sigma_b2=%.4g sigma_e2=%.4g trials=%d seed=%llu\n",
                c.Na, c.Nb, c.Ne, c.Pa, c.Pe, c.g1, c.g2, c.sigma_b2, c.sigma_e2,
                c.trials, static_cast<unsigned long long>(c.seed));
  os << buf;
  std::snprintf(buf, sizeof buf, "A row: rho*=%.3f d*=%d  (F row: rho=1 d=%d)\n",
                R.rho_star, R.d_star, c.rank());
  os << buf;
  os << "\nPayoff matrix (bits/channel use, mean +/- std err)\n";
  std::snprintf(buf, sizeof buf, "            %-20s %-20s\n", "E (eavesdrop)", "J (jam)");
  os << buf;
  std::snprintf(buf, sizeof buf, "  F (full)  %7.4f +/- %-8.4f %7.4f +/- %-8.4f\n",
                R.FE.mean, R.FE.std_err, R.FJ.mean, R.FJ.std_err);
  os << buf;
  std::snprintf(buf, sizeof buf, "  A (AN)    %7.4f +/- %-8.4f %7.4f +/- %-8.4f\n",
                R.AE.mean, R.AE.std_err, R.AJ.mean, R.AJ.std_err);
  os << buf;
  if (R.rho_star == 1.0 && R.d_star == c.rank())
    os << "  note: the optimized A row uses full power on all streams, so it equals the F row\n";

  if (!res.eq) {
    os << "\nEquilibrium: unavailable (" << res.error << ")\n";
    return os.str();
  }
  const EquilibriumResult& eq = *res.eq;
  const EquilibriumStdErr se = equilibrium_std_err(R, eq);
  os << "\nStrategic game: " << to_string(eq.kind);
  if (eq.degenerate) os << " (degenerate: PureAE and PureFJ conditions both hold)";
  os << '\n';
  std::snprintf(buf, sizeof buf,
                "  p* (Alice plays F) = %.4f +/- %.4f\n"
                "  q* (Eve plays E)   = %.4f +/- %.4f\n"
                "  v                  = %.4f +/- %.4f\n",
                eq.p_star, se.p, eq.q_star, se.q, eq.value, se.value);
  os << buf;
  if (eq.near_boundary)
    os << "  warning: classification is within 3 std errors of flipping\n";

  auto spe_line = [&](const char* label, const SPEOutcome& s) {
    std::snprintf(buf, sizeof buf, "  %-18s path (%s, %s)  value %.4f +/- %.4f\n", label,
                  std::string(to_string(s.path.alice)).c_str(),
                  std::string(to_string(s.path.eve)).c_str(), s.value,
                  R.cell(s.path.alice, s.path.eve).std_err);
    os << buf;
  };
  os << "\nSubgame-perfect outcomes (perfect information)\n";
  spe_line("Alice moves first:", *res.spe_alice);
  spe_line("Eve moves first:", *res.spe_eve);
  return os.str();
}

}  // namespace wiretap
