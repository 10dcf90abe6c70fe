#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wiretap/errors.hpp"
#include "wiretap/game_solver.hpp"
#include "wiretap/scenario.hpp"
#include "wiretap/secrecy_engine.hpp"
#include "wiretap/sweep.hpp"

using namespace wiretap;

namespace {

enum Exit { kOk = 0, kConfig = 1, kNumerical = 2, kIo = 3 };

struct Overrides {
  std::optional<int> trials;
  std::optional<unsigned long long> seed;
};

SweepSpec load(const std::string& path, const Overrides& ov) {
  SweepSpec spec = parse_scenario_file(path);
  if (ov.trials) {
    if (*ov.trials < 1) throw ConfigError("trials: must be at least 1");
    spec.base.trials = *ov.trials;
  }
  if (ov.seed) spec.base.seed = *ov.seed;
  return spec;
}

int cmd_report(const std::string& path, const Overrides& ov) {
  std::cout << report_equilibrium(load(path, ov));
  return kOk;
}

int cmd_sweep(const std::string& path, const std::string& out, const Overrides& ov) {
  const SweepSpec spec = load(path, ov);
  const auto rows = run_sweep(spec);
  for (const ResultRow& r : rows)
    if (!r.error.empty())
      std::cerr << "warning: " << to_string(spec.swept_parameter) << '=' << r.swept_value << ": "
                << r.error << '\n';
  write_csv_file(out, spec, rows);
  std::cerr << "wrote " << rows.size() << " rows to " << out << '\n';
  return kOk;
}

int cmd_oracle(const std::string& path, double step, const Overrides& ov) {
  const SweepSpec spec = load(path, ov);
  const SweepPoint pt = base_point(spec);
  const PayoffMatrix R = payoff_matrix(pt.cfg, pt.cfg.trials, pt.cfg.seed, spec.search);
  const EquilibriumResult eq = solve_strategic(R);
  const SaddleGrid grid = saddle_oracle(R, step);
  const double diff = std::fabs(eq.value - grid.value());
  std::printf("closed form: %s p*=%.4f q*=%.4f v=%.6f\n", std::string(to_string(eq.kind)).c_str(),
              eq.p_star, eq.q_star, eq.value);
  std::printf("grid (step %.4g): p=%.4f q=%.4f lower=%.6f upper=%.6f\n", step, grid.p, grid.q,
              grid.lower, grid.upper);
  std::printf("|difference| = %.3g  (tolerance 0.01): %s\n", diff, diff <= 0.01 ? "agree" : "DISAGREE");
  return diff <= 0.01 ? kOk : kNumerical;
}

int cmd_selftest() {
  int failures = 0;
  auto check = [&](bool ok, const char* what) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what);
    if (!ok) ++failures;
  };

  const PayoffMatrix mixed = PayoffMatrix::exact(0.0, 5.02, 5.04, 2.85);
  const EquilibriumResult eq = solve_strategic(mixed);
  check(eq.kind == EquilibriumKind::Mixed, "toy matrix without pure NE is mixed");
  check(std::fabs(eq.value - expected_payoff(mixed, eq.p_star, eq.q_star)) < 1e-12,
        "value equals expected payoff at the equilibrium");
  check(std::fabs(eq.value - saddle_oracle(mixed, 0.001).value()) < 0.01,
        "closed form agrees with grid oracle");
  check(spe_eve_first(mixed).value == std::min(mixed.FJ.mean, mixed.AE.mean),
        "Eve-first SPE is min(R_FJ, R_AE)");

  const PayoffMatrix pure = PayoffMatrix::exact(1.0, 5.0, 3.0, 4.0);
  check(solve_strategic(pure).kind == EquilibriumKind::PureAE, "R_AE <= R_AJ gives pure AE");

  ScenarioConfig siso;
  siso.Na = siso.Nb = siso.Ne = 1;
  siso.Pa = siso.Pe = 10.0;
  siso.g1 = siso.g2 = 1.0;
  siso.d = 1;
  siso.trials = 200;
  const PayoffMatrix R = payoff_matrix(siso, siso.trials, 7);
  check(R.FE.mean == R.AE.mean && R.FJ.mean == R.AJ.mean, "SISO A row equals F row");
  check(R.FE.mean <= R.FJ.mean, "jamming without eavesdropping helps Alice in SISO");

  std::printf("%s\n", failures == 0 ? "selftest passed" : "selftest FAILED");
  return failures == 0 ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MIMO wiretap game simulator"};
  app.require_subcommand(1);

  Overrides ov;
  std::string scenario, out;
  double step = 0.001;
  int trials = 0;
  unsigned long long seed = 0;

  auto add_overrides = [&](CLI::App* sub) {
    sub->add_option("--trials", trials, "Monte Carlo trials per cell");
    sub->add_option("--seed", seed, "base seed");
  };

  auto* report = app.add_subcommand("report", "print payoff matrix and equilibria");
  report->add_option("scenario", scenario, "scenario file")->required();
  add_overrides(report);

  auto* sweep = app.add_subcommand("sweep", "run the scenario sweep and write CSV");
  sweep->add_option("scenario", scenario, "scenario file")->required();
  sweep->add_option("--out,-o", out, "output CSV path")->required();
  add_overrides(sweep);

  auto* oracle = app.add_subcommand("oracle", "cross-check the closed-form solution on a grid");
  oracle->add_option("scenario", scenario, "scenario file")->required();
  oracle->add_option("--step", step, "grid step")->check(CLI::Range(1e-4, 0.5));
  add_overrides(oracle);

  auto* selftest = app.add_subcommand("selftest", "run built-in consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  for (auto* sub : {report, sweep, oracle}) {
    if (sub->count("--trials")) ov.trials = trials;
    if (sub->count("--seed")) ov.seed = seed;
  }

  try {
    if (*report) return cmd_report(scenario, ov);
    if (*sweep) return cmd_sweep(scenario, out, ov);
    if (*oracle) return cmd_oracle(scenario, step, ov);
    if (*selftest) return cmd_selftest();
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }
  return kOk;
}
