#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wiretap/detection.hpp"
#include "wiretap/game_solver.hpp"
#include "wiretap/scenario.hpp"

namespace wiretap {

struct Estimate {
  double mean = 0.0;
  double std_err = 0.0;
};

// Everything computed for one scenario point. Fields after `R` stay empty when
// the payoff matrix is inconsistent; `error` then says why.
struct PointResult {
  PayoffMatrix R;
  std::optional<EquilibriumResult> eq;
  std::optional<SPEOutcome> spe_alice;
  std::optional<SPEOutcome> spe_eve;
  std::optional<ImperfectPlayResult> e3;
  std::optional<ImperfectPlayResult> e4;
  std::string error;
};

// Standard errors of (p*, q*, v) by first-order propagation through the
// closed forms, using the covariance of the four cell means.
struct EquilibriumStdErr {
  double p = 0.0;
  double q = 0.0;
  double value = 0.0;
};

EquilibriumStdErr equilibrium_std_err(const PayoffMatrix& R, const EquilibriumResult& eq);

// Seed of sweep point `index`; appending points leaves earlier seeds intact.
std::uint64_t point_seed(std::uint64_t base_seed, std::size_t index);

PointResult evaluate_point(const SweepSpec& spec, const SweepPoint& pt,
                           std::uint64_t seed, bool with_e3, bool with_e4);

struct ResultRow {
  double swept_value = 0.0;
  std::vector<Estimate> quantities;  // one per SweepSpec::outputs entry
  std::uint64_t seed = 0;
  int trials = 0;
  std::string error;  // non-empty when the point's payoffs were inconsistent
};

std::vector<ResultRow> run_sweep(const SweepSpec& spec);

// Header plus one line per row; 9 significant digits.
void write_csv(std::ostream& out, const SweepSpec& spec, const std::vector<ResultRow>& rows);

// Writes to a temporary file next to `path` and renames it into place.
void write_csv_file(const std::string& path, const SweepSpec& spec,
                    const std::vector<ResultRow>& rows);

// Human-readable summary of the base configuration.
std::string report_equilibrium(const SweepSpec& spec);

}  // namespace wiretap
