#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wiretap/channel_model.hpp"
#include "wiretap/detection.hpp"
#include "wiretap/secrecy_engine.hpp"

namespace wiretap {

enum class SweepParameter { None, Pa, Pe_over_Pa, Ne_over_Na, M };

enum class Output {
  R_FE,
  R_FJ,
  R_AE,
  R_AJ,
  rho_star,
  d_star,
  kind,  // 0 = PureAE, 1 = PureFJ, 2 = Mixed
  p_star,
  q_star,
  value,
  spe_alice_first,
  spe_eve_first,
  gamma_e3,
  gamma_e4,
  e3_detection_error,
  e4_detection_error,
};

std::string_view to_string(SweepParameter p);
std::string_view to_string(Output o);
std::optional<Output> output_from_string(std::string_view name);

// A parsed scenario file: one base configuration plus an optional sweep.
struct SweepSpec {
  ScenarioConfig base;
  PowerSplitSearch search;
  ImperfectPlayOptions play;
  std::optional<double> pe_over_pa;  // couples Pe to Pa when set
  int sensing_samples = 20;          // M for the imperfect-information games
  SweepParameter swept_parameter = SweepParameter::None;
  std::vector<double> values;
  std::vector<Output> outputs;
};

// Configuration for one point of the sweep (the base when nothing is swept).
struct SweepPoint {
  ScenarioConfig cfg;
  int sensing_samples = 20;
};

SweepPoint derive_point(const SweepSpec& spec, double value);
SweepPoint base_point(const SweepSpec& spec);

// Parses `key = value` lines; `#` starts a comment. Throws ParseError with the
// line number and key on unknown keys, malformed or out-of-range values, and
// missing required fields. Powers accept a `dB` suffix.
SweepSpec parse_scenario_text(std::string_view text);
SweepSpec parse_scenario_file(const std::string& path);

// "20dB" -> 100, "100" -> 100.
double parse_power(std::string_view text);

std::vector<Output> default_outputs();

}  // namespace wiretap
