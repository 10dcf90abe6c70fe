#include "wiretap/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "wiretap/errors.hpp"

namespace wiretap {

namespace {

constexpr std::pair<Output, std::string_view> kOutputNames[] = {
    {Output::R_FE, "R_FE"},
    {Output::R_FJ, "R_FJ"},
    {Output::R_AE, "R_AE"},
    {Output::R_AJ, "R_AJ"},
    {Output::rho_star, "rho_star"},
    {Output::d_star, "d_star"},
    {Output::kind, "kind"},
    {Output::p_star, "p_star"},
    {Output::q_star, "q_star"},
    {Output::value, "value"},
    {Output::spe_alice_first, "spe_alice_first"},
    {Output::spe_eve_first, "spe_eve_first"},
    {Output::gamma_e3, "gamma_e3"},
    {Output::gamma_e4, "gamma_e4"},
    {Output::e3_detection_error, "e3_detection_error"},
    {Output::e4_detection_error, "e4_detection_error"},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = s.find(',');
    const auto item = trim(s.substr(0, pos));
    if (!item.empty()) out.push_back(item);
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

bool parse_double(std::string_view text, double& out) {
  const std::string buf(trim(text));
  if (buf.empty()) return false;
  char* end = nullptr;
  out = std::strtod(buf.c_str(), &end);
  return end == buf.c_str() + buf.size() && std::isfinite(out);
}

bool ends_with_db(std::string_view s, std::string_view& number) {
  s = trim(s);
  if (s.size() < 2) return false;
  const auto tail = s.substr(s.size() - 2);
  if (std::tolower(static_cast<unsigned char>(tail[0])) != 'd' ||
      std::tolower(static_cast<unsigned char>(tail[1])) != 'b')
    return false;
  number = trim(s.substr(0, s.size() - 2));
  return true;
}

// Parses one line-scoped value; rethrows failures with the line and key.
class Reader {
 public:
  Reader(int line, std::string key) : line_(line), key_(std::move(key)) {}

  [[noreturn]] void fail(const std::string& why) const { throw ParseError(line_, key_, why); }

  double number(std::string_view v) const {
    double x = 0.0;
    if (!parse_double(v, x)) fail("expected a number, got '" + std::string(v) + "'");
    return x;
  }

  int integer(std::string_view v) const {
    const double x = number(v);
    if (x != std::floor(x) || std::abs(x) > 1e9) fail("expected an integer");
    return static_cast<int>(x);
  }

  double power(std::string_view v) const {
    try {
      return parse_power(v);
    } catch (const ConfigError& e) {
      fail(e.what());
    }
  }

 private:
  int line_;
  std::string key_;
};

const std::vector<std::string_view> kKnownKeys = {
    "Na",       "Nb",          "Ne",      "Pa",     "Pe",       "pe_over_pa",
    "g1",       "g2",          "sigma_b2", "sigma_e2", "d",      "rho",
    "rho_step", "d_candidates", "trials",  "seed",   "clip",     "M",
    "sensing_transmit", "sweep", "values",  "outputs"};

}  // namespace

std::string_view to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::None: return "none";
    case SweepParameter::Pa: return "Pa";
    case SweepParameter::Pe_over_Pa: return "Pe_over_Pa";
    case SweepParameter::Ne_over_Na: return "Ne_over_Na";
    case SweepParameter::M: return "M";
  }
  return "?";
}

std::string_view to_string(Output o) {
  for (const auto& [out, name] : kOutputNames)
    if (out == o) return name;
  return "?";
}

std::optional<Output> output_from_string(std::string_view name) {
  for (const auto& [out, n] : kOutputNames)
    if (n == name) return out;
  return std::nullopt;
}

std::vector<Output> default_outputs() {
  return {Output::R_FE,   Output::R_FJ,   Output::R_AE,  Output::R_AJ,
          Output::kind,   Output::p_star, Output::q_star, Output::value,
          Output::spe_alice_first, Output::spe_eve_first};
}

double parse_power(std::string_view text) {
  std::string_view num;
  double x = 0.0;
  if (ends_with_db(text, num)) {
    if (!parse_double(num, x)) throw ConfigError("malformed dB value '" + std::string(text) + "'");
    return std::pow(10.0, x / 10.0);
  }
  if (!parse_double(text, x)) throw ConfigError("malformed value '" + std::string(text) + "'");
  return x;
}

SweepPoint derive_point(const SweepSpec& spec, double value) {
  SweepPoint pt{spec.base, spec.sensing_samples};
  ScenarioConfig& c = pt.cfg;
  switch (spec.swept_parameter) {
    case SweepParameter::None: break;
    case SweepParameter::Pa: c.Pa = value; break;
    case SweepParameter::Pe_over_Pa: c.Pe = value * c.Pa; break;
    case SweepParameter::Ne_over_Na: {
      const double ne = value * c.Na;
      const double rounded = std::round(ne);
      if (std::abs(ne - rounded) > 1e-3 || rounded < 1)
        throw ConfigError("values: Ne/Na = " + std::to_string(value) +
                          " does not give a positive integer Ne");
      c.Ne = static_cast<int>(rounded);
      break;
    }
    case SweepParameter::M: {
      if (value < 0 || value != std::floor(value))
        throw ConfigError("values: M must be a non-negative integer");
      pt.sensing_samples = static_cast<int>(value);
      break;
    }
  }
  if (spec.pe_over_pa && spec.swept_parameter != SweepParameter::Pe_over_Pa)
    c.Pe = *spec.pe_over_pa * c.Pa;
  c.validate();
  return pt;
}

SweepPoint base_point(const SweepSpec& spec) {
  SweepPoint pt{spec.base, spec.sensing_samples};
  if (spec.pe_over_pa) pt.cfg.Pe = *spec.pe_over_pa * pt.cfg.Pa;
  pt.cfg.validate();
  return pt;
}

SweepSpec parse_scenario_text(std::string_view text) {
  std::map<std::string, std::pair<int, std::string>> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(lineno, "", "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError(lineno, "", "missing key");
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
      throw ParseError(lineno, key, "unknown key");
    if (entries.count(key)) throw ParseError(lineno, key, "duplicate key");
    if (value.empty()) throw ParseError(lineno, key, "missing value");
    entries[key] = {lineno, value};
  }

  SweepSpec spec;
  ScenarioConfig& c = spec.base;
  auto has = [&](const char* k) { return entries.count(k) > 0; };
  auto reader = [&](const char* k) { return Reader(entries.at(k).first, k); };
  auto val = [&](const char* k) -> std::string_view { return entries.at(k).second; };

  for (const char* k : {"Na", "Nb", "Ne", "Pa", "d"})
    if (!has(k)) throw ParseError(lineno, k, "missing required field");
  if (!has("Pe") && !has("pe_over_pa"))
    throw ParseError(lineno, "Pe", "missing required field (or set pe_over_pa)");

  c.Na = reader("Na").integer(val("Na"));
  c.Nb = reader("Nb").integer(val("Nb"));
  c.Ne = reader("Ne").integer(val("Ne"));
  c.d = reader("d").integer(val("d"));
  c.Pa = reader("Pa").power(val("Pa"));
  if (has("pe_over_pa")) {
    spec.pe_over_pa = reader("pe_over_pa").power(val("pe_over_pa"));
    c.Pe = *spec.pe_over_pa * c.Pa;
  }
  if (has("Pe")) {
    if (spec.pe_over_pa) reader("Pe").fail("give either Pe or pe_over_pa, not both");
    c.Pe = reader("Pe").power(val("Pe"));
  }
  if (has("g1")) c.g1 = reader("g1").number(val("g1"));
  if (has("g2")) c.g2 = reader("g2").number(val("g2"));
  if (has("sigma_b2")) c.sigma_b2 = reader("sigma_b2").power(val("sigma_b2"));
  if (has("sigma_e2")) c.sigma_e2 = reader("sigma_e2").power(val("sigma_e2"));
  if (has("trials")) c.trials = reader("trials").integer(val("trials"));
  if (has("seed")) {
    const double s = reader("seed").number(val("seed"));
    if (s < 0 || s != std::floor(s) || s > 9.007199254740992e15)
      reader("seed").fail("expected a non-negative integer");
    c.seed = static_cast<std::uint64_t>(s);
  }

  // Validate the range-checked fields against the key that set them.
  try {
    c.validate();
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    const std::string field = msg.substr(0, msg.find(':'));
    const int line = entries.count(field) ? entries.at(field).first : lineno;
    throw ParseError(line, field, msg.substr(msg.find(':') + 2));
  }

  spec.search = PowerSplitSearch::defaults(c);
  if (has("rho")) {
    Reader r = reader("rho");
    const double rho = r.number(val("rho"));
    if (!(rho > 0.0 && rho <= 1.0)) r.fail("must lie in (0, 1]");
    c.rho = rho;
    spec.search.rho_grid = {rho};
  } else if (has("rho_step")) {
    Reader r = reader("rho_step");
    const double step = r.number(val("rho_step"));
    if (!(step > 0.0 && step <= 1.0)) r.fail("must lie in (0, 1]");
    spec.search.rho_grid.clear();
    for (int k = 1; k * step < 1.0 - 1e-9; ++k) spec.search.rho_grid.push_back(k * step);
    spec.search.rho_grid.push_back(1.0);
  }
  if (has("d_candidates")) {
    Reader r = reader("d_candidates");
    spec.search.d_candidates.clear();
    for (auto item : split_list(val("d_candidates"))) {
      const int d = r.integer(item);
      if (d < 1 || d > c.rank()) r.fail("each d must lie in [1, min(Na, Nb)]");
      spec.search.d_candidates.push_back(d);
    }
    if (spec.search.d_candidates.empty()) r.fail("empty list");
  }
  if (has("clip")) {
    const auto v = val("clip");
    if (v == "per_draw")
      spec.search.clip = ClipMode::PerDraw;
    else if (v == "mean")
      spec.search.clip = ClipMode::Mean;
    else
      reader("clip").fail("expected per_draw or mean");
  }
  spec.play.clip = spec.search.clip;
  if (has("M")) {
    spec.sensing_samples = reader("M").integer(val("M"));
    if (spec.sensing_samples < 0) reader("M").fail("must be non-negative");
  }
  if (has("sensing_transmit")) {
    const auto v = val("sensing_transmit");
    if (v == "maximin")
      spec.play.sensing_transmit = SensingTransmit::MaximinDraw;
    else if (v == "full")
      spec.play.sensing_transmit = SensingTransmit::Full;
    else if (v == "artificial")
      spec.play.sensing_transmit = SensingTransmit::Artificial;
    else
      reader("sensing_transmit").fail("expected maximin, full or artificial");
  }

  spec.outputs = default_outputs();
  if (has("outputs")) {
    Reader r = reader("outputs");
    spec.outputs.clear();
    for (auto item : split_list(val("outputs"))) {
      const auto o = output_from_string(item);
      if (!o) r.fail("unknown output '" + std::string(item) + "'");
      if (std::find(spec.outputs.begin(), spec.outputs.end(), *o) != spec.outputs.end())
        r.fail("duplicate output '" + std::string(item) + "'");
      spec.outputs.push_back(*o);
    }
    if (spec.outputs.empty()) r.fail("empty list");
  }

  if (has("sweep")) {
    Reader r = reader("sweep");
    const auto v = val("sweep");
    if (v == "Pa")
      spec.swept_parameter = SweepParameter::Pa;
    else if (v == "Pe_over_Pa")
      spec.swept_parameter = SweepParameter::Pe_over_Pa;
    else if (v == "Ne_over_Na")
      spec.swept_parameter = SweepParameter::Ne_over_Na;
    else if (v == "M")
      spec.swept_parameter = SweepParameter::M;
    else
      r.fail("expected Pa, Pe_over_Pa, Ne_over_Na or M");
    if (!has("values")) throw ParseError(entries.at("sweep").first, "values", "missing required field for sweep");
  }
  if (has("values")) {
    Reader r = reader("values");
    if (spec.swept_parameter == SweepParameter::None) r.fail("values given without sweep");
    for (auto item : split_list(val("values"))) {
      const bool power_like = spec.swept_parameter == SweepParameter::Pa ||
                              spec.swept_parameter == SweepParameter::Pe_over_Pa;
      spec.values.push_back(power_like ? r.power(item) : r.number(item));
    }
    if (spec.values.empty()) r.fail("empty list");
    for (std::size_t i = 1; i < spec.values.size(); ++i)
      if (!(spec.values[i] > spec.values[i - 1])) r.fail("values must be strictly increasing");
    for (double x : spec.values) {
      try {
        derive_point(spec, x);
      } catch (const ConfigError& e) {
        r.fail(e.what());
      }
    }
  }
  return spec;
}

SweepSpec parse_scenario_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_scenario_text(buf.str());
}

}  // namespace wiretap
