#pragma once

// JSON and CSV forms of profiles, run configurations and reports. Integers
// and rationals are written as decimal strings ("p/q" for rationals) so
// nothing passes through a float.

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "besicovitch/audit.hpp"
#include "besicovitch/cf_engine.hpp"
#include "besicovitch/dimension.hpp"
#include "besicovitch/dynamics.hpp"
#include "besicovitch/exact.hpp"
#include "besicovitch/params.hpp"
#include "besicovitch/targets.hpp"

namespace besicovitch {

using Json = nlohmann::ordered_json;

inline Json to_json(const LevelParams& lv) {
  return Json{{"n", lv.n},
              {"k", lv.k},
              {"p", to_string(lv.p)},
              {"q", to_string(lv.q)},
              {"q_next", to_string(lv.q_next)},
              {"A", to_string(lv.A)}};
}

inline Json to_json(const Profile& prof) {
  Json levels = Json::array();
  for (const auto& lv : prof.levels) levels.push_back(to_json(lv));
  return Json{{"alpha", prof.alpha.str()},
              {"strategy", to_string(prof.strategy)},
              {"variant", to_string(prof.variant)},
              {"n_max", prof.n_max},
              {"levels", levels}};
}

/// Reads a profile and checks every level against the continued fraction
/// and the scale rule of its variant.
inline Profile profile_from_json(const Json& j) {
  Profile prof;
  prof.alpha = IrrationalSpec::parse(j.at("alpha").get<std::string>());
  prof.strategy = parse_strategy(j.at("strategy").get<std::string>());
  prof.variant = parse_variant(j.at("variant").get<std::string>());
  prof.n_max = j.at("n_max").get<std::size_t>();
  ConvergentSequence cf(prof.alpha, 8);
  for (const auto& e : j.at("levels")) {
    LevelParams lv;
    lv.n = e.at("n").get<std::size_t>();
    lv.k = e.at("k").get<std::size_t>();
    lv.p = parse_integer(e.at("p").get<std::string>());
    lv.q = parse_integer(e.at("q").get<std::string>());
    lv.q_next = parse_integer(e.at("q_next").get<std::string>());
    lv.A = parse_integer(e.at("A").get<std::string>());
    if (lv.n != prof.levels.size() + 1) throw std::invalid_argument("profile levels out of order");
    cf.extend_to(lv.k + 1);
    if (lv.p != cf.p(lv.k) || lv.q != cf.q(lv.k) || lv.q_next != cf.q(lv.k + 1)) {
      throw std::invalid_argument("level " + std::to_string(lv.n) + " disagrees with the convergents of alpha");
    }
    if (lv.A != detail::scale_factor(prof.variant, lv.n, lv.q_next)) {
      throw std::invalid_argument("level " + std::to_string(lv.n) + " has the wrong scale factor");
    }
    prof.levels.push_back(std::move(lv));
  }
  return prof;
}

enum class OutputFormat { csv, json };

inline std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

inline OutputFormat parse_output_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown output format '" + s + "'");
}

/// Everything that determines a run. Defaults:
///   alpha golden, strategy greedy, variant main, n_max 4, alpha_depth auto,
///   truncation n_max + 3, precision 128 bits, csv, seed 1,
///   enumeration cap 10^7 intervals, grid cap 2^28 cells.
struct RunConfig {
  std::string alpha = "golden";
  Strategy strategy = Strategy::greedy;
  Variant variant = Variant::main;
  std::size_t n_max = 4;
  std::optional<std::size_t> alpha_depth;
  std::optional<std::size_t> truncation;
  unsigned precision_bits = 128;
  OutputFormat out = OutputFormat::csv;
  std::uint64_t seed = 1;
  std::string enumeration_cap = "10000000";
  std::uint64_t grid_cap = std::uint64_t(1) << 28;

  bool operator==(const RunConfig&) const = default;
};

inline Json to_json(const RunConfig& c) {
  Json j{{"alpha", c.alpha},
         {"strategy", to_string(c.strategy)},
         {"variant", to_string(c.variant)},
         {"n_max", c.n_max},
         {"alpha_depth", nullptr},
         {"truncation", nullptr},
         {"precision_bits", c.precision_bits},
         {"out", to_string(c.out)},
         {"seed", c.seed},
         {"enumeration_cap", c.enumeration_cap},
         {"grid_cap", c.grid_cap}};
  if (c.alpha_depth) j["alpha_depth"] = *c.alpha_depth;
  if (c.truncation) j["truncation"] = *c.truncation;
  return j;
}

/// Keys absent from `j` keep their defaults; unknown keys are rejected.
inline RunConfig run_config_from_json(const Json& j, RunConfig base = {}) {
  static const std::vector<std::string> known = {"alpha",          "strategy", "variant", "n_max",
                                                 "alpha_depth",    "truncation", "precision_bits",
                                                 "out",            "seed",     "enumeration_cap",
                                                 "grid_cap"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const auto& k : known) ok = ok || k == it.key();
    if (!ok) throw std::invalid_argument("unknown config key '" + it.key() + "'");
  }
  RunConfig c = base;
  if (j.contains("alpha")) c.alpha = j["alpha"].get<std::string>();
  if (j.contains("strategy")) c.strategy = parse_strategy(j["strategy"].get<std::string>());
  if (j.contains("variant")) c.variant = parse_variant(j["variant"].get<std::string>());
  if (j.contains("n_max")) c.n_max = j["n_max"].get<std::size_t>();
  if (j.contains("alpha_depth")) {
    c.alpha_depth = j["alpha_depth"].is_null() ? std::nullopt
                                               : std::optional<std::size_t>(j["alpha_depth"].get<std::size_t>());
  }
  if (j.contains("truncation")) {
    c.truncation = j["truncation"].is_null() ? std::nullopt
                                             : std::optional<std::size_t>(j["truncation"].get<std::size_t>());
  }
  if (j.contains("precision_bits")) c.precision_bits = j["precision_bits"].get<unsigned>();
  if (j.contains("out")) c.out = parse_output_format(j["out"].get<std::string>());
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("enumeration_cap")) {
    const auto& v = j["enumeration_cap"];
    c.enumeration_cap = v.is_string() ? v.get<std::string>() : std::to_string(v.get<std::uint64_t>());
    parse_integer(c.enumeration_cap);
  }
  if (j.contains("grid_cap")) c.grid_cap = j["grid_cap"].get<std::uint64_t>();
  return c;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return Json::parse(in);
}

/// Minimal CSV writer: fields containing separators or quotes are quoted.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(&os) {}

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) *os_ << ',';
      *os_ << quote(fields[i]);
    }
    *os_ << '\n';
  }

 private:
  static std::string quote(const std::string& f) {
    if (f.find_first_of(",\"\n") == std::string::npos) return f;
    std::string out = "\"";
    for (char c : f) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  }
  std::ostream* os_;
};

inline Json to_json(const Certificate& c) {
  return Json{{"name", c.name},
              {"n", c.n},
              {"value", to_string(c.value)},
              {"relation", to_string(c.relation)},
              {"bound", to_string(c.bound)},
              {"passed", c.passed},
              {"required", c.required}};
}

inline Json to_json(const DivergenceReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"l", row.l},
                        {"term", to_string(row.term)},
                        {"sign", row.sign},
                        {"required_sign", row.required_sign},
                        {"bound", row.bound ? Json(to_string(*row.bound)) : Json(nullptr)},
                        {"error", to_string(row.error)},
                        {"checked", row.checked},
                        {"verdict", to_string(row.verdict)}});
  }
  Json path = Json::array();
  for (const auto& j : r.path.j) path.push_back(to_string(j));
  Json out{{"kind", to_string(r.kind)},
           {"family", r.pair.code()},
           {"x", to_string(r.x)},
           {"path", path},
           {"m", r.m},
           {"n_of_m", r.n_of_m},
           {"window", Json{{"lo", to_string(r.window.lo)}, {"hi", to_string(r.window.hi)}}},
           {"rows", rows},
           {"head", to_string(r.head)},
           {"tail", to_string(r.tail)},
           {"total", to_string(r.total)},
           {"substitution_budget", to_string(r.substitution_budget)},
           {"truncation_budget", to_string(r.truncation_budget)},
           {"budget", to_string(r.budget)},
           {"one_sided_tail", r.one_sided_tail},
           {"expected_sign", r.expected_sign},
           {"certified_lower", to_string(r.certified_lower)},
           {"target_bound", to_string(r.target_bound)},
           {"bound_consistent", r.bound_consistent},
           {"status", to_string(r.status)},
           {"margin_too_thin", r.margin_too_thin}};
  if (r.kind == FamilyKind::aligned) {
    out["shift"] = to_string(r.shift);
    out["shift_verdict"] = to_string(r.shift_verdict);
  } else {
    out["head_upper"] = to_string(r.head_upper);
    out["tail_lower"] = to_string(r.tail_lower);
    out["tail_dominates"] = r.tail_dominates;
  }
  return out;
}

inline std::vector<std::string> report_csv_header() {
  return {"m", "n_of_m", "l", "term", "sign", "bound", "pass"};
}

inline void write_report_csv(CsvWriter& w, const DivergenceReport& r) {
  for (const auto& row : r.rows) {
    std::string pass = row.checked ? to_string(row.verdict) : "unchecked";
    w.row({std::to_string(r.m), std::to_string(r.n_of_m), std::to_string(row.l), to_string(row.term),
           std::to_string(row.sign), row.bound ? to_string(*row.bound) : "", pass});
  }
}

inline std::string decimal(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

/// Dimension columns are outward-rounded doubles: lower bounds round down,
/// upper bounds round up. The JSON form carries the exact enclosures.
inline std::vector<std::string> dimension_csv_header() {
  return {"n", "delta", "epsilon", "m", "mbar", "lower", "upper", "closed_lower", "closed_upper"};
}

inline void write_dimension_csv(CsvWriter& w, const NestingStats& stats, const DimensionBounds& b) {
  for (const auto& row : b.rows) {
    const auto& lv = stats.level(row.n);
    w.row({std::to_string(row.n), to_string(lv.delta), to_string(lv.epsilon), to_string(lv.m()),
           to_string(lv.mbar()), decimal(row.lower.lo_d()), decimal(row.upper.hi_d()),
           decimal(row.closed_lower.lo_d()), decimal(row.closed_upper.hi_d())});
  }
}

inline Json to_json(const Enclosure& e) {
  return Json{{"lo", to_string(e.lo)}, {"hi", to_string(e.hi)}, {"lo_d", e.lo_d()}, {"hi_d", e.hi_d()}};
}

inline Json to_json(const NestingStats& stats, const DimensionBounds& b) {
  Json levels = Json::array();
  for (const auto& lv : stats.levels) {
    Json e{{"n", lv.n},
           {"cells", to_string(lv.cells)},
           {"delta", to_string(lv.delta)},
           {"epsilon", to_string(lv.epsilon)},
           {"epsilon_weak", to_string(lv.epsilon_weak)}};
    if (lv.n >= 2) {
      e["m"] = to_string(lv.m());
      e["mbar"] = to_string(lv.mbar());
      e["m_formula"] = to_string(lv.m_formula);
      e["mbar_formula"] = to_string(lv.mbar_formula);
    }
    levels.push_back(e);
  }
  Json rows = Json::array();
  for (const auto& r : b.rows) {
    rows.push_back(Json{{"n", r.n},
                        {"lower", to_json(r.lower)},
                        {"upper", to_json(r.upper)},
                        {"closed_lower", to_json(r.closed_lower)},
                        {"closed_upper", to_json(r.closed_upper)},
                        {"product_lower", 1 + r.lower.lo_d()}});
  }
  return Json{{"family", stats.pair.code()}, {"mode", to_string(stats.mode)}, {"levels", levels}, {"bounds", rows}};
}

inline Json to_json(const ProbeResult& r) {
  Json j{{"kind", to_string(r.kind)},
         {"eps", r.eps},
         {"delta", r.delta},
         {"horizon", r.horizon},
         {"samples", r.samples},
         {"seed", r.seed},
         {"precision_bits", r.precision_bits},
         {"outcome", r.outcome},
         {"min_distance", r.min_distance},
         {"argmin", r.argmin},
         {"error_bound", r.error_bound},
         {"witness", nullptr}};
  if (r.witness) {
    j["witness"] = Json{{"step", r.witness->step},
                        {"x", to_string(r.witness->x)},
                        {"t", to_string(r.witness->t)},
                        {"distance", r.witness->distance},
                        {"source", r.witness->source},
                        {"reverified", r.witness->reverified}};
  }
  return j;
}

}  // namespace besicovitch
