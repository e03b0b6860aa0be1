// besicovitch: command-line front end.
//
//   besicovitch cf        --alpha golden --upto 10
//   besicovitch levels    --strategy fixed --n 3
//   besicovitch eval      --x 1/7
//   besicovitch sum       --variant tent --x 1/7 --m 25
//   besicovitch target    --family pm --n 3
//   besicovitch audit     --family pp --n 3 --depth 5 --m-range -200:200
//   besicovitch dimension --strategy fixed --n 9
//   besicovitch orbit     --variant tent --x 1/4 --horizon 1000
//   besicovitch probe     --kind sensitivity --x 1/4 --delta 1/1000 --eps 1
//   besicovitch config    (prints the effective run configuration)
//
// Exit codes: 0 success, 1 usage error, 2 certificate failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "besicovitch.hpp"

namespace bz = besicovitch;

namespace {

constexpr int kUsage = 1;
constexpr int kCertificate = 2;

struct Args {
  std::string alpha, strategy, variant;
  std::size_t n = 0;
  std::size_t depth = 0;
  std::size_t alpha_depth = 0;
  std::size_t trunc = 0;
  unsigned precision_bits = 0;
  long m = 0;
  std::string m_range;
  std::string family = "pp";
  std::string x;
  std::string t = "0";
  std::uint64_t grid = 0;
  std::size_t horizon = 1000;
  std::string eps = "1/10";
  std::string delta = "1/1000";
  std::uint64_t seed = 0;
  std::string out;
  std::string config;
  std::size_t upto = 10;
  std::string kind;
  std::string mode = "formula";
  std::string policy = "center";
  std::size_t samples = 32;
  double height = 3;
  std::size_t threads = 0;
};

struct Context {
  bz::RunConfig cfg;
  Args a;
  const CLI::App* app = nullptr;

  bool given(const std::string& name) const { return app->get_option(name)->count() > 0; }

  bz::Profile profile() const {
    return bz::select_levels(bz::IrrationalSpec::parse(cfg.alpha), cfg.strategy, cfg.variant, cfg.n_max);
  }

  bz::CocycleSpec cocycle(const bz::Profile& prof) const {
    bz::CocycleOptions opts;
    opts.truncation = cfg.truncation;
    opts.alpha_depth = cfg.alpha_depth;
    return bz::CocycleSpec(prof, opts);
  }

  bz::Rational x() const {
    if (a.x.empty()) throw CLI::ValidationError("--x", "this subcommand needs --x p/q");
    bz::Rational v = bz::parse_rational(a.x);
    if (v < 0 || v >= 1) throw CLI::ValidationError("--x", "x must lie in [0, 1)");
    return v;
  }

  /// --m-range lo:hi if given, otherwise the single --m.
  std::pair<long, long> m_range() const {
    if (!a.m_range.empty()) {
      auto colon = a.m_range.find(':');
      if (colon == std::string::npos) throw CLI::ValidationError("--m-range", "expected lo:hi");
      long lo = std::stol(a.m_range.substr(0, colon));
      long hi = std::stol(a.m_range.substr(colon + 1));
      if (lo > hi) throw CLI::ValidationError("--m-range", "lo exceeds hi");
      return {lo, hi};
    }
    if (!given("--m")) throw CLI::ValidationError("--m", "this subcommand needs --m or --m-range");
    return {a.m, a.m};
  }

  bool csv() const { return cfg.out == bz::OutputFormat::csv; }
};

void print_json(const bz::Json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_config(const Context& ctx) {
  print_json(bz::to_json(ctx.cfg));
  return 0;
}

int cmd_cf(const Context& ctx) {
  auto spec = bz::IrrationalSpec::parse(ctx.cfg.alpha);
  bz::ConvergentSequence cf(spec, ctx.a.upto + 1);
  if (ctx.csv()) {
    bz::CsvWriter w(std::cout);
    w.row({"n", "a", "p", "q"});
    for (std::size_t n = 0; n <= ctx.a.upto; ++n) {
      w.row({std::to_string(n), std::to_string(spec.quotient(n)), bz::to_string(cf.p(n)), bz::to_string(cf.q(n))});
    }
    return 0;
  }
  bz::Json rows = bz::Json::array();
  for (std::size_t n = 0; n <= ctx.a.upto; ++n) {
    rows.push_back({{"n", n}, {"a", spec.quotient(n)}, {"p", bz::to_string(cf.p(n))}, {"q", bz::to_string(cf.q(n))}});
  }
  print_json({{"alpha", spec.str()}, {"convergents", rows}});
  return 0;
}

int cmd_levels(const Context& ctx) {
  auto prof = ctx.profile();
  auto val = bz::validate_levels(prof);
  if (ctx.csv()) {
    bz::CsvWriter w(std::cout);
    if (ctx.a.kind == "certificates") {
      w.row({"name", "n", "value", "relation", "bound", "passed", "required"});
      for (const auto& c : val.certificates) {
        w.row({c.name, std::to_string(c.n), bz::to_string(c.value), bz::to_string(c.relation),
               bz::to_string(c.bound), c.passed ? "true" : "false", c.required ? "true" : "false"});
      }
    } else {
      w.row({"n", "k", "p", "q", "q_next", "A", "cells"});
      for (const auto& lv : prof.levels) {
        w.row({std::to_string(lv.n), std::to_string(lv.k), bz::to_string(lv.p), bz::to_string(lv.q),
               bz::to_string(lv.q_next), bz::to_string(lv.A), bz::to_string(lv.cells())});
      }
    }
  } else {
    bz::Json certs = bz::Json::array();
    for (const auto& c : val.certificates) certs.push_back(bz::to_json(c));
    print_json({{"profile", bz::to_json(prof)}, {"certificates", certs}, {"passed", val.passed()}});
  }
  if (!val.passed()) {
    std::cerr << "certificate failed: " << val.first_failure()->describe() << '\n';
    return kCertificate;
  }
  return 0;
}

int cmd_eval(const Context& ctx) {
  auto prof = ctx.profile();
  auto c = ctx.cocycle(prof);
  auto x = ctx.x();
  std::vector<bz::Rational> values;
  for (std::size_t l = 1; l <= c.truncation(); ++l) values.push_back(c.shape(l).value(x));
  bz::Rational total = bz::phi(c, x);
  if (ctx.csv()) {
    bz::CsvWriter w(std::cout);
    w.row({"l", "f_l(x)", "f_l(x+alpha_hat)-f_l(x)"});
    for (std::size_t l = 1; l <= c.truncation(); ++l) {
      w.row({std::to_string(l), bz::to_string(values[l - 1]), bz::to_string(bz::term(c, l, x, c.alpha_hat()))});
    }
    w.row({"phi", "", bz::to_string(total)});
    return 0;
  }
  bz::Json levels = bz::Json::array();
  for (std::size_t l = 1; l <= c.truncation(); ++l) {
    levels.push_back({{"l", l},
                      {"value", bz::to_string(values[l - 1])},
                      {"difference", bz::to_string(bz::term(c, l, x, c.alpha_hat()))}});
  }
  print_json({{"x", bz::to_string(x)},
              {"alpha_hat", bz::to_string(c.alpha_hat())},
              {"alpha_depth", c.alpha_depth()},
              {"truncation", c.truncation()},
              {"levels", levels},
              {"phi", bz::to_string(total)},
              {"tail_bound", bz::to_string(c.phi_tail_bound())},
              {"substitution_budget", bz::to_string(c.substitution_budget(1))}});
  return 0;
}

int cmd_sum(const Context& ctx) {
  auto prof = ctx.profile();
  auto c = ctx.cocycle(prof);
  auto x = ctx.x();
  auto [lo, hi] = ctx.m_range();
  bool all_equal = true;
  struct Row {
    long m;
    bz::Rational direct, telescoped;
  };
  std::vector<long> ms;
  for (long m = lo; m <= hi; ++m) ms.push_back(m);
  auto rows = bz::parallel_map(
      ms.size(), [&](std::size_t i) { return Row{ms[i], bz::birkhoff(c, x, ms[i]), bz::phi_m(c, x, ms[i])}; },
      ctx.a.threads);
  for (const auto& r : rows) all_equal = all_equal && r.direct == r.telescoped;
  if (ctx.csv()) {
    bz::CsvWriter w(std::cout);
    w.row({"m", "phi_m", "birkhoff", "equal", "budget"});
    for (const auto& r : rows) {
      w.row({std::to_string(r.m), bz::to_string(r.telescoped), bz::to_string(r.direct),
             r.direct == r.telescoped ? "true" : "false", bz::to_string(c.budget(r.m))});
    }
  } else {
    bz::Json out = bz::Json::array();
    for (const auto& r : rows) {
      out.push_back({{"m", r.m},
                     {"phi_m", bz::to_string(r.telescoped)},
                     {"birkhoff", bz::to_string(r.direct)},
                     {"equal", r.direct == r.telescoped},
                     {"budget", bz::to_string(c.budget(r.m))}});
    }
    print_json({{"x", bz::to_string(x)}, {"alpha_hat", bz::to_string(c.alpha_hat())}, {"sums", out}});
  }
  if (!all_equal) {
    std::cerr << "certificate failed: telescoped and direct sums differ\n";
    return kCertificate;
  }
  return 0;
}

bz::SamplePolicy parse_policy(const std::string& s) {
  if (s == "leftmost") return bz::SamplePolicy::leftmost;
  if (s == "center") return bz::SamplePolicy::center;
  throw CLI::ValidationError("--policy", "expected leftmost or center");
}

int cmd_target(const Context& ctx) {
  auto prof = ctx.profile();
  auto pair = bz::SignPair::parse(ctx.a.family);
  if (!ctx.a.x.empty()) {
    auto x = ctx.x();
    auto mem = bz::member(prof, pair, x, prof.depth());
    if (ctx.csv()) {
      bz::CsvWriter w(std::cout);
      w.row({"n", "j", "lo", "hi"});
      for (std::size_t i = 0; i < mem.j.size(); ++i) {
        auto iv = bz::interval(prof, pair, i + 1, mem.j[i]);
        w.row({std::to_string(i + 1), bz::to_string(iv.j), bz::to_string(iv.lo), bz::to_string(iv.hi)});
      }
    } else {
      bz::Json js = bz::Json::array();
      for (const auto& j : mem.j) js.push_back(bz::to_string(j));
      print_json({{"family", pair.code()}, {"x", bz::to_string(x)}, {"member", mem.member}, {"path", js}});
    }
    return 0;
  }
  std::size_t depth = ctx.a.depth ? ctx.a.depth : prof.depth();
  auto s = bz::sample_point(prof, pair, parse_policy(ctx.a.policy), depth);
  if (ctx.csv()) {
    bz::CsvWriter w(std::cout);
    w.row({"n", "j", "lo", "hi", "children", "reduction"});
    for (std::size_t n = 1; n <= s.depth(); ++n) {
      auto iv = bz::interval(prof, pair, n, s.path.j[n - 1]);
      std::string kids = n < prof.depth() ? bz::to_string(bz::child_count(prof, pair, n, iv.j)) : "";
      w.row({std::to_string(n), bz::to_string(iv.j), bz::to_string(iv.lo), bz::to_string(iv.hi), kids,
             bz::to_string(s.reductions[n - 1])});
    }
    return 0;
  }
  bz::Json levels = bz::Json::array();
  for (std::size_t n = 1; n <= s.depth(); ++n) {
    auto iv = bz::interval(prof, pair, n, s.path.j[n - 1]);
    levels.push_back({{"n", n},
                      {"j", bz::to_string(iv.j)},
                      {"lo", bz::to_string(iv.lo)},
                      {"hi", bz::to_string(iv.hi)},
                      {"reduction", bz::to_string(s.reductions[n - 1])}});
  }
  print_json({{"family", pair.code()}, {"x", bz::to_string(s.x)}, {"levels", levels}});
  return 0;
}

int cmd_audit(const Context& ctx) {
  auto prof = ctx.profile();
  auto c = ctx.cocycle(prof);
  auto pair = bz::SignPair::parse(ctx.a.family);
  std::size_t depth = ctx.a.depth ? ctx.a.depth : std::min(c.truncation(), prof.depth() + 1);
  auto sample = bz::sample_point(c.profile(), pair, parse_policy(ctx.a.policy), depth);
  bz::AuditContext actx(c, pair, sample);
  auto [lo, hi] = ctx.m_range();
  std::vector<bz::DivergenceReport> reports;
  if (lo == hi) {
    reports.push_back(bz::audit(actx, lo));
  } else {
    reports = bz::audit_range(actx, lo, hi, ctx.a.threads);
  }
  std::size_t certified = 0;
  for (const auto& r : reports) certified += r.status == bz::Verdict::pass;
  if (ctx.csv()) {
    bz::CsvWriter w(std::cout);
    w.row(bz::report_csv_header());
    for (const auto& r : reports) bz::write_report_csv(w, r);
  } else {
    bz::Json out = bz::Json::array();
    for (const auto& r : reports) out.push_back(bz::to_json(r));
    print_json({{"family", pair.code()},
                {"x", bz::to_string(sample.x)},
                {"reports", out},
                {"audited", reports.size()},
                {"certified", certified}});
  }
  std::cerr << certified << " of " << reports.size() << " shifts certified\n";
  return certified == reports.size() ? 0 : kCertificate;
}

int cmd_dimension(const Context& ctx) {
  auto prof = ctx.profile();
  auto pair = bz::SignPair::parse(ctx.a.family);
  auto mode = bz::parse_count_mode(ctx.a.mode);
  bz::NestingOptions nopts;
  nopts.cap = bz::parse_integer(ctx.cfg.enumeration_cap);
  auto stats = bz::nesting_stats(prof, mode, pair, nopts);
  auto bounds = bz::falconer_bounds(stats);
  std::optional<bz::BoxCount> boxes;
  if (ctx.a.grid) {
    bz::BoxCountOptions bopts;
    bopts.grid_cap = ctx.cfg.grid_cap;
    bopts.interval_cap = nopts.cap;
    std::size_t n = ctx.a.depth ? ctx.a.depth : 2;
    boxes = bz::box_count(prof, pair, n, ctx.a.grid, bopts);
  }
  if (ctx.csv()) {
    bz::CsvWriter w(std::cout);
    w.row(bz::dimension_csv_header());
    bz::write_dimension_csv(w, stats, bounds);
    if (boxes) {
      std::cerr << "box-counting slope at level " << boxes->n << ": " << bz::decimal(boxes->slope) << '\n';
    }
  } else {
    bz::Json j = bz::to_json(stats, bounds);
    j["ordered"] = bounds.ordered();
    j["sandwiched"] = stats.sandwiched();
    if (boxes) {
      bz::Json counts = bz::Json::array();
      for (auto [g, k] : boxes->counts) counts.push_back({{"grid", g}, {"occupied", k}});
      j["box_count"] = {{"n", boxes->n}, {"counts", counts}, {"slope", boxes->slope}};
    }
    print_json(j);
  }
  if (!bounds.ordered() || !stats.sandwiched()) {
    std::cerr << "certificate failed: bounds out of order or counts outside the formula sandwich\n";
    return kCertificate;
  }
  return 0;
}

int cmd_orbit(const Context& ctx) {
  auto prof = ctx.profile();
  auto c = ctx.cocycle(prof);
  auto x = ctx.x();
  auto t0 = bz::parse_rational(ctx.a.t);
  auto rec = bz::orbit(c, x, t0, ctx.a.horizon, ctx.cfg.precision_bits);
  if (ctx.csv()) {
    bz::CsvWriter w(std::cout);
    w.row({"step", "x", "t"});
    for (std::size_t i = 0; i < rec.points.size(); ++i) {
      w.row({std::to_string(i), bz::decimal(rec.points[i].x), bz::decimal(rec.points[i].t)});
    }
    std::cerr << "rounding bound " << bz::decimal(rec.rounding_bound.get_d()) << ", model bound "
              << bz::decimal(rec.model_bound.get_d()) << '\n';
    return 0;
  }
  bz::Json j{{"x0", bz::to_string(x)},
             {"t0", bz::to_string(t0)},
             {"steps", rec.steps},
             {"precision_bits", rec.precision_bits},
             {"final", {{"x", rec.points.back().x}, {"t", rec.points.back().t}}},
             {"t_final_exact_state", bz::to_string(rec.t_at(rec.steps))},
             {"rounding_bound", bz::to_string(rec.rounding_bound)},
             {"model_bound", bz::to_string(rec.model_bound)}};
  if (ctx.a.grid) j["coverage"] = {{"grid", ctx.a.grid}, {"height", ctx.a.height},
                                   {"fraction", bz::coverage(rec, ctx.a.height, ctx.a.grid)}};
  print_json(j);
  return 0;
}

int cmd_probe(const Context& ctx) {
  auto prof = ctx.profile();
  auto c = ctx.cocycle(prof);
  auto x = ctx.x();
  auto t0 = bz::parse_rational(ctx.a.t);
  auto eps = bz::parse_rational(ctx.a.eps);
  std::string kind = ctx.a.kind.empty() ? "sensitivity" : ctx.a.kind;
  if (kind == "classify") {
    bz::ClassifyThresholds th;
    th.precision_bits = ctx.cfg.precision_bits;
    auto cl = bz::classify_orbit(c, x, ctx.a.horizon, th, t0);
    if (ctx.csv()) {
      bz::CsvWriter w(std::cout);
      w.row({"label", "min_late", "max_late", "error_bound"});
      w.row({bz::to_string(cl.label), bz::decimal(cl.min_late), bz::decimal(cl.max_late),
             bz::decimal(cl.error_bound)});
    } else {
      print_json({{"kind", "classification"},
                  {"label", bz::to_string(cl.label)},
                  {"min_late", cl.min_late},
                  {"max_late", cl.max_late},
                  {"error_bound", cl.error_bound}});
    }
    return 0;
  }
  bz::ProbeResult r;
  if (kind == "nonrecurrence") {
    r = bz::nonrecurrence_test(c, x, t0, eps, ctx.a.horizon, ctx.cfg.precision_bits);
  } else if (kind == "sensitivity") {
    bz::SensitivityOptions opts;
    opts.samples = ctx.a.samples;
    opts.seed = ctx.cfg.seed;
    opts.precision_bits = ctx.cfg.precision_bits;
    r = bz::sensitivity_probe(c, x, t0, bz::parse_rational(ctx.a.delta), eps, ctx.a.horizon, opts);
  } else {
    throw CLI::ValidationError("--kind", "probe kind must be sensitivity, nonrecurrence or classify");
  }
  if (ctx.csv()) {
    bz::CsvWriter w(std::cout);
    w.row({"kind", "outcome", "eps", "delta", "horizon", "min_distance", "argmin", "error_bound", "witness_step",
           "witness_x", "witness_source"});
    w.row({bz::to_string(r.kind), r.outcome, bz::decimal(r.eps), bz::decimal(r.delta), std::to_string(r.horizon),
           bz::decimal(r.min_distance), std::to_string(r.argmin), bz::decimal(r.error_bound),
           r.witness ? std::to_string(r.witness->step) : "", r.witness ? bz::to_string(r.witness->x) : "",
           r.witness ? r.witness->source : ""});
  } else {
    print_json(bz::to_json(r));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Besicovitch cocycles over circle rotations: exact certificates and dynamics"};
  app.require_subcommand(1);
  Context ctx;
  Args& a = ctx.a;
  ctx.app = &app;

  app.add_option("--alpha", a.alpha, "golden | sqrt2m1 | quotients=a1,a2,... | periodic=head;tail");
  app.add_option("--strategy", a.strategy, "level selection: fixed | greedy")
      ->check(CLI::IsMember({"fixed", "greedy"}));
  app.add_option("--variant,--profile", a.variant, "cocycle shape: main | tent")
      ->check(CLI::IsMember({"main", "tent"}));
  app.add_option("--n", a.n, "number of construction levels (n_max)")->check(CLI::PositiveNumber);
  app.add_option("--depth", a.depth, "sample depth (target, audit) or box-count level (dimension)");
  app.add_option("--alpha-depth", a.alpha_depth, "convergent index N with alpha_hat = p_N/q_N");
  app.add_option("--trunc", a.trunc, "number of levels summed in the cocycle");
  app.add_option("--precision-bits", a.precision_bits, "fixed-point precision for orbits")
      ->check(CLI::Range(64u, 1u << 20));
  app.add_option("--m", a.m, "iterate count");
  app.add_option("--m-range", a.m_range, "iterate range lo:hi (inclusive)");
  app.add_option("--family", a.family, "target family: pp | mm | pm | mp")
      ->check(CLI::IsMember({"pp", "mm", "pm", "mp"}));
  app.add_option("--x", a.x, "base point p/q in [0, 1)");
  app.add_option("--t", a.t, "initial fibre coordinate (orbit, probe)");
  app.add_option("--grid", a.grid, "grid size (box counting, orbit coverage)");
  app.add_option("--horizon", a.horizon, "orbit length");
  app.add_option("--eps", a.eps, "separation / recurrence radius");
  app.add_option("--delta", a.delta, "perturbation radius for the sensitivity probe");
  app.add_option("--seed", a.seed, "seed for sensitivity sampling");
  app.add_option("--out", a.out, "output format: csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--config", a.config, "run configuration JSON; flags given explicitly win");
  app.add_option("--upto", a.upto, "last convergent index (cf)");
  app.add_option("--kind", a.kind, "levels: certificates; probe: sensitivity | nonrecurrence | classify");
  app.add_option("--mode", a.mode, "child counts: formula | measured")
      ->check(CLI::IsMember({"formula", "measured"}));
  app.add_option("--policy", a.policy, "sample policy: center | leftmost");
  app.add_option("--samples", a.samples, "random perturbations tried by the sensitivity probe");
  app.add_option("--height", a.height, "half-height H of the coverage window [0,1) x [-H, H]");
  app.add_option("--threads", a.threads, "worker threads for audits (0 = all cores)");

  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const Context&);
  };
  const std::vector<Sub> subs = {
      {"cf", "convergent table", cmd_cf},
      {"levels", "level profile and validation certificates", cmd_levels},
      {"eval", "cocycle values at x", cmd_eval},
      {"sum", "ergodic sums two ways", cmd_sum},
      {"target", "target intervals, sample points, membership", cmd_target},
      {"audit", "divergence reports for aligned or mixed families", cmd_audit},
      {"dimension", "nesting statistics and dimension bounds", cmd_dimension},
      {"orbit", "fixed-point orbit of the cylinder map", cmd_orbit},
      {"probe", "sensitivity, nonrecurrence and classification probes", cmd_probe},
      {"config", "print the effective run configuration", cmd_config},
  };
  for (const auto& s : subs) app.add_subcommand(s.name, s.help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (!a.config.empty()) ctx.cfg = bz::run_config_from_json(bz::read_json_file(a.config));
    auto& cfg = ctx.cfg;
    if (ctx.given("--alpha")) cfg.alpha = a.alpha;
    if (ctx.given("--strategy")) cfg.strategy = bz::parse_strategy(a.strategy);
    if (ctx.given("--variant")) cfg.variant = bz::parse_variant(a.variant);
    if (ctx.given("--n")) cfg.n_max = a.n;
    if (ctx.given("--alpha-depth")) cfg.alpha_depth = a.alpha_depth;
    if (ctx.given("--trunc")) cfg.truncation = a.trunc;
    if (ctx.given("--precision-bits")) cfg.precision_bits = a.precision_bits;
    if (ctx.given("--out")) cfg.out = bz::parse_output_format(a.out);
    if (ctx.given("--seed")) cfg.seed = a.seed;
    bz::IrrationalSpec::parse(cfg.alpha);

    for (const auto& s : subs) {
      if (app.got_subcommand(s.name)) return s.fn(ctx);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n' << app.help();
    return kUsage;
  } catch (const bz::ValidationFailure& e) {
    std::cerr << "certificate failed: " << e.what() << '\n';
    return kCertificate;
  } catch (const bz::MarginTooThin& e) {
    std::cerr << "certificate failed: " << e.what() << '\n';
    return kCertificate;
  } catch (const bz::ErrorBudgetBlown& e) {
    std::cerr << "certificate failed: " << e.what() << '\n';
    return kCertificate;
  } catch (const bz::BelowFirstWindow& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
