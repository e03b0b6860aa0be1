#include <gtest/gtest.h>

#include <sstream>

#include "besicovitch/io.hpp"

using namespace besicovitch;

TEST(RunConfig, JsonRoundTripIsLossless) {
  RunConfig c;
  c.alpha = "periodic=3;1,2";
  c.strategy = Strategy::fixed;
  c.variant = Variant::tent;
  c.n_max = 7;
  c.alpha_depth = 120;
  c.truncation = 9;
  c.precision_bits = 256;
  c.out = OutputFormat::json;
  c.seed = 18446744073709551615ull;
  c.enumeration_cap = "123456789012345678901234567890";
  c.grid_cap = 12345;
  auto back = run_config_from_json(Json::parse(to_json(c).dump()));
  EXPECT_EQ(back, c);
  EXPECT_EQ(run_config_from_json(to_json(RunConfig{})), RunConfig{});
}

TEST(RunConfig, PartialFilesKeepDefaultsAndUnknownKeysFail) {
  auto c = run_config_from_json(Json::parse(R"({"alpha": "sqrt2m1", "truncation": 5})"));
  EXPECT_EQ(c.alpha, "sqrt2m1");
  EXPECT_EQ(c.truncation, 5u);
  EXPECT_EQ(c.n_max, RunConfig{}.n_max);
  EXPECT_THROW(run_config_from_json(Json::parse(R"({"alpah": "golden"})")), std::invalid_argument);
  EXPECT_THROW(run_config_from_json(Json::parse(R"({"out": "xml"})")), std::invalid_argument);
}

TEST(Csv, QuotesFieldsThatNeedIt) {
  std::ostringstream os;
  CsvWriter w(os);
  w.row({"a", "b,c", "say \"hi\"", ""});
  EXPECT_EQ(os.str(), "a,\"b,c\",\"say \"\"hi\"\"\",\n");
}

TEST(ReportExport, RationalsAreStringsAndRowsMatch) {
  auto prof = select_levels(IrrationalSpec::golden(), Strategy::greedy, Variant::main, 4);
  CocycleOptions opts;
  opts.truncation = 7;
  CocycleSpec c(prof, opts);
  auto sample = sample_point(c.profile(), SignPair::pp(), SamplePolicy::center, 5);
  AuditContext ctx(c, SignPair::pp(), sample);
  auto r = audit(ctx, 1);
  Json j = to_json(r);
  EXPECT_EQ(j["total"].get<std::string>(), to_string(r.total));
  EXPECT_EQ(parse_rational(j["total"].get<std::string>()), r.total);
  EXPECT_EQ(j["rows"].size(), 7u);
  EXPECT_EQ(j["status"], "pass");
  EXPECT_TRUE(j.contains("shift"));

  std::ostringstream os;
  CsvWriter w(os);
  w.row(report_csv_header());
  write_report_csv(w, r);
  std::string text = os.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "m,n_of_m,l,term,sign,bound,pass");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 8);
}

TEST(DimensionExport, CsvHasOneRowPerBound) {
  auto prof = select_levels(IrrationalSpec::golden(), Strategy::fixed, Variant::main, 5);
  auto stats = nesting_stats(prof, CountMode::formula);
  auto b = falconer_bounds(stats);
  std::ostringstream os;
  CsvWriter w(os);
  w.row(dimension_csv_header());
  write_dimension_csv(w, stats, b);
  std::string text = os.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + static_cast<long>(b.rows.size()));
  Json j = to_json(stats, b);
  EXPECT_EQ(j["bounds"].size(), b.rows.size());
  EXPECT_EQ(parse_rational(j["bounds"][0]["lower"]["lo"].get<std::string>()), b.rows[0].lower.lo);
}

TEST(ProbeExport, WitnessFields) {
  ProbeResult r;
  r.kind = ProbeKind::nonrecurrence;
  r.outcome = "pass";
  r.witness = ProbeWitness{3, make_rational(1, 4), Rational(0), 0.5, "start", false};
  Json j = to_json(r);
  EXPECT_EQ(j["kind"], "nonrecurrence");
  EXPECT_EQ(j["witness"]["x"], "1/4");
  ProbeResult none;
  EXPECT_TRUE(to_json(none)["witness"].is_null());
}
