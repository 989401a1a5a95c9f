// Copyright 2026 The mkpbound Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mkpb/harness.hpp"
#include "support.hpp"

namespace mkpb {
namespace {

std::size_t count_prefix(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) n += line.rfind(prefix, 0) == 0;
  return n;
}

std::string lp_text(const MkpInstance& inst, std::optional<Profit> cut) {
  std::ostringstream os;
  write_lp(os, inst, cut);
  return os.str();
}

SuiteConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_suite_config(in);
}

std::string csv_of(const std::vector<SuiteRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

TEST(PercentGap, Arithmetic) {
  EXPECT_EQ(to_decimal(*percent_gap(make_rational(249), make_rational(216)), 2), "15.28");
  EXPECT_EQ(*percent_gap(make_rational(216), make_rational(173)), make_rational(4300, 173));
  EXPECT_FALSE(percent_gap(make_rational(5), make_rational(0)).has_value());
}

TEST(RunInstance, SmallExampleWithBruteForce) {
  RunConfig config;
  config.opt = OptMode::kBruteForce;
  const BoundReport r = run_instance(fixture_table1(), config);
  EXPECT_TRUE(r.errors.empty());
  ASSERT_TRUE(r.opt && r.z_seq && r.z_surr && r.z_lp);
  EXPECT_EQ(*r.opt, 173);
  EXPECT_TRUE(r.opt_exact);
  EXPECT_LE(*r.z_seq, make_rational(216));
  EXPECT_EQ(*r.z_surr, 243);
  EXPECT_EQ(*r.z_lp, make_rational(249));
  EXPECT_EQ(to_decimal(*r.g_se_lp, 2), "15.28");
  EXPECT_EQ(*r.gap_su, make_rational(7000, 173));
}

TEST(RunInstance, UnknownOptimumLeavesGapsEmpty) {
  RunConfig config;
  config.opt = OptMode::kBranchAndBound;
  config.limits.node_budget = 10;
  const BoundReport r = run_instance(fixture_inst1(), config);
  ASSERT_TRUE(r.opt.has_value());
  EXPECT_FALSE(r.opt_exact);
  EXPECT_FALSE(r.gap_se || r.gap_su || r.gap_lp);
  EXPECT_TRUE(r.g_se_lp && r.g_su_lp);

  SuiteRow row;
  row.from_spec = false;
  row.n = 36;
  row.m = 30;
  row.report = r;
  const std::string csv = csv_of({row});
  const std::string last = csv.substr(csv.rfind('\n', csv.size() - 2) + 1);
  // opt is a lower bound only, so exact_opt is 0 and the optimal gaps are "-".
  EXPECT_NE(last.find(",0,-,-,-,"), std::string::npos) << last;
}

TEST(RunInstance, ErrorsAreRecordedNotThrown) {
  RunConfig config;
  config.opt = OptMode::kBruteForce;
  config.limits.max_items = 3;
  const BoundReport r = run_instance(fixture_table1(), config);
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].rfind("opt:", 0), 0u);
  EXPECT_FALSE(r.opt.has_value());
  EXPECT_TRUE(r.z_seq.has_value());
}

TEST(RunInstance, BoundsCanBeSkipped) {
  RunConfig config;
  config.run_seq = false;
  config.run_lp = false;
  config.opt = OptMode::kNone;
  const BoundReport r = run_instance(fixture_table1(), config);
  EXPECT_FALSE(r.z_seq || r.z_lp || r.opt);
  EXPECT_TRUE(r.z_surr.has_value());
}

TEST(Fixtures, Sizes) {
  const MkpInstance inst1 = fixture_inst1();
  EXPECT_EQ(inst1.num_items(), 36u);
  EXPECT_EQ(inst1.num_knapsacks(), 30u);
  const MkpInstance inst2 = replicate(inst1, 3);
  EXPECT_EQ(inst2.num_items(), 108u);
  EXPECT_EQ(inst2.num_knapsacks(), 90u);
  EXPECT_EQ(replicate(inst1, 6).num_items(), 216u);
  EXPECT_EQ(replicate(inst1, 1), inst1);
  EXPECT_EQ(inst2.items()[36], inst1.items()[0]);
  EXPECT_THROW(replicate(inst1, 0), std::invalid_argument);
  EXPECT_EQ(fixture_table1().num_items(), 5u);
}

TEST(Fixtures, ReplicatedBounds) {
  const MkpInstance inst1 = tighten_capacities(fixture_inst1());
  EXPECT_EQ(surrogate_bound(inst1).value, 2103);
  EXPECT_EQ(surrogate_bound(tighten_capacities(replicate(fixture_inst1(), 3))).value, 6350);
  EXPECT_EQ(surrogate_bound(tighten_capacities(replicate(fixture_inst1(), 6))).value, 12700);
  EXPECT_EQ(to_decimal(lp_bound(replicate(fixture_inst1(), 3)), 2), "6351.56");
  const Rational z = sequential_bound(inst1).z_seq;
  EXPECT_GE(z, make_rational(2000));
  EXPECT_LE(z, lp_bound(inst1));
}

TEST(LpExport, RowsAndCut) {
  const std::string text = lp_text(fixture_table1(), 216);
  EXPECT_EQ(count_prefix(text, " obj:"), 1u);
  EXPECT_EQ(count_prefix(text, " cap_"), 2u);
  EXPECT_EQ(count_prefix(text, " assign_"), 5u);
  EXPECT_EQ(count_prefix(text, " seq_cut:"), 1u);
  EXPECT_EQ(count_prefix(text, " x_"), 10u);
  EXPECT_NE(text.find("<= 216\n"), std::string::npos);
  EXPECT_NE(text.find(" cap_1: 33 x_1_1 + 35 x_1_2"), std::string::npos);
  EXPECT_EQ(count_prefix(lp_text(fixture_table1(), std::nullopt), " seq_cut:"), 0u);
}

TEST(LpExport, MinimalModel) {
  const std::string text = lp_text(validate_mkp({{{5, 3}}, {4}, ""}), 5);
  EXPECT_EQ(count_prefix(text, " obj:"), 1u);
  EXPECT_EQ(count_prefix(text, " cap_"), 1u);
  EXPECT_EQ(count_prefix(text, " assign_"), 1u);
  EXPECT_EQ(count_prefix(text, " seq_cut:"), 1u);
  EXPECT_NE(text.find(" seq_cut: 5 x_1_1 <= 5\n"), std::string::npos) << text;
}

TEST(LpExport, CutUsesFloorOfBound) {
  const auto path = std::filesystem::temp_directory_path() / "mkpb_export_test.lp";
  export_lp_with_cut(fixture_inst1(), parse_rational("2033.31"), path.string());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto cut = text.find(" seq_cut:");
  ASSERT_NE(cut, std::string::npos);
  EXPECT_NE(text.find("<= 2033\n", cut), std::string::npos);
  EXPECT_EQ(count_prefix(text, " assign_"), 36u);
  EXPECT_EQ(count_prefix(text, " cap_"), 30u);
  std::filesystem::remove(path);
}

TEST(SuiteConfig, ParsesKeys) {
  const SuiteConfig c = parse(
      "# comment\n"
      "group = family=small corr=weakly n=20 m=10 sigma=0.5 seed=3 reps=4\n"
      "group = family=pisinger corr=strongly n=12 m=3 R=100\n"
      "bounds = surr, lp\n"
      "opt = brute\n"
      "node_budget = 500\n"
      "time_budget_ms = 2500\n"
      "tighten = false\n"
      "q_max = 6\nl_max = 4\nit_max = 2\nthreads = 3\n");
  ASSERT_EQ(c.groups.size(), 2u);
  EXPECT_EQ(c.groups[0].spec.family, Family::kSmall);
  EXPECT_EQ(*c.groups[0].spec.sigma, 0.5);
  EXPECT_EQ(c.groups[0].spec.seed, 3u);
  EXPECT_EQ(c.groups[0].replications, 4);
  EXPECT_EQ(c.groups[1].spec.range, 100);
  EXPECT_EQ(c.groups[1].replications, 1);
  EXPECT_FALSE(c.run.run_seq);
  EXPECT_TRUE(c.run.run_surr && c.run.run_lp);
  EXPECT_EQ(c.run.opt, OptMode::kBruteForce);
  EXPECT_EQ(c.run.limits.node_budget, 500);
  EXPECT_EQ(c.run.limits.time_budget.count(), 2500);
  EXPECT_FALSE(c.run.tighten);
  EXPECT_EQ(c.run.params.q_max, 6);
  EXPECT_EQ(c.run.params.l_max, 4);
  EXPECT_EQ(c.run.params.it_max, 2);
  EXPECT_EQ(c.threads, 3u);
}

TEST(SuiteConfig, RejectsBadInput) {
  EXPECT_THROW(parse("bogus = 1\n"), std::invalid_argument);
  EXPECT_THROW(parse("group = family=small n=5 m=2\n"), std::invalid_argument);
  EXPECT_THROW(parse("group = family=pisinger n=5\n"), std::invalid_argument);
  EXPECT_THROW(parse("group = family=pisinger n=5 m=2 reps=0\n"), std::invalid_argument);
  EXPECT_THROW(parse("opt = maybe\n"), std::invalid_argument);
  EXPECT_THROW(parse("q_max = 1\n"), std::invalid_argument);
  try {
    parse("\n\nnode_budget = lots\n");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Suite, EmptyConfigGivesHeaderOnly) {
  const std::string csv = csv_of(run_suite(parse("")));
  std::string expected = std::string(kCsvVersionLine) + "\n";
  for (std::size_t c = 0; c < csv_columns().size(); ++c) {
    expected += (c ? "," : "") + csv_columns()[c];
  }
  EXPECT_EQ(csv, expected + "\n");
}

TEST(Suite, DeterministicAcrossRunsAndThreads) {
  const std::string text =
      "group = family=small corr=uncorrelated n=12 m=4 sigma=0.5 seed=1 reps=3\n"
      "group = family=pisinger corr=weakly n=15 m=5 R=100 seed=7 reps=2\n"
      "opt = bnb\n";
  SuiteConfig config = parse(text);
  const auto first = run_suite(config);
  ASSERT_EQ(first.size(), 5u);
  EXPECT_EQ(first[1].spec.seed, 2u);
  config.threads = 3;
  const auto second = run_suite(config);
  EXPECT_EQ(testing::strip_timing_columns(csv_of(first)),
            testing::strip_timing_columns(csv_of(second)));
  for (const auto& row : first) {
    const BoundReport& r = row.report;
    EXPECT_TRUE(r.errors.empty());
    ASSERT_TRUE(r.opt_exact);
    const Rational opt = make_rational(*r.opt);
    EXPECT_LE(opt, *r.z_seq);
    EXPECT_LE(*r.z_seq, *r.z_lp);
    EXPECT_LE(opt, make_rational(*r.z_surr));
  }
}

TEST(Suite, SummaryTable) {
  const auto rows = run_suite(
      parse("group = family=small corr=strongly n=12 m=4 sigma=0.5 seed=1 reps=2\n"));
  std::ostringstream os;
  write_summary_table(os, rows);
  const std::string table = os.str();
  EXPECT_EQ(count_prefix(table, "| small | 4 | 12 | 3 | strongly | 0.5 |"), 1u) << table;

  // The averaged z_LP cell matches the exact mean of the rows.
  const Rational mean = (*rows[0].report.z_lp + *rows[1].report.z_lp) / 2;
  EXPECT_NE(table.find("| " + to_decimal(mean, 2) + " |"), std::string::npos);

  auto unknown = rows;
  unknown[1].report.opt_exact = false;
  std::ostringstream os2;
  write_summary_table(os2, unknown);
  // opt and the three optimal gaps become "-".
  EXPECT_NE(os2.str().find("| - | - | - | - |"), std::string::npos) << os2.str();
}

TEST(Suite, ThreadsFromEnvironment) {
  ::setenv("MKPB_THREADS", "5", 1);
  EXPECT_EQ(effective_threads(2), 5u);
  ::unsetenv("MKPB_THREADS");
  EXPECT_EQ(effective_threads(2), 2u);
  EXPECT_EQ(effective_threads(0), 1u);
}

}  // namespace
}  // namespace mkpb
