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

// Benchmark harness: per-instance bound reports, seeded suites with CSV and
// Markdown output, LP-file export and the bundled fixture instances.

#ifndef MKPB_HARNESS_HPP_
#define MKPB_HARNESS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mkpb/generator.hpp"
#include "mkpb/instance.hpp"
#include "mkpb/oracles.hpp"
#include "mkpb/rational.hpp"
#include "mkpb/relaxations.hpp"

namespace mkpb {

enum class OptMode { kNone, kBruteForce, kBranchAndBound };

struct RunConfig {
  bool run_seq = true;
  bool run_surr = true;
  bool run_lp = true;
  OptMode opt = OptMode::kBranchAndBound;
  OracleLimits limits;
  bool tighten = true;
  SequenceParams params;
};

struct BoundReport {
  std::optional<Rational> z_seq;
  std::optional<Profit> z_surr;
  bool surr_exact = true;
  std::optional<Rational> z_lp;
  // Best known MKP value; `opt_exact` says whether it is proven optimal.
  std::optional<Profit> opt;
  bool opt_exact = false;
  std::optional<Profit> opt_upper;

  double t_seq_ms = 0.0;
  double t_surr_ms = 0.0;
  double t_lp_ms = 0.0;

  // Percentages; empty when an operand is missing, opt is not exact, or the
  // denominator is zero.
  std::optional<Rational> gap_se;
  std::optional<Rational> gap_su;
  std::optional<Rational> gap_lp;
  std::optional<Rational> g_se_lp;
  std::optional<Rational> g_su_lp;

  std::vector<SequentialIteration> seq_trace;
  std::vector<std::size_t> untightened;
  std::vector<std::string> errors;
};

// (bound - reference) / reference * 100, or empty if reference is zero.
std::optional<Rational> percent_gap(const Rational& bound, const Rational& reference);

// Computes the requested bounds on `instance` (tightened first if
// configured). Bound failures are recorded in `errors`, never thrown.
BoundReport run_instance(const MkpInstance& instance, const RunConfig& config);

struct SuiteGroup {
  GenSpec spec;               // spec.seed is the first seed of the group
  std::int64_t replications = 1;
};

struct SuiteConfig {
  std::vector<SuiteGroup> groups;
  RunConfig run;
  unsigned threads = 1;
};

// Flat key-value config, one "key = value" per line, '#' comments:
//   group = family=pisinger corr=uncorrelated n=60 m=30 R=1000 seed=1 reps=20
//   group = family=small corr=strongly n=20 m=10 sigma=0.5 seed=1 reps=10
//   bounds = seq,surr,lp
//   opt = bnb | brute | none
//   node_budget = 2000000
//   time_budget_ms = 60000
//   tighten = true
//   q_max = 10
//   l_max = 5
//   it_max = 10
//   threads = 1
// Throws std::invalid_argument with the offending line number.
SuiteConfig parse_suite_config(std::istream& in);

// Worker count: MKPB_THREADS if set, else `configured`, at least 1.
unsigned effective_threads(unsigned configured);

inline constexpr const char* kCsvVersionLine = "# mkpb-suite-csv v1";
const std::vector<std::string>& csv_columns();

struct SuiteRow {
  GenSpec spec;
  std::size_t n = 0;
  std::size_t m = 0;
  bool from_spec = true;  // false: family, corr, R_or_sigma and seed print "-"
  BoundReport report;
};

// Generates and bounds every instance; rows come back in config order
// regardless of thread scheduling.
std::vector<SuiteRow> run_suite(const SuiteConfig& config);

void write_csv(std::ostream& out, const std::vector<SuiteRow>& rows);
// Per-setting averages (m, n, n/m, correlation, R or sigma), two decimals.
void write_summary_table(std::ostream& out, const std::vector<SuiteRow>& rows);

// CPLEX-LP model of the assignment formulation with variables x_i_j
// (knapsack i, item j, both 1-based). If `cut_rhs` is set, adds the row
// sum p_j x_i_j <= cut_rhs.
void write_lp(std::ostream& out, const MkpInstance& instance,
              std::optional<Profit> cut_rhs = std::nullopt);
// Writes the model plus the cut with right-hand side floor(z_seq).
void export_lp_with_cut(const MkpInstance& instance, const Rational& z_seq,
                        const std::string& path);

MkpInstance fixture_table1();
MkpInstance fixture_inst1();
// k copies of every item and every knapsack.
MkpInstance replicate(const MkpInstance& instance, std::size_t k);

}  // namespace mkpb

#endif  // MKPB_HARNESS_HPP_
