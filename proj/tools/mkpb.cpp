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

// mkpb: command-line front end (gen, bound, suite, oracle, export-lp, fixtures).

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "mkpb/harness.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct BoundFlags {
  std::string bounds = "seq,surr,lp";
  std::string opt = "bnb";
  bool no_tighten = false;
  std::int64_t node_budget = mkpb::OracleLimits{}.node_budget;
  std::int64_t time_budget_ms = mkpb::OracleLimits{}.time_budget.count();
  std::size_t max_items = mkpb::OracleLimits{}.max_items;
  mkpb::SequenceParams params;

  void attach(CLI::App* app) {
    app->add_option("--bounds", bounds, "Comma-separated subset of seq,surr,lp");
    app->add_option("--opt", opt, "Optimum oracle: none, brute or bnb")
        ->check(CLI::IsMember({"none", "brute", "bnb"}));
    app->add_flag("--no-tighten", no_tighten, "Skip capacity tightening");
    app->add_option("--node-budget", node_budget, "Oracle node budget");
    app->add_option("--time-budget-ms", time_budget_ms, "Oracle wall-clock budget");
    app->add_option("--max-items", max_items, "Largest n for brute force");
    app->add_option("--q-max", params.q_max, "Largest divisor tried for the reference size");
    app->add_option("--l-max", params.l_max, "Longest sequence");
    app->add_option("--it-max", params.it_max, "Seed items tried");
  }

  mkpb::RunConfig config() const {
    // Reuse the suite-config parser so both paths accept the same values.
    std::ostringstream text;
    text << "bounds = " << bounds << "\nopt = " << opt
         << "\nnode_budget = " << node_budget << "\ntime_budget_ms = " << time_budget_ms
         << "\nmax_items = " << max_items << "\ntighten = " << (no_tighten ? "false" : "true")
         << "\nq_max = " << params.q_max << "\nl_max = " << params.l_max
         << "\nit_max = " << params.it_max << "\n";
    std::istringstream in(text.str());
    return mkpb::parse_suite_config(in).run;
  }
};

json rational_json(const std::optional<mkpb::Rational>& v) {
  if (!v) return nullptr;
  return json{{"exact", mkpb::to_fraction_string(*v)}, {"decimal", mkpb::to_decimal(*v, 6)}};
}

json report_json(const mkpb::MkpInstance& inst, const mkpb::BoundReport& r) {
  json j;
  j["name"] = inst.name();
  j["n"] = inst.num_items();
  j["m"] = inst.num_knapsacks();
  j["z_seq"] = rational_json(r.z_seq);
  j["z_surr"] = r.z_surr ? json(*r.z_surr) : json(nullptr);
  j["surr_exact"] = r.surr_exact;
  j["z_lp"] = rational_json(r.z_lp);
  j["opt"] = r.opt ? json(*r.opt) : json(nullptr);
  j["opt_exact"] = r.opt_exact;
  j["opt_upper"] = r.opt_upper ? json(*r.opt_upper) : json(nullptr);
  j["t_seq_ms"] = r.t_seq_ms;
  j["t_surr_ms"] = r.t_surr_ms;
  j["t_lp_ms"] = r.t_lp_ms;
  j["gap_se"] = rational_json(r.gap_se);
  j["gap_su"] = rational_json(r.gap_su);
  j["gap_lp"] = rational_json(r.gap_lp);
  j["g_se_lp"] = rational_json(r.g_se_lp);
  j["g_su_lp"] = rational_json(r.g_su_lp);
  json trace = json::array();
  for (const auto& it : r.seq_trace) {
    json t;
    t["seed_item"] = it.seed_item ? json(*it.seed_item + 1) : json(nullptr);
    t["sequence"] = it.sequence;
    t["z_seq"] = rational_json(it.z_seq);
    t["cached"] = it.cached;
    t["millis"] = it.millis;
    if (!it.error.empty()) t["error"] = it.error;
    trace.push_back(t);
  }
  j["seq_trace"] = trace;
  j["untightened"] = r.untightened;
  j["errors"] = r.errors;
  return j;
}

int cmd_gen(const mkpb::GenSpec& spec, std::int64_t count, const std::string& out_dir) {
  fs::create_directories(out_dir);
  for (std::int64_t k = 0; k < count; ++k) {
    mkpb::GenSpec s = spec;
    s.seed = spec.seed + static_cast<std::uint64_t>(k);
    const fs::path path = fs::path(out_dir) / s.file_name();
    mkpb::write_mkp_file(path.string(), mkpb::generate(s));
    std::cout << path.string() << '\n';
  }
  return 0;
}

int cmd_bound(const std::string& path, const BoundFlags& flags, const std::string& format) {
  const mkpb::MkpInstance inst = mkpb::read_mkp_file(path);
  const mkpb::BoundReport r = mkpb::run_instance(inst, flags.config());
  if (format == "json") {
    std::cout << report_json(inst, r).dump(2) << '\n';
  } else {
    mkpb::SuiteRow row;
    row.n = inst.num_items();
    row.m = inst.num_knapsacks();
    row.from_spec = false;
    row.report = r;
    mkpb::write_csv(std::cout, {row});
  }
  for (const auto& e : r.errors) std::cerr << "warning: " << e << '\n';
  return 0;
}

int cmd_suite(const std::string& config_path, const std::string& csv_path,
              const std::string& table_path, int threads) {
  std::ifstream in(config_path);
  if (!in) throw std::runtime_error("cannot read " + config_path);
  mkpb::SuiteConfig config = mkpb::parse_suite_config(in);
  if (threads > 0) config.threads = static_cast<unsigned>(threads);
  const auto rows = mkpb::run_suite(config);
  if (csv_path.empty() || csv_path == "-") {
    mkpb::write_csv(std::cout, rows);
  } else {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + csv_path);
    mkpb::write_csv(out, rows);
  }
  if (!table_path.empty()) {
    std::ofstream out(table_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + table_path);
    mkpb::write_summary_table(out, rows);
  }
  int failed = 0;
  for (const auto& row : rows) {
    for (const auto& e : row.report.errors) {
      std::cerr << row.spec.stem() << ": " << e << '\n';
      ++failed;
    }
  }
  return failed == 0 ? 0 : 3;
}

int cmd_oracle(const std::string& path, const std::string& method,
               const mkpb::OracleLimits& limits) {
  const mkpb::MkpInstance inst = mkpb::read_mkp_file(path);
  json j;
  mkpb::MkpSolution sol;
  if (method == "brute") {
    sol = mkpb::brute_force_mkp(inst, limits);
    j["exact"] = true;
  } else {
    const mkpb::BnbResult res = mkpb::bnb_mkp(inst, limits);
    sol = res.best;
    j["exact"] = res.exact;
    j["upper"] = res.upper;
    j["nodes"] = res.nodes;
  }
  j["value"] = sol.value;
  // 1-based knapsack per item, 0 for unassigned.
  std::vector<int> assignment;
  for (int a : sol.assignment) assignment.push_back(a == mkpb::kUnassigned ? 0 : a + 1);
  j["assignment"] = assignment;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_export_lp(const std::string& path, const std::string& out_path,
                  const std::string& z_text, bool no_tighten) {
  const mkpb::MkpInstance inst = mkpb::read_mkp_file(path);
  mkpb::Rational z;
  if (!z_text.empty()) {
    z = mkpb::parse_rational(z_text);
  } else {
    const mkpb::MkpInstance work = no_tighten ? inst : mkpb::tighten_capacities(inst);
    z = mkpb::sequential_bound(work).z_seq;
    std::cerr << "z_seq = " << mkpb::to_decimal(z, 2) << '\n';
  }
  mkpb::export_lp_with_cut(inst, z, out_path);
  return 0;
}

int cmd_fixtures(const std::string& out_dir) {
  fs::create_directories(out_dir);
  const mkpb::MkpInstance inst1 = mkpb::fixture_inst1();
  auto rename = [](const mkpb::MkpInstance& inst, const std::string& name) {
    mkpb::RawMkp raw = mkpb::to_raw(inst);
    raw.name = name;
    return mkpb::validate_mkp(std::move(raw));
  };
  const std::vector<std::pair<std::string, mkpb::MkpInstance>> fixtures = {
      {"table1", mkpb::fixture_table1()},
      {"inst1", inst1},
      {"inst2", rename(mkpb::replicate(inst1, 3), "inst2")},
      {"inst3", rename(mkpb::replicate(inst1, 6), "inst3")},
  };
  for (const auto& [name, inst] : fixtures) {
    const fs::path path = fs::path(out_dir) / (name + ".mkp");
    mkpb::write_mkp_file(path.string(), inst);
    std::cout << path.string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Upper bounds for the 0-1 multiple knapsack problem"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Write seeded random instances");
  mkpb::GenSpec spec;
  std::string family = "pisinger", corr = "uncorrelated", out_dir = ".";
  double sigma = 0.0;
  std::int64_t count = 1;
  gen->add_option("--family", family, "pisinger or small")
      ->check(CLI::IsMember({"pisinger", "small"}));
  gen->add_option("--corr", corr, "uncorrelated, weakly, strongly or subset_sum")
      ->check(CLI::IsMember({"uncorrelated", "weakly", "strongly", "subset_sum"}));
  gen->add_option("-n", spec.n, "Items")->required();
  gen->add_option("-m", spec.m, "Knapsacks")->required();
  gen->add_option("-R,--range", spec.range, "Coefficient range (pisinger)");
  auto* sigma_opt = gen->add_option("--sigma", sigma, "Capacity fraction (small)");
  gen->add_option("--seed", spec.seed, "First seed")->required();
  gen->add_option("--count", count, "Number of consecutive seeds")->check(CLI::PositiveNumber);
  gen->add_option("-o,--out-dir", out_dir, "Output directory");

  // bound
  auto* bound = app.add_subcommand("bound", "Bound a single instance");
  std::string instance_path, format = "json";
  BoundFlags bound_flags;
  bound->add_option("instance", instance_path, "Instance file")->required();
  bound->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  bound_flags.attach(bound);

  // suite
  auto* suite = app.add_subcommand("suite", "Run a benchmark suite from a config file");
  std::string config_path, csv_path, table_path;
  int threads = 0;
  suite->add_option("config", config_path, "Suite config file")->required();
  suite->add_option("--csv", csv_path, "CSV output (default stdout)");
  suite->add_option("--table", table_path, "Markdown summary output");
  suite->add_option("-j,--threads", threads, "Worker threads (MKPB_THREADS overrides)");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Solve an instance exactly");
  std::string method = "bnb";
  mkpb::OracleLimits limits;
  std::int64_t oracle_time_ms = limits.time_budget.count();
  oracle->add_option("instance", instance_path, "Instance file")->required();
  oracle->add_option("--method", method, "brute or bnb")->check(CLI::IsMember({"brute", "bnb"}));
  oracle->add_option("--node-budget", limits.node_budget, "Node budget");
  oracle->add_option("--time-budget-ms", oracle_time_ms, "Wall-clock budget");
  oracle->add_option("--max-items", limits.max_items, "Largest n for brute force");

  // export-lp
  auto* export_lp = app.add_subcommand("export-lp", "Write the LP model with the bound cut");
  std::string lp_out, z_text;
  bool lp_no_tighten = false;
  export_lp->add_option("instance", instance_path, "Instance file")->required();
  export_lp->add_option("-o,--out", lp_out, "LP file to write")->required();
  export_lp->add_option("--z-seq", z_text, "Cut value (a, a/b or decimal); computed if absent");
  export_lp->add_flag("--no-tighten", lp_no_tighten, "Compute z_seq without tightening");

  // fixtures
  auto* fixtures = app.add_subcommand("fixtures", "Write the bundled fixture instances");
  std::string fixtures_dir = ".";
  fixtures->add_option("-o,--out-dir", fixtures_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      spec.family = mkpb::parse_family(family);
      spec.correlation = mkpb::parse_correlation(corr);
      if (*sigma_opt) spec.sigma = sigma;
      return cmd_gen(spec, count, out_dir);
    }
    if (*bound) return cmd_bound(instance_path, bound_flags, format);
    if (*suite) return cmd_suite(config_path, csv_path, table_path, threads);
    if (*oracle) {
      limits.time_budget = std::chrono::milliseconds(oracle_time_ms);
      return cmd_oracle(instance_path, method, limits);
    }
    if (*export_lp) return cmd_export_lp(instance_path, lp_out, z_text, lp_no_tighten);
    if (*fixtures) return cmd_fixtures(fixtures_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
