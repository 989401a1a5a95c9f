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

#include "mkpb/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

namespace mkpb {
namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double millis() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string format_ms(double ms) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& text, const std::string& key) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw std::invalid_argument("bad integer for " + key + ": '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& text, const std::string& key) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw std::invalid_argument("bad boolean for " + key + ": '" + text + "'");
}

SuiteGroup parse_group(const std::string& value) {
  SuiteGroup group;
  std::istringstream ts(value);
  std::string tok;
  bool have_family = false;
  bool have_n = false;
  bool have_m = false;
  group.spec.seed = 1;
  while (ts >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("group field without '=': " + tok);
    const std::string k = tok.substr(0, eq);
    const std::string v = tok.substr(eq + 1);
    if (k == "family") {
      group.spec.family = parse_family(v);
      have_family = true;
    } else if (k == "corr") {
      group.spec.correlation = parse_correlation(v);
    } else if (k == "n") {
      group.spec.n = static_cast<std::size_t>(parse_int(v, k));
      have_n = true;
    } else if (k == "m") {
      group.spec.m = static_cast<std::size_t>(parse_int(v, k));
      have_m = true;
    } else if (k == "R") {
      group.spec.range = parse_int(v, k);
    } else if (k == "sigma") {
      group.spec.sigma = std::stod(v);
    } else if (k == "seed") {
      group.spec.seed = static_cast<std::uint64_t>(parse_int(v, k));
    } else if (k == "reps") {
      group.replications = parse_int(v, k);
    } else {
      throw std::invalid_argument("unknown group field: " + k);
    }
  }
  if (!have_family || !have_n || !have_m) {
    throw std::invalid_argument("group needs family, n and m");
  }
  if (group.replications < 1) throw std::invalid_argument("reps must be at least 1");
  group.spec.validate();
  return group;
}

std::string r_or_sigma(const GenSpec& spec) {
  if (spec.family == Family::kSmall) {
    std::ostringstream os;
    os << *spec.sigma;
    return os.str();
  }
  return std::to_string(spec.range);
}

std::string opt_rational(const std::optional<Rational>& v, int places) {
  return v ? to_decimal(*v, places) : "-";
}

}  // namespace

std::optional<Rational> percent_gap(const Rational& bound, const Rational& reference) {
  if (sgn(reference) == 0) return std::nullopt;
  return Rational((bound - reference) / reference * 100);
}

BoundReport run_instance(const MkpInstance& instance, const RunConfig& config) {
  BoundReport rep;
  MkpInstance work = instance;
  if (config.tighten) {
    try {
      work = tighten_capacities(instance, &rep.untightened);
    } catch (const std::exception& e) {
      rep.errors.push_back(std::string("tighten: ") + e.what());
    }
  }

  if (config.run_seq) {
    Stopwatch sw;
    try {
      SequentialResult res = sequential_bound(work, config.params);
      rep.z_seq = std::move(res.z_seq);
      rep.seq_trace = std::move(res.trace);
    } catch (const std::exception& e) {
      rep.errors.push_back(std::string("seq: ") + e.what());
    }
    rep.t_seq_ms = sw.millis();
  }
  if (config.run_surr) {
    Stopwatch sw;
    try {
      const SurrogateBound sb = surrogate_bound(work);
      rep.z_surr = sb.value;
      rep.surr_exact = sb.exact;
    } catch (const std::exception& e) {
      rep.errors.push_back(std::string("surr: ") + e.what());
    }
    rep.t_surr_ms = sw.millis();
  }
  if (config.run_lp) {
    Stopwatch sw;
    try {
      rep.z_lp = lp_bound(work);
    } catch (const std::exception& e) {
      rep.errors.push_back(std::string("lp: ") + e.what());
    }
    rep.t_lp_ms = sw.millis();
  }

  try {
    if (config.opt == OptMode::kBruteForce) {
      rep.opt = brute_force_mkp(work, config.limits).value;
      rep.opt_exact = true;
      rep.opt_upper = rep.opt;
    } else if (config.opt == OptMode::kBranchAndBound) {
      const BnbResult res = bnb_mkp(work, config.limits);
      rep.opt = res.lower;
      rep.opt_exact = res.exact;
      rep.opt_upper = res.upper;
    }
  } catch (const std::exception& e) {
    rep.errors.push_back(std::string("opt: ") + e.what());
  }

  if (rep.opt && rep.opt_exact) {
    const Rational opt = make_rational(*rep.opt);
    if (rep.z_seq) rep.gap_se = percent_gap(*rep.z_seq, opt);
    if (rep.z_surr) rep.gap_su = percent_gap(make_rational(*rep.z_surr), opt);
    if (rep.z_lp) rep.gap_lp = percent_gap(*rep.z_lp, opt);
  }
  if (rep.z_lp && rep.z_seq) rep.g_se_lp = percent_gap(*rep.z_lp, *rep.z_seq);
  if (rep.z_lp && rep.z_surr) rep.g_su_lp = percent_gap(*rep.z_lp, make_rational(*rep.z_surr));
  return rep;
}

SuiteConfig parse_suite_config(std::istream& in) {
  SuiteConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "group") {
        config.groups.push_back(parse_group(value));
      } else if (key == "bounds") {
        config.run.run_seq = config.run.run_surr = config.run.run_lp = false;
        std::istringstream ls(value);
        std::string b;
        while (std::getline(ls, b, ',')) {
          b = trim(b);
          if (b == "seq") {
            config.run.run_seq = true;
          } else if (b == "surr") {
            config.run.run_surr = true;
          } else if (b == "lp") {
            config.run.run_lp = true;
          } else {
            throw std::invalid_argument("unknown bound: " + b);
          }
        }
      } else if (key == "opt") {
        if (value == "none") {
          config.run.opt = OptMode::kNone;
        } else if (value == "brute") {
          config.run.opt = OptMode::kBruteForce;
        } else if (value == "bnb") {
          config.run.opt = OptMode::kBranchAndBound;
        } else {
          throw std::invalid_argument("opt must be none, brute or bnb");
        }
      } else if (key == "node_budget") {
        config.run.limits.node_budget = parse_int(value, key);
      } else if (key == "time_budget_ms") {
        config.run.limits.time_budget = std::chrono::milliseconds(parse_int(value, key));
      } else if (key == "max_items") {
        config.run.limits.max_items = static_cast<std::size_t>(parse_int(value, key));
      } else if (key == "tighten") {
        config.run.tighten = parse_bool(value, key);
      } else if (key == "q_max") {
        config.run.params.q_max = parse_int(value, key);
      } else if (key == "l_max") {
        config.run.params.l_max = parse_int(value, key);
      } else if (key == "it_max") {
        config.run.params.it_max = parse_int(value, key);
      } else if (key == "threads") {
        config.threads = static_cast<unsigned>(std::max<std::int64_t>(1, parse_int(value, key)));
      } else {
        throw std::invalid_argument("unknown key: " + key);
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  config.run.params.validate();
  config.run.limits.validate();
  return config;
}

unsigned effective_threads(unsigned configured) {
  if (const char* env = std::getenv("MKPB_THREADS"); env != nullptr && *env != '\0') {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, configured);
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns = {
      "family", "corr",    "n",      "m",      "R_or_sigma", "seed",    "z_seq",
      "t_seq_ms", "z_surr", "t_surr_ms", "z_lp", "t_lp_ms",  "opt",     "exact_opt",
      "gap_se", "gap_su",  "gap_lp", "g_se_lp", "g_su_lp"};
  return columns;
}

std::vector<SuiteRow> run_suite(const SuiteConfig& config) {
  std::vector<SuiteRow> rows;
  for (const auto& group : config.groups) {
    for (std::int64_t r = 0; r < group.replications; ++r) {
      SuiteRow row;
      row.spec = group.spec;
      row.spec.seed = group.spec.seed + static_cast<std::uint64_t>(r);
      row.n = row.spec.n;
      row.m = row.spec.m;
      rows.push_back(std::move(row));
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < rows.size(); k = next++) {
      SuiteRow& row = rows[k];
      try {
        row.report = run_instance(generate(row.spec), config.run);
      } catch (const std::exception& e) {
        row.report.errors.push_back(std::string("generate: ") + e.what());
      }
    }
  };
  const unsigned threads =
      std::min<unsigned>(effective_threads(config.threads),
                         static_cast<unsigned>(std::max<std::size_t>(1, rows.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rows;
}

void write_csv(std::ostream& out, const std::vector<SuiteRow>& rows) {
  out << kCsvVersionLine << '\n';
  const auto& cols = csv_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << '\n';
  for (const auto& row : rows) {
    const BoundReport& r = row.report;
    const std::vector<std::string> cells = {
        row.from_spec ? to_string(row.spec.family) : "-",
        row.from_spec ? to_string(row.spec.correlation) : "-",
        std::to_string(row.n),
        std::to_string(row.m),
        row.from_spec ? r_or_sigma(row.spec) : "-",
        row.from_spec ? std::to_string(row.spec.seed) : "-",
        opt_rational(r.z_seq, 6),
        format_ms(r.t_seq_ms),
        r.z_surr ? std::to_string(*r.z_surr) : "-",
        format_ms(r.t_surr_ms),
        opt_rational(r.z_lp, 6),
        format_ms(r.t_lp_ms),
        r.opt ? std::to_string(*r.opt) : "-",
        r.opt ? (r.opt_exact ? "1" : "0") : "-",
        opt_rational(r.gap_se, 6),
        opt_rational(r.gap_su, 6),
        opt_rational(r.gap_lp, 6),
        opt_rational(r.g_se_lp, 6),
        opt_rational(r.g_su_lp, 6),
    };
    for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? "," : "") << cells[c];
    out << '\n';
  }
}

void write_summary_table(std::ostream& out, const std::vector<SuiteRow>& rows) {
  using Key = std::tuple<std::string, std::string, std::size_t, std::size_t, std::string>;
  std::vector<Key> order;
  std::map<Key, std::vector<const SuiteRow*>> groups;
  for (const auto& row : rows) {
    Key key{to_string(row.spec.family), to_string(row.spec.correlation), row.m, row.n,
            r_or_sigma(row.spec)};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&row);
  }

  out << "| family | m | n | n/m | Corr. | R/sigma | z_seq | t_seq (ms) | z_surr | t_surr (ms) "
         "| z_LP | t_LP (ms) | opt | gap_se | gap_su | gap_LP | g_se-LP | g_su-LP |\n";
  out << "|---|---|---|---|---|---|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const Key& key : order) {
    const auto& members = groups[key];
    const auto count = static_cast<long>(members.size());
    // Averages are taken only if every member has the value.
    auto mean = [&](auto get) -> std::optional<Rational> {
      Rational sum = 0;
      for (const SuiteRow* r : members) {
        std::optional<Rational> v = get(r->report);
        if (!v) return std::nullopt;
        sum += *v;
      }
      return Rational(sum / count);
    };
    auto mean_ms = [&](double BoundReport::*field) {
      double s = 0.0;
      for (const SuiteRow* r : members) s += r->report.*field;
      return format_ms(s / static_cast<double>(count));
    };
    const auto z_seq = mean([](const BoundReport& r) { return r.z_seq; });
    const auto z_surr = mean([](const BoundReport& r) -> std::optional<Rational> {
      if (!r.z_surr) return std::nullopt;
      return make_rational(*r.z_surr);
    });
    const auto z_lp = mean([](const BoundReport& r) { return r.z_lp; });
    const auto opt = mean([](const BoundReport& r) -> std::optional<Rational> {
      if (!r.opt || !r.opt_exact) return std::nullopt;
      return make_rational(*r.opt);
    });
    auto gap = [](const std::optional<Rational>& a,
                  const std::optional<Rational>& b) -> std::optional<Rational> {
      if (!a || !b) return std::nullopt;
      return percent_gap(*a, *b);
    };

    const auto& [family, corr, m, n, rs] = key;
    const Rational ratio = make_rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(m));
    out << "| " << family << " | " << m << " | " << n << " | "
        << (ratio.get_den() == 1 ? to_decimal(ratio, 0) : to_decimal(ratio, 2)) << " | "
        << corr << " | " << rs << " | " << opt_rational(z_seq, 2) << " | "
        << mean_ms(&BoundReport::t_seq_ms) << " | " << opt_rational(z_surr, 2) << " | "
        << mean_ms(&BoundReport::t_surr_ms) << " | " << opt_rational(z_lp, 2) << " | "
        << mean_ms(&BoundReport::t_lp_ms) << " | " << opt_rational(opt, 2) << " | "
        << opt_rational(gap(z_seq, opt), 2) << " | " << opt_rational(gap(z_surr, opt), 2)
        << " | " << opt_rational(gap(z_lp, opt), 2) << " | " << opt_rational(gap(z_lp, z_seq), 2)
        << " | " << opt_rational(gap(z_lp, z_surr), 2) << " |\n";
  }
}

namespace {

// Writes " + c x_i_j" terms, wrapping every few terms to keep lines short.
class TermWriter {
 public:
  explicit TermWriter(std::ostream& out) : out_(out) {}
  void add(Profit coef, std::size_t i, std::size_t j) {
    if (count_ > 0) out_ << (count_ % kPerLine == 0 ? "\n   + " : " + ");
    if (coef != 1) out_ << coef << ' ';
    out_ << "x_" << i + 1 << '_' << j + 1;
    ++count_;
  }

 private:
  static constexpr int kPerLine = 8;
  std::ostream& out_;
  int count_ = 0;
};

}  // namespace

void write_lp(std::ostream& out, const MkpInstance& instance, std::optional<Profit> cut_rhs) {
  const auto& items = instance.items();
  const std::size_t m = instance.num_knapsacks();
  const std::size_t n = instance.num_items();
  out << "\\ Multiple knapsack model";
  if (!instance.name().empty()) out << ' ' << instance.name();
  out << "\n\\ " << n << " items, " << m << " knapsacks\n";

  auto profit_row = [&] {
    TermWriter tw(out);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) tw.add(items[j].profit, i, j);
    }
  };

  out << "Maximize\n obj: ";
  profit_row();
  out << "\nSubject To\n";
  for (std::size_t i = 0; i < m; ++i) {
    out << " cap_" << i + 1 << ": ";
    TermWriter tw(out);
    for (std::size_t j = 0; j < n; ++j) tw.add(items[j].weight, i, j);
    out << " <= " << instance.capacities()[i] << '\n';
  }
  for (std::size_t j = 0; j < n; ++j) {
    out << " assign_" << j + 1 << ": ";
    TermWriter tw(out);
    for (std::size_t i = 0; i < m; ++i) tw.add(1, i, j);
    out << " <= 1\n";
  }
  if (cut_rhs) {
    out << " seq_cut: ";
    profit_row();
    out << " <= " << *cut_rhs << '\n';
  }
  out << "Binary\n";
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) out << " x_" << i + 1 << '_' << j + 1 << '\n';
  }
  out << "End\n";
}

void export_lp_with_cut(const MkpInstance& instance, const Rational& z_seq,
                        const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_lp(out, instance, floor_to_int64(z_seq));
  if (!out) throw std::runtime_error("write failed: " + path);
}

MkpInstance fixture_table1() {
  return validate_mkp({{{99, 33}, {70, 35}, {74, 37}, {47, 47}, {64, 64}}, {47, 64}, "table1"});
}

MkpInstance fixture_inst1() {
  const std::vector<Weight> w = {33, 35, 37, 47, 64, 30, 35, 36, 39, 39, 40, 41,
                                 33, 35, 37, 47, 64, 33, 35, 37, 47, 64, 30, 35,
                                 36, 39, 39, 40, 41, 33, 35, 37, 47, 64, 47, 64};
  const std::vector<Profit> p = {99, 70, 74, 47, 64, 50, 50, 39, 39, 39, 38, 37,
                                 99, 70, 74, 47, 64, 99, 70, 74, 47, 64, 50, 50,
                                 39, 39, 39, 38, 37, 99, 70, 74, 47, 64, 100, 50};
  const std::vector<Weight> c = {47, 64, 40, 64, 47, 64, 40, 64, 47, 64, 40, 64, 40, 64, 40,
                                 64, 40, 64, 47, 64, 40, 39, 39, 37, 39, 39, 37, 39, 39, 37};
  RawMkp raw;
  raw.name = "inst1";
  for (std::size_t j = 0; j < w.size(); ++j) raw.items.push_back({p[j], w[j]});
  raw.capacities = c;
  return validate_mkp(std::move(raw));
}

MkpInstance replicate(const MkpInstance& instance, std::size_t k) {
  if (k < 1) throw std::invalid_argument("replication factor must be at least 1");
  if (k == 1) return instance;
  RawMkp raw;
  raw.name = instance.name() + "_x" + std::to_string(k);
  for (std::size_t r = 0; r < k; ++r) {
    raw.items.insert(raw.items.end(), instance.items().begin(), instance.items().end());
    raw.capacities.insert(raw.capacities.end(), instance.capacities().begin(),
                          instance.capacities().end());
  }
  return validate_mkp(std::move(raw));
}

}  // namespace mkpb
