// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "inexact/cli.hpp"
#include "inexact/mobs.hpp"
#include "oracles.hpp"

using namespace inexact;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli_run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string bits_of(Row row, int n) {
  std::string s;
  for (int j = n - 1; j >= 0; --j) s += ((row >> j) & 1U) ? '1' : '0';
  return s;
}

// Non-comment lines of a CSV document, header first.
std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream s(line);
  std::string c;
  while (std::getline(s, c, ',')) cells.push_back(c);
  return cells;
}

// Criterion 1. Expected cells, rows b2 b1 b0 = 000..111.
Outcome truth_tables() {
  const std::int64_t table[3][8] = {
      {0, 1, 1, 1, 1, 1, 1, 1},
      {0, 1, 1, 2, 1, 2, 2, 3},
      {0, 1, 2, 3, 4, 5, 6, 7},
  };
  const char* names[3] = {"or", "ue", "be"};
  int lib = 0;
  int eval = 0;
  int csv = 0;
  for (int p = 0; p < 3; ++p) {
    auto problem = build_problem({problem_kind_from_string(names[p]), 3});
    auto t = truth_table(problem);
    auto tt = cli_run({"truth-table", "--problem", names[p], "--n", "3"});
    auto lines = csv_lines(tt.out);
    for (Row r = 0; r < 8; ++r) {
      lib += t.outputs[r] == table[p][r];
      auto e = cli_run({"eval", "--problem", names[p], "--n", "3", "--bits", bits_of(r, 3)});
      eval += e.code == 0 && e.out == std::to_string(table[p][r]) + "\n";
      if (tt.code == 0 && lines.size() == 9) {
        auto cells = split(lines[r + 1]);
        csv += cells.size() == 4 && cells[0] + cells[1] + cells[2] == bits_of(r, 3) &&
               cells[3] == std::to_string(table[p][r]);
      }
    }
  }
  return {lib == 24 && eval == 24 && csv == 24, "library " + std::to_string(lib) + "/24, eval " +
                                                    std::to_string(eval) + "/24, truth-table " +
                                                    std::to_string(csv) + "/24"};
}

// Criterion 2.
Outcome blindfolding_claim() {
  Rng rng(20260101);
  int violations = 0;
  int equality_mismatch = 0;
  int oracle_mismatch = 0;
  int uniform_count = 0;
  for (int n = 2; n <= 10; ++n) {
    auto group = PermutationGroup::full_symmetric(n);
    for (int t = 0; t < 1000; ++t) {
      std::vector<double> v(static_cast<std::size_t>(n));
      bool uniform = t % 10 == 0;
      if (uniform) {
        double level = 5.0 * uniform01(rng);
        for (auto& x : v) x = level;
        ++uniform_count;
      } else {
        for (auto& x : v) x = 5.0 * uniform01(rng);
      }
      double total = 0.0;
      double mean_flip = 0.0;
      for (double x : v) {
        total += x;
        mean_flip += std::exp2(-x);
      }
      mean_flip /= n;
      const double bound = std::exp2(-total / n);
      EnergyVector e(v);
      for (int j = 0; j < n; ++j) {
        double m = marginal_flip_probability(e, group, j).value;
        if (m < bound - 1e-12) ++violations;
        if (std::abs(m - mean_flip) > 1e-12) ++oracle_mismatch;
        bool equal = std::abs(m - bound) <= 1e-12;
        if (equal != uniform) ++equality_mismatch;
      }
    }
  }
  return {violations == 0 && equality_mismatch == 0 && oracle_mismatch == 0,
          "9000 vectors (" + std::to_string(uniform_count) + " uniform): " + std::to_string(violations) +
              " below bound, " + std::to_string(equality_mismatch) + " equality mismatches, " +
              std::to_string(oracle_mismatch) + " oracle mismatches"};
}

// Criterion 3.
Outcome ue_uniform_optimality() {
  bool pass = true;
  std::string detail;
  for (int n = 2; n <= 4; ++n) {
    const double budget = n * (n + 1) / 2.0;
    const double level = budget / n;
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> arg;
    oracle::simplex_grid(n, budget, 0.05, [&](const std::vector<double>& x) {
      double v = ue_variance(EnergyVector(x));
      if (v < best - 1e-15) {
        best = v;
        arg = x;
      }
    });
    const double at_uniform = ue_variance(uniform_allocation(budget, n));
    bool grid_uniform = true;
    for (double x : arg) grid_uniform = grid_uniform && std::abs(x - level) <= 0.025;

    auto objective = AllocationObjective::variance(make_unary_evaluation(n));
    auto r = optimize_allocation(objective, budget);
    bool descent_uniform = true;
    for (double x : r.slot_energy) descent_uniform = descent_uniform && std::abs(x - level) <= 0.05;

    pass = pass && grid_uniform && descent_uniform;
    std::string a;
    for (double x : arg) a += (a.empty() ? "" : " ") + fmt("%.2f", x);
    std::string d;
    for (double x : r.slot_energy) d += (d.empty() ? "" : " ") + fmt("%.2f", x);
    detail += (detail.empty() ? "" : "; ") + ("n=" + std::to_string(n) + " grid argmin (" + a + ") var " +
                                              fmt("%.4g", best) + " vs uniform " + fmt("%.4g", at_uniform) +
                                              ", descent (" + d + ")");
  }
  return {pass, detail};
}

// Criterion 4.
Outcome be_analytic_values() {
  double worst_stair_dev = 0.0;
  double worst_uniform_margin = std::numeric_limits<double>::infinity();
  int uniform_below = 0;
  for (int n = 2; n <= 12; ++n) {
    auto p = make_binary_evaluation(n);
    auto d = Decoder::identity(p);
    auto id = PermutationGroup::identity(n);
    auto stair = per_input_errors(d, staircase_allocation(n), id, ErrorMeasure::Magnitude);
    double worst = 0.0;
    for (const auto& e : stair) worst = std::max(worst, e.value);
    worst_stair_dev = std::max({worst_stair_dev, std::abs(worst - n / 2.0), std::abs(stair[0].value - n / 2.0)});

    auto uniform = per_input_errors(d, uniform_allocation(n * (n + 1) / 2.0, n), id, ErrorMeasure::Magnitude);
    const double floor = std::exp2((n - 3) / 2.0);
    for (Row i = 0; i < (Row{1} << (n - 1)); ++i) {
      worst_uniform_margin = std::min(worst_uniform_margin, uniform[i].value / floor);
      if (uniform[i].value < floor) ++uniform_below;
    }
  }
  return {worst_stair_dev <= 1e-9 && uniform_below == 0,
          "staircase max |err - n/2| = " + fmt("%.3g", worst_stair_dev) + "; uniform inputs below 2^((n-3)/2): " +
              std::to_string(uniform_below) + " (min ratio " + fmt("%.4g", worst_uniform_margin) + ")"};
}

// Criterion 5.
Outcome mobs_separation() {
  auto r = cli_run({"table2", "--ns", "4,6,8", "--mode", "exact", "--format", "json"});
  if (r.code != 0) return {false, "table2 exited with " + std::to_string(r.code) + ": " + r.err};
  auto doc = json::parse(r.out);
  std::vector<double> be;
  bool symmetric_ok = true;
  std::string sym;
  for (const auto& row : doc["results"]) {
    auto kind = row["kind"].get<std::string>();
    double m = number_from_json(row["mobs"]);
    if (kind == "or" || kind == "ue") {
      symmetric_ok = symmetric_ok && m >= 1.0 && m <= 1.001;
      sym += " " + kind + std::to_string(row["n"].get<int>()) + "=" + fmt("%.6g", m);
    }
    if (kind == "be") be.push_back(m);
  }
  bool growth = be.size() == 3;
  std::string b;
  for (std::size_t i = 0; i < be.size(); ++i) {
    b += (i ? " " : "") + fmt("%.4f", be[i]);
    if (i > 0) {
      growth = growth && be[i] > be[i - 1] && be[i] / be[i - 1] >= 1.8;
      b += " (x" + fmt("%.3f", be[i] / be[i - 1]) + ")";
    }
  }
  return {symmetric_ok && growth, "symmetric:" + sym + "; be n=4,6,8: " + b};
}

// Pr{sign(x' - y') != sign(x - y)} by enumerating all 2^(2k) flip masks.
double brute_comparison(int k, std::int64_t x, std::int64_t y, const std::vector<double>& flip) {
  const auto mask = (std::int64_t{1} << k) - 1;
  auto sign = [](std::int64_t v) { return (v > 0) - (v < 0); };
  double total = 0.0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << (2 * k)); ++m) {
    double pr = 1.0;
    for (int j = 0; j < 2 * k; ++j) pr *= ((m >> j) & 1U) ? flip[static_cast<std::size_t>(j)] : 1.0 - flip[static_cast<std::size_t>(j)];
    std::int64_t xs = x ^ static_cast<std::int64_t>(m & static_cast<std::uint64_t>(mask));
    std::int64_t ys = y ^ static_cast<std::int64_t>(m >> k);
    if (sign(xs - ys) != sign(x - y)) total += pr;
  }
  return total;
}

// Criterion 6.
Outcome comparison_sorting_bounds() {
  bool pass = true;
  std::string detail;
  for (int k = 2; k <= 6; ++k) {
    std::vector<double> uniform(static_cast<std::size_t>(2 * k), std::exp2(-(k + 1) / 2.0));
    std::vector<double> stair;
    const auto operands = comparison_allocation(k).operand_energy();
    for (double e : operands.entries()) stair.push_back(std::exp2(-e));
    const std::int64_t top = std::int64_t{1} << (k - 1);
    double pu = 1.0;
    double ps = 0.0;
    for (auto [x, y] : {std::pair<std::int64_t, std::int64_t>{top, 0}, {0, top}}) {
      double u = brute_comparison(k, x, y, uniform);
      double s = brute_comparison(k, x, y, stair);
      pass = pass && std::abs(u - comparison_error_probability(k, x, y, uniform)) <= 1e-12 &&
             std::abs(s - comparison_error_probability(k, x, y, stair)) <= 1e-12;
      pu = std::min(pu, u);
      ps = std::max(ps, s);
    }
    const double c = ps * std::exp2(k);
    auto measured = measured_sorting_ratio(2, k).ratio;
    auto bound = sorting_mobs_bound(2, k).ratio;
    bool ok = pu >= std::exp2(-(k + 1) / 2.0) - 1e-12 && c <= 2.0 && measured >= bound / 2.0 &&
              measured <= 2.0 * bound;
    pass = pass && ok;
    detail += (detail.empty() ? "" : "; ") + ("k=" + std::to_string(k) + " uni " + fmt("%.4g", pu) + ">=" +
                                              fmt("%.4g", std::exp2(-(k + 1) / 2.0)) + " c=" + fmt("%.3f", c) +
                                              " ratio " + fmt("%.3f", measured) + "/" + fmt("%.3f", bound));
  }
  return {pass, detail};
}

// Criterion 7.
Outcome cmos_curve_check() {
  const double expected = 1.0 - 0.5 * oracle::erfc_integral(1.0);
  bool pass = true;
  double worst = 0.0;
  std::size_t points = 0;
  for (double sigma : {1.0, 0.3, 2.5}) {
    auto s = fmt("%.17g", sigma);
    auto r = cli_run({"curve", "--sigma", s});
    auto lines = csv_lines(r.out);
    pass = pass && r.code == 0 && lines.size() > 2 && lines[0] == "vdd,sigma,p";
    double prev = -1.0;
    double last_vdd = 0.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      auto cells = split(lines[i]);
      double vdd = std::strtod(cells[0].c_str(), nullptr);
      double p = std::strtod(cells[2].c_str(), nullptr);
      if (i == 1) pass = pass && vdd == 0.0 && p == 0.5;
      pass = pass && p > prev;
      prev = p;
      last_vdd = vdd;
      ++points;
    }
    pass = pass && std::abs(last_vdd - 10.0 * sigma) <= 1e-9 * sigma;

    auto at = cli_run({"curve", "--sigma", s, "--vdd", fmt("%.17g", 2.0 * std::sqrt(2.0) * sigma)});
    auto one = csv_lines(at.out);
    pass = pass && at.code == 0 && one.size() == 2;
    if (one.size() == 2) {
      double p = std::strtod(split(one[1])[2].c_str(), nullptr);
      worst = std::max(worst, std::abs(p - expected));
    }
  }
  pass = pass && worst <= 1e-10;
  return {pass, std::to_string(points) + " curve points strictly increasing from 0.5; |p(2 sqrt2 sigma) - oracle| = " +
                    fmt("%.3g", worst)};
}

// Criterion 8.
Outcome exact_vs_monte_carlo() {
  Rng rng(88);
  auto pick = [&](int m) { return static_cast<int>(uniform01(rng) * m); };
  int agree = 0;
  std::string misses;
  for (int t = 0; t < 50; ++t) {
    BooleanProblem p = make_or(2);
    bool magnitude = false;
    switch (t % 5) {
      case 0: p = make_or(2 + pick(7)); break;
      case 1: p = make_unary_evaluation(2 + pick(7)); magnitude = true; break;
      case 2: p = make_binary_evaluation(2 + pick(7)); magnitude = true; break;
      case 3: p = make_tribes(2 * (1 + pick(4))); break;
      default: p = make_comparison(1 + pick(4)); break;
    }
    const int n = p.n();
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = 0.2 + 3.0 * uniform01(rng);
    EnergyVector e(v);
    PermutationGroup group = PermutationGroup::identity(n);
    switch (pick(3)) {
      case 1: group = PermutationGroup::full_symmetric(n); break;
      case 2: {
        Permutation cycle(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) cycle[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>((j + 1) % n);
        group = PermutationGroup::generated(n, {cycle});
        break;
      }
      default: break;
    }
    Decoder d = pick(2) ? Decoder::map(p, e, group) : Decoder::identity(p);
    Row input = static_cast<Row>(rng()) & low_mask(n);
    EvalOptions mc{EvalMode::MonteCarlo, 1'000'000, derive_seed(2718, static_cast<std::uint64_t>(t))};
    Estimate exact = magnitude ? expected_magnitude_error(d, e, group, input) : per_input_error(d, e, group, input);
    Estimate est = magnitude ? expected_magnitude_error(d, e, group, input, mc) : per_input_error(d, e, group, input, mc);
    if (std::abs(est.value - exact.value) <= 4.0 * est.std_error) {
      ++agree;
    } else {
      misses += " #" + std::to_string(t);
    }
  }
  return {agree >= 48, std::to_string(agree) + "/50 within 4 SE" + (misses.empty() ? "" : "; outside:" + misses)};
}

// Criterion 9.
Outcome determinism() {
  const std::vector<std::vector<std::string>> configs{
      {"eval", "--problem", "tribes", "--n", "6", "--bits", "110011"},
      {"truth-table", "--problem", "comparison", "--k", "2"},
      {"simulate", "--problem", "be", "--n", "5", "--allocation", "staircase", "--group", "symmetric", "--mode",
       "monte_carlo", "--samples", "20000", "--seed", "3"},
      {"simulate", "--problem", "or", "--n", "4", "--energy", "0.5,1,1.5,2", "--decoder", "map", "--format", "csv"},
      {"allocate", "--problem", "be", "--n", "4", "--budget", "10"},
      {"allocate", "--problem", "ue", "--n", "3", "--objective", "variance", "--method", "grid"},
      {"mobs", "--problem", "be", "--n", "5", "--mode", "monte_carlo", "--samples", "5000", "--seed", "12",
       "--threads", "4"},
      {"mobs", "--problem", "sorting", "--L", "2", "--k", "2", "--format", "csv"},
      {"curve", "--sigma", "0.7", "--steps", "50"},
      {"table2", "--ns", "3", "--ks", "2", "--sorting-ks", "2", "--mode", "monte_carlo", "--samples", "3000",
       "--seed", "5"},
  };
  int identical = 0;
  std::string bad;
  for (const auto& args : configs) {
    auto a = cli_run(args);
    auto b = cli_run(args);
    if (a.code == b.code && a.out == b.out && a.err == b.err && a.code == 0 && !a.out.empty()) {
      ++identical;
    } else {
      bad += " " + args[0];
    }
  }
  auto path = std::filesystem::temp_directory_path() / "inexact_acceptance_out.json";
  std::vector<std::string> to_file{"simulate", "--problem", "ue", "--n", "4", "--mode", "monte_carlo",
                                   "--samples", "10000", "--seed", "9", "--out", path.string()};
  auto r1 = cli_run(to_file);
  auto f1 = slurp(path);
  auto r2 = cli_run(to_file);
  auto f2 = slurp(path);
  bool file_ok = r1.code == 0 && r2.code == 0 && !f1.empty() && f1 == f2;
  std::filesystem::remove(path);
  return {identical == static_cast<int>(configs.size()) && file_ok,
          std::to_string(identical) + "/" + std::to_string(configs.size()) + " stdout configs identical, --out file " +
              (file_ok ? "identical" : "differs") + (bad.empty() ? "" : "; differing:" + bad)};
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "truth tables, n = 3", 1.0, truth_tables},
      {2, "blindfolding marginal bound", 10.0, blindfolding_claim},
      {3, "UE variance minimized at uniform", 60.0, ue_uniform_optimality},
      {4, "BE staircase n/2 and uniform floor", 30.0, be_analytic_values},
      {5, "MoBS separation via table2", 300.0, mobs_separation},
      {6, "comparison and sorting bounds", 120.0, comparison_sorting_bounds},
      {7, "CMOS curve", 1.0, cmos_curve_check},
      {8, "exact vs Monte Carlo", 300.0, exact_vs_monte_carlo},
      {9, "CLI determinism", std::numeric_limits<double>::infinity(), determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs < c.limit_seconds;
    bool pass = o.pass && in_time;
    failed += !pass;
    std::string limit = std::isinf(c.limit_seconds) ? "" : " < " + fmt("%g", c.limit_seconds) + " s";
    std::printf("%s  [%d] %s: %s [%.2f s%s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                limit.c_str(), in_time ? "" : ", over time limit");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
