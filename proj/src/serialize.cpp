#include "inexact/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "inexact/error.hpp"

namespace inexact {

namespace {

std::string print(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  auto s = print(x, 12);
  double back = std::strtod(s.c_str(), nullptr);
  if ((back == 0.0 && x != 0.0) || (back == 1.0 && x < 1.0)) {
    return print(x, 17);
  }
  return s;
}

json number_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return std::strtod(format_number(x).c_str(), nullptr);
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw invalid_input_error("expected a number, got " + j.dump());
}

std::string truth_table_csv(const TruthTable& table) {
  std::string out;
  for (int j = table.n - 1; j >= 0; --j) out += "b_" + std::to_string(j) + ",";
  out += "output\n";
  for (std::size_t i = 0; i < table.rows(); ++i) {
    for (int j = table.n - 1; j >= 0; --j) out += bit_of(i, j) ? "1," : "0,";
    out += std::to_string(table.outputs[i]) + "\n";
  }
  return out;
}

TruthTable parse_truth_table_csv(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw invalid_input_error("truth table CSV is empty");

  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
      auto comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return cells;
  };

  auto header = split(lines[0]);
  int n = static_cast<int>(header.size()) - 1;
  if (n < 1 || header.back() != "output") throw invalid_input_error("truth table CSV: bad header");
  if (n > kMaxTruthTableBits) throw resource_limit_error("truth table CSV: too many bits");
  for (int c = 0; c < n; ++c) {
    if (header[static_cast<std::size_t>(c)] != "b_" + std::to_string(n - 1 - c)) {
      throw invalid_input_error("truth table CSV: header column " + std::to_string(c) + " should be b_" +
                                std::to_string(n - 1 - c));
    }
  }
  std::size_t rows = std::size_t{1} << n;
  if (lines.size() - 1 != rows) throw invalid_input_error("truth table CSV: expected " + std::to_string(rows) + " rows");

  TruthTable t;
  t.n = n;
  t.outputs.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    auto cells = split(lines[i + 1]);
    if (cells.size() != header.size()) throw invalid_input_error("truth table CSV: ragged row " + std::to_string(i));
    Row row = 0;
    for (int c = 0; c < n; ++c) {
      const auto& cell = cells[static_cast<std::size_t>(c)];
      if (cell != "0" && cell != "1") throw invalid_input_error("truth table CSV: input cells must be 0 or 1");
      if (cell == "1") row |= Row{1} << (n - 1 - c);
    }
    if (row != i) throw invalid_input_error("truth table CSV: rows must be in index order");
    const auto& out = cells.back();
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(out.data(), out.data() + out.size(), v);
    if (ec != std::errc{} || ptr != out.data() + out.size()) {
      throw invalid_input_error("truth table CSV: bad output '" + out + "'");
    }
    t.outputs[i] = v;
  }
  return t;
}

json energy_to_json(const EnergyVector& energy) {
  json a = json::array();
  for (double e : energy.entries()) a.push_back(number_json(e));
  return a;
}

EnergyVector energy_from_json(const json& j) {
  if (!j.is_array()) throw invalid_input_error("energy vector must be a JSON array");
  std::vector<double> e;
  for (const auto& v : j) e.push_back(number_from_json(v));
  return EnergyVector(std::move(e));
}

json permutation_to_json(std::span<const std::uint32_t> p) { return json(std::vector<std::uint32_t>(p.begin(), p.end())); }

Permutation permutation_from_json(const json& j) {
  if (!j.is_array()) throw invalid_input_error("permutation must be a JSON array");
  Permutation p;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw invalid_input_error("permutation entries must be non-negative integers");
    p.push_back(v.get<std::uint32_t>());
  }
  if (!is_permutation(p)) throw invalid_input_error("not a permutation: " + j.dump());
  return p;
}

json group_to_json(const PermutationGroup& group) {
  json g;
  g["kind"] = to_string(group.kind());
  g["n"] = group.degree();
  json gens = json::array();
  for (const auto& p : group.generators()) gens.push_back(permutation_to_json(p));
  g["generators"] = gens;
  return g;
}

PermutationGroup group_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("n")) {
    throw invalid_input_error("group needs \"kind\" and \"n\"");
  }
  auto kind = group_kind_from_string(j.at("kind").get<std::string>());
  int n = j.at("n").get<int>();
  switch (kind) {
    case GroupKind::Identity: return PermutationGroup::identity(n);
    case GroupKind::FullSymmetric: return PermutationGroup::full_symmetric(n);
    case GroupKind::Generated: {
      std::vector<Permutation> gens;
      for (const auto& g : j.value("generators", json::array())) gens.push_back(permutation_from_json(g));
      return PermutationGroup::generated(n, std::move(gens));
    }
  }
  throw invalid_input_error("unknown group kind");
}

json estimate_fields(const Estimate& e, const char* value_name) {
  json o;
  o[value_name] = number_json(e.value);
  if (!e.exact()) {
    o["std_err"] = number_json(e.std_error);
    o["samples"] = e.samples;
  }
  return o;
}

json error_report_to_json(const ErrorReport& report) {
  json o;
  o["setting"] = report.blindfolded ? "blindfolded" : "clairvoyant";
  o["group"] = to_string(report.group);
  o["mode"] = to_string(report.mode);
  if (report.mode == EvalMode::MonteCarlo) {
    o["samples"] = report.samples;
    o["seed"] = report.seed;
  }
  json rows = json::array();
  for (std::size_t i = 0; i < report.per_input.size(); ++i) {
    json r;
    r["row"] = i;
    r.update(estimate_fields(report.per_input[i], "p_err"));
    rows.push_back(std::move(r));
  }
  o["per_input"] = std::move(rows);
  return o;
}

json quality_to_json(const QualityResult& q, MetricKind metric) {
  json o;
  o["metric"] = to_string(metric);
  o["quality"] = number_json(q.quality);
  o["worst_error"] = number_json(q.worst_error);
  o["worst_input"] = q.worst_input;
  json rows = json::array();
  for (std::size_t r = 0; r < q.rows.size(); ++r) {
    json e;
    e["row"] = q.rows[r];
    e.update(estimate_fields(q.errors[r], "error"));
    rows.push_back(std::move(e));
  }
  o["per_input"] = std::move(rows);
  return o;
}

json allocation_to_json(const AllocationResult& a) {
  json o;
  o["budget"] = number_json(a.budget);
  o["method"] = to_string(a.method);
  o["converged"] = a.converged;
  o["objective_value"] = number_json(a.objective_value);
  o["evaluations"] = a.evaluations;
  json slots = json::array();
  for (double v : a.slot_energy) slots.push_back(number_json(v));
  o["slot_energy"] = std::move(slots);
  o["energy"] = energy_to_json(a.energy);
  return o;
}

namespace {

json champion_to_json(const Champion& c) {
  json o;
  o["decoder"] = to_string(c.decoder);
  json slots = json::array();
  for (double v : c.slot_energy) slots.push_back(number_json(v));
  o["slot_energy"] = std::move(slots);
  o["energy"] = energy_to_json(c.energy);
  o["quality"] = number_json(c.quality.quality);
  o["worst_error"] = number_json(c.quality.worst_error);
  o["worst_input"] = c.quality.worst_input;
  o["converged"] = c.converged;
  return o;
}

}  // namespace

json mobs_to_json(const MobsResult& r) {
  json o;
  o["problem"] = r.problem;
  o["kind"] = to_string(r.kind);
  o["n"] = r.n;
  o["metric"] = to_string(r.metric);
  o["mode"] = to_string(r.mode);
  if (r.mode == EvalMode::MonteCarlo) o["samples"] = r.samples;
  o["seed"] = r.seed;
  json grid = json::array();
  for (const auto& p : r.points) grid.push_back(number_json(p.budget));
  o["budget_grid"] = std::move(grid);
  json points = json::array();
  for (const auto& p : r.points) {
    json q;
    q["budget"] = number_json(p.budget);
    q["clairvoyant"] = champion_to_json(p.clairvoyant);
    q["blindfolded"] = champion_to_json(p.blindfolded);
    q["error_ratio"] = number_json(p.error_ratio);
    if (r.mode == EvalMode::MonteCarlo) {
      q["error_ratio_std_err"] = number_json(p.error_ratio_std_error);
      q["error_ratio_ci95"] = json::array({number_json(p.error_ratio - 1.96 * p.error_ratio_std_error),
                                            number_json(p.error_ratio + 1.96 * p.error_ratio_std_error)});
    }
    q["worst_input"] = p.worst_input;
    q["quality_ratio"] = number_json(p.quality_ratio);
    points.push_back(std::move(q));
  }
  o["per_budget"] = std::move(points);
  o["mobs"] = number_json(r.mobs);
  o["mobs_quality"] = number_json(r.mobs_quality);
  o["converged"] = r.converged;
  return o;
}

std::string mobs_summary_csv(std::span<const MobsResult> results) {
  std::string out = "problem,n,mobs,mode\n";
  for (const auto& r : results) {
    out += csv_field(r.problem) + "," + std::to_string(r.n) + "," + format_number(r.mobs) + "," + to_string(r.mode) + "\n";
  }
  return out;
}

std::string curve_csv(std::span<const CurvePoint> points) {
  std::string out = "vdd,sigma,p\n";
  for (const auto& p : points) {
    out += format_number(p.vdd) + "," + format_number(p.sigma) + "," + format_number(p.p) + "\n";
  }
  return out;
}

}  // namespace inexact
