#include "inexact/cli.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "inexact/error.hpp"

namespace inexact::cli {

namespace {

enum class FlagType { Int, Uint, Double, String, IntList, DoubleList, StringList };

struct Flag {
  std::string key;
  FlagType type;
  std::string help;
};

const std::map<std::string, Flag>& flag_table() {
  static const std::map<std::string, Flag> table = [] {
    std::vector<Flag> flags = {
        {"problem", FlagType::String, "or | ue | be | tribes | comparison | sorting | custom"},
        {"n", FlagType::Int, "input bits"},
        {"k", FlagType::Int, "bits per word (comparison, sorting)"},
        {"L", FlagType::Int, "word count (sorting)"},
        {"tribes", FlagType::Int, "tribe count"},
        {"table", FlagType::IntList, "custom truth table outputs, row order"},
        {"bits", FlagType::String, "input bits, most significant first"},
        {"energy", FlagType::DoubleList, "per-bit energies e_0,...,e_{n-1}"},
        {"allocation", FlagType::String, "uniform | staircase (when --energy is absent)"},
        {"budget", FlagType::Double, "energy budget in slots"},
        {"budgets", FlagType::DoubleList, "budget grid"},
        {"metric", FlagType::String, "worst_case | expected_error | comparison_weighted | sorting_weighted"},
        {"group", FlagType::String, "identity | symmetric | generated, or a JSON group object"},
        {"generators", FlagType::String, "JSON array of permutations for a generated group"},
        {"decoder", FlagType::String, "identity | map"},
        {"decoders", FlagType::StringList, "decoders the MoBS champions may use"},
        {"mode", FlagType::String, "auto | exact | monte_carlo"},
        {"samples", FlagType::Uint, "Monte Carlo samples"},
        {"seed", FlagType::Uint, "random seed"},
        {"objective", FlagType::String, "metric | variance"},
        {"method", FlagType::String, "coordinate_descent | grid"},
        {"resolution", FlagType::Double, "grid spacing"},
        {"max_evaluations", FlagType::Uint, "optimizer evaluation cap"},
        {"min_energy", FlagType::Double, "per-slot energy floor"},
        {"threads", FlagType::Uint, "worker threads (0 = hardware)"},
        {"instance", FlagType::String, "sorting instance bits, most significant first"},
        {"sigma", FlagType::Double, "noise deviation"},
        {"vdd", FlagType::Double, "single supply voltage"},
        {"vdd_min", FlagType::Double, "curve start"},
        {"vdd_max", FlagType::Double, "curve end (default 10 sigma)"},
        {"steps", FlagType::Int, "curve intervals"},
        {"ns", FlagType::IntList, "table2 sizes for or, ue, be"},
        {"ks", FlagType::IntList, "table2 word sizes for comparison"},
        {"sorting_L", FlagType::Int, "table2 sorting word count"},
        {"sorting_ks", FlagType::IntList, "table2 word sizes for sorting"},
        {"format", FlagType::String, "csv | json"},
        {"out", FlagType::String, "output file"},
    };
    std::map<std::string, Flag> m;
    for (auto& f : flags) m.emplace(f.key, f);
    return m;
  }();
  return table;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty() || !parts.empty()) parts.push_back(cur);
  return parts;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  T v{};
  in >> v;
  if (in.fail() || !in.eof()) throw invalid_input_error("--" + key + ": cannot parse '" + text + "'");
  return v;
}

double parse_double(const std::string& key, const std::string& text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  return parse_number<double>(key, text);
}

json flag_value(const Flag& flag, const std::string& text) {
  switch (flag.type) {
    case FlagType::Int: return parse_number<std::int64_t>(flag.key, text);
    case FlagType::Uint:
      if (!text.empty() && text[0] == '-') throw invalid_input_error("--" + flag.key + " must be non-negative");
      return parse_number<std::uint64_t>(flag.key, text);
    case FlagType::Double: return parse_double(flag.key, text);
    case FlagType::String: return text;
    case FlagType::IntList: {
      json a = json::array();
      for (const auto& p : split_list(text)) a.push_back(parse_number<std::int64_t>(flag.key, p));
      return a;
    }
    case FlagType::DoubleList: {
      json a = json::array();
      for (const auto& p : split_list(text)) a.push_back(parse_double(flag.key, p));
      return a;
    }
    case FlagType::StringList: {
      json a = json::array();
      for (const auto& p : split_list(text)) a.push_back(p);
      return a;
    }
  }
  return text;
}

std::string flag_name(const std::string& key) {
  std::string s = "--" + key;
  for (auto& c : s) {
    if (c == '_') c = '-';
  }
  return s;
}

struct Command {
  CLI::App* app = nullptr;
  std::string config_path;
  std::map<std::string, std::string> raw;
  std::map<std::string, CLI::Option*> options;
};

void add_flags(Command& cmd, std::initializer_list<const char*> keys) {
  const auto& table = flag_table();
  std::vector<std::string> all{"seed", "format", "out"};
  all.insert(all.end(), keys.begin(), keys.end());
  cmd.app->add_option("--config", cmd.config_path, "JSON config file; flags override its keys");
  for (const auto& key : all) {
    const auto& flag = table.at(key);
    cmd.options[key] = cmd.app->add_option(flag_name(key), cmd.raw[key], flag.help);
  }
}

json merged_config(const Command& cmd) {
  json config = json::object();
  if (!cmd.config_path.empty()) {
    std::ifstream in(cmd.config_path);
    if (!in) throw invalid_input_error("cannot read config '" + cmd.config_path + "'");
    try {
      config = json::parse(in);
    } catch (const json::exception& e) {
      throw invalid_input_error("config '" + cmd.config_path + "': " + e.what());
    }
    if (!config.is_object()) throw invalid_input_error("config must be a JSON object");
    const auto& table = flag_table();
    for (const auto& [key, value] : config.items()) {
      if (!table.contains(key)) throw invalid_input_error("config: unknown key '" + key + "'");
    }
  }
  const auto& table = flag_table();
  for (const auto& [key, opt] : cmd.options) {
    if (opt->count() > 0) config[key] = flag_value(table.at(key), cmd.raw.at(key));
  }
  if (!config.contains("seed")) config["seed"] = 0;
  return config;
}

// Typed reads from the merged config.

template <class T>
T get(const json& c, const char* key, T fallback) {
  if (!c.contains(key)) return fallback;
  try {
    return c.at(key).get<T>();
  } catch (const json::exception&) {
    throw invalid_input_error(std::string("config key '") + key + "' has the wrong type");
  }
}

template <class T>
T require(const json& c, const char* key) {
  if (!c.contains(key)) throw invalid_input_error(std::string("missing --") + key);
  return get<T>(c, key, T{});
}

double get_number(const json& c, const char* key, double fallback) {
  if (!c.contains(key)) return fallback;
  return number_from_json(c.at(key));
}

std::vector<double> get_numbers(const json& c, const char* key) {
  std::vector<double> v;
  if (!c.contains(key)) return v;
  if (!c.at(key).is_array()) throw invalid_input_error(std::string("config key '") + key + "' must be an array");
  for (const auto& x : c.at(key)) v.push_back(number_from_json(x));
  return v;
}

std::uint64_t seed_of(const json& c) { return get<std::uint64_t>(c, "seed", 0); }

std::string format_of(const json& c, const char* fallback) {
  auto f = get<std::string>(c, "format", fallback);
  if (f != "csv" && f != "json") throw invalid_input_error("--format must be csv or json");
  return f;
}

int slot_count(const BooleanProblem& p) { return layout_for(p).slots; }

double default_budget(const BooleanProblem& p) {
  double s = slot_count(p);
  if (p.kind() == ProblemKind::Sorting) {
    double k = p.word_bits();
    return p.word_count() * k * (k + 1) / 2.0;
  }
  return s * (s + 1) / 2.0;
}

PermutationGroup group_from_config(const json& c, int n) {
  if (!c.contains("group")) return PermutationGroup::identity(n);
  json g = c.at("group");
  if (g.is_string()) {
    auto text = g.get<std::string>();
    if (!text.empty() && text[0] == '{') {
      g = json::parse(text, nullptr, false);
      if (g.is_discarded()) throw invalid_input_error("--group: bad JSON");
    } else {
      json obj;
      obj["kind"] = text;
      obj["n"] = n;
      if (c.contains("generators")) {
        json gens = c.at("generators");
        if (gens.is_string()) {
          gens = json::parse(gens.get<std::string>(), nullptr, false);
          if (gens.is_discarded()) throw invalid_input_error("--generators: bad JSON");
        }
        obj["generators"] = gens;
      }
      g = obj;
    }
  }
  auto group = group_from_json(g);
  if (group.degree() != n) throw invalid_input_error("group degree does not match the problem");
  return group;
}

EvalMode resolve_mode(const json& c, int n) {
  auto m = get<std::string>(c, "mode", "auto");
  if (m == "auto") return n <= kMaxExactMobsBits ? EvalMode::Exact : EvalMode::MonteCarlo;
  if (m == "exact") return EvalMode::Exact;
  if (m == "monte_carlo") return EvalMode::MonteCarlo;
  throw invalid_input_error("--mode must be auto, exact or monte_carlo");
}

ModeChoice mode_choice(const json& c) {
  auto m = get<std::string>(c, "mode", "auto");
  if (m == "auto") return ModeChoice::Auto;
  if (m == "exact") return ModeChoice::Exact;
  if (m == "monte_carlo") return ModeChoice::MonteCarlo;
  throw invalid_input_error("--mode must be auto, exact or monte_carlo");
}

std::size_t samples_of(const json& c) {
  auto s = get<std::uint64_t>(c, "samples", 100'000);
  if (s == 0) throw invalid_input_error("--samples must be positive");
  return s;
}

EnergyVector energy_from_config(const json& c, const BooleanProblem& p) {
  if (c.contains("energy")) {
    auto e = energy_from_json(c.at("energy"));
    if (static_cast<int>(e.size()) != p.n()) {
      throw invalid_input_error("--energy has " + std::to_string(e.size()) + " entries, problem has " +
                                std::to_string(p.n()) + " bits");
    }
    return e;
  }
  double budget = get_number(c, "budget", default_budget(p));
  auto kind = get<std::string>(c, "allocation", "uniform");
  int slots = slot_count(p);
  std::vector<double> s;
  if (kind == "uniform") {
    s.assign(static_cast<std::size_t>(slots), budget / slots);
  } else if (kind == "staircase") {
    auto seeds = analytic_seeds(p, budget);
    s = seeds.empty() ? graded_slots(budget, slots) : seeds.front();
  } else {
    throw invalid_input_error("--allocation must be uniform or staircase");
  }
  return layout_for(p).expand(s);
}

std::optional<Row> instance_of(const json& c, const BooleanProblem& p) {
  if (!c.contains("instance")) return std::nullopt;
  auto bits = parse_bit_string(require<std::string>(c, "instance"));
  if (static_cast<int>(bits.size()) != p.n()) throw invalid_input_error("--instance needs n bits");
  return pack_bits(bits);
}

std::string csv_header(const json& c) {
  return std::string("# inexact ") + kVersion + "\n# config: " + c.dump() + "\n";
}

json json_envelope(const json& c) {
  json o;
  o["version"] = kVersion;
  o["config"] = c;
  return o;
}

struct Output {
  std::string text;
  bool converged = true;
};

Output cmd_eval(const json& c) {
  auto p = problem_from_config(c);
  auto bits = parse_bit_string(require<std::string>(c, "bits"));
  auto v = p.evaluate(bits);
  if (format_of(c, "csv") == "csv") return {std::to_string(v) + "\n"};
  auto o = json_envelope(c);
  o["output"] = v;
  return {o.dump(2) + "\n"};
}

Output cmd_truth_table(const json& c) {
  auto p = problem_from_config(c);
  auto t = truth_table(p);
  if (format_of(c, "csv") == "csv") return {csv_header(c) + truth_table_csv(t)};
  auto o = json_envelope(c);
  o["n"] = t.n;
  o["outputs"] = t.outputs;
  return {o.dump(2) + "\n"};
}

Output cmd_simulate(const json& c) {
  auto p = problem_from_config(c);
  auto energy = energy_from_config(c, p);
  auto group = group_from_config(c, p.n());
  auto strategy = decoder_strategy_from_string(get<std::string>(c, "decoder", "identity"));
  auto metric = c.contains("metric") ? metric_from_string(require<std::string>(c, "metric")) : default_metric(p);

  EvalOptions eval;
  eval.mode = resolve_mode(c, p.n());
  eval.samples = samples_of(c);
  eval.seed = seed_of(c);
  auto decoder = strategy == DecoderStrategy::Identity ? Decoder::identity(p) : Decoder::map(p, energy, group);
  auto report = error_report(decoder, energy, group, eval);
  QualityOptions qopts{eval, instance_of(c, p)};
  qopts.eval.seed = derive_seed(eval.seed, 1);
  auto q = quality(decoder, energy, group, metric, qopts);

  if (format_of(c, "json") == "csv") {
    std::string out = csv_header(c);
    out += "# quality " + format_number(q.quality) + " metric " + to_string(metric) + "\n";
    out += report.mode == EvalMode::Exact ? "row,p_err\n" : "row,p_err,std_err\n";
    for (std::size_t i = 0; i < report.per_input.size(); ++i) {
      const auto& e = report.per_input[i];
      out += std::to_string(i) + "," + format_number(e.value);
      if (report.mode != EvalMode::Exact) out += "," + format_number(e.std_error);
      out += "\n";
    }
    return {out};
  }
  auto o = json_envelope(c);
  o["energy"] = energy_to_json(energy);
  o["decoder"] = to_string(strategy);
  o["report"] = error_report_to_json(report);
  o["quality"] = quality_to_json(q, metric);
  return {o.dump(2) + "\n"};
}

Output cmd_allocate(const json& c) {
  auto p = problem_from_config(c);
  double budget = get_number(c, "budget", default_budget(p));
  auto objective_kind = get<std::string>(c, "objective", "metric");

  OptimizeOptions opt;
  opt.method = search_method_from_string(get<std::string>(c, "method", "coordinate_descent"));
  opt.resolution = get_number(c, "resolution", opt.resolution);
  opt.max_evaluations = get<std::uint64_t>(c, "max_evaluations", opt.max_evaluations);
  opt.min_energy = get_number(c, "min_energy", 0.0);
  double floor = std::min(opt.min_energy, budget / slot_count(p));

  std::optional<AllocationObjective> objective;
  if (objective_kind == "variance") {
    objective = AllocationObjective::variance(p);
  } else if (objective_kind == "metric") {
    auto metric = c.contains("metric") ? metric_from_string(require<std::string>(c, "metric")) : default_metric(p);
    auto strategy = decoder_strategy_from_string(get<std::string>(c, "decoder", "identity"));
    QualityOptions q;
    q.eval.mode = resolve_mode(c, p.n());
    q.eval.samples = samples_of(c);
    q.eval.seed = seed_of(c);
    q.instance = instance_of(c, p);
    objective = AllocationObjective::metric(p, metric, strategy, group_from_config(c, p.n()), q);
    if (opt.method == SearchMethod::CoordinateDescent) opt.seeds = analytic_seeds(p, budget, floor);
  } else {
    throw invalid_input_error("--objective must be metric or variance");
  }
  auto result = optimize_allocation(*objective, budget, opt);

  if (format_of(c, "json") == "csv") {
    std::string out = csv_header(c);
    out += "# objective " + format_number(result.objective_value) + " converged " +
           (result.converged ? "true" : "false") + "\n";
    out += "slot,energy\n";
    for (std::size_t s = 0; s < result.slot_energy.size(); ++s) {
      out += std::to_string(s) + "," + format_number(result.slot_energy[s]) + "\n";
    }
    return {out, result.converged};
  }
  auto o = json_envelope(c);
  o["objective"] = objective_kind;
  o.update(allocation_to_json(result));
  return {o.dump(2) + "\n", result.converged};
}

MobsOptions mobs_options(const json& c) {
  MobsOptions o;
  o.mode = mode_choice(c);
  o.samples = samples_of(c);
  o.seed = seed_of(c);
  o.min_energy = get_number(c, "min_energy", o.min_energy);
  o.threads = get<unsigned>(c, "threads", 0);
  o.optimizer.max_evaluations = get<std::uint64_t>(c, "max_evaluations", o.optimizer.max_evaluations);
  if (c.contains("decoders")) {
    o.decoders.clear();
    for (const auto& d : c.at("decoders")) o.decoders.push_back(decoder_strategy_from_string(d.get<std::string>()));
  }
  return o;
}

Output cmd_mobs(const json& c) {
  auto p = problem_from_config(c);
  auto budgets = c.contains("budgets") ? get_numbers(c, "budgets") : default_budget_grid(p);
  auto metric = c.contains("metric") ? metric_from_string(require<std::string>(c, "metric")) : default_metric(p);
  auto options = mobs_options(c);
  options.instance = instance_of(c, p);
  auto r = mobs(p, budgets, metric, options);
  if (format_of(c, "json") == "csv") return {csv_header(c) + mobs_summary_csv(std::span(&r, 1)), r.converged};
  auto o = json_envelope(c);
  o["result"] = mobs_to_json(r);
  return {o.dump(2) + "\n", r.converged};
}

Output cmd_curve(const json& c) {
  double sigma = get_number(c, "sigma", 1.0);
  std::vector<CurvePoint> points;
  if (c.contains("vdd")) {
    double vdd = get_number(c, "vdd", 0.0);
    points.push_back({vdd, sigma, cmos_correctness_probability(vdd, sigma)});
  } else {
    points = cmos_curve(sigma, get_number(c, "vdd_min", 0.0), get_number(c, "vdd_max", 10.0 * sigma),
                        get<int>(c, "steps", 100));
  }
  if (format_of(c, "csv") == "csv") return {csv_header(c) + curve_csv(points)};
  auto o = json_envelope(c);
  json rows = json::array();
  for (const auto& pt : points) {
    json r;
    r["vdd"] = number_json(pt.vdd);
    r["sigma"] = number_json(pt.sigma);
    r["p"] = number_json(pt.p);
    rows.push_back(std::move(r));
  }
  o["points"] = std::move(rows);
  return {o.dump(2) + "\n"};
}

std::vector<int> int_list(const json& c, const char* key, std::vector<int> fallback) {
  if (!c.contains(key)) return fallback;
  return get<std::vector<int>>(c, key, fallback);
}

Output cmd_table2(const json& c) {
  auto ns = int_list(c, "ns", {4, 6, 8});
  auto ks = int_list(c, "ks", {2, 3, 4});
  auto sorting_ks = int_list(c, "sorting_ks", {2, 3, 4});
  int sorting_l = get<int>(c, "sorting_L", 2);
  auto options = mobs_options(c);

  std::vector<BooleanProblem> problems;
  for (int n : ns) problems.push_back(make_or(n));
  for (int n : ns) problems.push_back(make_unary_evaluation(n));
  for (int n : ns) problems.push_back(make_binary_evaluation(n));
  for (int k : ks) problems.push_back(make_comparison(k));
  for (int k : sorting_ks) problems.push_back(make_sorting(sorting_l, k));

  std::vector<MobsResult> results;
  bool converged = true;
  for (const auto& p : problems) {
    auto grid = default_budget_grid(p);
    auto r = mobs(p, grid, default_metric(p), options);
    converged = converged && r.converged;
    results.push_back(std::move(r));
  }
  if (format_of(c, "csv") == "csv") return {csv_header(c) + mobs_summary_csv(results), converged};
  auto o = json_envelope(c);
  json rows = json::array();
  for (const auto& r : results) rows.push_back(mobs_to_json(r));
  o["results"] = std::move(rows);
  return {o.dump(2) + "\n", converged};
}

void emit(const json& c, const Output& output, std::ostream& out) {
  auto path = get<std::string>(c, "out", "");
  if (path.empty()) {
    out << output.text;
    return;
  }
  // Written whole to a temporary then renamed, so no partial file is left.
  std::filesystem::path target(path);
  auto tmp = target;
  tmp += ".partial";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw invalid_input_error("cannot write '" + path + "'");
    f << output.text;
    if (!f) throw invalid_input_error("cannot write '" + path + "'");
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace

BooleanProblem problem_from_config(const json& c) {
  auto kind = problem_kind_from_string(require<std::string>(c, "problem"));
  ProblemSpec spec;
  spec.kind = kind;
  switch (kind) {
    case ProblemKind::Comparison:
      if (c.contains("k")) {
        spec.word_bits = get<int>(c, "k", 0);
      } else {
        int n = require<int>(c, "n");
        if (n % 2 != 0) throw invalid_input_error("comparison needs even n or --k");
        spec.word_bits = n / 2;
      }
      break;
    case ProblemKind::Sorting:
      spec.word_bits = require<int>(c, "k");
      spec.word_count = get<int>(c, "L", 2);
      break;
    case ProblemKind::CustomTable:
      spec.n = require<int>(c, "n");
      spec.table = require<std::vector<std::int64_t>>(c, "table");
      break;
    case ProblemKind::Tribes:
      spec.n = require<int>(c, "n");
      spec.tribes = get<int>(c, "tribes", 2);
      break;
    default:
      spec.n = require<int>(c, "n");
      break;
  }
  return build_problem(spec);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy allocation and broken-symmetry experiments for noisy Boolean evaluation", "inexact"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1, 1);

  using Handler = Output (*)(const json&);
  struct Sub {
    Command cmd;
    Handler handler;
  };
  std::vector<std::unique_ptr<Sub>> subs;
  auto add = [&](const char* name, const char* help, Handler handler, std::initializer_list<const char*> keys) {
    auto s = std::make_unique<Sub>();
    s->cmd.app = app.add_subcommand(name, help);
    s->handler = handler;
    add_flags(s->cmd, keys);
    subs.push_back(std::move(s));
  };
  std::initializer_list<const char*> problem_keys = {"problem", "n", "k", "L", "tribes", "table"};
  add("eval", "print f(bits)", cmd_eval, {"problem", "n", "k", "L", "tribes", "table", "bits"});
  add("truth-table", "print the truth table as CSV", cmd_truth_table, problem_keys);
  add("simulate", "per-input error report and quality", cmd_simulate,
      {"problem", "n", "k", "L", "tribes", "table", "energy", "allocation", "budget", "group", "generators",
       "decoder", "metric", "mode", "samples", "instance"});
  add("allocate", "optimize an energy allocation", cmd_allocate,
      {"problem", "n", "k", "L", "tribes", "table", "budget", "objective", "metric", "decoder", "group",
       "generators", "method", "resolution", "max_evaluations", "min_energy", "mode", "samples", "instance"});
  add("mobs", "measure of broken symmetry over a budget grid", cmd_mobs,
      {"problem", "n", "k", "L", "tribes", "table", "budgets", "metric", "decoders", "mode", "samples",
       "min_energy", "max_evaluations", "threads", "instance"});
  add("curve", "CMOS switch correctness curve", cmd_curve, {"sigma", "vdd", "vdd_min", "vdd_max", "steps"});
  add("table2", "desk-scale broken-symmetry table", cmd_table2,
      {"ns", "ks", "sorting_L", "sorting_ks", "mode", "samples", "min_energy", "max_evaluations", "threads",
       "decoders"});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  for (auto& s : subs) {
    if (!s->cmd.app->parsed()) continue;
    try {
      auto config = merged_config(s->cmd);
      auto output = s->handler(config);
      emit(config, output, out);
      if (!output.converged) {
        err << "error: optimizer hit its evaluation cap; output is flagged converged=false\n";
        return kNonConvergence;
      }
      return kOk;
    } catch (const invalid_input_error& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    } catch (const resource_limit_error& e) {
      err << "resource limit: " << e.what() << "\n";
      return kResourceLimit;
    } catch (const non_convergence_error& e) {
      err << "not converged: " << e.what() << "\n";
      return kNonConvergence;
    } catch (const json::exception& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    } catch (const std::exception& e) {
      err << "internal error: " << e.what() << "\n";
      return 1;
    }
  }
  return kUsage;
}

}  // namespace inexact::cli
