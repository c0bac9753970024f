#include "inexact/allocators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "inexact/error.hpp"

namespace inexact {

EnergyLayout EnergyLayout::per_bit(int n) {
  EnergyLayout l;
  l.slots = n;
  l.bit_slot.resize(static_cast<std::size_t>(n));
  std::iota(l.bit_slot.begin(), l.bit_slot.end(), 0);
  return l;
}

EnergyLayout EnergyLayout::positional(int k) {
  EnergyLayout l;
  l.slots = k;
  for (int w = 0; w < 2; ++w) {
    for (int j = 0; j < k; ++j) l.bit_slot.push_back(j);
  }
  return l;
}

EnergyVector EnergyLayout::expand(std::span<const double> slot_energy) const {
  if (slot_energy.size() != static_cast<std::size_t>(slots)) {
    throw invalid_input_error("allocation has " + std::to_string(slot_energy.size()) + " slots, layout expects " +
                              std::to_string(slots));
  }
  std::vector<double> bits(bit_slot.size());
  for (std::size_t b = 0; b < bits.size(); ++b) bits[b] = slot_energy[static_cast<std::size_t>(bit_slot[b])];
  return EnergyVector(std::move(bits));
}

EnergyLayout layout_for(const BooleanProblem& problem) {
  if (problem.kind() == ProblemKind::Comparison) return EnergyLayout::positional(problem.word_bits());
  return EnergyLayout::per_bit(problem.n());
}

namespace {

void check_budget(double budget) {
  if (!(budget >= 0.0) || !std::isfinite(budget)) throw invalid_input_error("budget must be finite and non-negative");
}

}  // namespace

EnergyVector uniform_allocation(double budget, int n) {
  check_budget(budget);
  if (n < 1) throw invalid_input_error("n must be positive");
  return EnergyVector(std::vector<double>(static_cast<std::size_t>(n), budget / n), budget);
}

EnergyVector staircase_allocation(int n) {
  if (n < 1) throw invalid_input_error("n must be positive");
  std::vector<double> e(static_cast<std::size_t>(n));
  std::iota(e.begin(), e.end(), 1.0);
  return EnergyVector(std::move(e), n * (n + 1) / 2.0);
}

std::vector<double> graded_slots(double budget, int slots, double floor) {
  check_budget(budget);
  if (slots < 1) throw invalid_input_error("slots must be positive");
  if (budget < slots * floor - 1e-12) throw invalid_input_error("budget below slots * floor");
  // The top m slots sit above the floor; solve for the offset c exactly.
  for (int m = 1; m <= slots; ++m) {
    int first = slots - m;
    double index_sum = (static_cast<double>(first) + slots - 1) * m / 2.0;
    double c = (budget - static_cast<double>(first) * floor - index_sum) / m;
    bool top_ok = first + c >= floor - 1e-12;
    bool rest_ok = first == 0 || (first - 1) + c <= floor + 1e-12;
    if (top_ok && rest_ok) {
      std::vector<double> e(static_cast<std::size_t>(slots));
      for (int j = 0; j < slots; ++j) e[static_cast<std::size_t>(j)] = std::max(floor, j + c);
      return e;
    }
  }
  return std::vector<double>(static_cast<std::size_t>(slots), budget / slots);
}

double ComparisonAllocation::total() const {
  return std::accumulate(position_energy.begin(), position_energy.end(), 0.0);
}

EnergyVector ComparisonAllocation::operand_energy() const {
  return EnergyLayout::positional(static_cast<int>(position_energy.size())).expand(position_energy);
}

ComparisonAllocation comparison_allocation(int k) {
  if (k < 1) throw invalid_input_error("k must be positive");
  ComparisonAllocation a;
  a.position_energy.resize(static_cast<std::size_t>(k));
  std::iota(a.position_energy.begin(), a.position_energy.end(), 1.0);
  return a;
}

EnergyVector sorting_allocation(int count, int k) {
  if (count < 1 || k < 1) throw invalid_input_error("L and k must be positive");
  std::vector<double> e;
  for (int w = 0; w < count; ++w) {
    for (int j = 0; j < k; ++j) e.push_back(j + 1.0);
  }
  return EnergyVector(std::move(e));
}

double ue_variance(const EnergyVector& energy) {
  double v = 0.0;
  for (double p : energy.flip_probabilities()) v += (1.0 - p) * p;
  return v;
}

AllocationObjective AllocationObjective::variance(BooleanProblem problem) {
  int n = problem.n();
  AllocationObjective o(std::move(problem), PermutationGroup::identity(n));
  o.kind_ = ObjectiveKind::UeVariance;
  return o;
}

AllocationObjective AllocationObjective::metric(BooleanProblem problem, MetricKind metric, DecoderStrategy decoder,
                                                PermutationGroup group, QualityOptions options) {
  validate_metric(problem, metric, decoder);
  if (group.degree() != problem.n()) throw invalid_input_error("group degree does not match problem");
  AllocationObjective o(std::move(problem), std::move(group));
  o.kind_ = ObjectiveKind::Metric;
  o.metric_ = metric;
  o.decoder_ = decoder;
  o.options_ = std::move(options);
  if (decoder == DecoderStrategy::Identity) o.identity_ = Decoder::identity(o.problem_);
  return o;
}

Decoder AllocationObjective::decoder_for(const EnergyVector& energy) const {
  if (identity_) return *identity_;
  if (decoder_ == DecoderStrategy::Identity) return Decoder::identity(problem_);
  return Decoder::map(problem_, energy, group_);
}

double AllocationObjective::operator()(const EnergyVector& energy) const {
  if (kind_ == ObjectiveKind::UeVariance) return ue_variance(energy);
  if (identity_) return quality(*identity_, energy, group_, metric_, options_).worst_error;
  return quality(decoder_for(energy), energy, group_, metric_, options_).worst_error;
}

std::string to_string(SearchMethod method) { return method == SearchMethod::Grid ? "grid" : "coordinate_descent"; }

SearchMethod search_method_from_string(std::string_view name) {
  if (name == "grid") return SearchMethod::Grid;
  if (name == "coordinate_descent" || name == "descent") return SearchMethod::CoordinateDescent;
  throw invalid_input_error("unknown search method '" + std::string(name) + "'");
}

std::vector<std::vector<double>> analytic_seeds(const BooleanProblem& problem, double budget, double floor) {
  switch (problem.kind()) {
    case ProblemKind::BinaryEvaluation:
      return {graded_slots(budget, problem.n(), floor)};
    case ProblemKind::Comparison:
      return {graded_slots(budget, problem.word_bits(), floor)};
    case ProblemKind::Sorting: {
      auto word = graded_slots(budget / problem.word_count(), problem.word_bits(), floor);
      std::vector<double> all;
      for (int w = 0; w < problem.word_count(); ++w) all.insert(all.end(), word.begin(), word.end());
      return {all};
    }
    default:
      return {};
  }
}

namespace {

struct Search {
  const AllocationObjective& objective;
  const OptimizeOptions& options;
  std::size_t evaluations = 0;
  bool exhausted = false;

  double eval(std::span<const double> slots) {
    if (evaluations >= options.max_evaluations) {
      exhausted = true;
      return std::numeric_limits<double>::infinity();
    }
    ++evaluations;
    return objective.evaluate_slots(slots);
  }
};

// Pairwise mass transfer with a halving step.
double descend(Search& search, std::vector<double>& x, double floor) {
  double best = search.eval(x);
  std::size_t slots = x.size();
  for (double step = search.options.initial_step; step >= search.options.min_step && !search.exhausted; step /= 2) {
    bool improved = true;
    while (improved && !search.exhausted) {
      improved = false;
      for (std::size_t a = 0; a < slots; ++a) {
        for (std::size_t b = 0; b < slots; ++b) {
          if (a == b) continue;
          double delta = std::min(step, x[a] - floor);
          if (delta <= 0.0) continue;
          x[a] -= delta;
          x[b] += delta;
          double value = search.eval(x);
          if (value < best - search.options.min_improvement) {
            best = value;
            improved = true;
          } else {
            x[a] += delta;
            x[b] -= delta;
          }
          if (search.exhausted) return best;
        }
      }
    }
  }
  return best;
}

double grid_count(int slots, long units) {
  // C(units + slots - 1, slots - 1)
  double c = 1.0;
  for (int t = 1; t < slots; ++t) c = c * static_cast<double>(units + t) / t;
  return c;
}

}  // namespace

AllocationResult optimize_allocation(const AllocationObjective& objective, double budget,
                                     const OptimizeOptions& options) {
  check_budget(budget);
  if (!(options.resolution > 0.0) || !(options.min_step > 0.0) || !(options.initial_step >= options.min_step)) {
    throw invalid_input_error("optimizer resolution and steps must be positive");
  }
  if (options.min_energy < 0.0) throw invalid_input_error("min_energy must be non-negative");
  int slots = objective.layout().slots;
  double floor = std::min(options.min_energy, budget / slots);

  Search search{objective, options};
  AllocationResult result;
  result.budget = budget;
  result.method = options.method;

  std::vector<double> best_x(static_cast<std::size_t>(slots), budget / slots);
  double best = std::numeric_limits<double>::infinity();

  if (options.method == SearchMethod::Grid) {
    if (slots > kMaxGridSlots) {
      throw resource_limit_error("grid search limited to " + std::to_string(kMaxGridSlots) + " slots");
    }
    double spare = budget - slots * floor;
    long units = static_cast<long>(std::floor(spare / options.resolution + 1e-9));
    if (grid_count(slots, units) > static_cast<double>(kMaxGridPoints)) {
      throw resource_limit_error("grid has more than " + std::to_string(kMaxGridPoints) + " points");
    }
    // Leftover below one lattice unit is shared evenly so every point spends the budget.
    double leftover = (spare - units * options.resolution) / slots;
    std::vector<long> m(static_cast<std::size_t>(slots), 0);
    std::vector<double> x(static_cast<std::size_t>(slots));
    std::function<void(int, long)> walk = [&](int slot, long left) {
      if (search.exhausted) return;
      if (slot == slots - 1) {
        m[static_cast<std::size_t>(slot)] = left;
        for (int s = 0; s < slots; ++s) {
          x[static_cast<std::size_t>(s)] = floor + leftover + options.resolution * static_cast<double>(m[static_cast<std::size_t>(s)]);
        }
        double value = search.eval(x);
        if (value < best) {
          best = value;
          best_x = x;
        }
        return;
      }
      for (long v = 0; v <= left; ++v) {
        m[static_cast<std::size_t>(slot)] = v;
        walk(slot + 1, left - v);
      }
    };
    walk(0, units);
  } else {
    std::vector<std::vector<double>> starts;
    starts.emplace_back(static_cast<std::size_t>(slots), budget / slots);
    for (auto s : options.seeds) {
      if (s.size() != static_cast<std::size_t>(slots)) throw invalid_input_error("seed has the wrong number of slots");
      double sum = std::accumulate(s.begin(), s.end(), 0.0);
      if (std::abs(sum - budget) > 1e-9 * std::max(1.0, budget)) {
        throw invalid_input_error("seed does not spend the budget");
      }
      for (auto& v : s) {
        if (v < floor - 1e-12) throw invalid_input_error("seed is below the energy floor");
        v = std::max(v, floor);
      }
      starts.push_back(std::move(s));
    }
    for (auto& x : starts) {
      double value = descend(search, x, floor);
      // Earlier starts win near-ties, so a uniform optimum stays exactly uniform.
      if (value < best - 1e-12 * std::max(1.0, std::abs(best)) || best == std::numeric_limits<double>::infinity()) {
        best = value;
        best_x = x;
      }
      if (search.exhausted) break;
    }
  }

  result.converged = !search.exhausted;
  result.slot_energy = best_x;
  result.energy = objective.layout().expand(best_x);
  result.objective_value = objective.evaluate_slots(best_x);
  result.evaluations = search.evaluations;
  return result;
}

}  // namespace inexact
