#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "inexact/metrics.hpp"

namespace inexact {

/// How allocation slots drive input bits.
///
/// Most problems spend one slot per bit. Comparison spends one slot per
/// bit position: the comparator for position j reads both x_j and y_j, and
/// each of those reads is wrong with probability 2^-(slot energy). Budgets
/// are always counted in slots.
struct EnergyLayout {
  int slots = 0;
  /// bit_slot[b] is the slot powering input bit b.
  std::vector<int> bit_slot;

  static EnergyLayout per_bit(int n);
  static EnergyLayout positional(int k);

  /// Bit-level energies for a slot allocation.
  EnergyVector expand(std::span<const double> slot_energy) const;
};

EnergyLayout layout_for(const BooleanProblem& problem);

/// E/n in every entry, budget E.
EnergyVector uniform_allocation(double budget, int n);

/// e_j = j + 1, budget n(n+1)/2.
EnergyVector staircase_allocation(int n);

/// The staircase shape e_j = max(floor, j + c) with c chosen so the entries
/// sum to `budget`. Equals staircase_allocation(n) at budget n(n+1)/2 and
/// floor <= 1. Requires budget >= n * floor.
std::vector<double> graded_slots(double budget, int slots, double floor = 0.0);

/// Position j of the comparator receives j + 1 units, total k(k+1)/2.
struct ComparisonAllocation {
  std::vector<double> position_energy;

  double total() const;
  /// 2k bit energies: x_j and y_j both read at position j's energy.
  EnergyVector operand_energy() const;
};

ComparisonAllocation comparison_allocation(int k);

/// The comparison staircase inside every word: bit j of each of the L
/// words gets j + 1.
EnergyVector sorting_allocation(int count, int k);

/// sum_j (1 - 2^-e_j) 2^-e_j, the variance of the count of ones read.
double ue_variance(const EnergyVector& energy);

enum class ObjectiveKind { UeVariance, Metric };

/// A value to minimise over energy vectors: the UE read-count variance, or
/// the worst per-input error term of a quality metric (the reciprocal of
/// the quality).
class AllocationObjective {
 public:
  static AllocationObjective variance(BooleanProblem problem);
  static AllocationObjective metric(BooleanProblem problem, MetricKind metric, DecoderStrategy decoder,
                                    PermutationGroup group, QualityOptions options = {});

  const BooleanProblem& problem() const { return problem_; }
  ObjectiveKind kind() const { return kind_; }
  MetricKind metric_kind() const { return metric_; }
  DecoderStrategy decoder_strategy() const { return decoder_; }
  const PermutationGroup& group() const { return group_; }
  const EnergyLayout& layout() const { return layout_; }

  double operator()(const EnergyVector& energy) const;
  double evaluate_slots(std::span<const double> slot_energy) const { return (*this)(layout_.expand(slot_energy)); }

  /// The decoder the objective uses for `energy`.
  Decoder decoder_for(const EnergyVector& energy) const;

 private:
  AllocationObjective(BooleanProblem problem, PermutationGroup group)
      : problem_(std::move(problem)), group_(std::move(group)), layout_(layout_for(problem_)) {}

  BooleanProblem problem_;
  ObjectiveKind kind_ = ObjectiveKind::UeVariance;
  MetricKind metric_ = MetricKind::WorstCaseCorrectness;
  DecoderStrategy decoder_ = DecoderStrategy::Identity;
  PermutationGroup group_;
  EnergyLayout layout_;
  QualityOptions options_;
  std::optional<Decoder> identity_;
};

enum class SearchMethod { Grid, CoordinateDescent };

std::string to_string(SearchMethod method);
SearchMethod search_method_from_string(std::string_view name);

struct OptimizeOptions {
  SearchMethod method = SearchMethod::CoordinateDescent;
  /// Lattice spacing for Grid.
  double resolution = 0.05;
  double initial_step = 1.0;
  double min_step = 1e-6;
  /// A descent move is kept only if it lowers the objective by more than this.
  double min_improvement = 1e-10;
  std::size_t max_evaluations = 2'000'000;
  /// Per-slot lower bound; capped at budget / slots so uniform stays feasible.
  double min_energy = 0.0;
  /// Extra descent starting points in slot space. The uniform point is
  /// always tried first.
  std::vector<std::vector<double>> seeds;
};

struct AllocationResult {
  EnergyVector energy;
  std::vector<double> slot_energy;
  double budget = 0.0;
  SearchMethod method = SearchMethod::CoordinateDescent;
  bool converged = true;
  double objective_value = 0.0;
  std::size_t evaluations = 0;
};

inline constexpr int kMaxGridSlots = 6;
inline constexpr std::size_t kMaxGridPoints = 50'000'000;

/// Minimises the objective over slot allocations summing to `budget`.
/// CoordinateDescent moves mass between slot pairs with a halving step;
/// Grid scans the whole simplex lattice. A run that hits max_evaluations
/// returns its best point with converged = false.
AllocationResult optimize_allocation(const AllocationObjective& objective, double budget,
                                     const OptimizeOptions& options = {});

/// Analytic starting points for a problem's slots at `budget`: the graded
/// staircase for BE, Comparison and Sorting; nothing for the rest.
std::vector<std::vector<double>> analytic_seeds(const BooleanProblem& problem, double budget, double floor = 0.0);

}  // namespace inexact
