#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "inexact/allocators.hpp"

namespace inexact {

/// Best (energy, decoder) pair found for one setting at one budget.
struct Champion {
  EnergyVector energy;
  std::vector<double> slot_energy;
  DecoderStrategy decoder = DecoderStrategy::Identity;
  QualityResult quality;
  bool converged = true;
};

struct BudgetPoint {
  double budget = 0.0;
  Champion clairvoyant;
  Champion blindfolded;
  /// max_i blindfolded_error(i) / clairvoyant_error(i): the per-input ratio.
  double error_ratio = 1.0;
  double error_ratio_std_error = 0.0;
  Row worst_input = 0;
  /// Q(clairvoyant) / Q(blindfolded), which equals the ratio of worst errors.
  double quality_ratio = 1.0;
};

enum class ModeChoice { Auto, Exact, MonteCarlo };

struct MobsOptions {
  /// Auto picks exact for n <= kMaxExactMobsBits.
  ModeChoice mode = ModeChoice::Auto;
  std::size_t samples = 100'000;
  std::uint64_t seed = 0;
  /// Decoders each champion may use; the better one per setting wins.
  std::vector<DecoderStrategy> decoders = {DecoderStrategy::Identity};
  /// Floor on every slot energy during the clairvoyant search, capped at
  /// budget / slots. The default keeps every read at most a coin flip.
  double min_energy = 1.0;
  OptimizeOptions optimizer;
  std::optional<Row> instance;
  /// Worker threads over budgets; 0 uses the hardware concurrency.
  unsigned threads = 0;
};

inline constexpr int kMaxExactMobsBits = 10;

struct MobsResult {
  std::string problem;
  ProblemKind kind = ProblemKind::Or;
  int n = 0;
  MetricKind metric = MetricKind::WorstCaseCorrectness;
  EvalMode mode = EvalMode::Exact;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<BudgetPoint> points;
  /// Max error_ratio over budgets.
  double mobs = 1.0;
  /// Max quality_ratio over budgets.
  double mobs_quality = 1.0;
  bool converged = true;
};

/// Clairvoyant champion: optimize_allocation under the identity group,
/// started from uniform and the analytic seeds. Blindfolded champion: the
/// uniform allocation under the full symmetric group. In Monte Carlo mode
/// the clairvoyant search is replaced by picking the best of the uniform
/// and analytic allocations.
MobsResult mobs(const BooleanProblem& problem, std::span<const double> budgets, MetricKind metric,
                const MobsOptions& options = {});

/// {s, s(s+1)/4, s(s+1)/2, s(s+1)} for s slots; Sorting uses the per-word
/// version scaled by L.
std::vector<double> default_budget_grid(const BooleanProblem& problem);

struct BeBounds {
  /// n/2: staircase expected error.
  double clairvoyant_error = 0.0;
  /// 2^((n-3)/2): uniform expected error floor with b_{n-1} = 0.
  double blindfolded_lower_bound = 0.0;
};

BeBounds be_analytic_bounds(int n);

struct SortingBound {
  /// 2^((k-1)/2)
  double ratio = 1.0;
  double blindfolded_pair_probability = 0.0;  // 2^-(k+1)/2
  double clairvoyant_pair_probability = 0.0;  // 2^-k
  Row instance = 0;
  std::vector<std::int64_t> words;
};

/// Lower bound on the sorting MoBS from the expensive pairs, plus the
/// instance that realises it. L must be even.
SortingBound sorting_mobs_bound(int count, int k);

/// Expensive-pairs ratio measured by exact pair enumeration: the weighted sum
/// restricted to pairs differing by 2^(k-1), under uniform (k+1)/2 per bit
/// versus the per-word staircase.
struct MeasuredSortingRatio {
  double blindfolded_sum = 0.0;
  double clairvoyant_sum = 0.0;
  double ratio = 0.0;
};

MeasuredSortingRatio measured_sorting_ratio(int count, int k);

}  // namespace inexact
