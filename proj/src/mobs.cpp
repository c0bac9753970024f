#include "inexact/mobs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <thread>

#include "inexact/error.hpp"

namespace inexact {

namespace {

QualityOptions quality_options(const MobsOptions& options, EvalMode mode, std::uint64_t seed) {
  QualityOptions q;
  q.eval.mode = mode;
  q.eval.samples = options.samples;
  q.eval.seed = seed;
  q.instance = options.instance;
  return q;
}

bool better(const Champion& candidate, const std::optional<Champion>& best) {
  return !best || candidate.quality.worst_error < best->quality.worst_error - 1e-12 * std::max(1.0, best->quality.worst_error);
}

Champion evaluate_champion(const BooleanProblem& problem, std::vector<double> slots, DecoderStrategy strategy,
                           const PermutationGroup& group, MetricKind metric, const QualityOptions& qopts) {
  auto layout = layout_for(problem);
  Champion c;
  c.energy = layout.expand(slots);
  c.slot_energy = std::move(slots);
  c.decoder = strategy;
  auto decoder = strategy == DecoderStrategy::Identity ? Decoder::identity(problem)
                                                       : Decoder::map(problem, c.energy, group);
  c.quality = quality(decoder, c.energy, group, metric, qopts);
  return c;
}

BudgetPoint solve_budget(const BooleanProblem& problem, double budget, MetricKind metric, EvalMode mode,
                         const MobsOptions& options, std::uint64_t seed) {
  int n = problem.n();
  auto layout = layout_for(problem);
  int slots = layout.slots;
  double floor = std::min(options.min_energy, budget / slots);
  auto identity = PermutationGroup::identity(n);
  auto symmetric = PermutationGroup::full_symmetric(n);
  auto qopts_cv = quality_options(options, mode, derive_seed(seed, 1));
  auto qopts_bf = quality_options(options, mode, derive_seed(seed, 2));
  std::vector<double> uniform(static_cast<std::size_t>(slots), budget / slots);

  BudgetPoint point;
  point.budget = budget;
  std::optional<Champion> cv;
  std::optional<Champion> bf;
  for (auto strategy : options.decoders) {
    if (metric == MetricKind::SortingWeighted && strategy != DecoderStrategy::Identity) continue;

    auto blind = evaluate_champion(problem, uniform, strategy, symmetric, metric, qopts_bf);
    if (better(blind, bf)) bf = std::move(blind);

    if (mode == EvalMode::Exact) {
      auto objective = AllocationObjective::metric(problem, metric, strategy, identity, qopts_cv);
      auto opt = options.optimizer;
      opt.method = SearchMethod::CoordinateDescent;
      opt.min_energy = floor;
      opt.seeds = analytic_seeds(problem, budget, floor);
      auto found = optimize_allocation(objective, budget, opt);
      auto clair = evaluate_champion(problem, found.slot_energy, strategy, identity, metric, qopts_cv);
      clair.converged = found.converged;
      if (better(clair, cv)) cv = std::move(clair);
    } else {
      std::vector<std::vector<double>> candidates{uniform};
      for (auto& s : analytic_seeds(problem, budget, floor)) candidates.push_back(std::move(s));
      for (auto& s : candidates) {
        auto clair = evaluate_champion(problem, std::move(s), strategy, identity, metric, qopts_cv);
        if (better(clair, cv)) cv = std::move(clair);
      }
    }
  }
  if (!cv || !bf) throw invalid_input_error("no decoder applicable to metric " + to_string(metric));
  point.clairvoyant = std::move(*cv);
  point.blindfolded = std::move(*bf);

  const auto& a = point.blindfolded.quality;
  const auto& b = point.clairvoyant.quality;
  point.error_ratio = 0.0;
  for (std::size_t r = 0; r < a.errors.size(); ++r) {
    double num = a.errors[r].value;
    double den = b.errors[r].value;
    double ratio;
    double se = 0.0;
    if (den <= 0.0) {
      ratio = num <= 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    } else {
      ratio = num / den;
      if (num > 0.0) {
        double rel_a = a.errors[r].std_error / num;
        double rel_b = b.errors[r].std_error / den;
        se = ratio * std::sqrt(rel_a * rel_a + rel_b * rel_b);
      }
    }
    if (r == 0 || ratio > point.error_ratio) {
      point.error_ratio = ratio;
      point.error_ratio_std_error = se;
      point.worst_input = a.rows[r];
    }
  }
  if (b.worst_error <= 0.0) {
    point.quality_ratio = a.worst_error <= 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  } else {
    point.quality_ratio = a.worst_error / b.worst_error;
  }
  return point;
}

}  // namespace

std::vector<double> default_budget_grid(const BooleanProblem& problem) {
  double s;
  double scale = 1.0;
  if (problem.kind() == ProblemKind::Sorting) {
    s = problem.word_bits();
    scale = problem.word_count();
  } else {
    s = layout_for(problem).slots;
  }
  return {scale * s, scale * s * (s + 1) / 4.0, scale * s * (s + 1) / 2.0, scale * s * (s + 1)};
}

MobsResult mobs(const BooleanProblem& problem, std::span<const double> budgets, MetricKind metric,
                const MobsOptions& options) {
  if (budgets.empty()) throw invalid_input_error("budget grid is empty");
  if (options.decoders.empty()) throw invalid_input_error("no decoders given");
  for (auto strategy : options.decoders) {
    if (strategy != DecoderStrategy::Identity || metric != MetricKind::SortingWeighted) {
      validate_metric(problem, metric, strategy);
    }
  }
  for (double b : budgets) {
    if (!(b >= 0.0) || !std::isfinite(b)) throw invalid_input_error("budgets must be finite and non-negative");
  }

  MobsResult result;
  result.problem = problem.name();
  result.kind = problem.kind();
  result.n = problem.n();
  result.metric = metric;
  result.seed = options.seed;
  switch (options.mode) {
    case ModeChoice::Exact: result.mode = EvalMode::Exact; break;
    case ModeChoice::MonteCarlo: result.mode = EvalMode::MonteCarlo; break;
    case ModeChoice::Auto:
      result.mode = problem.n() <= kMaxExactMobsBits ? EvalMode::Exact : EvalMode::MonteCarlo;
      break;
  }
  if (result.mode == EvalMode::Exact && problem.n() > kMaxDecodeMapBits &&
      metric != MetricKind::SortingWeighted && metric != MetricKind::ComparisonWeighted) {
    throw resource_limit_error("exact MoBS limited to n <= " + std::to_string(kMaxDecodeMapBits));
  }
  result.samples = result.mode == EvalMode::MonteCarlo ? options.samples : 0;

  unsigned threads = options.threads != 0 ? options.threads : std::max(1U, std::thread::hardware_concurrency());
  result.points.resize(budgets.size());
  for (std::size_t start = 0; start < budgets.size(); start += threads) {
    std::vector<std::future<BudgetPoint>> jobs;
    std::size_t stop = std::min(budgets.size(), start + threads);
    for (std::size_t t = start; t < stop; ++t) {
      jobs.push_back(std::async(std::launch::async, solve_budget, std::cref(problem), budgets[t], metric, result.mode,
                                std::cref(options), derive_seed(options.seed, t)));
    }
    for (std::size_t t = start; t < stop; ++t) result.points[t] = jobs[t - start].get();
  }

  result.mobs = 0.0;
  result.mobs_quality = 0.0;
  for (const auto& p : result.points) {
    result.mobs = std::max(result.mobs, p.error_ratio);
    result.mobs_quality = std::max(result.mobs_quality, p.quality_ratio);
    result.converged = result.converged && p.clairvoyant.converged;
  }
  return result;
}

BeBounds be_analytic_bounds(int n) {
  if (n < 1) throw invalid_input_error("n must be positive");
  return {n / 2.0, std::exp2((n - 3) / 2.0)};
}

SortingBound sorting_mobs_bound(int count, int k) {
  if (k < 1) throw invalid_input_error("k must be positive");
  SortingBound b;
  b.instance = expensive_pairs_instance(count, k);
  b.words = make_sorting(count, k).words(b.instance);
  b.blindfolded_pair_probability = std::exp2(-(k + 1) / 2.0);
  b.clairvoyant_pair_probability = std::exp2(-static_cast<double>(k));
  b.ratio = std::exp2((k - 1) / 2.0);
  return b;
}

MeasuredSortingRatio measured_sorting_ratio(int count, int k) {
  auto problem = make_sorting(count, k);
  Row instance = expensive_pairs_instance(count, k);
  auto words = problem.words(instance);
  auto group = PermutationGroup::identity(problem.n());
  auto uniform = uniform_allocation(count * k * (k + 1) / 2.0, problem.n());
  auto staircase = sorting_allocation(count, k);
  const std::int64_t expensive = std::int64_t{1} << (k - 1);
  MeasuredSortingRatio m;
  for (int a = 0; a < count; ++a) {
    for (int b = a + 1; b < count; ++b) {
      auto gap = std::llabs(words[static_cast<std::size_t>(a)] - words[static_cast<std::size_t>(b)]);
      if (gap != expensive) continue;
      m.blindfolded_sum += gap * wrong_order_probability(problem, uniform, group, instance, a, b);
      m.clairvoyant_sum += gap * wrong_order_probability(problem, staircase, group, instance, a, b);
    }
  }
  m.ratio = m.clairvoyant_sum > 0.0 ? m.blindfolded_sum / m.clairvoyant_sum : std::numeric_limits<double>::infinity();
  return m;
}

}  // namespace inexact
