#include "inexact/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "inexact/error.hpp"

namespace inexact {

std::string to_string(MetricKind metric) {
  switch (metric) {
    case MetricKind::WorstCaseCorrectness: return "worst_case";
    case MetricKind::ReciprocalExpectedError: return "expected_error";
    case MetricKind::ComparisonWeighted: return "comparison_weighted";
    case MetricKind::SortingWeighted: return "sorting_weighted";
  }
  return "unknown";
}

MetricKind metric_from_string(std::string_view name) {
  if (name == "worst_case") return MetricKind::WorstCaseCorrectness;
  if (name == "expected_error") return MetricKind::ReciprocalExpectedError;
  if (name == "comparison_weighted") return MetricKind::ComparisonWeighted;
  if (name == "sorting_weighted") return MetricKind::SortingWeighted;
  throw invalid_input_error("unknown metric '" + std::string(name) + "'");
}

MetricKind default_metric(const BooleanProblem& problem) {
  switch (problem.kind()) {
    case ProblemKind::UnaryEvaluation:
    case ProblemKind::BinaryEvaluation:
      return MetricKind::ReciprocalExpectedError;
    case ProblemKind::Comparison:
      return MetricKind::ComparisonWeighted;
    case ProblemKind::Sorting:
      return MetricKind::SortingWeighted;
    default:
      return MetricKind::WorstCaseCorrectness;
  }
}

void validate_metric(const BooleanProblem& problem, MetricKind metric, DecoderStrategy decoder) {
  if (metric == MetricKind::ComparisonWeighted && problem.kind() != ProblemKind::Comparison) {
    throw invalid_input_error("comparison_weighted applies only to comparison problems");
  }
  if (metric == MetricKind::SortingWeighted) {
    if (problem.kind() != ProblemKind::Sorting) {
      throw invalid_input_error("sorting_weighted applies only to sorting problems");
    }
    if (decoder != DecoderStrategy::Identity) {
      throw invalid_input_error("sorting_weighted needs the identity decoder to track which word went where");
    }
  }
}

Row expensive_pairs_instance(int count, int k) {
  if (count < 2 || count % 2 != 0) throw invalid_input_error("expensive-pairs instance needs an even L >= 2");
  if (k < 1 || count * k > kMaxBits) throw invalid_input_error("expensive-pairs instance: bad k");
  Row row = 0;
  for (int w = 0; w < count / 2; ++w) row |= Row{1} << (w * k + k - 1);
  return row;
}

namespace {

bool product_channel(const EnergyVector& energy, const PermutationGroup& group) {
  return group.kind() == GroupKind::Identity || energy.is_uniform();
}

// Marginal law of the flips on `bits` (mask over those bits, in order).
std::vector<double> marginal_mask(const EnergyVector& energy, const PermutationGroup& group,
                                  std::span<const int> bits) {
  auto probs = energy.flip_probabilities();
  if (product_channel(energy, group)) {
    std::vector<double> sub;
    for (int b : bits) sub.push_back(probs[static_cast<std::size_t>(b)]);
    return product_mask_distribution(sub);
  }
  if (probs.size() > 20) throw resource_limit_error("blindfolded pair marginal limited to n <= 20");
  auto q = mask_distribution(probs, group);
  std::vector<double> out(std::size_t{1} << bits.size(), 0.0);
  for (std::size_t d = 0; d < q.size(); ++d) {
    std::size_t m = 0;
    for (std::size_t t = 0; t < bits.size(); ++t) {
      if (bit_of(d, bits[t])) m |= std::size_t{1} << t;
    }
    out[m] += q[d];
  }
  return out;
}

bool wrongly_ordered(std::int64_t a, std::int64_t b, std::int64_t seen_a, std::int64_t seen_b) {
  // The stable sort keeps the lower index first exactly when seen_a <= seen_b.
  bool first_stays_first = seen_a <= seen_b;
  return a < b ? !first_stays_first : first_stays_first;
}

QualityResult finish(std::vector<Row> rows, std::vector<Estimate> errors) {
  QualityResult r;
  r.rows = std::move(rows);
  r.errors = std::move(errors);
  for (std::size_t t = 0; t < r.errors.size(); ++t) {
    if (t == 0 || r.errors[t].value > r.worst_error) {
      r.worst_error = r.errors[t].value;
      r.worst_input = r.rows[t];
    }
  }
  r.quality = r.worst_error > 0.0 ? 1.0 / r.worst_error : kInfiniteQuality;
  return r;
}

QualityResult sorting_quality(const Decoder& decoder, const EnergyVector& energy, const PermutationGroup& group,
                              const QualityOptions& options) {
  const auto& problem = decoder.problem();
  int count = problem.word_count();
  int k = problem.word_bits();
  Row instance = options.instance ? *options.instance : expensive_pairs_instance(count, k);
  if (instance > low_mask(problem.n())) throw invalid_input_error("sorting instance out of range");
  auto values = problem.words(instance);

  if (options.eval.mode == EvalMode::Exact) {
    double total = 0.0;
    for (int a = 0; a < count; ++a) {
      for (int b = a + 1; b < count; ++b) {
        auto gap = std::llabs(values[static_cast<std::size_t>(a)] - values[static_cast<std::size_t>(b)]);
        if (gap == 0) continue;
        total += static_cast<double>(gap) * wrong_order_probability(problem, energy, group, instance, a, b);
      }
    }
    return finish({instance}, {Estimate{total}});
  }

  std::size_t samples = options.eval.samples;
  if (samples == 0) throw invalid_input_error("Monte Carlo needs at least one sample");
  Rng rng(options.eval.seed);
  auto base = energy.flip_probabilities();
  auto probs = base;
  bool permute = !product_channel(energy, group);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    if (permute) {
      auto sigma = sample_permutation(group, rng);
      for (std::size_t j = 0; j < probs.size(); ++j) probs[j] = base[sigma[j]];
    }
    auto seen = problem.words(sample_observation(instance, probs, rng));
    double x = 0.0;
    for (int a = 0; a < count; ++a) {
      for (int b = a + 1; b < count; ++b) {
        auto va = values[static_cast<std::size_t>(a)];
        auto vb = values[static_cast<std::size_t>(b)];
        if (va == vb) continue;
        if (wrongly_ordered(va, vb, seen[static_cast<std::size_t>(a)], seen[static_cast<std::size_t>(b)])) {
          x += static_cast<double>(std::llabs(va - vb));
        }
      }
    }
    sum += x;
    sum_sq += x * x;
  }
  double nsamp = static_cast<double>(samples);
  double mean = sum / nsamp;
  double var = samples > 1 ? std::max(0.0, (sum_sq - nsamp * mean * mean) / (nsamp - 1.0)) : 0.0;
  return finish({instance}, {Estimate{mean, std::sqrt(var / nsamp), samples}});
}

}  // namespace

double wrong_order_probability(const BooleanProblem& sorting, const EnergyVector& energy,
                               const PermutationGroup& group, Row instance, int l1, int l2) {
  if (sorting.kind() != ProblemKind::Sorting) throw invalid_input_error("wrong_order_probability needs a sorting problem");
  int k = sorting.word_bits();
  if (l1 < 0 || l2 <= l1 || l2 >= sorting.word_count()) throw invalid_input_error("bad word pair");
  if (static_cast<int>(energy.size()) != sorting.n()) throw invalid_input_error("energy vector size mismatch");
  if (2 * k > 20) throw resource_limit_error("pair enumeration limited to k <= 10");

  std::vector<int> bits;
  for (int j = 0; j < k; ++j) bits.push_back(l1 * k + j);
  for (int j = 0; j < k; ++j) bits.push_back(l2 * k + j);
  auto q = marginal_mask(energy, group, bits);

  auto values = sorting.words(instance);
  std::int64_t a = values[static_cast<std::size_t>(l1)];
  std::int64_t b = values[static_cast<std::size_t>(l2)];
  auto word_mask = static_cast<std::int64_t>(low_mask(k));
  double p = 0.0;
  for (std::size_t d = 0; d < q.size(); ++d) {
    if (q[d] == 0.0) continue;
    std::int64_t seen_a = a ^ (static_cast<std::int64_t>(d) & word_mask);
    std::int64_t seen_b = b ^ (static_cast<std::int64_t>(d >> k) & word_mask);
    if (wrongly_ordered(a, b, seen_a, seen_b)) p += q[d];
  }
  return p;
}

QualityResult quality(const Decoder& decoder, const EnergyVector& energy, const PermutationGroup& group,
                      MetricKind metric, const QualityOptions& options) {
  const auto& problem = decoder.problem();
  validate_metric(problem, metric, decoder.strategy());
  if (static_cast<int>(energy.size()) != problem.n()) throw invalid_input_error("energy vector size mismatch");

  switch (metric) {
    case MetricKind::SortingWeighted:
      return sorting_quality(decoder, energy, group, options);

    case MetricKind::ComparisonWeighted: {
      int k = problem.word_bits();
      std::vector<Row> rows;
      std::vector<Estimate> errors;
      bool fast = options.eval.mode == EvalMode::Exact && decoder.strategy() == DecoderStrategy::Identity &&
                  product_channel(energy, group);
      if (fast) {
        auto probs = energy.flip_probabilities();
        // y outer so rows come out ascending, matching the generic path.
        for (std::int64_t y = 0; y < (std::int64_t{1} << k); ++y) {
          for (std::int64_t x = 0; x < (std::int64_t{1} << k); ++x) {
            if (x == y) continue;
            double p = comparison_error_probability(k, x, y, probs);
            rows.push_back(static_cast<Row>(x | (y << k)));
            errors.push_back({static_cast<double>(std::llabs(x - y)) * p});
          }
        }
        return finish(std::move(rows), std::move(errors));
      }
      auto all = per_input_errors(decoder, energy, group, ErrorMeasure::Mismatch, options.eval);
      for (std::size_t i = 0; i < all.size(); ++i) {
        auto w = problem.words(static_cast<Row>(i));
        auto gap = std::llabs(w[0] - w[1]);
        if (gap == 0) continue;
        auto scale = static_cast<double>(gap);
        rows.push_back(static_cast<Row>(i));
        errors.push_back({all[i].value * scale, all[i].std_error * scale, all[i].samples});
      }
      return finish(std::move(rows), std::move(errors));
    }

    case MetricKind::WorstCaseCorrectness:
    case MetricKind::ReciprocalExpectedError: {
      auto measure = metric == MetricKind::WorstCaseCorrectness ? ErrorMeasure::Mismatch : ErrorMeasure::Magnitude;
      auto errors = per_input_errors(decoder, energy, group, measure, options.eval);
      std::vector<Row> rows(errors.size());
      for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = static_cast<Row>(i);
      return finish(std::move(rows), std::move(errors));
    }
  }
  return {};
}

}  // namespace inexact
