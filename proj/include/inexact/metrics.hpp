#pragma once

#include <optional>
#include <string>
#include <vector>

#include "inexact/decoders.hpp"

namespace inexact {

enum class MetricKind {
  /// min_i 1 / Pr{error on i}
  WorstCaseCorrectness,
  /// 1 / max_i E|f(i) - f'(i)|
  ReciprocalExpectedError,
  /// min over x != y of 1 / (|x - y| * Pr{x and y compared wrongly})
  ComparisonWeighted,
  /// 1 / sum_{l1 < l2} |x_l1 - x_l2| * Pr{l1 and l2 wrongly ordered}, on one instance
  SortingWeighted,
};

std::string to_string(MetricKind metric);
MetricKind metric_from_string(std::string_view name);

/// The metric every problem kind is reported under by default.
MetricKind default_metric(const BooleanProblem& problem);

/// Throws invalid_input_error for ComparisonWeighted on a non-Comparison
/// problem, SortingWeighted on a non-Sorting problem, or SortingWeighted
/// with a decoder other than identity.
void validate_metric(const BooleanProblem& problem, MetricKind metric, DecoderStrategy decoder);

struct QualityOptions {
  EvalOptions eval;
  /// Sorting instance; defaults to expensive_pairs_instance.
  std::optional<Row> instance;
};

/// A quality together with the per-input error terms it is the reciprocal
/// maximum of. errors[r] belongs to input row rows[r].
struct QualityResult {
  double quality = 0.0;
  double worst_error = 0.0;
  Row worst_input = 0;
  std::vector<Row> rows;
  std::vector<Estimate> errors;
};

QualityResult quality(const Decoder& decoder, const EnergyVector& energy, const PermutationGroup& group,
                      MetricKind metric, const QualityOptions& options = {});

/// L/2 words equal to 2^(k-1) followed by L/2 zero words (L even).
Row expensive_pairs_instance(int count, int k);

/// Pr{words l1 < l2 of `instance` come out of the identity decoder's
/// stable sort in the wrong relative order}. Exact enumeration over the
/// 2k bits of the pair.
double wrong_order_probability(const BooleanProblem& sorting, const EnergyVector& energy,
                               const PermutationGroup& group, Row instance, int l1, int l2);

}  // namespace inexact
