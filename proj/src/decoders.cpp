#include "inexact/decoders.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "inexact/error.hpp"

namespace inexact {

std::string to_string(DecoderStrategy strategy) {
  return strategy == DecoderStrategy::Identity ? "identity" : "map";
}

DecoderStrategy decoder_strategy_from_string(std::string_view name) {
  if (name == "identity") return DecoderStrategy::Identity;
  if (name == "map") return DecoderStrategy::Map;
  throw invalid_input_error("unknown decoder '" + std::string(name) + "'");
}

std::string to_string(EvalMode mode) { return mode == EvalMode::Exact ? "exact" : "monte_carlo"; }

namespace {

std::vector<double> checked_prior(std::span<const double> prior, std::size_t rows) {
  if (prior.empty()) return std::vector<double>(rows, 1.0 / static_cast<double>(rows));
  if (prior.size() != rows) throw invalid_input_error("prior must have 2^n entries");
  double sum = 0.0;
  for (double w : prior) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw invalid_input_error("prior weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw invalid_input_error("prior must sum to 1");
  return {prior.begin(), prior.end()};
}

// Decision for every observed row given the flip-mask law q.
std::vector<std::int64_t> map_decision_table(const BooleanProblem& problem, std::span<const double> q,
                                             std::span<const double> prior) {
  std::size_t rows = q.size();
  std::vector<std::int64_t> outputs(rows);
  for (std::size_t i = 0; i < rows; ++i) outputs[i] = problem.evaluate(static_cast<Row>(i));
  std::vector<std::int64_t> values = outputs;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<std::size_t> value_index(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    value_index[i] = static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), outputs[i]) - values.begin());
  }

  std::vector<std::int64_t> table(rows);
  std::vector<double> score(values.size());
  for (std::size_t o = 0; o < rows; ++o) {
    std::fill(score.begin(), score.end(), 0.0);
    for (std::size_t i = 0; i < rows; ++i) score[value_index[i]] += prior[i] * q[o ^ i];
    // Values are ascending, so keeping the first maximum breaks ties low.
    std::size_t best = 0;
    for (std::size_t v = 1; v < values.size(); ++v) {
      if (score[v] > score[best] * (1.0 + 1e-12)) best = v;
    }
    table[o] = values[best];
  }
  return table;
}

void check_exact_size(int n) {
  if (n > kMaxDecodeMapBits) {
    throw resource_limit_error("exact evaluation limited to n <= " + std::to_string(kMaxDecodeMapBits) +
                               "; use Monte Carlo mode");
  }
}

double measure_of(ErrorMeasure measure, std::int64_t truth, std::int64_t decoded) {
  if (measure == ErrorMeasure::Mismatch) return truth != decoded ? 1.0 : 0.0;
  return static_cast<double>(std::llabs(truth - decoded));
}

struct Inputs {
  const Decoder& decoder;
  const EnergyVector& energy;
  const PermutationGroup& group;
};

void check_inputs(const Inputs& in) {
  int n = in.decoder.problem().n();
  if (static_cast<int>(in.energy.size()) != n) {
    throw invalid_input_error("energy vector has " + std::to_string(in.energy.size()) + " entries, problem has " +
                              std::to_string(n) + " bits");
  }
  if (in.group.degree() != n) throw invalid_input_error("group degree does not match problem");
}

double exact_row(const Inputs& in, std::span<const double> q, Row input, ErrorMeasure measure) {
  std::int64_t truth = in.decoder.problem().evaluate(input);
  double acc = 0.0;
  for (std::size_t d = 0; d < q.size(); ++d) {
    if (q[d] == 0.0) continue;
    acc += q[d] * measure_of(measure, truth, in.decoder.decode(input ^ d));
  }
  return acc;
}

Estimate monte_carlo_row(const Inputs& in, Row input, ErrorMeasure measure, std::size_t samples,
                         std::uint64_t seed) {
  if (samples == 0) throw invalid_input_error("Monte Carlo needs at least one sample");
  Rng rng(seed);
  auto base = in.energy.flip_probabilities();
  std::vector<double> probs = base;
  std::int64_t truth = in.decoder.problem().evaluate(input);
  bool permute = in.group.kind() != GroupKind::Identity && !in.energy.is_uniform();
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    if (permute) {
      auto sigma = sample_permutation(in.group, rng);
      for (std::size_t j = 0; j < probs.size(); ++j) probs[j] = base[sigma[j]];
    }
    Row observed = sample_observation(input, probs, rng);
    double x = measure_of(measure, truth, in.decoder.decode(observed));
    sum += x;
    sum_sq += x * x;
  }
  double count = static_cast<double>(samples);
  double mean = sum / count;
  double var = samples > 1 ? std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0)) : 0.0;
  return {mean, std::sqrt(var / count), samples};
}

Estimate evaluate_row(const Inputs& in, Row input, ErrorMeasure measure, const EvalOptions& options) {
  check_inputs(in);
  int n = in.decoder.problem().n();
  if (input > low_mask(n)) throw invalid_input_error("input row out of range");
  if (options.mode == EvalMode::MonteCarlo) {
    return monte_carlo_row(in, input, measure, options.samples, options.seed);
  }
  check_exact_size(n);
  auto q = mask_distribution(in.energy.flip_probabilities(), in.group);
  return {exact_row(in, q, input, measure)};
}

}  // namespace

Decoder Decoder::identity(BooleanProblem problem) {
  Decoder d(std::move(problem), DecoderStrategy::Identity);
  if (d.problem_.n() <= kMaxDecodeMapBits) {
    d.decode_map_.resize(std::size_t{1} << d.problem_.n());
    for (std::size_t o = 0; o < d.decode_map_.size(); ++o) d.decode_map_[o] = d.problem_.evaluate(static_cast<Row>(o));
  }
  return d;
}

Decoder Decoder::map(BooleanProblem problem, const EnergyVector& energy, const PermutationGroup& group,
                     std::vector<double> prior) {
  int n = problem.n();
  check_exact_size(n);
  if (static_cast<int>(energy.size()) != n || group.degree() != n) {
    throw invalid_input_error("MAP decoder: energy/group size does not match problem");
  }
  auto rows = std::size_t{1} << n;
  auto weights = checked_prior(prior, rows);
  auto q = mask_distribution(energy.flip_probabilities(), group);
  Decoder d(std::move(problem), DecoderStrategy::Map);
  d.decode_map_ = map_decision_table(d.problem_, q, weights);
  return d;
}

std::int64_t identity_decode(const BooleanProblem& problem, std::span<const std::uint8_t> observed) {
  return problem.evaluate(observed);
}

std::int64_t map_decode(const BooleanProblem& problem, const EnergyVector& energy,
                        std::span<const std::uint8_t> observed, std::span<const double> prior) {
  int n = problem.n();
  check_exact_size(n);
  if (observed.size() != static_cast<std::size_t>(n) || energy.size() != observed.size()) {
    throw invalid_input_error("MAP decode: observed row / energy vector length mismatch");
  }
  auto rows = std::size_t{1} << n;
  auto weights = checked_prior(prior, rows);
  auto q = product_mask_distribution(energy.flip_probabilities());
  Row o = pack_bits(observed);

  std::vector<std::pair<std::int64_t, double>> mass;
  for (std::size_t i = 0; i < rows; ++i) mass.emplace_back(problem.evaluate(static_cast<Row>(i)), weights[i] * q[o ^ i]);
  std::sort(mass.begin(), mass.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::int64_t best_value = mass.front().first;
  double best_score = -1.0;
  for (std::size_t at = 0; at < mass.size();) {
    std::int64_t v = mass[at].first;
    double score = 0.0;
    for (; at < mass.size() && mass[at].first == v; ++at) score += mass[at].second;
    if (score > best_score * (1.0 + 1e-12)) {
      best_score = score;
      best_value = v;
    }
  }
  return best_value;
}

Estimate per_input_error(const Decoder& decoder, const EnergyVector& energy, const PermutationGroup& group, Row input,
                         const EvalOptions& options) {
  return evaluate_row({decoder, energy, group}, input, ErrorMeasure::Mismatch, options);
}

Estimate expected_magnitude_error(const Decoder& decoder, const EnergyVector& energy, const PermutationGroup& group,
                                  Row input, const EvalOptions& options) {
  return evaluate_row({decoder, energy, group}, input, ErrorMeasure::Magnitude, options);
}

std::vector<Estimate> per_input_errors(const Decoder& decoder, const EnergyVector& energy,
                                       const PermutationGroup& group, ErrorMeasure measure,
                                       const EvalOptions& options) {
  Inputs in{decoder, energy, group};
  check_inputs(in);
  int n = decoder.problem().n();
  if (n > kMaxTruthTableBits) throw resource_limit_error("per-input report limited to n <= 20");
  std::size_t rows = std::size_t{1} << n;
  std::vector<Estimate> out(rows);
  if (options.mode == EvalMode::MonteCarlo) {
    for (std::size_t i = 0; i < rows; ++i) {
      out[i] = monte_carlo_row(in, static_cast<Row>(i), measure, options.samples, derive_seed(options.seed, i));
    }
    return out;
  }
  check_exact_size(n);
  auto q = mask_distribution(energy.flip_probabilities(), group);
  for (std::size_t i = 0; i < rows; ++i) out[i] = {exact_row(in, q, static_cast<Row>(i), measure)};
  return out;
}

double worst_case_quality(const Decoder& decoder, const EnergyVector& energy, const PermutationGroup& group,
                          const EvalOptions& options) {
  auto errors = per_input_errors(decoder, energy, group, ErrorMeasure::Mismatch, options);
  double worst = 0.0;
  for (const auto& e : errors) worst = std::max(worst, e.value);
  return worst > 0.0 ? 1.0 / worst : kInfiniteQuality;
}

ErrorReport error_report(const Decoder& decoder, const EnergyVector& energy, const PermutationGroup& group,
                         const EvalOptions& options) {
  ErrorReport report;
  report.blindfolded = group.kind() != GroupKind::Identity;
  report.group = group.kind();
  report.mode = options.mode;
  report.samples = options.mode == EvalMode::MonteCarlo ? options.samples : 0;
  report.seed = options.seed;
  report.per_input = per_input_errors(decoder, energy, group, ErrorMeasure::Mismatch, options);
  return report;
}

double comparison_error_probability(int k, std::int64_t x, std::int64_t y, std::span<const double> flip_probs) {
  if (k < 1 || flip_probs.size() != static_cast<std::size_t>(2 * k)) {
    throw invalid_input_error("comparison error: need 2k flip probabilities");
  }
  double equal = 1.0;
  double greater = 0.0;
  double less = 0.0;
  for (int j = k - 1; j >= 0; --j) {
    double px = flip_probs[static_cast<std::size_t>(j)];
    double py = flip_probs[static_cast<std::size_t>(k + j)];
    // Probability each observed bit is 1.
    double x1 = ((x >> j) & 1) ? 1.0 - px : px;
    double y1 = ((y >> j) & 1) ? 1.0 - py : py;
    double gt = x1 * (1.0 - y1);
    double lt = (1.0 - x1) * y1;
    greater += equal * gt;
    less += equal * lt;
    equal *= 1.0 - gt - lt;
  }
  if (x > y) return less + equal;
  if (x < y) return greater + equal;
  return greater + less;
}

}  // namespace inexact
