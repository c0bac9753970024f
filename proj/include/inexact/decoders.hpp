#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "inexact/adversary.hpp"
#include "inexact/noise_channel.hpp"
#include "inexact/problems.hpp"

namespace inexact {

enum class DecoderStrategy { Identity, Map };

std::string to_string(DecoderStrategy strategy);
DecoderStrategy decoder_strategy_from_string(std::string_view name);

inline constexpr int kMaxDecodeMapBits = 14;

/// A deterministic map from an observed row to an output value.
///
/// The identity decoder trusts the observed bits. The MAP decoder returns
/// the output value with the largest posterior mass
///   sum_{i : f(i) = v} prior(i) * P(observed | i),
/// where the likelihood is averaged over the adversary's group, since the
/// decoder never learns sigma. Ties go to the smaller output value.
class Decoder {
 public:
  static Decoder identity(BooleanProblem problem);
  /// Empty prior means uniform. Throws resource_limit_error for n > 14.
  static Decoder map(BooleanProblem problem, const EnergyVector& energy, const PermutationGroup& group,
                     std::vector<double> prior = {});

  const BooleanProblem& problem() const { return problem_; }
  DecoderStrategy strategy() const { return strategy_; }

  std::int64_t decode(Row observed) const {
    return decode_map_.empty() ? problem_.evaluate(observed) : decode_map_[observed];
  }

  /// Precomputed outputs by observed row; empty for an identity decoder on
  /// more than kMaxDecodeMapBits bits.
  const std::vector<std::int64_t>& decode_map() const { return decode_map_; }

 private:
  Decoder(BooleanProblem problem, DecoderStrategy strategy)
      : problem_(std::move(problem)), strategy_(strategy) {}

  BooleanProblem problem_;
  DecoderStrategy strategy_;
  std::vector<std::int64_t> decode_map_;
};

/// evaluate(problem, observed), checked.
std::int64_t identity_decode(const BooleanProblem& problem, std::span<const std::uint8_t> observed);

/// Clairvoyant MAP decision for one observed row. Empty prior means uniform.
std::int64_t map_decode(const BooleanProblem& problem, const EnergyVector& energy,
                        std::span<const std::uint8_t> observed, std::span<const double> prior = {});

enum class EvalMode { Exact, MonteCarlo };

std::string to_string(EvalMode mode);

struct EvalOptions {
  EvalMode mode = EvalMode::Exact;
  std::size_t samples = 100'000;
  std::uint64_t seed = 0;
};

/// What is averaged per input row: the indicator decode != f(i), or the
/// magnitude |f(i) - decode|.
enum class ErrorMeasure { Mismatch, Magnitude };

/// Pr{decode(observed) != f(i)} over the read noise and a uniform sigma
/// from `group`. Exact mode needs n <= 14 and an exact mask law for the
/// group (see mask_distribution).
Estimate per_input_error(const Decoder& decoder, const EnergyVector& energy, const PermutationGroup& group,
                         Row input, const EvalOptions& options = {});

/// E|f(i) - decode(observed)| over the same probability space.
Estimate expected_magnitude_error(const Decoder& decoder, const EnergyVector& energy,
                                  const PermutationGroup& group, Row input, const EvalOptions& options = {});

/// Per-input estimates for every input row. Monte Carlo rows use seeds
/// derived from options.seed and the row index.
std::vector<Estimate> per_input_errors(const Decoder& decoder, const EnergyVector& energy,
                                       const PermutationGroup& group, ErrorMeasure measure,
                                       const EvalOptions& options = {});

inline constexpr double kInfiniteQuality = std::numeric_limits<double>::infinity();

/// min_i 1 / Pr{error on i}; kInfiniteQuality when every input is error-free.
double worst_case_quality(const Decoder& decoder, const EnergyVector& energy, const PermutationGroup& group,
                          const EvalOptions& options = {});

struct ErrorReport {
  bool blindfolded = false;
  GroupKind group = GroupKind::Identity;
  EvalMode mode = EvalMode::Exact;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<Estimate> per_input;
};

ErrorReport error_report(const Decoder& decoder, const EnergyVector& energy, const PermutationGroup& group,
                         const EvalOptions& options = {});

/// Exact Pr{sign(x' - y') != sign(x - y)} when every bit of x and y is read
/// independently (flip_probs indexed like the Comparison layout: x bits then
/// y bits). Linear in k: scans positions from the most significant down.
double comparison_error_probability(int k, std::int64_t x, std::int64_t y, std::span<const double> flip_probs);

}  // namespace inexact
