#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "inexact/bits.hpp"

namespace inexact {

/// Seedable generator used for every stochastic operation.
using Rng = std::mt19937_64;

/// Derives an independent stream seed (splitmix64 step), used for shards.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Uniform double in [0, 1) built from the top 53 bits; identical on every
/// standard library, unlike std::uniform_real_distribution.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Per-bit energies e_0..e_{n-1} under a total budget.
///
/// Energies are real and may be zero. Zero energy means the bit is flipped
/// with probability exactly 1, not that it is unread.
class EnergyVector {
 public:
  EnergyVector() = default;
  /// Budget defaults to the sum of the entries.
  explicit EnergyVector(std::vector<double> entries);
  /// Throws invalid_input_error if an entry is negative or non-finite, or the
  /// entries exceed the budget by more than a 1e-9 relative tolerance.
  EnergyVector(std::vector<double> entries, double budget);

  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t j) const { return entries_[j]; }
  const std::vector<double>& entries() const { return entries_; }
  double budget() const { return budget_; }
  double total() const;

  std::vector<double> flip_probabilities() const;

  /// Entry j of the result is e_{sigma(j)}.
  EnergyVector permuted(std::span<const std::uint32_t> sigma) const;

  bool is_uniform(double tolerance = 0.0) const;

 private:
  std::vector<double> entries_;
  double budget_ = 0.0;
};

/// 2^-e. Throws invalid_input_error for negative or non-finite e.
double flip_probability(double energy);

/// Flips bit j of `row` with probability flip_probs[j].
Row sample_observation(Row row, std::span<const double> flip_probs, Rng& rng);

/// Seeded, checked variant over unpacked bits.
std::vector<std::uint8_t> sample_observation(std::span<const std::uint8_t> bits,
                                             const EnergyVector& energy, std::uint64_t seed);

inline constexpr int kMaxDistributionBits = 14;

/// Exact law of the observed row for one true row.
struct ObservationDistribution {
  int n = 0;
  Row true_row = 0;
  /// Indexed by observed row.
  std::vector<double> probabilities;

  double probability(Row observed) const { return probabilities.at(observed); }
};

/// Throws resource_limit_error for n > kMaxDistributionBits.
ObservationDistribution observation_distribution(std::span<const std::uint8_t> bits,
                                                 const EnergyVector& energy);

/// Law of the flip mask d = observed XOR true for independent bits:
/// q[d] = prod_j (d_j ? p_j : 1 - p_j). Size 2^n; n <= 20.
std::vector<double> product_mask_distribution(std::span<const double> flip_probs);

/// Probability a CMOS switch at supply voltage vdd is correct under
/// additive Gaussian noise of deviation sigma: 1 - erfc(vdd / (2 sqrt2 sigma)) / 2.
double cmos_correctness_probability(double vdd, double sigma);

struct CurvePoint {
  double vdd = 0.0;
  double sigma = 0.0;
  double p = 0.0;
};

/// `steps` + 1 evenly spaced points over [vdd_min, vdd_max].
std::vector<CurvePoint> cmos_curve(double sigma, double vdd_min, double vdd_max, int steps);

}  // namespace inexact
