#include "inexact/noise_channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "inexact/error.hpp"

namespace inexact {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

void check_energy(double e, std::size_t j) {
  if (!std::isfinite(e) || e < 0.0) {
    throw invalid_input_error("energy " + std::to_string(j) + " must be finite and non-negative, got " +
                              std::to_string(e));
  }
}

}  // namespace

EnergyVector::EnergyVector(std::vector<double> entries) : entries_(std::move(entries)) {
  for (std::size_t j = 0; j < entries_.size(); ++j) check_energy(entries_[j], j);
  budget_ = total();
}

EnergyVector::EnergyVector(std::vector<double> entries, double budget)
    : entries_(std::move(entries)), budget_(budget) {
  if (!std::isfinite(budget) || budget < 0.0) throw invalid_input_error("budget must be finite and non-negative");
  for (std::size_t j = 0; j < entries_.size(); ++j) check_energy(entries_[j], j);
  double sum = total();
  if (sum > budget_ + 1e-9 * std::max(1.0, budget_)) {
    throw invalid_input_error("energies sum to " + std::to_string(sum) + ", over budget " + std::to_string(budget_));
  }
}

double EnergyVector::total() const { return std::accumulate(entries_.begin(), entries_.end(), 0.0); }

std::vector<double> EnergyVector::flip_probabilities() const {
  std::vector<double> p(entries_.size());
  std::transform(entries_.begin(), entries_.end(), p.begin(), [](double e) { return std::exp2(-e); });
  return p;
}

EnergyVector EnergyVector::permuted(std::span<const std::uint32_t> sigma) const {
  if (sigma.size() != entries_.size()) throw invalid_input_error("permutation degree does not match energy vector");
  EnergyVector out;
  out.entries_.resize(entries_.size());
  for (std::size_t j = 0; j < sigma.size(); ++j) out.entries_[j] = entries_.at(sigma[j]);
  out.budget_ = budget_;
  return out;
}

bool EnergyVector::is_uniform(double tolerance) const {
  if (entries_.empty()) return true;
  auto [lo, hi] = std::minmax_element(entries_.begin(), entries_.end());
  return *hi - *lo <= tolerance;
}

double flip_probability(double energy) {
  check_energy(energy, 0);
  return std::exp2(-energy);
}

Row sample_observation(Row row, std::span<const double> flip_probs, Rng& rng) {
  for (std::size_t j = 0; j < flip_probs.size(); ++j) {
    if (uniform01(rng) < flip_probs[j]) row ^= Row{1} << j;
  }
  return row;
}

std::vector<std::uint8_t> sample_observation(std::span<const std::uint8_t> bits, const EnergyVector& energy,
                                             std::uint64_t seed) {
  if (bits.size() != energy.size()) {
    throw invalid_input_error("bits and energy vector differ in length");
  }
  Row row = pack_bits(bits);
  Rng rng(seed);
  auto probs = energy.flip_probabilities();
  return unpack_bits(sample_observation(row, probs, rng), static_cast<int>(bits.size()));
}

std::vector<double> product_mask_distribution(std::span<const double> flip_probs) {
  if (flip_probs.size() > 20) throw resource_limit_error("flip mask distribution limited to 20 bits");
  std::vector<double> q{1.0};
  q.reserve(std::size_t{1} << flip_probs.size());
  // Doubling: masks with bit j clear keep weight (1-p_j), the copies with bit j set get p_j.
  for (double p : flip_probs) {
    std::size_t half = q.size();
    q.resize(2 * half);
    for (std::size_t d = 0; d < half; ++d) {
      q[half + d] = q[d] * p;
      q[d] *= 1.0 - p;
    }
  }
  return q;
}

ObservationDistribution observation_distribution(std::span<const std::uint8_t> bits, const EnergyVector& energy) {
  if (bits.size() != energy.size()) throw invalid_input_error("bits and energy vector differ in length");
  if (bits.size() > static_cast<std::size_t>(kMaxDistributionBits)) {
    throw resource_limit_error("observation distribution limited to n <= " + std::to_string(kMaxDistributionBits));
  }
  ObservationDistribution dist;
  dist.n = static_cast<int>(bits.size());
  dist.true_row = pack_bits(bits);
  auto probs = energy.flip_probabilities();
  auto q = product_mask_distribution(probs);
  dist.probabilities.resize(q.size());
  for (std::size_t d = 0; d < q.size(); ++d) dist.probabilities[dist.true_row ^ d] = q[d];
  return dist;
}

double cmos_correctness_probability(double vdd, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw invalid_input_error("sigma must be positive");
  if (!(vdd >= 0.0) || !std::isfinite(vdd)) throw invalid_input_error("vdd must be finite and non-negative");
  return 1.0 - 0.5 * std::erfc(vdd / (2.0 * std::sqrt(2.0) * sigma));
}

std::vector<CurvePoint> cmos_curve(double sigma, double vdd_min, double vdd_max, int steps) {
  if (steps < 0) throw invalid_input_error("steps must be non-negative");
  if (vdd_max < vdd_min) throw invalid_input_error("vdd range is empty");
  std::vector<CurvePoint> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  for (int s = 0; s <= steps; ++s) {
    double vdd = steps == 0 ? vdd_min : vdd_min + (vdd_max - vdd_min) * s / steps;
    out.push_back({vdd, sigma, cmos_correctness_probability(vdd, sigma)});
  }
  return out;
}

}  // namespace inexact
