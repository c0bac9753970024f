#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "inexact/noise_channel.hpp"

namespace inexact {

/// Image of 0..n-1. Applied to an energy vector, bit j receives e_{sigma[j]}.
using Permutation = std::vector<std::uint32_t>;

Permutation identity_permutation(int n);
bool is_permutation(std::span<const std::uint32_t> p);
/// (a * b)(x) = a(b(x)).
Permutation compose(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);
Permutation inverse(std::span<const std::uint32_t> p);

enum class GroupKind { Identity, FullSymmetric, Generated };

std::string to_string(GroupKind kind);
GroupKind group_kind_from_string(std::string_view name);

inline constexpr std::size_t kMaxGroupOrder = 1'000'000;

/// The adversary's permutation group acting on energy slots.
///
/// Generated groups are closed breadth-first at construction. If the closure
/// passes kMaxGroupOrder elements the group is kept but marked
/// non-enumerable, and anything that needs its elements throws
/// resource_limit_error.
class PermutationGroup {
 public:
  static PermutationGroup identity(int n);
  static PermutationGroup full_symmetric(int n);
  static PermutationGroup generated(int n, std::vector<Permutation> generators);

  GroupKind kind() const { return kind_; }
  int degree() const { return n_; }
  const std::vector<Permutation>& generators() const { return generators_; }

  bool enumerable() const;
  /// Exact order when it fits in 64 bits and is known.
  std::optional<std::uint64_t> order() const;

  /// All elements, identity first for Identity/Generated and in
  /// lexicographic order for FullSymmetric.
  std::vector<Permutation> elements() const;

  /// Element i of the cached closure of a Generated group.
  const Permutation& closure_element(std::size_t i) const { return closure_->at(i); }

 private:
  PermutationGroup() = default;

  GroupKind kind_ = GroupKind::Identity;
  int n_ = 0;
  std::vector<Permutation> generators_;
  std::shared_ptr<const std::vector<Permutation>> closure_;
  bool closure_overflow_ = false;
};

/// Uniform element. Throws resource_limit_error for a non-enumerable
/// Generated group.
Permutation sample_permutation(const PermutationGroup& group, Rng& rng);
Permutation sample_permutation(const PermutationGroup& group, std::uint64_t seed);

/// Each element once. Throws resource_limit_error beyond kMaxGroupOrder
/// (FullSymmetric needs n <= 9).
std::vector<Permutation> enumerate_group(const PermutationGroup& group);

/// A probability or expectation, exact when samples == 0.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;

  bool exact() const { return samples == 0; }
};

struct MonteCarloOptions {
  std::size_t samples = 100'000;
  std::uint64_t seed = 0;
};

/// E_sigma[2^-e_{sigma(j)}]. Exact for Identity, FullSymmetric (closed form,
/// any n) and enumerable generated groups. A generated group past the
/// enumeration guard throws resource_limit_error: it cannot be sampled
/// uniformly either.
Estimate marginal_flip_probability(const EnergyVector& energy, const PermutationGroup& group, int j);

/// 2^-(E/n), the per-bit floor under full blindfolding.
double amgm_bound(double total_energy, int n);

/// Law of the flip mask when the energies are first permuted by a uniform
/// sigma from `group`. Exact: Identity is the product law, FullSymmetric
/// uses the Poisson-binomial closed form (any n <= 20), Generated averages
/// over the enumerated elements.
std::vector<double> mask_distribution(std::span<const double> flip_probs, const PermutationGroup& group);

/// pmf of the number of successes among independent Bernoulli(p_j).
std::vector<double> poisson_binomial_pmf(std::span<const double> probs);

}  // namespace inexact
