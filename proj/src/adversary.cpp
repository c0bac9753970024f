#include "inexact/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>

#include "inexact/error.hpp"

namespace inexact {

Permutation identity_permutation(int n) {
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0U);
  return p;
}

bool is_permutation(std::span<const std::uint32_t> p) {
  std::vector<bool> hit(p.size(), false);
  for (auto v : p) {
    if (v >= p.size() || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

Permutation compose(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  if (a.size() != b.size()) throw invalid_input_error("composing permutations of different degree");
  Permutation out(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) out[x] = a[b[x]];
  return out;
}

Permutation inverse(std::span<const std::uint32_t> p) {
  Permutation out(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) out[p[x]] = static_cast<std::uint32_t>(x);
  return out;
}

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::Identity: return "identity";
    case GroupKind::FullSymmetric: return "symmetric";
    case GroupKind::Generated: return "generated";
  }
  return "unknown";
}

GroupKind group_kind_from_string(std::string_view name) {
  if (name == "identity") return GroupKind::Identity;
  if (name == "symmetric" || name == "full") return GroupKind::FullSymmetric;
  if (name == "generated") return GroupKind::Generated;
  throw invalid_input_error("unknown group kind '" + std::string(name) + "'");
}

PermutationGroup PermutationGroup::identity(int n) {
  if (n < 1) throw invalid_input_error("group degree must be positive");
  PermutationGroup g;
  g.kind_ = GroupKind::Identity;
  g.n_ = n;
  return g;
}

PermutationGroup PermutationGroup::full_symmetric(int n) {
  if (n < 1) throw invalid_input_error("group degree must be positive");
  PermutationGroup g;
  g.kind_ = GroupKind::FullSymmetric;
  g.n_ = n;
  return g;
}

PermutationGroup PermutationGroup::generated(int n, std::vector<Permutation> generators) {
  if (n < 1) throw invalid_input_error("group degree must be positive");
  for (const auto& s : generators) {
    if (s.size() != static_cast<std::size_t>(n) || !is_permutation(s)) {
      throw invalid_input_error("generator is not a permutation of 0.." + std::to_string(n - 1));
    }
  }
  PermutationGroup g;
  g.kind_ = GroupKind::Generated;
  g.n_ = n;
  g.generators_ = std::move(generators);

  auto elements = std::make_shared<std::vector<Permutation>>();
  std::set<Permutation> seen;
  std::deque<std::size_t> frontier;
  auto id = identity_permutation(n);
  seen.insert(id);
  elements->push_back(std::move(id));
  frontier.push_back(0);
  while (!frontier.empty() && !g.closure_overflow_) {
    std::size_t at = frontier.front();
    frontier.pop_front();
    for (const auto& s : g.generators_) {
      auto next = compose(s, (*elements)[at]);
      if (seen.insert(next).second) {
        if (elements->size() >= kMaxGroupOrder) {
          g.closure_overflow_ = true;
          break;
        }
        elements->push_back(std::move(next));
        frontier.push_back(elements->size() - 1);
      }
    }
  }
  if (!g.closure_overflow_) g.closure_ = std::move(elements);
  return g;
}

bool PermutationGroup::enumerable() const {
  switch (kind_) {
    case GroupKind::Identity: return true;
    case GroupKind::FullSymmetric: return n_ <= 9;
    case GroupKind::Generated: return !closure_overflow_;
  }
  return false;
}

std::optional<std::uint64_t> PermutationGroup::order() const {
  switch (kind_) {
    case GroupKind::Identity: return 1;
    case GroupKind::FullSymmetric: {
      if (n_ > 20) return std::nullopt;
      std::uint64_t f = 1;
      for (int i = 2; i <= n_; ++i) f *= static_cast<std::uint64_t>(i);
      return f;
    }
    case GroupKind::Generated:
      if (closure_overflow_) return std::nullopt;
      return closure_->size();
  }
  return std::nullopt;
}

std::vector<Permutation> PermutationGroup::elements() const {
  if (!enumerable()) {
    throw resource_limit_error(to_string(kind_) + " group of degree " + std::to_string(n_) +
                               " has more than " + std::to_string(kMaxGroupOrder) + " elements");
  }
  switch (kind_) {
    case GroupKind::Identity:
      return {identity_permutation(n_)};
    case GroupKind::FullSymmetric: {
      std::vector<Permutation> out;
      auto p = identity_permutation(n_);
      do {
        out.push_back(p);
      } while (std::next_permutation(p.begin(), p.end()));
      return out;
    }
    case GroupKind::Generated:
      return *closure_;
  }
  return {};
}

std::vector<Permutation> enumerate_group(const PermutationGroup& group) { return group.elements(); }

Permutation sample_permutation(const PermutationGroup& group, Rng& rng) {
  switch (group.kind()) {
    case GroupKind::Identity:
      return identity_permutation(group.degree());
    case GroupKind::FullSymmetric: {
      // Fisher-Yates with an unbiased bounded draw.
      auto p = identity_permutation(group.degree());
      for (std::size_t i = p.size(); i > 1; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(p[i - 1], p[pick(rng)]);
      }
      return p;
    }
    case GroupKind::Generated: {
      if (!group.enumerable()) {
        throw resource_limit_error("generated group too large to sample uniformly");
      }
      std::uniform_int_distribution<std::size_t> pick(0, *group.order() - 1);
      return group.closure_element(pick(rng));
    }
  }
  return {};
}

Permutation sample_permutation(const PermutationGroup& group, std::uint64_t seed) {
  Rng rng(seed);
  return sample_permutation(group, rng);
}

Estimate marginal_flip_probability(const EnergyVector& energy, const PermutationGroup& group, int j) {
  int n = static_cast<int>(energy.size());
  if (n != group.degree()) throw invalid_input_error("energy vector and group differ in degree");
  if (j < 0 || j >= n) throw invalid_input_error("bit position " + std::to_string(j) + " out of range");
  auto probs = energy.flip_probabilities();
  switch (group.kind()) {
    case GroupKind::Identity:
      return {probs[static_cast<std::size_t>(j)]};
    case GroupKind::FullSymmetric:
      return {std::accumulate(probs.begin(), probs.end(), 0.0) / n};
    case GroupKind::Generated:
      break;
  }
  if (group.enumerable()) {
    auto elements = group.elements();
    double sum = 0.0;
    for (const auto& sigma : elements) sum += probs[sigma[static_cast<std::size_t>(j)]];
    return {sum / static_cast<double>(elements.size())};
  }
  throw resource_limit_error("generated group too large to average over");
}

double amgm_bound(double total_energy, int n) {
  if (n < 1) throw invalid_input_error("n must be positive");
  if (!(total_energy >= 0.0) || !std::isfinite(total_energy)) throw invalid_input_error("energy must be non-negative");
  return std::exp2(-total_energy / n);
}

std::vector<double> poisson_binomial_pmf(std::span<const double> probs) {
  std::vector<double> pmf(probs.size() + 1, 0.0);
  pmf[0] = 1.0;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    double p = probs[j];
    for (std::size_t m = j + 1; m > 0; --m) pmf[m] = pmf[m] * (1.0 - p) + pmf[m - 1] * p;
    pmf[0] *= 1.0 - p;
  }
  return pmf;
}

std::vector<double> mask_distribution(std::span<const double> flip_probs, const PermutationGroup& group) {
  std::size_t n = flip_probs.size();
  if (static_cast<int>(n) != group.degree()) throw invalid_input_error("flip probabilities and group differ in degree");
  if (n > 20) throw resource_limit_error("mask distribution limited to 20 bits");
  switch (group.kind()) {
    case GroupKind::Identity:
      return product_mask_distribution(flip_probs);
    case GroupKind::FullSymmetric: {
      // The flipped positions receive a uniformly random subset of slots of
      // the same size, so q(d) = pmf(|d|) / C(n, |d|).
      auto pmf = poisson_binomial_pmf(flip_probs);
      std::vector<double> per_weight(n + 1);
      double binom = 1.0;
      for (std::size_t m = 0; m <= n; ++m) {
        per_weight[m] = pmf[m] / binom;
        binom = binom * static_cast<double>(n - m) / static_cast<double>(m + 1);
      }
      std::vector<double> q(std::size_t{1} << n);
      for (std::size_t d = 0; d < q.size(); ++d) q[d] = per_weight[static_cast<std::size_t>(popcount(d))];
      return q;
    }
    case GroupKind::Generated: {
      auto elements = group.elements();
      std::vector<double> q(std::size_t{1} << n, 0.0);
      std::vector<double> permuted(n);
      for (const auto& sigma : elements) {
        for (std::size_t j = 0; j < n; ++j) permuted[j] = flip_probs[sigma[j]];
        auto part = product_mask_distribution(permuted);
        for (std::size_t d = 0; d < q.size(); ++d) q[d] += part[d];
      }
      double scale = 1.0 / static_cast<double>(elements.size());
      for (auto& v : q) v *= scale;
      return q;
    }
  }
  return {};
}

}  // namespace inexact
