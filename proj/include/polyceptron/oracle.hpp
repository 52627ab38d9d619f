#pragma once

// Brute-force credit assignment.
//
// Data is K-polyhedrally separable iff the negatives can be split into K
// groups such that, for every k, some hyperplane puts all positives on its
// closed positive side and group k strictly on its negative side. The
// enumeration below tries all K^|negatives| splits in lexicographic order and
// solves each linear subproblem with a capped perceptron. A subproblem that
// exhausts the cap is treated as not separable and counted in the witness.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "polyceptron/core.hpp"
#include "polyceptron/errors.hpp"

namespace polyceptron {

inline constexpr std::size_t kDefaultSeparationCap = 100000;
inline constexpr std::uint64_t kMaxAssignments = 10000000;

struct LinearSeparation {
  bool separable = false;
  std::optional<std::vector<double>> weights;  // augmented [w b]
  bool cap_exhausted = false;
  std::size_t updates = 0;
};

namespace detail {

// Perceptron from w = 0 that cycles through positives then negatives until
// one full cycle needs no update. Positives need w^T x̃ >= 0; negatives need
// w^T x̃ <= -eps with eps = 1e-9 * max ||x̃||.
inline LinearSeparation separate(std::span<const AugmentedVector* const> pos,
                                 std::span<const AugmentedVector* const> neg, std::size_t width,
                                 std::size_t cap) {
  LinearSeparation out;
  std::vector<double> w(width, 0.0);
  const std::size_t total = pos.size() + neg.size();
  if (total == 0) {
    w.back() = 1.0;
    out.separable = true;
    out.weights = std::move(w);
    return out;
  }
  double max_norm = 0.0;
  for (const auto* x : pos) max_norm = std::max(max_norm, std::sqrt(dot(*x, *x)));
  for (const auto* x : neg) max_norm = std::max(max_norm, std::sqrt(dot(*x, *x)));
  const double eps = 1e-9 * max_norm;

  std::size_t clean = 0;
  std::size_t i = 0;
  while (clean < total) {
    const bool is_pos = i < pos.size();
    const AugmentedVector& x = is_pos ? *pos[i] : *neg[i - pos.size()];
    const double v = dot(w, x);
    const bool mistake = is_pos ? v < 0.0 : v > -eps;
    if (mistake) {
      if (out.updates == cap) {
        out.cap_exhausted = true;
        return out;
      }
      const double s = is_pos ? 1.0 : -1.0;
      for (std::size_t j = 0; j < width; ++j) w[j] += s * x[j];
      ++out.updates;
      clean = 0;
    } else {
      ++clean;
    }
    if (++i == total) i = 0;
  }
  out.separable = true;
  out.weights = std::move(w);
  return out;
}

}  // namespace detail

inline LinearSeparation is_linearly_separable(std::span<const LabeledSample> pos,
                                              std::span<const LabeledSample> neg,
                                              std::size_t cap = kDefaultSeparationCap) {
  if (cap < 1) throw InputError("cap must be >= 1");
  if (pos.empty() && neg.empty()) throw InputError("no samples");
  const std::size_t dim = pos.empty() ? neg.front().features.size() : pos.front().features.size();
  std::vector<AugmentedVector> xs;
  xs.reserve(pos.size() + neg.size());
  for (auto group : {pos, neg}) {
    for (const auto& s : group) {
      if (s.features.size() != dim) throw DimensionError("inconsistent sample dimensions");
      xs.push_back(augment(s));
    }
  }
  std::vector<const AugmentedVector*> p, n;
  for (std::size_t i = 0; i < xs.size(); ++i) (i < pos.size() ? p : n).push_back(&xs[i]);
  return detail::separate(p, n, dim + 1, cap);
}

struct SeparabilityWitness {
  bool separable = false;
  std::optional<PolyhedralModel> model;
  // sample index -> 0-based hyperplane index, negatives only
  std::optional<std::map<std::size_t, std::size_t>> assignment;
  std::uint64_t assignments_tried = 0;
  std::size_t subproblems_solved = 0;
  // Subproblems that hit the update cap. Nonzero means a "not separable"
  // answer is heuristic.
  std::size_t subproblems_capped = 0;
};

inline std::uint64_t assignment_count(std::size_t hyperplanes, std::size_t negatives) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < negatives; ++i) {
    total *= hyperplanes;
    if (total > kMaxAssignments) return kMaxAssignments + 1;
  }
  return total;
}

inline SeparabilityWitness is_polyhedrally_separable(std::span<const LabeledSample> data,
                                                     std::size_t hyperplanes,
                                                     std::size_t cap = kDefaultSeparationCap) {
  if (hyperplanes < 1) throw InputError("K must be >= 1");
  if (cap < 1) throw InputError("cap must be >= 1");
  const AugmentedData aug = augment_all(data);
  const std::size_t width = aug.dim + 1;

  std::vector<const AugmentedVector*> pos;
  std::vector<std::size_t> neg_index;
  for (std::size_t n = 0; n < aug.size(); ++n) {
    if (aug.labels[n] > 0) {
      pos.push_back(&aug.inputs[n]);
    } else {
      neg_index.push_back(n);
    }
  }
  const std::size_t m = neg_index.size();
  const std::uint64_t total = assignment_count(hyperplanes, m);
  if (total > kMaxAssignments) {
    throw InfeasibleRequest("enumeration of " + std::to_string(hyperplanes) + "^" +
                            std::to_string(m) + " assignments exceeds the budget of " +
                            std::to_string(kMaxAssignments));
  }

  SeparabilityWitness witness;
  // Subproblem results keyed by the bitmask of negatives they contain.
  // With K >= 2 the budget keeps m below 64; K = 1 has a single assignment.
  const bool use_masks = m <= 64;
  std::unordered_map<std::uint64_t, std::optional<std::vector<double>>> cache;
  std::vector<std::uint64_t> failed;

  auto solve = [&](std::span<const std::size_t> members) -> std::optional<std::vector<double>> {
    std::vector<const AugmentedVector*> neg;
    for (std::size_t j : members) neg.push_back(&aug.inputs[neg_index[j]]);
    ++witness.subproblems_solved;
    LinearSeparation r = detail::separate(pos, neg, width, cap);
    if (r.cap_exhausted) ++witness.subproblems_capped;
    return r.weights;
  };

  std::vector<std::size_t> digits(m, 0);
  std::vector<std::vector<double>> rows(hyperplanes);
  for (std::uint64_t a = 0; a < total; ++a) {
    ++witness.assignments_tried;
    bool ok = true;
    for (std::size_t k = 0; k < hyperplanes && ok; ++k) {
      std::vector<std::size_t> members;
      std::uint64_t mask = 0;
      for (std::size_t j = 0; j < m; ++j) {
        if (digits[j] == k) {
          members.push_back(j);
          if (use_masks) mask |= std::uint64_t{1} << j;
        }
      }
      std::optional<std::vector<double>> w;
      if (use_masks) {
        if (auto it = cache.find(mask); it != cache.end()) {
          w = it->second;
        } else if (std::any_of(failed.begin(), failed.end(),
                               [mask](std::uint64_t f) { return (f & ~mask) == 0; })) {
          // A superset of an inseparable group is inseparable.
          cache.emplace(mask, std::nullopt);
        } else {
          w = solve(members);
          cache.emplace(mask, w);
          if (!w) failed.push_back(mask);
        }
      } else {
        w = solve(members);
      }
      if (w) {
        rows[k] = std::move(*w);
      } else {
        ok = false;
      }
    }
    if (ok) {
      witness.separable = true;
      witness.model = PolyhedralModel(rows);
      std::map<std::size_t, std::size_t> assignment;
      for (std::size_t j = 0; j < m; ++j) assignment[neg_index[j]] = digits[j];
      witness.assignment = std::move(assignment);
      return witness;
    }
    // Odometer: the last negative varies fastest.
    for (std::size_t j = m; j-- > 0;) {
      if (++digits[j] < hyperplanes) break;
      digits[j] = 0;
    }
  }
  return witness;
}

}  // namespace polyceptron
