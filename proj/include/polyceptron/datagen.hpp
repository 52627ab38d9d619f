#pragma once

// Seeded generators for polyhedrally separable data.
//
// Points are sampled uniformly from [-1, 1]^d and labeled +1 iff they satisfy
// every halfspace w_j^T x + b_j >= 0 of the generating set.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "polyceptron/core.hpp"
#include "polyceptron/errors.hpp"
#include "polyceptron/random.hpp"

namespace polyceptron {

struct Halfspace {
  std::vector<double> normal;
  double offset = 0.0;

  double value(std::span<const double> x) const { return dot(normal, x) + offset; }
};

class HalfspaceSet {
 public:
  HalfspaceSet() = default;
  explicit HalfspaceSet(std::vector<Halfspace> halfspaces) : halfspaces_(std::move(halfspaces)) {
    if (halfspaces_.empty()) throw InputError("a halfspace set needs at least one halfspace");
    const std::size_t d = halfspaces_.front().normal.size();
    for (const auto& h : halfspaces_) {
      if (h.normal.size() != d) throw DimensionError("halfspaces of different dimension");
      if (!all_finite(h.normal) || !std::isfinite(h.offset)) {
        throw InputError("non-finite halfspace coefficient");
      }
    }
  }

  std::size_t dim() const { return halfspaces_.empty() ? 0 : halfspaces_.front().normal.size(); }
  std::size_t size() const noexcept { return halfspaces_.size(); }
  const Halfspace& operator[](std::size_t j) const { return halfspaces_[j]; }
  auto begin() const { return halfspaces_.begin(); }
  auto end() const { return halfspaces_.end(); }

  // min_j (w_j^T x + b_j)
  double min_value(std::span<const double> x) const {
    double m = halfspaces_.front().value(x);
    for (std::size_t j = 1; j < halfspaces_.size(); ++j) m = std::min(m, halfspaces_[j].value(x));
    return m;
  }

  int label(std::span<const double> x) const {
    for (const auto& h : halfspaces_) {
      if (h.value(x) < 0.0) return -1;
    }
    return 1;
  }

 private:
  std::vector<Halfspace> halfspaces_;
};

// Rows [w_j b_j], so the model's decision value equals min_value.
inline PolyhedralModel to_model(const HalfspaceSet& hs) {
  std::vector<std::vector<double>> rows;
  for (const auto& h : hs) {
    auto row = h.normal;
    row.push_back(h.offset);
    rows.push_back(std::move(row));
  }
  return PolyhedralModel(rows);
}

inline Dataset label_by_polyhedron(const HalfspaceSet& hs,
                                   std::span<const std::vector<double>> points) {
  Dataset out;
  out.reserve(points.size());
  for (const auto& x : points) {
    if (x.size() != hs.dim()) throw DimensionError("point dimension does not match halfspaces");
    out.push_back({x, hs.label(x)});
  }
  return out;
}

inline std::vector<double> uniform_point(Rng& rng, std::size_t dim) {
  std::vector<double> x(dim);
  for (double& v : x) v = rng.uniform(-1.0, 1.0);
  return x;
}

// 10-D, three halfspaces.
inline HalfspaceSet dataset1_halfspaces() {
  return HalfspaceSet({
      {{1, 1, 1, 1, 1, 1, 1, 1, 1, 1}, 1.0},
      {{1, -1, 1, -1, 1, -1, 1, -1, 1, -1}, 1.0},
      {{1, 0, 1, 0, 1, 0, 1, 0, 1, 0}, 0.5},
  });
}

// 20-D, four halfspaces.
inline HalfspaceSet dataset2_halfspaces() {
  return HalfspaceSet({
      {{1, 2, 3, 4, 5, 6, 7, 8, 8, 8, 20, 8, 7, 6, 5, 4, 3, 2, 1, 1}, 20.0},
      {{-1, 2, -3, 4, -5, 6, -7, 8, -9, 15, -11, 10, -9, 8, -7, 6, -5, 4, -3, 2}, 15.0},
      {{1, 0, 1, 0, 1, 0, 1, 2, 0, 8, 0, 2, 3, 0, 3, 3, 0, 4, 0, 4}, 8.0},
      {{1, -1, 0, 0, 2, -2, 0, 0, 6, -3, 0, 0, 4, -4, 0, 0, 5, -5, 0, 0}, 6.0},
  });
}

inline Dataset sample_polyhedron(const HalfspaceSet& hs, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw InputError("n must be >= 1");
  Rng rng(seed);
  Dataset out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto x = uniform_point(rng, hs.dim());
    const int y = hs.label(x);
    out.push_back({std::move(x), y});
  }
  return out;
}

inline Dataset gen_dataset1(std::size_t n, std::uint64_t seed) {
  return sample_polyhedron(dataset1_halfspaces(), n, seed);
}

inline Dataset gen_dataset2(std::size_t n, std::uint64_t seed) {
  return sample_polyhedron(dataset2_halfspaces(), n, seed);
}

struct RandomPolyhedron {
  HalfspaceSet halfspaces;
  Dataset samples;
  std::size_t draws = 0;  // points drawn, including discarded ones
};

// K random halfspaces containing a common interior point c drawn from
// [-0.5, 0.5]^d: unit normals, offsets chosen so that w_j^T c + b_j is
// uniform in [0.2, 0.8]. Points with |min_j (w_j^T x + b_j)| < margin are
// redrawn; more than 100 n draws in total is a generation error.
inline RandomPolyhedron gen_random_polyhedron(std::size_t dim, std::size_t count, std::size_t n,
                                              double margin, std::uint64_t seed) {
  if (dim < 1 || count < 1 || n < 1) throw InputError("d, K and n must all be >= 1");
  if (!(margin >= 0.0) || !std::isfinite(margin)) throw InputError("margin must be >= 0");
  Rng rng(seed);

  std::vector<double> center(dim);
  for (double& v : center) v = rng.uniform(-0.5, 0.5);
  std::vector<Halfspace> hs;
  for (std::size_t j = 0; j < count; ++j) {
    std::vector<double> normal(dim);
    double len = 0.0;
    while (len < 1e-12) {
      for (double& v : normal) v = rng.normal();
      len = std::sqrt(dot(normal, normal));
    }
    for (double& v : normal) v /= len;
    const double offset = rng.uniform(0.2, 0.8) - dot(normal, center);
    hs.push_back({std::move(normal), offset});
  }
  RandomPolyhedron out{HalfspaceSet(std::move(hs)), {}, 0};

  const std::size_t budget = 100 * n;
  while (out.samples.size() < n) {
    if (out.draws++ >= budget) {
      throw GenerationError("could not draw " + std::to_string(n) + " points with margin " +
                            std::to_string(margin) + " in " + std::to_string(budget) +
                            " attempts");
    }
    auto x = uniform_point(rng, dim);
    const double h = out.halfspaces.min_value(x);
    if (std::abs(h) < margin) continue;
    out.samples.push_back({std::move(x), sign_label(h)});
  }
  return out;
}

}  // namespace polyceptron
