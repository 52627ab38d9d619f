#pragma once

// Polyhedral classifier model.
//
// A model holds K affine functions w_k^T x + b_k, stored as augmented weight
// vectors [w_k b_k] of length d+1. The decision value is the minimum of the
// K affine values; a point is positive iff it lies in the intersection of
// the K closed halfspaces, i.e. the decision value is >= 0.
//
// Hyperplane indices are 0-based in this API. Reports and files print them
// 1-based.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polyceptron/errors.hpp"
#include "polyceptron/random.hpp"

namespace polyceptron {

struct LabeledSample {
  std::vector<double> features;
  int label = 1;  // -1 or +1

  friend bool operator==(const LabeledSample&, const LabeledSample&) = default;
};

using Dataset = std::vector<LabeledSample>;

inline bool is_valid_label(int label) { return label == 1 || label == -1; }

inline bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

// Checked construction.
inline LabeledSample make_sample(std::vector<double> features, int label) {
  if (!is_valid_label(label)) {
    throw InputError("label must be -1 or +1, got " + std::to_string(label));
  }
  if (!all_finite(features)) throw InputError("non-finite feature value");
  return LabeledSample{std::move(features), label};
}

// Returns the common feature dimension; throws on an empty or ragged set,
// bad labels or non-finite features.
inline std::size_t validate_dataset(std::span<const LabeledSample> data) {
  if (data.empty()) throw InputError("empty dataset");
  const std::size_t dim = data.front().features.size();
  for (std::size_t n = 0; n < data.size(); ++n) {
    const auto& s = data[n];
    if (s.features.size() != dim) {
      throw DimensionError("sample " + std::to_string(n) + " has " +
                           std::to_string(s.features.size()) +
                           " features, expected " + std::to_string(dim));
    }
    if (!is_valid_label(s.label)) {
      throw InputError("sample " + std::to_string(n) + " has label " +
                       std::to_string(s.label));
    }
    if (!all_finite(s.features)) {
      throw InputError("sample " + std::to_string(n) + " has a non-finite feature");
    }
  }
  return dim;
}

// [x 1]: a feature vector with the bias coordinate appended.
class AugmentedVector {
 public:
  AugmentedVector() = default;
  explicit AugmentedVector(std::vector<double> entries) : entries_(std::move(entries)) {}
  AugmentedVector(std::initializer_list<double> entries) : entries_(entries) {}

  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> values() const noexcept { return entries_; }
  operator std::span<const double>() const noexcept { return entries_; }

  friend bool operator==(const AugmentedVector&, const AugmentedVector&) = default;

 private:
  std::vector<double> entries_;
};

inline AugmentedVector augment(std::span<const double> features) {
  if (!all_finite(features)) throw InputError("non-finite feature value");
  std::vector<double> out(features.begin(), features.end());
  out.push_back(1.0);
  return AugmentedVector(std::move(out));
}

inline AugmentedVector augment(const LabeledSample& sample) {
  return augment(std::span<const double>(sample.features));
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

class PolyhedralModel {
 public:
  PolyhedralModel() = default;

  // K zero hyperplanes in dimension d.
  PolyhedralModel(std::size_t dim, std::size_t count)
      : dim_(dim), count_(count), weights_(count * (dim + 1), 0.0) {
    if (count == 0) throw InputError("a model needs at least one hyperplane");
  }

  // Each row is [w_1 ... w_d b].
  explicit PolyhedralModel(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw InputError("a model needs at least one hyperplane");
    const std::size_t width = rows.front().size();
    if (width < 1) throw DimensionError("weight rows must have length d+1 >= 1");
    dim_ = width - 1;
    count_ = rows.size();
    weights_.reserve(count_ * width);
    for (const auto& row : rows) {
      if (row.size() != width) throw DimensionError("ragged weight rows");
      if (!all_finite(row)) throw InputError("non-finite weight");
      weights_.insert(weights_.end(), row.begin(), row.end());
    }
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t count() const noexcept { return count_; }

  std::span<const double> weights(std::size_t k) const {
    return {weights_.data() + k * (dim_ + 1), dim_ + 1};
  }
  std::span<double> weights(std::size_t k) {
    return {weights_.data() + k * (dim_ + 1), dim_ + 1};
  }

  std::vector<std::vector<double>> rows() const {
    std::vector<std::vector<double>> out;
    for (std::size_t k = 0; k < count_; ++k) {
      auto w = weights(k);
      out.emplace_back(w.begin(), w.end());
    }
    return out;
  }

  // w_k^T x̃ without dimension checks.
  double value(std::size_t k, std::span<const double> xt) const {
    return dot(weights(k), xt);
  }

  void check_input(std::size_t augmented_size) const {
    if (augmented_size != dim_ + 1) {
      throw DimensionError("augmented vector has length " +
                           std::to_string(augmented_size) + ", model expects " +
                           std::to_string(dim_ + 1));
    }
  }

  friend bool operator==(const PolyhedralModel&, const PolyhedralModel&) = default;

 private:
  std::size_t dim_ = 0;
  std::size_t count_ = 0;
  std::vector<double> weights_;
};

// Every entry uniform in [-0.5, 0.5). Distinct random vectors keep the
// least-index tie-break from collapsing all samples onto hyperplane 0.
inline PolyhedralModel random_model(std::size_t dim, std::size_t count, std::uint64_t seed) {
  PolyhedralModel model(dim, count);
  Rng rng(seed);
  for (std::size_t k = 0; k < count; ++k) {
    for (double& v : model.weights(k)) v = rng.uniform(-0.5, 0.5);
  }
  return model;
}

struct ActiveValue {
  std::size_t index;  // smallest k attaining the minimum
  double value;       // min_k w_k^T x̃
};

inline ActiveValue active_value(const PolyhedralModel& model, std::span<const double> xt) {
  ActiveValue best{0, model.value(0, xt)};
  for (std::size_t k = 1; k < model.count(); ++k) {
    const double v = model.value(k, xt);
    if (v < best.value) best = {k, v};
  }
  return best;
}

inline double decision_value(const PolyhedralModel& model, const AugmentedVector& xt) {
  model.check_input(xt.size());
  return active_value(model, xt).value;
}

inline std::size_t active_index(const PolyhedralModel& model, const AugmentedVector& xt) {
  model.check_input(xt.size());
  return active_value(model, xt).index;
}

// sign with sign(0) = +1.
inline int sign_label(double value) { return value >= 0.0 ? 1 : -1; }

inline int classify(const PolyhedralModel& model, const AugmentedVector& xt) {
  return sign_label(decision_value(model, xt));
}

// Samples and their augmented vectors, built once per training run.
struct AugmentedData {
  std::vector<AugmentedVector> inputs;
  std::vector<int> labels;
  std::size_t dim = 0;

  std::size_t size() const noexcept { return inputs.size(); }
};

inline AugmentedData augment_all(std::span<const LabeledSample> data) {
  AugmentedData out;
  out.dim = validate_dataset(data);
  out.inputs.reserve(data.size());
  out.labels.reserve(data.size());
  for (const auto& s : data) {
    out.inputs.push_back(augment(s));
    out.labels.push_back(s.label);
  }
  return out;
}

inline void check_dims(const PolyhedralModel& model, const AugmentedData& data) {
  if (data.size() > 0) model.check_input(data.dim + 1);
}

inline double criterion(const PolyhedralModel& model, const AugmentedData& data) {
  check_dims(model, data);
  double total = 0.0;
  for (std::size_t n = 0; n < data.size(); ++n) {
    const double margin = data.labels[n] * active_value(model, data.inputs[n]).value;
    if (margin < 0.0) total -= margin;
  }
  return total;
}

// Sum of -y h(x) over samples with strictly negative margin.
inline double criterion(const PolyhedralModel& model, std::span<const LabeledSample> data) {
  if (data.empty()) return 0.0;
  return criterion(model, augment_all(data));
}

// Assignment of every sample to its active hyperplane.
class Partition {
 public:
  Partition() = default;
  Partition(std::vector<std::size_t> assignment, std::size_t count)
      : assignment_(std::move(assignment)), count_(count) {}

  std::size_t size() const noexcept { return assignment_.size(); }
  std::size_t count() const noexcept { return count_; }
  std::size_t operator[](std::size_t n) const { return assignment_[n]; }
  const std::vector<std::size_t>& assignment() const noexcept { return assignment_; }

  std::vector<std::size_t> set_sizes() const {
    std::vector<std::size_t> sizes(count_, 0);
    for (std::size_t k : assignment_) ++sizes[k];
    return sizes;
  }

  std::vector<std::size_t> members(std::size_t k) const {
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n < assignment_.size(); ++n) {
      if (assignment_[n] == k) out.push_back(n);
    }
    return out;
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::size_t> assignment_;
  std::size_t count_ = 0;
};

inline Partition partition(const PolyhedralModel& model, const AugmentedData& data) {
  check_dims(model, data);
  std::vector<std::size_t> assignment(data.size());
  for (std::size_t n = 0; n < data.size(); ++n) {
    assignment[n] = active_value(model, data.inputs[n]).index;
  }
  return Partition(std::move(assignment), model.count());
}

inline Partition partition(const PolyhedralModel& model, std::span<const LabeledSample> data) {
  if (data.empty()) return Partition({}, model.count());
  return partition(model, augment_all(data));
}

}  // namespace polyceptron
