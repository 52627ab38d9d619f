#pragma once

// Batch Polyceptron: alternating minimization of the Polyceptron criterion.
//
// Each outer iteration freezes the partition S_1..S_K induced by the current
// model, then descends every per-set objective
//
//   f_k(w_k) = -sum_{n in S_k} y_n w_k^T x̃_n [y_n w_k^T x̃_n < 0]
//
// independently. Training stops once the sum over k of the gradient norms,
// measured at the frozen partition before the update, drops below gamma.
//
// Update mistakes use y w^T x̃ <= 0 so that zero-margin samples still move
// the weights. The reported criterion keeps the strict inequality.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "polyceptron/core.hpp"
#include "polyceptron/errors.hpp"
#include "polyceptron/random.hpp"

namespace polyceptron {

struct BatchConfig {
  std::size_t hyperplanes = 1;
  double eta = 0.1;
  // Scale-dependent: the gradient norm grows with N and with ||x̃||.
  double gamma = 50.0;
  std::size_t max_outer_iters = 1000;
  std::size_t inner_steps = 1;
  std::uint64_t seed = 0;

  void validate() const {
    if (hyperplanes < 1) throw InputError("K must be >= 1");
    if (!(eta > 0.0) || !std::isfinite(eta)) throw InputError("eta must be positive");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InputError("gamma must be positive");
    if (max_outer_iters < 1) throw InputError("max_outer_iters must be >= 1");
    if (inner_steps < 1) throw InputError("inner_steps must be >= 1");
  }
};

struct BatchIteration {
  double criterion;          // at the model entering the iteration
  double gradient_norm_sum;  // at the frozen partition, before updating
  std::vector<std::size_t> set_sizes;
};

using BatchTrace = std::vector<BatchIteration>;

struct BatchStep {
  PolyhedralModel model;
  double gradient_norm_sum;
};

struct BatchResult {
  PolyhedralModel model;
  BatchTrace trace;
  bool converged = false;  // stopped by gamma rather than by the iteration cap
};

inline double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

// Gradient of f_k at the weights `w`, restricted to `members` of S_k:
// -sum of y_n x̃_n over members with y_n w^T x̃_n <= 0.
inline std::vector<double> set_gradient(std::span<const double> w, const AugmentedData& data,
                                        std::span<const std::size_t> members) {
  std::vector<double> grad(w.size(), 0.0);
  for (std::size_t n : members) {
    const auto& xt = data.inputs[n];
    const int y = data.labels[n];
    if (y * dot(w, xt) <= 0.0) {
      for (std::size_t i = 0; i < grad.size(); ++i) grad[i] -= y * xt[i];
    }
  }
  return grad;
}

inline std::vector<double> per_set_gradient(const PolyhedralModel& model, const Partition& part,
                                            const AugmentedData& data, std::size_t k) {
  check_dims(model, data);
  if (k >= model.count()) throw InputError("hyperplane index out of range");
  if (part.size() != data.size()) throw DimensionError("partition does not match data");
  const auto members = part.members(k);
  return set_gradient(model.weights(k), data, members);
}

inline std::vector<double> per_set_gradient(const PolyhedralModel& model, const Partition& part,
                                            std::span<const LabeledSample> data, std::size_t k) {
  if (data.empty()) return std::vector<double>(model.dim() + 1, 0.0);
  return per_set_gradient(model, part, augment_all(data), k);
}

namespace detail {

inline BatchStep batch_step(const PolyhedralModel& model, const AugmentedData& data,
                            const Partition& part, const BatchConfig& cfg) {
  BatchStep out{model, 0.0};
  for (std::size_t k = 0; k < model.count(); ++k) {
    const auto members = part.members(k);
    auto w = out.model.weights(k);
    for (std::size_t step = 0; step < cfg.inner_steps; ++step) {
      const auto grad = set_gradient(w, data, members);
      if (step == 0) out.gradient_norm_sum += norm2(grad);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= cfg.eta * grad[i];
    }
  }
  return out;
}

}  // namespace detail

// One outer iteration: partition once, then cfg.inner_steps gradient steps
// per hyperplane with that partition held fixed.
inline BatchStep batch_step(const PolyhedralModel& model, const AugmentedData& data,
                            const BatchConfig& cfg) {
  cfg.validate();
  check_dims(model, data);
  return detail::batch_step(model, data, partition(model, data), cfg);
}

inline BatchStep batch_step(const PolyhedralModel& model, std::span<const LabeledSample> data,
                            const BatchConfig& cfg) {
  if (data.empty()) {
    cfg.validate();
    return {model, 0.0};
  }
  return batch_step(model, augment_all(data), cfg);
}

// Runs outer iterations from `initial` until the gradient-norm sum falls
// below gamma or the cap is reached. The iteration that observes a sum
// below gamma is recorded in the trace but applies no update.
inline BatchResult train_batch_from(PolyhedralModel initial, const AugmentedData& data,
                                    const BatchConfig& cfg) {
  cfg.validate();
  check_dims(initial, data);
  BatchResult result{std::move(initial), {}, false};
  for (std::size_t iter = 0; iter < cfg.max_outer_iters; ++iter) {
    const Partition part = partition(result.model, data);
    BatchStep step = detail::batch_step(result.model, data, part, cfg);
    result.trace.push_back(
        {criterion(result.model, data), step.gradient_norm_sum, part.set_sizes()});
    if (step.gradient_norm_sum < cfg.gamma) {
      result.converged = true;
      break;
    }
    result.model = std::move(step.model);
  }
  return result;
}

inline BatchResult train_batch(std::span<const LabeledSample> data, const BatchConfig& cfg) {
  cfg.validate();
  const AugmentedData augmented = augment_all(data);
  return train_batch_from(
      random_model(augmented.dim, cfg.hyperplanes, derive_seed(cfg.seed, streams::kInit)),
      augmented, cfg);
}

}  // namespace polyceptron
