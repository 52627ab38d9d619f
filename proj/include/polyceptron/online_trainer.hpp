#pragma once

// Online Polyceptron. Each presented sample is classified with the active
// (minimum) hyperplane; on a mistake only that hyperplane moves, by
// step * y * x̃.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "polyceptron/core.hpp"
#include "polyceptron/errors.hpp"
#include "polyceptron/random.hpp"

namespace polyceptron {

struct OnlineConfig {
  std::size_t hyperplanes = 1;
  std::size_t passes = 300;
  double step = 1.0;
  std::uint64_t seed = 0;
  bool shuffle_each_pass = false;
  // A zero-mistake pass fires no updates, so stopping there cannot change
  // the final model.
  bool early_stop = true;

  void validate() const {
    if (hyperplanes < 1) throw InputError("K must be >= 1");
    if (passes < 1) throw InputError("passes must be >= 1");
    if (!(step > 0.0) || !std::isfinite(step)) throw InputError("step must be positive");
  }
};

// Mistakes per completed pass.
using MistakeCurve = std::vector<std::size_t>;

struct OnlineUpdate {
  bool updated;
  std::size_t active;  // r, 0-based
};

// In-place form of the online step.
inline OnlineUpdate online_update(PolyhedralModel& model, std::span<const double> xt, int label,
                                  double step) {
  const ActiveValue av = active_value(model, xt);
  if (sign_label(av.value) == label) return {false, av.index};
  auto w = model.weights(av.index);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += step * label * xt[i];
  return {true, av.index};
}

struct OnlineStep {
  PolyhedralModel model;
  bool updated;
  std::size_t active;
};

inline OnlineStep online_step(const PolyhedralModel& model, const LabeledSample& sample,
                              double step) {
  if (!is_valid_label(sample.label)) throw InputError("label must be -1 or +1");
  const AugmentedVector xt = augment(sample);
  model.check_input(xt.size());
  OnlineStep out{model, false, 0};
  const OnlineUpdate u = online_update(out.model, xt, sample.label, step);
  out.updated = u.updated;
  out.active = u.active;
  return out;
}

struct OnlineResult {
  PolyhedralModel model;
  MistakeCurve curve;
};

inline OnlineResult train_online_from(PolyhedralModel initial, const AugmentedData& data,
                                      const OnlineConfig& cfg) {
  cfg.validate();
  check_dims(initial, data);
  OnlineResult result{std::move(initial), {}};
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng order_rng(derive_seed(cfg.seed, streams::kPassOrder));
  for (std::size_t pass = 0; pass < cfg.passes; ++pass) {
    if (cfg.shuffle_each_pass) order_rng.shuffle(std::span<std::size_t>(order));
    std::size_t mistakes = 0;
    for (std::size_t n : order) {
      if (online_update(result.model, data.inputs[n], data.labels[n], cfg.step).updated) {
        ++mistakes;
      }
    }
    result.curve.push_back(mistakes);
    if (mistakes == 0 && cfg.early_stop) break;
  }
  return result;
}

inline OnlineResult train_online(std::span<const LabeledSample> data, const OnlineConfig& cfg) {
  cfg.validate();
  const AugmentedData augmented = augment_all(data);
  return train_online_from(
      random_model(augmented.dim, cfg.hyperplanes, derive_seed(cfg.seed, streams::kInit)),
      augmented, cfg);
}

}  // namespace polyceptron
