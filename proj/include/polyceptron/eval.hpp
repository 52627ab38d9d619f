#pragma once

// Repeated stratified k-fold cross-validation and report output.

#include <algorithm>
#include <chrono>
#include <concepts>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polyceptron/batch_trainer.hpp"
#include "polyceptron/core.hpp"
#include "polyceptron/errors.hpp"
#include "polyceptron/format.hpp"
#include "polyceptron/online_trainer.hpp"
#include "polyceptron/random.hpp"

namespace polyceptron {

inline double accuracy(const PolyhedralModel& model, std::span<const LabeledSample> data) {
  if (data.empty()) throw InputError("accuracy of an empty dataset");
  std::size_t correct = 0;
  for (const auto& s : data) {
    const AugmentedVector xt = augment(s);
    if (classify(model, xt) == s.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

// Callable signature for trainers plugged into k_fold_cv.
template <typename T>
concept Trainer = requires(T t, std::span<const LabeledSample> d, std::uint64_t seed) {
  { t(d, seed) } -> std::convertible_to<PolyhedralModel>;
};

inline auto batch_trainer(BatchConfig cfg) {
  return [cfg](std::span<const LabeledSample> d, std::uint64_t seed) mutable {
    cfg.seed = seed;
    return train_batch(d, cfg).model;
  };
}

inline auto online_trainer(OnlineConfig cfg) {
  return [cfg](std::span<const LabeledSample> d, std::uint64_t seed) mutable {
    cfg.seed = seed;
    return train_online(d, cfg).model;
  };
}

struct CvReport {
  std::size_t folds = 0;
  std::size_t repeats = 0;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> config;
  // fold_accuracy[r][f]
  std::vector<std::vector<double>> fold_accuracy;
  std::vector<double> repeat_mean;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;  // sample std of the repeat means
  double mean_seconds = 0.0;
  double std_seconds = 0.0;   // sample std over all training runs
  std::vector<double> train_seconds;
};

inline double mean_of(std::span<const double> v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Sample standard deviation (n - 1); 0 for fewer than two values.
inline double stddev_of(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

// Fold index per sample. Each class is shuffled separately and dealt
// round-robin, the negative class continuing where the positive class
// stopped so fold sizes stay within one of each other.
inline std::vector<std::size_t> stratified_folds(std::span<const LabeledSample> data,
                                                 std::size_t folds, Rng& rng) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t n = 0; n < data.size(); ++n) (data[n].label > 0 ? pos : neg).push_back(n);
  rng.shuffle(std::span<std::size_t>(pos));
  rng.shuffle(std::span<std::size_t>(neg));
  std::vector<std::size_t> fold_of(data.size());
  std::size_t next = 0;
  for (std::size_t n : pos) fold_of[n] = next++ % folds;
  for (std::size_t n : neg) fold_of[n] = next++ % folds;
  return fold_of;
}

template <Trainer T>
CvReport k_fold_cv(std::span<const LabeledSample> data, T&& trainer, std::size_t folds,
                   std::size_t repeats, std::uint64_t seed,
                   std::vector<std::pair<std::string, std::string>> config = {}) {
  validate_dataset(data);
  if (folds < 2) throw InputError("folds must be >= 2");
  if (repeats < 1) throw InputError("repeats must be >= 1");
  if (data.size() < folds) throw InputError("fewer samples than folds");

  CvReport report;
  report.folds = folds;
  report.repeats = repeats;
  report.seed = seed;
  report.config = std::move(config);

  for (std::size_t r = 0; r < repeats; ++r) {
    Rng rng(derive_seed(seed, streams::kCvShuffle + r));
    const auto fold_of = stratified_folds(data, folds, rng);
    std::vector<double> accs;
    for (std::size_t f = 0; f < folds; ++f) {
      Dataset train, test;
      for (std::size_t n = 0; n < data.size(); ++n) {
        (fold_of[n] == f ? test : train).push_back(data[n]);
      }
      const bool has_pos = std::any_of(train.begin(), train.end(),
                                       [](const LabeledSample& s) { return s.label > 0; });
      const bool has_neg = std::any_of(train.begin(), train.end(),
                                       [](const LabeledSample& s) { return s.label < 0; });
      if (!has_pos || !has_neg) {
        throw StratificationError("repeat " + std::to_string(r + 1) + ", fold " +
                                  std::to_string(f + 1) +
                                  ": training split is missing a class");
      }
      const std::uint64_t train_seed = derive_seed(seed, streams::kCvTrain + r * folds + f);
      const auto start = std::chrono::steady_clock::now();
      const PolyhedralModel model = trainer(std::span<const LabeledSample>(train), train_seed);
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      report.train_seconds.push_back(elapsed.count());
      accs.push_back(accuracy(model, test));
    }
    report.repeat_mean.push_back(mean_of(accs));
    report.fold_accuracy.push_back(std::move(accs));
  }
  report.mean_accuracy = mean_of(report.repeat_mean);
  report.std_accuracy = stddev_of(report.repeat_mean);
  report.mean_seconds = mean_of(report.train_seconds);
  report.std_seconds = stddev_of(report.train_seconds);
  return report;
}

// Flat "key value" lines. The timestamp line is the only field that varies
// between identical runs.
inline void write_report(std::ostream& out, const CvReport& report, bool with_timestamp = true) {
  if (with_timestamp) out << "timestamp " << static_cast<long long>(std::time(nullptr)) << '\n';
  for (const auto& [key, value] : report.config) out << "config." << key << ' ' << value << '\n';
  out << "folds " << report.folds << '\n';
  out << "repeats " << report.repeats << '\n';
  out << "seed " << report.seed << '\n';
  out << "mean_accuracy " << format_double(report.mean_accuracy) << '\n';
  out << "std_accuracy " << format_double(report.std_accuracy) << '\n';
  for (std::size_t r = 0; r < report.repeat_mean.size(); ++r) {
    out << "repeat_mean." << r + 1 << ' ' << format_double(report.repeat_mean[r]) << '\n';
  }
  out << "mean_train_seconds " << format_double(report.mean_seconds) << '\n';
  out << "std_train_seconds " << format_double(report.std_seconds) << '\n';
}

// repeat,fold,accuracy with 1-based indices.
inline void write_fold_csv(std::ostream& out, const CvReport& report) {
  out << "repeat,fold,accuracy\n";
  for (std::size_t r = 0; r < report.fold_accuracy.size(); ++r) {
    for (std::size_t f = 0; f < report.fold_accuracy[r].size(); ++f) {
      out << r + 1 << ',' << f + 1 << ',' << format_double(report.fold_accuracy[r][f]) << '\n';
    }
  }
}

// Rows "pass,mistakes" with pass starting at 1, no header.
inline void write_mistake_curve(std::ostream& out, const MistakeCurve& curve) {
  if (curve.empty()) throw InputError("empty mistake curve");
  for (std::size_t p = 0; p < curve.size(); ++p) out << p + 1 << ',' << curve[p] << '\n';
}

inline void mistake_curve_export(const MistakeCurve& curve, const std::string& path) {
  if (curve.empty()) throw InputError("empty mistake curve");
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_mistake_curve(out, curve);
  if (!out.flush()) throw IoError("write failed: " + path);
}

}  // namespace polyceptron
