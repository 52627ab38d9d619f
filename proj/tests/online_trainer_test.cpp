#include "polyceptron/online_trainer.hpp"

#include <gtest/gtest.h>

#include "polyceptron/datagen.hpp"
#include "polyceptron/eval.hpp"
#include "test_support.hpp"

namespace polyceptron {
namespace {

using testing::model_row;
using testing::perceptron_online;
using testing::random_instance;

TEST(OnlineConfig, Validation) {
  OnlineConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.passes = 0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.step = 0.0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.hyperplanes = 0;
  EXPECT_THROW(cfg.validate(), InputError);
}

TEST(OnlineStep, CorrectSampleLeavesModel) {
  const PolyhedralModel model({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}});
  const OnlineStep s = online_step(model, {{1.0, 2.0}, 1}, 1.0);
  EXPECT_FALSE(s.updated);
  EXPECT_EQ(s.model, model);
}

TEST(OnlineStep, HandExample) {
  const PolyhedralModel model({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}});
  const OnlineStep s = online_step(model, {{-1.0, 2.0}, 1}, 1.0);
  EXPECT_TRUE(s.updated);
  EXPECT_EQ(s.active, 0u);
  EXPECT_EQ(model_row(s.model, 0), (std::vector<double>{0.0, 2.0, 1.0}));
  EXPECT_EQ(model_row(s.model, 1), (std::vector<double>{0.0, 1.0, 0.0}));
}

TEST(OnlineStep, NegativeAtZeroIsAMistake) {
  // sign(0) = +1, so a negative sample on the boundary is updated.
  const PolyhedralModel model({{1.0, -1.0}});
  const OnlineStep s = online_step(model, {{1.0}, -1}, 1.0);
  EXPECT_TRUE(s.updated);
  EXPECT_EQ(model_row(s.model, 0), (std::vector<double>{0.0, -2.0}));
}

TEST(OnlineStep, DimensionMismatch) {
  const PolyhedralModel model({{1.0, 0.0}});
  EXPECT_THROW(online_step(model, {{1.0, 2.0}, 1}, 1.0), DimensionError);
}

TEST(OnlineProperties, SingleVectorUpdateAndErrorDecrease) {
  Rng rng(31);
  for (int c = 0; c < 1000; ++c) {
    const std::size_t count = 1 + rng.below(5);
    const auto inst = random_instance(rng, 1 + rng.below(4), count, 1);
    const PolyhedralModel model(inst.rows);
    const LabeledSample& s = inst.data[0];
    const AugmentedVector xt = augment(s);
    const int predicted = classify(model, xt);

    const OnlineStep step = online_step(model, s, 1.0);
    EXPECT_EQ(step.updated, predicted != s.label);
    EXPECT_EQ(step.active, active_index(model, xt));

    std::size_t changed = 0;
    for (std::size_t k = 0; k < count; ++k) changed += model_row(model, k) != model_row(step.model, k);
    EXPECT_EQ(changed, step.updated ? 1u : 0u);
    if (!step.updated) continue;

    EXPECT_NE(model_row(model, step.active), model_row(step.model, step.active));
    const double before = -s.label * model.value(step.active, xt);
    const double after = -s.label * step.model.value(step.active, xt);
    EXPECT_NEAR(after, before - dot(xt, xt), 1e-9);
  }
}

TEST(TrainOnline, PerfectInitialModelStopsAfterOnePass) {
  OnlineConfig cfg;
  cfg.hyperplanes = 2;
  cfg.seed = 4;
  const PolyhedralModel init = random_model(3, 2, derive_seed(cfg.seed, streams::kInit));
  Rng rng(32);
  Dataset data;
  for (int i = 0; i < 50; ++i) {
    std::vector<double> x{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    data.push_back({x, classify(init, augment(x))});
  }
  const OnlineResult r = train_online(data, cfg);
  EXPECT_EQ(r.curve, (MistakeCurve{0}));
  EXPECT_EQ(r.model, init);
}

TEST(TrainOnline, SingleHyperplaneIsClassicalPerceptron) {
  Rng rng(33);
  for (int c = 0; c < 50; ++c) {
    const auto inst = random_instance(rng, 1 + rng.below(3), 1, 5 + rng.below(20));
    OnlineConfig cfg;
    cfg.passes = 1 + rng.below(10);
    cfg.step = rng.uniform(0.5, 2.0);
    cfg.early_stop = false;
    const OnlineResult r =
        train_online_from(PolyhedralModel(inst.rows), augment_all(inst.data), cfg);
    auto w = inst.rows[0];
    MistakeCurve curve;
    for (std::size_t p = 0; p < cfg.passes; ++p) {
      std::size_t mistakes = 0;
      for (const auto& s : inst.data) mistakes += perceptron_online(w, s, cfg.step);
      curve.push_back(mistakes);
    }
    EXPECT_EQ(model_row(r.model, 0), w);
    EXPECT_EQ(r.curve, curve);
  }
}

TEST(TrainOnline, DeterministicWithoutShuffle) {
  const Dataset data = gen_dataset1(200, 3);
  OnlineConfig cfg;
  cfg.hyperplanes = 3;
  cfg.passes = 20;
  cfg.seed = 9;
  const OnlineResult a = train_online(data, cfg);
  const OnlineResult b = train_online(data, cfg);
  EXPECT_EQ(a.model, b.model);
  EXPECT_EQ(a.curve, b.curve);
}

TEST(TrainOnline, ShuffleIsSeeded) {
  const Dataset data = gen_dataset1(200, 3);
  OnlineConfig cfg;
  cfg.hyperplanes = 3;
  cfg.passes = 20;
  cfg.shuffle_each_pass = true;
  cfg.seed = 9;
  const OnlineResult a = train_online(data, cfg);
  EXPECT_EQ(a.model, train_online(data, cfg).model);
  cfg.shuffle_each_pass = false;
  EXPECT_NE(a.model, train_online(data, cfg).model);
}

TEST(TrainOnline, ZeroMistakePassFreezesModel) {
  const Dataset data = gen_dataset1(300, 8);
  OnlineConfig cfg;
  cfg.hyperplanes = 3;
  cfg.passes = 300;
  cfg.seed = 1;
  const OnlineResult stopped = train_online(data, cfg);
  ASSERT_EQ(stopped.curve.back(), 0u);
  cfg.early_stop = false;
  cfg.passes = stopped.curve.size() + 25;
  const OnlineResult full = train_online(data, cfg);
  EXPECT_EQ(full.model, stopped.model);
  for (std::size_t p = stopped.curve.size(); p < full.curve.size(); ++p) {
    EXPECT_EQ(full.curve[p], 0u);
  }
}

TEST(TrainOnline, MistakeCountsBounded) {
  const Dataset data = gen_dataset2(150, 2);
  OnlineConfig cfg;
  cfg.hyperplanes = 4;
  cfg.passes = 30;
  const OnlineResult r = train_online(data, cfg);
  for (std::size_t m : r.curve) EXPECT_LE(m, data.size());
}

TEST(TrainOnline, Dataset1ConvergesOnMostSeeds) {
  const Dataset data = gen_dataset1(1000, 1);
  int converged = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    OnlineConfig cfg;
    cfg.hyperplanes = 3;
    cfg.passes = 300;
    cfg.seed = seed;
    const OnlineResult r = train_online(data, cfg);
    if (r.curve.back() == 0) {
      ++converged;
      EXPECT_EQ(accuracy(r.model, data), 1.0);
    }
  }
  EXPECT_GE(converged, 8);
}

}  // namespace
}  // namespace polyceptron
