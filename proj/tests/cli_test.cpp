// Drives the built polyceptron executable through std::system.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "polyceptron/io.hpp"

namespace polyceptron {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("polyceptron_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  CliRun run(const std::string& args) const {
    const std::string cmd = std::string(POLYCEPTRON_CLI) + " " + args + " >" + path("stdout") +
                            " 2>" + path("stderr");
    const int raw = std::system(cmd.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(path("stdout")), slurp(path("stderr"))};
  }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }

  fs::path dir_;
};

TEST_F(Cli, GenIsDeterministic) {
  ASSERT_EQ(run("gen --dataset d1 --n 1000 --seed 7 --out " + path("a.csv")).status, 0);
  ASSERT_EQ(run("gen --dataset d1 --n 1000 --seed 7 --out " + path("b.csv")).status, 0);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  EXPECT_EQ(load_csv(path("a.csv"), false).size(), 1000u);
}

TEST_F(Cli, TrainThenPredict) {
  ASSERT_EQ(run("gen --dataset d1 --n 1000 --seed 7 --out " + path("d1.csv")).status, 0);
  const CliRun t = run("train --algo batch --data " + path("d1.csv") +
                    " --k 3 --seed 1 --model-out " + path("m.txt"));
  ASSERT_EQ(t.status, 0) << t.err;
  const CliRun p = run("predict --model " + path("m.txt") + " --data " + path("d1.csv") +
                    " --out " + path("pred.csv"));
  ASSERT_EQ(p.status, 0) << p.err;

  // Recompute accuracy and h from the saved files.
  const PolyhedralModel model = load_model(path("m.txt"));
  const Dataset data = load_csv(path("d1.csv"), false);
  std::ifstream pred(path("pred.csv"));
  std::string line;
  std::getline(pred, line);
  EXPECT_EQ(line, "predicted,h");
  std::size_t n = 0, correct = 0;
  while (std::getline(pred, line)) {
    ASSERT_LT(n, data.size());
    const auto fields = split(line, ',');
    ASSERT_EQ(fields.size(), 2u);
    const double h = *parse_double(fields[1]);
    EXPECT_EQ(h, decision_value(model, augment(data[n])));
    EXPECT_EQ(*parse_int(fields[0]), sign_label(h));
    correct += sign_label(h) == data[n].label;
    ++n;
  }
  EXPECT_EQ(n, data.size());
  EXPECT_GE(static_cast<double>(correct) / static_cast<double>(n), 0.9);
  EXPECT_NE(p.out.find("accuracy "), std::string::npos);
}

TEST_F(Cli, TrainIsByteIdentical) {
  ASSERT_EQ(run("gen --dataset d2 --n 300 --seed 2 --out " + path("d2.csv")).status, 0);
  for (const char* m : {"m1.txt", "m2.txt"}) {
    ASSERT_EQ(run("train --algo online --data " + path("d2.csv") + " --k 4 --passes 20 --seed 5 " +
                  "--model-out " + path(m) + " --curve-out " + path(std::string(m) + ".curve"))
                  .status,
              0);
  }
  EXPECT_EQ(slurp(path("m1.txt")), slurp(path("m2.txt")));
  EXPECT_EQ(slurp(path("m1.txt.curve")), slurp(path("m2.txt.curve")));
}

TEST_F(Cli, CvOnTwoPointFixtureReportsStratificationError) {
  write("two.csv", "-1,-1\n1,1\n");
  const CliRun r = run("cv --algo batch --k 1 --data " + path("two.csv") + " --folds 2 --report-out " +
                    path("report.txt"));
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("training split is missing a class"), std::string::npos) << r.err;
  EXPECT_EQ(r.err.find('\n'), r.err.size() - 1);
}

TEST_F(Cli, CvWritesReport) {
  ASSERT_EQ(run("gen --dataset d1 --n 100 --seed 3 --out " + path("d1.csv")).status, 0);
  const CliRun r = run("cv --algo online --k 3 --passes 10 --data " + path("d1.csv") +
                    " --folds 5 --repeats 2 --report-out " + path("report.txt") + " --folds-out " +
                    path("folds.csv"));
  ASSERT_EQ(r.status, 0) << r.err;
  const std::string report = slurp(path("report.txt"));
  EXPECT_NE(report.find("mean_accuracy "), std::string::npos);
  EXPECT_NE(report.find("config.algo online"), std::string::npos);
  EXPECT_EQ(slurp(path("folds.csv")).substr(0, 21), "repeat,fold,accuracy\n");
}

TEST_F(Cli, UsageErrors) {
  write("d.csv", "0,1\n1,-1\n");
  EXPECT_EQ(run("train --algo online --data " + path("d.csv") + " --k 1 --eta 0.5 --seed 1 " +
                "--model-out " + path("m.txt")).status,
            2);
  EXPECT_EQ(run("train --algo batch --data " + path("d.csv") + " --k 1 --passes 5 --seed 1 " +
                "--model-out " + path("m.txt")).status,
            2);
  EXPECT_EQ(run("train --algo batch --data " + path("d.csv") + " --k 1 --seed 1 --model-out " +
                path("m.txt") + " --curve-out " + path("c.csv")).status,
            2);
  EXPECT_EQ(run("gen --dataset d1 --n 10 --seed 1 --k 3 --out " + path("x.csv")).status, 2);
  EXPECT_EQ(run("train --bogus").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
}

TEST_F(Cli, RuntimeErrors) {
  const CliRun missing = run("predict --model " + path("none.txt") + " --data " + path("none.csv") +
                          " --out " + path("p.csv"));
  EXPECT_EQ(missing.status, 1);
  EXPECT_EQ(missing.err.rfind("error: ", 0), 0u);
  write("bad.csv", "1,1\n2,0\n");
  const CliRun bad = run("check-separable --data " + path("bad.csv") + " --k 1");
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.err.find("line 2"), std::string::npos);
}

TEST_F(Cli, CheckSeparable) {
  write("xor.csv", "0,0,1\n1,1,1\n0,1,-1\n1,0,-1\n");
  const CliRun one = run("check-separable --data " + path("xor.csv") + " --k 1 --cap 20000");
  ASSERT_EQ(one.status, 0) << one.err;
  EXPECT_EQ(one.out.rfind("separable false\n", 0), 0u);
  const CliRun two = run("check-separable --data " + path("xor.csv") + " --k 2 --cap 20000");
  ASSERT_EQ(two.status, 0) << two.err;
  EXPECT_EQ(two.out.rfind("separable true\n", 0), 0u);
  EXPECT_NE(two.out.find("assign 3 1\nassign 4 2\n"), std::string::npos);
  EXPECT_NE(two.out.find("polyceptron-model 1\n"), std::string::npos);
}

TEST_F(Cli, GenRandomWithTruth) {
  ASSERT_EQ(run("gen --dataset random --n 50 --seed 4 --dim 3 --k 2 --margin 0.1 --out " +
                path("r.csv") + " --truth-out " + path("truth.txt")).status,
            0);
  const CliRun p = run("predict --model " + path("truth.txt") + " --data " + path("r.csv") +
                    " --out " + path("p.csv"));
  ASSERT_EQ(p.status, 0);
  EXPECT_EQ(p.out, "accuracy 1\n");
}

}  // namespace
}  // namespace polyceptron
