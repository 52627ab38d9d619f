// polyceptron: generate data, train, predict, cross-validate and check
// separability from the command line.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "polyceptron/polyceptron.hpp"

namespace {

using namespace polyceptron;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrainerFlags {
  std::string algo;
  std::size_t k = 0;
  double eta = 0.1;
  double gamma = 50.0;
  std::size_t max_iters = 1000;
  std::size_t inner_steps = 1;
  std::size_t passes = 300;
  double step = 1.0;
  bool shuffle = false;
  std::uint64_t seed = 0;

  std::vector<CLI::Option*> batch_only;
  std::vector<CLI::Option*> online_only;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--algo", algo, "batch or online")
        ->required()
        ->check(CLI::IsMember({"batch", "online"}));
    cmd.add_option("--k", k, "number of hyperplanes")->required()->check(CLI::PositiveNumber);
    batch_only.push_back(cmd.add_option("--eta", eta, "batch step size")->capture_default_str());
    batch_only.push_back(
        cmd.add_option("--gamma", gamma, "gradient-norm stopping threshold")->capture_default_str());
    batch_only.push_back(
        cmd.add_option("--max-iters", max_iters, "outer iteration cap")->capture_default_str());
    batch_only.push_back(cmd.add_option("--inner-steps", inner_steps,
                                        "gradient steps per frozen partition")
                             ->capture_default_str());
    online_only.push_back(
        cmd.add_option("--passes", passes, "passes over the data")->capture_default_str());
    online_only.push_back(cmd.add_option("--step", step, "online step size")->capture_default_str());
    online_only.push_back(
        cmd.add_option("--shuffle", shuffle, "reshuffle before every pass")->capture_default_str());
  }

  void check_combination() const {
    const auto& wrong = algo == "batch" ? online_only : batch_only;
    for (const auto* opt : wrong) {
      if (opt->count() > 0) {
        throw UsageError(opt->get_name() + " is not valid with --algo " + algo);
      }
    }
  }

  BatchConfig batch() const {
    BatchConfig cfg;
    cfg.hyperplanes = k;
    cfg.eta = eta;
    cfg.gamma = gamma;
    cfg.max_outer_iters = max_iters;
    cfg.inner_steps = inner_steps;
    cfg.seed = seed;
    return cfg;
  }

  OnlineConfig online() const {
    OnlineConfig cfg;
    cfg.hyperplanes = k;
    cfg.passes = passes;
    cfg.step = step;
    cfg.shuffle_each_pass = shuffle;
    cfg.seed = seed;
    return cfg;
  }

  std::vector<std::pair<std::string, std::string>> echo() const {
    std::vector<std::pair<std::string, std::string>> out{{"algo", algo},
                                                         {"k", std::to_string(k)}};
    if (algo == "batch") {
      out.emplace_back("eta", format_double(eta));
      out.emplace_back("gamma", format_double(gamma));
      out.emplace_back("max_iters", std::to_string(max_iters));
      out.emplace_back("inner_steps", std::to_string(inner_steps));
    } else {
      out.emplace_back("passes", std::to_string(passes));
      out.emplace_back("step", format_double(step));
      out.emplace_back("shuffle", shuffle ? "true" : "false");
    }
    return out;
  }
};

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  if (!out.flush()) throw IoError("write failed: " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polyhedral classifiers: Polyceptron training and evaluation"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset");
  std::string gen_dataset, gen_out, gen_truth_out;
  std::size_t gen_n = 0, gen_dim = 2, gen_k = 2;
  std::uint64_t gen_seed = 0;
  double gen_margin = 0.0;
  gen->add_option("--dataset", gen_dataset)->required()->check(CLI::IsMember({"d1", "d2", "random"}));
  gen->add_option("--n", gen_n)->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed)->required();
  auto* gen_dim_opt = gen->add_option("--dim", gen_dim, "random only")->capture_default_str();
  auto* gen_k_opt = gen->add_option("--k", gen_k, "random only")->capture_default_str();
  auto* gen_margin_opt = gen->add_option("--margin", gen_margin, "random only")->capture_default_str();
  gen->add_option("--out", gen_out)->required();
  gen->add_option("--truth-out", gen_truth_out, "write the generating halfspaces as a model file");

  // train
  auto* train = app.add_subcommand("train", "train a polyhedral classifier");
  TrainerFlags train_flags;
  std::string train_data, train_model_out, train_curve_out;
  train_flags.add_to(*train);
  train->add_option("--data", train_data)->required();
  train->add_option("--seed", train_flags.seed)->required();
  train->add_option("--model-out", train_model_out)->required();
  auto* curve_opt = train->add_option("--curve-out", train_curve_out, "online mistake curve CSV");

  // predict
  auto* predict = app.add_subcommand("predict", "apply a model to a data file");
  std::string predict_model, predict_data, predict_out;
  predict->add_option("--model", predict_model)->required();
  predict->add_option("--data", predict_data)->required();
  predict->add_option("--out", predict_out)->required();

  // cv
  auto* cv = app.add_subcommand("cv", "repeated stratified k-fold cross-validation");
  TrainerFlags cv_flags;
  std::string cv_data, cv_report_out, cv_folds_out;
  std::size_t cv_folds = 10, cv_repeats = 10;
  cv_flags.add_to(*cv);
  cv->add_option("--data", cv_data)->required();
  cv->add_option("--folds", cv_folds)->capture_default_str();
  cv->add_option("--repeats", cv_repeats)->capture_default_str();
  cv->add_option("--seed", cv_flags.seed)->capture_default_str();
  cv->add_option("--report-out", cv_report_out)->required();
  cv->add_option("--folds-out", cv_folds_out, "per-fold accuracy CSV");

  // check-separable
  auto* check = app.add_subcommand("check-separable", "exhaustive K-polyhedral separability test");
  std::string check_data;
  std::size_t check_k = 0, check_cap = kDefaultSeparationCap;
  check->add_option("--data", check_data)->required();
  check->add_option("--k", check_k)->required()->check(CLI::PositiveNumber);
  check->add_option("--cap", check_cap, "perceptron update cap per subproblem")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*gen) {
      if (gen_dataset != "random") {
        for (auto* opt : {gen_dim_opt, gen_k_opt, gen_margin_opt}) {
          if (opt->count() > 0) throw UsageError(opt->get_name() + " requires --dataset random");
        }
      }
      Dataset data;
      std::optional<HalfspaceSet> truth;
      if (gen_dataset == "d1") {
        data = gen_dataset1(gen_n, gen_seed);
        truth = dataset1_halfspaces();
      } else if (gen_dataset == "d2") {
        data = gen_dataset2(gen_n, gen_seed);
        truth = dataset2_halfspaces();
      } else {
        auto r = gen_random_polyhedron(gen_dim, gen_k, gen_n, gen_margin, gen_seed);
        data = std::move(r.samples);
        truth = std::move(r.halfspaces);
      }
      save_csv(gen_out, data);
      if (!gen_truth_out.empty()) save_model(gen_truth_out, to_model(*truth));
    } else if (*train) {
      train_flags.check_combination();
      if (curve_opt->count() > 0 && train_flags.algo != "online") {
        throw UsageError("--curve-out requires --algo online");
      }
      const Dataset data = load_csv_detect_header(train_data);
      if (train_flags.algo == "batch") {
        const BatchResult r = train_batch(data, train_flags.batch());
        save_model(train_model_out, r.model);
        std::cout << "iterations " << r.trace.size() << '\n'
                  << "converged " << (r.converged ? "true" : "false") << '\n'
                  << "final_criterion " << format_double(criterion(r.model, data)) << '\n'
                  << "training_accuracy " << format_double(accuracy(r.model, data)) << '\n';
      } else {
        const OnlineResult r = train_online(data, train_flags.online());
        save_model(train_model_out, r.model);
        if (!train_curve_out.empty()) mistake_curve_export(r.curve, train_curve_out);
        std::cout << "passes " << r.curve.size() << '\n'
                  << "final_pass_mistakes " << r.curve.back() << '\n'
                  << "training_accuracy " << format_double(accuracy(r.model, data)) << '\n';
      }
    } else if (*predict) {
      const PolyhedralModel model = load_model(predict_model);
      const Dataset data = load_csv_detect_header(predict_data);
      auto out = open_out(predict_out);
      write_predictions(out, model, data);
      finish(out, predict_out);
      std::cout << "accuracy " << format_double(accuracy(model, data)) << '\n';
    } else if (*cv) {
      cv_flags.check_combination();
      const Dataset data = load_csv_detect_header(cv_data);
      const CvReport report =
          cv_flags.algo == "batch"
              ? k_fold_cv(data, batch_trainer(cv_flags.batch()), cv_folds, cv_repeats,
                          cv_flags.seed, cv_flags.echo())
              : k_fold_cv(data, online_trainer(cv_flags.online()), cv_folds, cv_repeats,
                          cv_flags.seed, cv_flags.echo());
      auto out = open_out(cv_report_out);
      write_report(out, report);
      finish(out, cv_report_out);
      if (!cv_folds_out.empty()) {
        auto folds_out = open_out(cv_folds_out);
        write_fold_csv(folds_out, report);
        finish(folds_out, cv_folds_out);
      }
      std::cout << "mean_accuracy " << format_double(report.mean_accuracy) << '\n'
                << "std_accuracy " << format_double(report.std_accuracy) << '\n';
    } else if (*check) {
      const Dataset data = load_csv_detect_header(check_data);
      const SeparabilityWitness w = is_polyhedrally_separable(data, check_k, check_cap);
      std::cout << "separable " << (w.separable ? "true" : "false") << '\n'
                << "assignments_tried " << w.assignments_tried << '\n'
                << "subproblems_capped " << w.subproblems_capped << '\n';
      if (w.separable) {
        for (const auto& [n, k] : *w.assignment) {
          std::cout << "assign " << n + 1 << ' ' << k + 1 << '\n';
        }
        write_model(std::cout, *w.model);
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
