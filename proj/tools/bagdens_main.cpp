//! Command line front end for the experiment harness.
//!
//! Each experiment is a subcommand; parameters come from an optional config
//! file (key = value lines) with command line flags applied on top. Exit
//! codes: 0 on success, 2 for configuration problems, 3 for runtime failures
//! (including a failed selfcheck).

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <bagdens/bagdens.hpp>

namespace {

//! Flag values captured as raw text so they funnel through the same
//! key/value parser as config file entries.
struct CliArgs {
  std::optional<std::string> config;
  std::optional<std::string> seed;
  std::optional<std::string> models;
  std::optional<std::string> estimators;
  std::optional<std::string> sample_sizes;
  std::optional<std::string> replicates;
  std::optional<std::string> ensemble;
  std::optional<std::string> alpha;
  std::optional<std::string> kernel;
  std::optional<std::string> bandwidth;
  std::optional<std::string> threads;
  std::optional<std::string> out;
};

void add_common_options(CLI::App* sub, CliArgs& args) {
  sub->add_option("--config", args.config, "Config file with key = value lines; flags win")
      ->option_text("FILE");
  sub->add_option("--seed", args.seed, "Master seed (required here or in the config file)");
  sub->add_option("--models", args.models, "Comma separated model names");
  sub->add_option("--estimators", args.estimators,
                  "Comma separated estimator names (band methods for bands and curves)");
  sub->add_option("--n", args.sample_sizes, "Comma separated sample sizes");
  sub->add_option("--replicates", args.replicates, "Monte Carlo replicate count");
  sub->add_option("--ensemble", args.ensemble,
                  "Ensemble sizes (a single value except for agg-curve)");
  sub->add_option("--alpha", args.alpha, "Band miscoverage level");
  sub->add_option("--kernel", args.kernel,
                  "Kernel name: gaussian, epanechnikov, rectangular, triangular");
  sub->add_option("--bandwidth", args.bandwidth, "Bandwidth rule: lscv or reference");
  sub->add_option("--threads", args.threads, "Worker thread count (0 uses every core)");
  sub->add_option("--out", args.out, "Output CSV path")->option_text("FILE");
}

int run(int argc, char** argv) {
  CLI::App app{"Monte Carlo experiments for bagged density estimators"};
  app.require_subcommand(1);

  CliArgs args;
  std::vector<std::pair<CLI::App*, bagdens::harness::ExperimentKind>> experiment_subs;
  const auto add_experiment = [&](const char* name, const char* about,
                                  bagdens::harness::ExperimentKind kind) {
    CLI::App* sub = app.add_subcommand(name, about);
    add_common_options(sub, args);
    experiment_subs.emplace_back(sub, kind);
  };
  add_experiment("mise", "Estimate integrated squared error for each estimator",
                 bagdens::harness::ExperimentKind::mise);
  add_experiment("agg-curve", "Trace error against ensemble size for bagged estimators",
                 bagdens::harness::ExperimentKind::agg_curve);
  add_experiment("bands", "Measure variability band coverage and width",
                 bagdens::harness::ExperimentKind::bands);
  add_experiment("curves", "Write fitted curves over a grid for one sample",
                 bagdens::harness::ExperimentKind::curves);
  CLI::App* selfcheck_sub =
      app.add_subcommand("selfcheck", "Run fast internal consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (selfcheck_sub->parsed()) return bagdens::harness::run_selfcheck(std::cout) ? 0 : 3;

  bagdens::harness::ExperimentConfig cfg;
  if (args.config) bagdens::harness::load_config_file(cfg, *args.config);
  for (const auto& [sub, kind] : experiment_subs) {
    if (sub->parsed()) cfg.kind = kind;  // the subcommand outranks the config file
  }
  const auto apply = [&](const char* key, const std::optional<std::string>& value) {
    if (value) bagdens::harness::apply_key_value(cfg, key, *value);
  };
  apply("seed", args.seed);
  apply("models", args.models);
  apply("estimators", args.estimators);
  apply("n", args.sample_sizes);
  apply("replicates", args.replicates);
  apply("ensemble", args.ensemble);
  apply("alpha", args.alpha);
  apply("kernel", args.kernel);
  apply("bandwidth", args.bandwidth);
  apply("threads", args.threads);
  apply("out", args.out);

  bagdens::harness::finalize_config(cfg);
  bagdens::harness::run_experiment(cfg);
  std::cout << "wrote " << cfg.out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const bagdens::harness::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
