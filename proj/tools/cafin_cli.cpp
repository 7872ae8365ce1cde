#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cafin/error.hpp"
#include "cafin/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"cafin: fairness-aware graph embedding experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir_flag;
  int workers_flag = 0;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("-c,--config", config_path, "experiment config file")->required();
    cmd->add_option("-o,--out-dir", out_dir_flag, "override the output directory");
    cmd->add_option("-w,--workers", workers_flag, "override the worker count");
  };

  auto* pre = app.add_subcommand("preprocess", "build the distance oracle and group manifest");
  add_config(pre);
  auto* run = app.add_subcommand("run", "train and evaluate every variant across all seeds");
  add_config(run);

  std::string run_dir;
  auto* rep = app.add_subcommand("report", "render the aggregate table for a finished run");
  rep->add_option("run_dir", run_dir, "run output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (rep->parsed()) {
      cafin::cmd_report(run_dir, std::cout);
      return 0;
    }
    auto cfg = cafin::ExperimentConfig::from_file(config_path);
    cfg.apply_env_overrides();
    if (!out_dir_flag.empty()) cfg.out_dir = out_dir_flag;
    if (workers_flag > 0) cfg.workers = workers_flag;
    cfg.validate();
    if (pre->parsed()) {
      cafin::cmd_preprocess(cfg);
      return 0;
    }
    const auto out = cafin::run_experiment(cfg);
    cafin::cmd_report(cfg.out_dir, std::cout);
    if (!out.failures.empty()) {
      for (const auto& [seed, msg] : out.failures) {
        std::cerr << "seed " << seed << " failed: " << msg << "\n";
      }
      return 1;
    }
    return 0;
  } catch (const cafin::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
