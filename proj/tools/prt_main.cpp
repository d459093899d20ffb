#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prt/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Portable reward tuning pipeline: data generation, training, "
               "composition, evaluation, verification and benchmarking"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  const std::vector<std::pair<std::string, std::string>> subcommands = {
      {"gen-data", "Generate a synthetic task bundle"},
      {"pretrain", "Train source and target pretrained models"},
      {"finetune", "Fine-tune a checkpoint on task data"},
      {"train-prt", "Train an explicit reward model against a frozen base"},
      {"eval", "Evaluate a policy (pretrained | ft | prt | eft) on a dataset"},
      {"verify", "Run a property check (prop1 | kl-bound | jensen)"},
      {"benchmark", "Measure per-method inference cost"},
      {"report", "Aggregate eval CSVs into a per-target comparison table"},
  };
  for (const auto& [name, desc] : subcommands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("-c,--config", config_path, "JSON config file")->required();
    sub->add_option("--set", overrides,
                    "Override a config key, e.g. --set train.steps=100 (flag wins)");
  }

  CLI11_PARSE(app, argc, argv);
  return prt::cli::run(app.get_subcommands().front()->get_name(), config_path, overrides);
}
