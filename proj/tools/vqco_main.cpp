// vqco: instance generation, batch runs and analysis.
//
// Exit codes: 0 ok, 1 bad input, 2 filesystem failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "vqco/experiment.hpp"
#include "vqco/io.hpp"

namespace {

namespace ex = vqco::experiment;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitIo = 2;

/// Flag values shared by generate and run. Only flags given on the command
/// line (or in the config file) override preset fields.
struct SpecFlags {
  std::string preset;
  std::string ensemble = "three_regular";
  std::vector<int> sizes{8};
  int instances = 1;
  std::vector<double> epsilons{0.0};
  double dtau = vqco::varit::kSigmoidDtau;
  std::string optimizer = "varit";
  std::uint64_t seed = 1;
  std::string convention;
  bool no_sigmoid = false;
  int max_iterations = 100;
  double learning_rate = 0.05;
  bool entropy = false;
  bool exact_reference = false;
  int nws_k = 4;
  double nws_p = 0.5;

  std::vector<CLI::Option*> opts;
  CLI::Option* dtau_opt = nullptr;

  void attach(CLI::App& app) {
    app.add_option("--preset", preset, "Start from a named preset (see `presets`)");
    opts.push_back(app.add_option("--ensemble", ensemble, "three_regular, nws, sk or custom (complete U(0,1])"));
    opts.push_back(app.add_option("--sizes", sizes, "Vertex counts")->delimiter(','));
    opts.push_back(app.add_option("--instances", instances, "Instances per size"));
    opts.push_back(app.add_option("--epsilon", epsilons, "Pruning thresholds")->delimiter(','));
    dtau_opt = app.add_option("--dtau", dtau, "Imaginary time step (default 1.5 with sigmoid, 0.1 without)");
    opts.push_back(dtau_opt);
    opts.push_back(app.add_option("--optimizer", optimizer, "varit or adam"));
    opts.push_back(app.add_option("--seed", seed, "Master seed"));
    opts.push_back(app.add_option("--convention", convention, "physics or computer_science"));
    opts.push_back(app.add_flag("--no-sigmoid", no_sigmoid, "Flow on the raw cost instead of its sigmoid"));
    opts.push_back(app.add_option("--max-iterations", max_iterations, "Flow or ADAM iteration cap"));
    opts.push_back(app.add_option("--lr", learning_rate, "ADAM learning rate"));
    opts.push_back(app.add_flag("--entropy", entropy, "Record bipartition entropy"));
    opts.push_back(app.add_flag("--exact-reference", exact_reference, "Also evolve the exact state"));
    opts.push_back(app.add_option("--nws-k", nws_k, "NWS ring degree"));
    opts.push_back(app.add_option("--nws-p", nws_p, "NWS shortcut probability"));
  }

  bool given(const CLI::Option* o) const { return o->count() > 0; }

  std::vector<ex::ExperimentSpec> build() const {
    std::vector<ex::ExperimentSpec> specs = preset.empty() ? std::vector<ex::ExperimentSpec>(1) : ex::presets(preset);
    const auto at = [&](std::string_view name) {
      for (const auto* o : opts) {
        if (o->get_name() == name) return given(o);
      }
      return false;
    };
    const bool custom = preset.empty();
    for (auto& s : specs) {
      if (custom || at("--ensemble")) s.ensemble = vqco::parse_ensemble(ensemble);
      if (custom || at("--sizes")) s.sizes = sizes;
      if (custom || at("--instances")) s.instances = instances;
      if (custom || at("--epsilon")) s.epsilons = epsilons;
      if (custom || at("--optimizer")) s.optimizer = ex::parse_optimizer(optimizer);
      if (custom || at("--seed")) s.master_seed = seed;
      if (at("--convention")) s.convention = vqco::parse_convention(convention);
      if (at("--no-sigmoid")) s.varit.use_sigmoid = !no_sigmoid;
      if (given(dtau_opt)) {
        s.varit.dtau = dtau;
      } else if (at("--no-sigmoid") && no_sigmoid) {
        s.varit.dtau = 0.1;
      }
      if (custom || at("--max-iterations")) {
        s.varit.max_iterations = max_iterations;
        s.adam.max_iterations = max_iterations;
      }
      if (custom || at("--lr")) s.adam.learning_rate = learning_rate;
      if (at("--entropy")) s.entropy = entropy;
      if (at("--exact-reference")) s.exact_reference = exact_reference;
      if (custom || at("--nws-k")) s.nws_k = nws_k;
      if (custom || at("--nws-p")) s.nws_p = nws_p;
      if (s.optimizer == ex::Optimizer::Adam && !at("--epsilon")) s.epsilons = {0.0};
      s.validate();
    }
    return specs;
  }
};

void print_summary(const fs::path& dir, const std::vector<ex::SummaryRow>& rows) {
  fmt::print("{}:\n", dir.string());
  fmt::print("  {:<14} {:>3} {:>7} {:>9} {:>8} {:>10} {:>8}\n", "ensemble", "n", "eps", "instances", "success",
             "mean_iter", "layers");
  for (const auto& r : rows) {
    fmt::print("  {:<14} {:>3} {:>7.3f} {:>9} {:>8.3f} {:>10.2f} {:>8.3f}\n", vqco::to_string(r.ensemble), r.n,
               r.epsilon, r.stats.instances, r.stats.success_fraction, r.stats.mean_iterations,
               r.stats.mean_max_layers);
  }
}

int analyze_dir(const fs::path& dir) {
  const auto dirs = ex::optimizer_dirs(dir);
  if (dirs.empty()) throw std::invalid_argument("no runs.csv found under " + dir.string());
  for (const auto& d : dirs) print_summary(d, ex::analyze(d));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational imaginary-time MAXCUT experiments"};
  app.set_config("--config", "", "Config file: key=value lines under [generate]/[run]/[analyze] sections");
  app.require_subcommand(1);

  auto* presets_cmd = app.add_subcommand("presets", "List the built-in experiment presets");

  SpecFlags gen_flags;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("generate", "Write graph instances and a seed manifest");
  gen_flags.attach(*gen_cmd);
  gen_cmd->add_option("--out", gen_out, "Output directory")->required();

  SpecFlags run_flags;
  std::string run_out;
  int jobs = 1;
  auto* run_cmd = app.add_subcommand("run", "Run a batch, write trajectories and summaries");
  run_flags.attach(*run_cmd);
  run_cmd->add_option("--out", run_out, "Output directory")->required();
  run_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::string analyze_in;
  auto* analyze_cmd = app.add_subcommand("analyze", "Summarize a run directory");
  analyze_cmd->add_option("dir", analyze_in, "Run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*presets_cmd) {
      for (const auto& name : ex::preset_names()) fmt::print("{:<6} {}\n", name, ex::preset_description(name));
      return kExitOk;
    }
    if (*gen_cmd) {
      const auto specs = gen_flags.build();
      const auto count = ex::write_instances(specs, gen_out);
      fmt::print("wrote {} graphs to {}\n", count, gen_out);
      return kExitOk;
    }
    if (*run_cmd) {
      const auto specs = run_flags.build();
      ex::write_instances(specs, run_out);
      const auto start = std::chrono::steady_clock::now();
      const auto results = ex::run_batch(specs, jobs);
      ex::write_results(results, run_out);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      fmt::print("{} runs in {:.1f} s\n", results.size(), secs);
      return analyze_dir(run_out);
    }
    if (*analyze_cmd) return analyze_dir(analyze_in);
  } catch (const vqco::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitOk;
}
