#include "kerrcs/app/run.hpp"

#include "kerrcs/coherent_states.hpp"
#include "kerrcs/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace kerrcs::app {

int run_cli(int argc, char** argv) {
  CLI::App app{"Cross-Kerr nonlinear coherent states: statistics, atom-field dynamics and entanglement", "kerrcs"};
  app.set_version_flag("--version", std::string("kerrcs ") + KERRCS_VERSION);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int threads = 1;
  std::string convention;

  struct Command {
    Verb verb;
    const char* description;
  };
  const Command commands[] = {
      {Verb::State, "build the state and its static photon statistics"},
      {Verb::Dynamics, "time traces of the atom-field evolution"},
      {Verb::IdentityCheck, "resolution-of-identity quadrature residuals"},
      {Verb::Sweep, "long-format table over the single list-valued parameter"},
      {Verb::Figures, "run every bundled figure scenario"},
  };
  std::map<CLI::App*, Verb> verbs;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(std::string(verb_name(c.verb)), c.description);
    if (c.verb != Verb::Figures)
      sub->add_option("--config", config_path, "scenario file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory")->required();
    sub->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 256));
    sub->add_option("--convention", convention, "coefficient convention, overrides the scenario")
        ->check(CLI::IsMember({"operator", "literal"}));
    verbs[sub] = c.verb;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const Verb verb = verbs.at(app.get_subcommands().front());
  RunOptions options;
  options.threads = threads;
  if (!convention.empty()) options.convention = parse_convention(convention);

  try {
    const auto outputs =
        verb == Verb::Figures ? run_figures(options) : run_scenario(load_config(config_path), verb, options);
    write_outputs(outputs, out_dir);
    std::cout << "wrote " << outputs.files.size() << " files to " << out_dir << '\n';
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "kerrcs: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "kerrcs: invalid parameter: " << e.what() << '\n';
    return 2;
  } catch (const IntegrityError& e) {
    std::cerr << "kerrcs: integrity check failed: " << e.what() << '\n';
    return 3;
  } catch (const ConvergenceError& e) {
    std::cerr << "kerrcs: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "kerrcs: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace kerrcs::app
