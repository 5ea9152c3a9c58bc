#pragma once

#include "kerrcs/app/scenario.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace kerrcs::app {

enum class Verb { State, Dynamics, IdentityCheck, Sweep, Figures };

std::string_view verb_name(Verb verb);

struct RunOptions {
  int threads = 1;
  std::optional<CoefficientConvention> convention;
};

/// Output files keyed by path relative to the output directory.
struct OutputSet {
  std::map<std::string, std::string> files;
};

struct BundledScenario {
  std::string_view name;
  std::string_view text;
};

/// Figure scenarios compiled into the binary.
std::span<const BundledScenario> bundled_scenarios();

/// Constraints a verb places on its scenario.
ScenarioRequest request_for(Verb verb, const RunOptions& options);

/// Computes every output of one scenario, validating each result before it
/// is rendered. Nothing is written. Throws IntegrityError or
/// ConvergenceError on numerical failures.
OutputSet compute_scenario(const Scenario& scenario, Verb verb, const RunOptions& options);

/// Resolves and computes a parsed config for one of the single-scenario
/// verbs.
OutputSet run_scenario(const RawConfig& config, Verb verb, const RunOptions& options);

/// All bundled scenarios, each under its own subdirectory.
OutputSet run_figures(const RunOptions& options);

/// Writes every file of `outputs` under `dir`; each file appears complete
/// or not at all.
void write_outputs(const OutputSet& outputs, const std::filesystem::path& dir);

/// Command-line entry point; returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace kerrcs::app
