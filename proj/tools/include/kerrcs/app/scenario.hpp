#pragma once

#include "kerrcs/app/config.hpp"
#include "kerrcs/deformed_algebra.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kerrcs::app {

enum class ScenarioMode { Static, Dynamic };

enum class Observable { Means, G2, Mandel, Occupations, Squeezing, Entropy, IdentityCheck };

/// Numeric scenario fields that may take a list of values.
enum class Parameter { N, MuAbs, MuPhase, KappaTilde, GRatio };

std::string_view parameter_name(Parameter p);
std::string_view observable_name(Observable o);
std::string_view mode_name(ScenarioMode m);

/// One fully resolved evaluation point.
struct PointParams {
  int N = 0;
  double mu_abs = 0.0;
  double mu_phase = 0.0;
  double kappa_tilde = 0.0;
  double g_ratio = 1.0;
};

struct Scenario {
  std::string name;
  std::string source;
  ScenarioMode mode = ScenarioMode::Dynamic;
  std::vector<Observable> observables;
  /// Every parameter resolves to at least one value.
  std::map<Parameter, std::vector<double>> values;
  /// Horizontal axis of a static scenario.
  std::optional<Parameter> axis;
  /// Parameter overlaid as separate curves, if any.
  std::optional<Parameter> series;
  CoefficientConvention convention = CoefficientConvention::OperatorExpansion;
  double tau_max = 50.0;
  int tau_points = 5000;

  /// Values of `series`, or a single placeholder when there is none.
  std::vector<double> series_values() const;
  /// The point for the given series value and (static) axis value.
  PointParams point(double series_value, double axis_value) const;
};

/// How a verb constrains the scenario before validation.
struct ScenarioRequest {
  std::optional<ScenarioMode> mode;
  std::optional<std::vector<Observable>> observables;
  std::optional<CoefficientConvention> convention;
  /// Exactly one list-valued parameter allowed (sweep).
  bool single_list = false;
};

/// Validates and resolves a parsed config. Throws ConfigError with the
/// offending field and line.
Scenario resolve_scenario(const RawConfig& raw, const ScenarioRequest& request = {});

/// Resolved parameters in config syntax, for manifests.
std::string describe(const Scenario& scenario);

}  // namespace kerrcs::app
