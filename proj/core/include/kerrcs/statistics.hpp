#pragma once

#include "kerrcs/photon_distribution.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>

namespace kerrcs {

struct MeanOccupations {
  double a = 0.0;
  double b = 0.0;
};

struct ModeStatistics {
  double mean = 0.0;
  double variance = 0.0;
  /// Undefined when the mean vanishes.
  std::optional<double> mandel_q;
};

MeanOccupations mean_occupations(const JointPhotonDistribution& dist);

/// <n_a n_b> / (<n_a><n_b>); undefined if either mean is zero.
std::optional<double> cross_correlation(const JointPhotonDistribution& dist);

/// (<n^2> - <n>^2 - <n>) / <n> on the marginal of `mode`; undefined at zero mean.
std::optional<double> mandel_parameter(const JointPhotonDistribution& dist, Mode mode);

ModeStatistics mode_statistics(const JointPhotonDistribution& dist, Mode mode);

/// One row of a static statistics sweep.
struct StatisticsRow {
  double parameter = 0.0;
  MeanOccupations means;
  std::optional<double> g2;
  std::optional<double> q_a;
  std::optional<double> q_b;
};

StatisticsRow statistics_row(double parameter, const JointPhotonDistribution& dist);

/// Columns (<parameter_name>, mean_a, mean_b, g2, q_a, q_b).
void write_statistics_csv(std::ostream& os, std::string_view parameter_name,
                          std::span<const StatisticsRow> rows);

}  // namespace kerrcs
