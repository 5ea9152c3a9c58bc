#include "kerrcs/statistics.hpp"

#include "kerrcs/csv.hpp"

#include <ostream>

namespace kerrcs {

MeanOccupations mean_occupations(const JointPhotonDistribution& dist) {
  MeanOccupations m;
  for (int i = 0; i <= dist.max_na(); ++i) {
    for (int j = 0; j <= dist.max_nb(); ++j) {
      const double p = dist(i, j);
      m.a += i * p;
      m.b += j * p;
    }
  }
  return m;
}

std::optional<double> cross_correlation(const JointPhotonDistribution& dist) {
  const auto m = mean_occupations(dist);
  if (m.a == 0.0 || m.b == 0.0) return std::nullopt;
  double product = 0.0;
  for (int i = 0; i <= dist.max_na(); ++i)
    for (int j = 0; j <= dist.max_nb(); ++j) product += static_cast<double>(i) * j * dist(i, j);
  return product / (m.a * m.b);
}

ModeStatistics mode_statistics(const JointPhotonDistribution& dist, Mode mode) {
  const auto marginal = dist.marginal(mode);
  double mean = 0.0;
  for (std::size_t n = 0; n < marginal.size(); ++n) {
    mean += static_cast<double>(n) * marginal[n];
  }
  // Central second moment by direct summation; avoids the cancellation in
  // <n^2> - <n>^2 for near-Fock marginals.
  double variance = 0.0;
  for (std::size_t n = 0; n < marginal.size(); ++n) {
    const double d = static_cast<double>(n) - mean;
    variance += d * d * marginal[n];
  }
  ModeStatistics s{mean, variance, std::nullopt};
  if (mean != 0.0) s.mandel_q = (variance - mean) / mean;
  return s;
}

std::optional<double> mandel_parameter(const JointPhotonDistribution& dist, Mode mode) {
  return mode_statistics(dist, mode).mandel_q;
}

StatisticsRow statistics_row(double parameter, const JointPhotonDistribution& dist) {
  return {parameter, mean_occupations(dist), cross_correlation(dist),
          mandel_parameter(dist, Mode::A), mandel_parameter(dist, Mode::B)};
}

void write_statistics_csv(std::ostream& os, std::string_view parameter_name,
                          std::span<const StatisticsRow> rows) {
  os << parameter_name << ",mean_a,mean_b,g2,q_a,q_b\n";
  for (const auto& r : rows) {
    os << format_number(r.parameter) << ',' << format_number(r.means.a) << ','
       << format_number(r.means.b) << ',' << format_number(r.g2) << ',' << format_number(r.q_a)
       << ',' << format_number(r.q_b) << '\n';
  }
}

}  // namespace kerrcs
