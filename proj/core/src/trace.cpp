#include "kerrcs/trace.hpp"

#include "kerrcs/csv.hpp"
#include "kerrcs/errors.hpp"

#include <cmath>
#include <ostream>

namespace kerrcs {

std::vector<double> make_tau_grid(double tau_max, int points) {
  if (!(tau_max > 0.0) || !std::isfinite(tau_max)) throw DomainError("tau_max must be positive");
  if (points < 2) throw DomainError("a time grid needs at least two points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double step = tau_max / (points - 1);
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = step * i;
  grid.back() = tau_max;
  return grid;
}

void require_increasing_grid(std::span<const double> grid) {
  if (grid.empty()) throw DomainError("time grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw DomainError("time grid must be strictly increasing");
  }
}

void write_traces_csv(std::ostream& os, std::span<const ObservableTrace> traces) {
  if (traces.empty()) return;
  const auto& tau = traces.front().tau;
  for (const auto& t : traces) {
    if (t.tau != tau || t.values.size() != tau.size())
      throw DomainError("traces written together must share one grid");
  }
  os << "tau";
  for (const auto& t : traces) os << ',' << t.name;
  os << '\n';
  for (std::size_t i = 0; i < tau.size(); ++i) {
    os << format_number(tau[i]);
    for (const auto& t : traces) os << ',' << format_number(t.values[i]);
    os << '\n';
  }
}

}  // namespace kerrcs
