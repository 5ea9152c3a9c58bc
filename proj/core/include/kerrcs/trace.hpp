#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kerrcs {

/// A named observable sampled on a time grid, tau = g_a * t.
/// Entries may be undefined (e.g. a Mandel parameter at zero mean).
struct ObservableTrace {
  std::string name;
  std::vector<double> tau;
  std::vector<std::optional<double>> values;

  std::size_t size() const noexcept { return tau.size(); }
};

/// `points` equally spaced samples on [0, tau_max], endpoints included.
std::vector<double> make_tau_grid(double tau_max, int points);

/// Throws DomainError unless the grid is non-empty and strictly increasing.
void require_increasing_grid(std::span<const double> grid);

/// Writes columns (tau, <trace names>...). All traces must share one grid.
void write_traces_csv(std::ostream& os, std::span<const ObservableTrace> traces);

}  // namespace kerrcs
