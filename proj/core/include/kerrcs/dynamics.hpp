#pragma once

// Lambda-type three-level atom driven by the two field modes,
//
//     H = g_a (|1><0| a + a^dag |0><1|) + g_b (|1><2| b + b^dag |2><1|),
//
// with the atom starting in |0>. Each initial field ket |n_a, n_b> spans a
// three-dimensional invariant subspace
//
//     { |0; n_a, n_b>, |1; n_a-1, n_b>, |2; n_a-1, n_b+1> }
//
// whose amplitudes have a closed form. Time is always tau = g_a t.

#include "kerrcs/coherent_states.hpp"
#include "kerrcs/photon_distribution.hpp"
#include "kerrcs/trace.hpp"

#include <array>
#include <compare>
#include <complex>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace kerrcs {

class CouplingConfig {
 public:
  /// Throws DomainError unless both couplings are positive and finite.
  CouplingConfig(double g_a, double g_b);

  /// g_a = 1, g_b = ratio.
  static CouplingConfig from_ratio(double g_ratio) { return {1.0, g_ratio}; }

  double g_a() const noexcept { return g_a_; }
  double g_b() const noexcept { return g_b_; }
  double ratio() const noexcept { return g_b_ / g_a_; }

 private:
  double g_a_;
  double g_b_;
};

/// One-photon Rabi frequency g sqrt(n + 1).
double one_photon_rabi(double g, int n);

/// Two-photon Rabi frequency sqrt(Omega_a(n_a)^2 + Omega_b(n_b)^2).
double two_photon_rabi(const CouplingConfig& coupling, int n_a, int n_b);

struct SectorAmplitudes {
  int n_a = 0;
  int n_b = 0;
  std::complex<double> c0;  // |0; n_a,   n_b  >
  std::complex<double> c1;  // |1; n_a-1, n_b  >
  std::complex<double> c2;  // |2; n_a-1, n_b+1>

  double norm() const { return std::norm(c0) + std::norm(c1) + std::norm(c2); }
};

/// Closed-form amplitudes for initial ket |0; n_a, n_b>. With
/// Omega_A = g_a sqrt(n_a), Omega_B = g_b sqrt(n_b + 1), Omega^2 = Omega_A^2 + Omega_B^2:
///   c0 = (Omega_B^2 + Omega_A^2 cos Omega t) / Omega^2
///   c1 = -i (Omega_A / Omega) sin Omega t
///   c2 = Omega_A Omega_B (cos Omega t - 1) / Omega^2
SectorAmplitudes sector_amplitudes(int n_a, int n_b, const CouplingConfig& coupling, double tau);

struct LevelProbabilities {
  double p0 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
};

/// Level populations from the population formulas directly (three-term
/// expression for P0), independent of the amplitude route.
LevelProbabilities sector_populations(int n_a, int n_b, const CouplingConfig& coupling, double tau);

struct AtomFieldKet {
  int level = 0;
  int n_a = 0;
  int n_b = 0;

  auto operator<=>(const AtomFieldKet&) const = default;
};

/// Sparse atom-field state at time tau.
struct AtomFieldState {
  double tau = 0.0;
  std::map<AtomFieldKet, std::complex<double>> amplitudes;

  double norm() const;
  std::complex<double> amplitude(int level, int n_a, int n_b) const;
};

/// Excitation charge n_a + n_b + [level == 1], conserved by the interaction.
int excitation_charge(const AtomFieldKet& ket);

/// Weighted direct sum of the per-sector solutions. Kets whose amplitude is
/// exactly zero (empty levels at tau = 0, the frozen n_a = 0 sector) are not
/// stored.
AtomFieldState evolve(const TwoModeAmplitudes& initial, const CouplingConfig& coupling, double tau);

struct OccupationTraces {
  ObservableTrace p0;
  ObservableTrace p1;
  ObservableTrace p2;
};

/// Atomic level populations averaged over the initial photon distribution.
/// Throws DomainError unless the grid is strictly increasing.
OccupationTraces atomic_occupations(const TwoModeAmplitudes& initial, const CouplingConfig& coupling,
                                    std::span<const double> tau_grid);

/// P(n_a, n_b) = sum over levels of |amplitude|^2, on a table spanning every
/// populated ket.
JointPhotonDistribution joint_distribution_at(const AtomFieldState& state);

std::pair<std::vector<double>, std::vector<double>> marginals_at(const AtomFieldState& state);

struct TimeStatistics {
  ObservableTrace g2;
  ObservableTrace q_a;
  ObservableTrace q_b;
  ObservableTrace mean_a;
  ObservableTrace mean_b;
};

TimeStatistics time_statistics(const TwoModeAmplitudes& initial, const CouplingConfig& coupling,
                               std::span<const double> tau_grid);

/// Dominant revival spacing of a collapse-revival trace, in tau units.
///
/// Uses the biased autocorrelation r(k) of the mean-subtracted trace on lags
/// up to half its length. The positive local maxima of r past the zero-lag
/// lobe form an envelope; if that envelope dips and rises again by at least
/// `prominence`, the lag of the first envelope maximum after the rise is the
/// revival period. Otherwise the trace is a plain oscillation and the first
/// peak lag is returned. The returned peak must exceed `significance`.
/// Undefined for constant traces, traces with undefined entries, or when
/// no peak clears `significance`. The grid must be uniform.
std::optional<double> revival_period(const ObservableTrace& trace, double significance = 0.1,
                                     double prominence = 0.05);

}  // namespace kerrcs
