#pragma once

// Two-mode quadratures
//     X1 = (a + a^dag + b + b^dag) / (2 sqrt 2)
//     X2 = (a - a^dag + b - b^dag) / (2 i sqrt 2)
// with [X1, X2] = i/2, so (dX1)^2 (dX2)^2 >= 1/16. Squeezing in X_k iff
// S_k = 4 (dX_k)^2 - 1 < 0.

#include "kerrcs/dynamics.hpp"

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

namespace kerrcs {

/// Field moments entering the quadrature variances; the atom is traced out.
struct LadderExpectations {
  std::complex<double> a;
  std::complex<double> b;
  std::complex<double> a2;
  std::complex<double> b2;
  std::complex<double> ab;
  std::complex<double> adag_b;
  double n_a = 0.0;
  double n_b = 0.0;
};

/// Exact expectations on the sparse amplitude map.
LadderExpectations ladder_expectations(const AtomFieldState& state);

struct QuadratureReport {
  double var_x1 = 0.0;
  double var_x2 = 0.0;
  double s_x1 = 0.0;
  double s_x2 = 0.0;
  double uncertainty_product = 0.0;
};

QuadratureReport quadrature_report(const AtomFieldState& state);

/// Assembles the report from precomputed moments. Throws IntegrityError if a
/// variance comes out negative beyond roundoff.
QuadratureReport quadrature_report(const LadderExpectations& moments);

struct SqueezingPoint {
  double tau = 0.0;
  QuadratureReport report;
};

std::vector<SqueezingPoint> squeezing_trace(const TwoModeAmplitudes& initial,
                                            const CouplingConfig& coupling,
                                            std::span<const double> tau_grid);

/// Columns (tau, s_x1, s_x2, var_x1, var_x2, product).
void write_squeezing_csv(std::ostream& os, std::span<const SqueezingPoint> points);

}  // namespace kerrcs
