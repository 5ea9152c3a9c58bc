#pragma once

// Atom-field entanglement through the von Neumann entropy of the 3x3 atomic
// reduced density matrix. The joint state is pure, so the atomic and field
// entropies coincide.

#include "kerrcs/dynamics.hpp"

#include <Eigen/Dense>

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

namespace kerrcs {

/// Atomic reduced density matrix, rows/columns ordered by level 0, 1, 2.
class DensityMatrix3 {
 public:
  DensityMatrix3() = default;
  explicit DensityMatrix3(const Eigen::Matrix3cd& rho) : rho_(rho) {}

  const Eigen::Matrix3cd& matrix() const noexcept { return rho_; }
  std::complex<double> operator()(int i, int j) const { return rho_(i, j); }

  /// Throws IntegrityError unless Hermitian within 1e-12 and unit trace
  /// within 1e-10.
  void validate() const;

 private:
  Eigen::Matrix3cd rho_ = Eigen::Matrix3cd::Zero();
};

/// Partial trace of |psi><psi| over the field: rho_ij = sum_k psi_i(k) psi_j(k)^*.
DensityMatrix3 atomic_density_matrix(const AtomFieldState& state);

/// The same matrix assembled sector by sector from the initial field
/// amplitudes A and the closed-form C_i, pairing the kets that share a field
/// configuration:
///   level 0 at (n_a, n_b)  <- sector (n_a,   n_b  ) via C0
///   level 1 at (n_a, n_b)  <- sector (n_a+1, n_b  ) via C1
///   level 2 at (n_a, n_b)  <- sector (n_a+1, n_b-1) via C2
DensityMatrix3 assemble_atomic_density_matrix(const TwoModeAmplitudes& initial,
                                              const CouplingConfig& coupling, double tau);

/// Characteristic polynomial lambda^3 + b0 lambda^2 + b1 lambda + b2.
struct CubicCoefficients {
  double b0 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
};

CubicCoefficients characteristic_coefficients(const DensityMatrix3& rho);

struct Spectrum3 {
  std::array<double, 3> values{};  // descending
  bool fallback = false;           // iterative eigensolver was used
};

/// Closed-form trigonometric roots. A near-degenerate spectrum switches to the
/// iterative Hermitian solver: radicand b0^2 - 3 b1 below 1e-14 (three equal
/// roots) or an arccos argument within 1e-8 of +-1 (a double root).
Spectrum3 cubic_eigenvalues(const DensityMatrix3& rho);

/// Same inputs through the iterative Hermitian eigensolver only.
std::array<double, 3> iterative_eigenvalues(const DensityMatrix3& rho);

/// -sum lambda ln lambda with 0 ln 0 = 0. Eigenvalues in [-1e-8, 1e-14] are
/// taken as zero; anything more negative throws IntegrityError.
double entropy_from_eigenvalues(std::span<const double> eigenvalues);

/// Spectrum of rho / tr(rho), then the entropy.
double von_neumann_entropy(const DensityMatrix3& rho);

struct EntropyPoint {
  double tau = 0.0;
  double entropy = 0.0;
  Spectrum3 spectrum;
};

std::vector<EntropyPoint> entropy_trace(const TwoModeAmplitudes& initial,
                                        const CouplingConfig& coupling,
                                        std::span<const double> tau_grid);

/// Columns (tau, entropy, lambda1, lambda2, lambda3, fallback_flag).
void write_entropy_csv(std::ostream& os, std::span<const EntropyPoint> points);

}  // namespace kerrcs
