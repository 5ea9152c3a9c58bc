#pragma once

// Cross-Kerr deformation of the two-mode oscillator and of the Schwinger
// su(2) realization.
//
// The cross-Kerr spectrum  w_a n_a + w_b n_b + (kappa/2) n_a n_b  is
// reproduced by a mode-a oscillator deformed by
//
//     f(kappa~, n_b) = sqrt(1 + kappa~ n_b),   kappa~ = kappa / (2 w_a),
//
// so that A = a f(n_b). The deformed generators act on the sector of total
// photon number N, spanned by |n, N-n>, n = 0..N:
//
//     J+ = f(n_b) a^dag b,   J- = b^dag a f(n_b),   J0 = (n_a - n_b) / 2.

#include <Eigen/Dense>

#include <compare>
#include <complex>
#include <map>

namespace kerrcs {

/// Dimensionless cross-Kerr strength kappa~ = kappa / (2 omega_a); kappa~ >= 0.
class DeformationParameter {
 public:
  constexpr DeformationParameter() = default;
  /// Throws DomainError for negative or non-finite values.
  explicit DeformationParameter(double kappa_tilde);

  constexpr double value() const noexcept { return value_; }
  constexpr bool undeformed() const noexcept { return value_ == 0.0; }

 private:
  double value_ = 0.0;
};

/// Total photon number N of an su(2) sector; the sector has N + 1 kets.
class SectorDimension {
 public:
  /// Throws DomainError for N < 0.
  explicit SectorDimension(int total_photons);

  constexpr int total() const noexcept { return n_; }
  constexpr int kets() const noexcept { return n_ + 1; }

 private:
  int n_;
};

/// How the deformed weight W_n of the ket |n, N-n> is formed.
///
/// OperatorExpansion expands exp(mu J+)|0,N> exactly:
///     W_n = prod_{j=N-n}^{N-1} f(j).
/// LiteralFactorial reads the weight as the f-factorial at n_b = N - n:
///     W_n = prod_{j=1}^{N-n} f(j).
/// Both are 1 for every n when kappa~ = 0.
enum class CoefficientConvention { OperatorExpansion, LiteralFactorial };

/// f(kappa~, n_b) = sqrt(1 + kappa~ n_b). Throws DomainError for n_b < 0.
double deformation_value(DeformationParameter kappa, int n_b);

/// prod_{j=1}^{m} f(kappa~, j); 1 for m = 0.
double deformed_factorial(DeformationParameter kappa, int m);

/// log W_n for ket |n, N-n> under `convention`.
double log_weight(int N, int n, DeformationParameter kappa, CoefficientConvention convention);

/// binom(N, n) * W_n^2. Throws DomainError unless 0 <= n <= N.
double deformed_binomial(int N, int n, DeformationParameter kappa, CoefficientConvention convention);

/// Log-domain variant of deformed_binomial, safe for large N and kappa~.
double log_deformed_binomial(int N, int n, DeformationParameter kappa,
                             CoefficientConvention convention);

struct TwoModeKet {
  int n_a = 0;
  int n_b = 0;

  auto operator<=>(const TwoModeKet&) const = default;
};

/// Sparse superposition of two-mode Fock kets.
using TwoModeKetVector = std::map<TwoModeKet, std::complex<double>>;

enum class LadderDirection { Lower, Raise };

/// Applies A = a f(n_b) (Lower) or A^dag = f(n_b) a^dag (Raise) ket-wise.
/// Lowering the mode-a vacuum drops the ket; exact zeros are not stored.
TwoModeKetVector deformed_ladder_apply(LadderDirection direction, DeformationParameter kappa,
                                       const TwoModeKetVector& state);

/// Dense (N+1)x(N+1) operator on the sector basis, ordered by n ascending.
using OperatorMatrix = Eigen::MatrixXd;

struct Su2Generators {
  OperatorMatrix j_plus;
  OperatorMatrix j_minus;
  OperatorMatrix j_zero;
};

/// Deformed su(2) generators on sector N. In this basis all entries are real:
/// J+ is strictly lower-bidiagonal (raises n), J- = J+^T, J0 diagonal.
Su2Generators su2_generators(SectorDimension N, DeformationParameter kappa);

/// A B - B A.
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

/// Largest deviation over the sector kets between the deformed-oscillator
/// spectrum  w_a f^2 n_a + w_b n_b  and the cross-Kerr spectrum
/// w_a n_a + w_b n_b + (kappa/2) n_a n_b  with kappa = 2 w_a kappa~.
/// Throws DomainError unless omega_a > 0.
double spectrum_check(SectorDimension N, DeformationParameter kappa, double omega_a, double omega_b);

}  // namespace kerrcs
