#pragma once

// Cross-Kerr nonlinear coherent states
//
//     |mu>_kappa = C^-1 exp(mu J+) |0, N>
//                = C^-1 sum_n sqrt(binom(N, n)) W_n mu^n |n, N-n>,
//
// which live entirely on the antidiagonal n_a + n_b = N.

#include "kerrcs/deformed_algebra.hpp"
#include "kerrcs/photon_distribution.hpp"

#include <complex>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace kerrcs {

struct CkncsParams {
  SectorDimension N{0};
  std::complex<double> mu{0.0, 0.0};
  DeformationParameter kappa{};
  CoefficientConvention convention = CoefficientConvention::OperatorExpansion;
};

/// Normalized amplitudes over |n, N-n>, n = 0..N.
class TwoModeAmplitudes {
 public:
  /// Throws IntegrityError unless amps.size() == N + 1 and the norm is 1
  /// within 1e-12.
  TwoModeAmplitudes(int N, std::vector<std::complex<double>> amps);

  int total_photons() const noexcept { return n_; }
  const std::vector<std::complex<double>>& amplitudes() const noexcept { return amps_; }
  std::complex<double> operator[](int n) const { return amps_.at(static_cast<std::size_t>(n)); }
  double probability(int n) const { return std::norm((*this)[n]); }

 private:
  int n_;
  std::vector<std::complex<double>> amps_;
};

TwoModeAmplitudes build_ckncs(const CkncsParams& params);

/// p(n_a, n_b) = |amps[n_a]|^2 delta(n_b, N - n_a) on the (N+1)x(N+1) table.
JointPhotonDistribution joint_distribution(const TwoModeAmplitudes& state);

/// p^a(n) = |amps[n]|^2; p^b(n) = p^a(N - n).
std::vector<double> marginal_distribution(const TwoModeAmplitudes& state, Mode mode);

/// Radial quadrature settings for the resolution-of-identity integrals.
struct QuadratureSpec {
  double tolerance = 1e-10;
  int max_depth = 30;
  /// Use the higher-order rule; for cross-checking convergence of a value.
  bool high_order = false;
};

/// Diagonal elements of (N+1)/pi \int d^2mu m(|mu|^2) |mu><mu| in the sector
/// basis (off-diagonal elements vanish by the angular integral). For
/// kappa~ = 0 the measure is 1/(1+|mu|^2)^2 and every entry is 1; for
/// kappa~ > 0 the ordinary integral is taken with the deformed measure
/// 1/(1+|mu|^2)_kappa^2 and deformed normalization (1+|mu|^2)_kappa^N.
/// Throws ConvergenceError when a radial integral misses its tolerance.
std::vector<double> identity_resolution_diagonal(SectorDimension N, DeformationParameter kappa,
                                                 const QuadratureSpec& quadrature,
                                                 CoefficientConvention convention =
                                                     CoefficientConvention::OperatorExpansion);

/// max_n |diagonal_n - 1|.
double identity_resolution_check(SectorDimension N, DeformationParameter kappa,
                                 const QuadratureSpec& quadrature,
                                 CoefficientConvention convention =
                                     CoefficientConvention::OperatorExpansion);

/// Deformed binomial polynomial (1 + x)_kappa^M = sum_n binom_kappa(M, n) x^n.
double deformed_binomial_polynomial(int M, double x, DeformationParameter kappa,
                                    CoefficientConvention convention);

std::string_view convention_name(CoefficientConvention convention);
/// Accepts "operator" or "literal"; throws DomainError otherwise.
CoefficientConvention parse_convention(std::string_view name);

/// Header line (N, mu_re, mu_im, kappa_tilde, convention) with its values,
/// then rows (n, amp_re, amp_im, probability).
void write_state_csv(std::ostream& os, const CkncsParams& params, const TwoModeAmplitudes& state);

struct StateCsv {
  CkncsParams params;
  std::vector<std::complex<double>> amplitudes;
};

/// Inverse of write_state_csv. Throws DomainError on malformed input.
StateCsv read_state_csv(std::istream& is);

}  // namespace kerrcs
