#include "kerrcs/deformed_algebra.hpp"

#include "kerrcs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kerrcs {

DeformationParameter::DeformationParameter(double kappa_tilde) : value_(kappa_tilde) {
  if (!std::isfinite(kappa_tilde) || kappa_tilde < 0.0)
    throw DomainError("kappa_tilde must be finite and >= 0, got " + std::to_string(kappa_tilde));
}

SectorDimension::SectorDimension(int total_photons) : n_(total_photons) {
  if (total_photons < 0) throw DomainError("sector photon number N must be >= 0");
}

double deformation_value(DeformationParameter kappa, int n_b) {
  if (n_b < 0) throw DomainError("n_b must be >= 0");
  return std::sqrt(1.0 + kappa.value() * n_b);
}

double deformed_factorial(DeformationParameter kappa, int m) {
  if (m < 0) throw DomainError("deformed factorial needs m >= 0");
  double out = 1.0;
  for (int j = 1; j <= m; ++j) out *= deformation_value(kappa, j);
  return out;
}

namespace {

// log f(j) = 0.5 log1p(kappa~ j); accurate for tiny kappa~.
double log_f(double kappa, int j) { return 0.5 * std::log1p(kappa * j); }

double log_binomial(int N, int n) {
  return std::lgamma(N + 1.0) - std::lgamma(n + 1.0) - std::lgamma(N - n + 1.0);
}

}  // namespace

double log_weight(int N, int n, DeformationParameter kappa, CoefficientConvention convention) {
  if (n < 0 || n > N) throw DomainError("ket index n must lie in [0, N]");
  if (kappa.undeformed()) return 0.0;
  int lo = 0;
  int hi = -1;
  switch (convention) {
    case CoefficientConvention::OperatorExpansion:
      lo = N - n;
      hi = N - 1;
      break;
    case CoefficientConvention::LiteralFactorial:
      lo = 1;
      hi = N - n;
      break;
  }
  double sum = 0.0;
  for (int j = lo; j <= hi; ++j) sum += log_f(kappa.value(), j);
  return sum;
}

double log_deformed_binomial(int N, int n, DeformationParameter kappa,
                             CoefficientConvention convention) {
  if (n < 0 || n > N) throw DomainError("deformed binomial needs 0 <= n <= N");
  return log_binomial(N, n) + 2.0 * log_weight(N, n, kappa, convention);
}

double deformed_binomial(int N, int n, DeformationParameter kappa, CoefficientConvention convention) {
  if (n < 0 || n > N) throw DomainError("deformed binomial needs 0 <= n <= N");
  // Exact integer binomial where it is representable, so kappa~ = 0 is exact.
  double binom = 1.0;
  for (int k = 1; k <= std::min(n, N - n); ++k) binom = binom * (N - std::min(n, N - n) + k) / k;
  return std::round(binom) * std::exp(2.0 * log_weight(N, n, kappa, convention));
}

TwoModeKetVector deformed_ladder_apply(LadderDirection direction, DeformationParameter kappa,
                                       const TwoModeKetVector& state) {
  TwoModeKetVector out;
  for (const auto& [ket, amp] : state) {
    if (ket.n_a < 0 || ket.n_b < 0) throw DomainError("negative occupation in ket");
    const double f = deformation_value(kappa, ket.n_b);
    if (direction == LadderDirection::Lower) {
      if (ket.n_a == 0) continue;
      out[{ket.n_a - 1, ket.n_b}] += amp * std::sqrt(static_cast<double>(ket.n_a)) * f;
    } else {
      out[{ket.n_a + 1, ket.n_b}] += amp * std::sqrt(ket.n_a + 1.0) * f;
    }
  }
  return out;
}

Su2Generators su2_generators(SectorDimension N, DeformationParameter kappa) {
  const int total = N.total();
  const int dim = N.kets();
  Su2Generators g{OperatorMatrix::Zero(dim, dim), OperatorMatrix::Zero(dim, dim),
                  OperatorMatrix::Zero(dim, dim)};
  for (int n = 0; n < dim; ++n) {
    g.j_zero(n, n) = (2.0 * n - total) / 2.0;
    if (n < total) {
      // J+ |n, N-n> = f(N-n-1) sqrt(n+1) sqrt(N-n) |n+1, N-n-1>
      const double element = deformation_value(kappa, total - n - 1) *
                              std::sqrt((n + 1.0) * static_cast<double>(total - n));
      g.j_plus(n + 1, n) = element;
    }
  }
  g.j_minus = g.j_plus.transpose();
  return g;
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) { return a * b - b * a; }

double spectrum_check(SectorDimension N, DeformationParameter kappa, double omega_a, double omega_b) {
  if (!(omega_a > 0.0)) throw DomainError("omega_a must be positive");
  const double kerr = 2.0 * omega_a * kappa.value();
  double worst = 0.0;
  for (int n_a = 0; n_a <= N.total(); ++n_a) {
    const int n_b = N.total() - n_a;
    const double f = deformation_value(kappa, n_b);
    const double deformed = omega_a * f * f * n_a + omega_b * n_b;
    const double cross_kerr = omega_a * n_a + omega_b * n_b + 0.5 * kerr * n_a * n_b;
    worst = std::max(worst, std::abs(deformed - cross_kerr));
  }
  return worst;
}

}  // namespace kerrcs
