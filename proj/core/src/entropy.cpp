#include "kerrcs/entropy.hpp"

#include "kerrcs/csv.hpp"
#include "kerrcs/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>

namespace kerrcs {

void DensityMatrix3::validate() const {
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw IntegrityError("atomic density matrix is not Hermitian");
  const auto trace = rho_.trace();
  if (std::abs(trace.real() - 1.0) > 1e-10 || std::abs(trace.imag()) > 1e-12)
    throw IntegrityError("atomic density matrix does not have unit trace");
}

DensityMatrix3 atomic_density_matrix(const AtomFieldState& state) {
  // Group amplitudes by field configuration, then sum psi_i(k) psi_j(k)^*.
  std::map<std::pair<int, int>, std::array<std::complex<double>, 3>> by_field;
  for (const auto& [ket, amp] : state.amplitudes) {
    if (ket.level < 0 || ket.level > 2) throw IntegrityError("atomic level outside {0, 1, 2}");
    by_field[{ket.n_a, ket.n_b}][static_cast<std::size_t>(ket.level)] += amp;
  }
  Eigen::Matrix3cd rho = Eigen::Matrix3cd::Zero();
  for (const auto& [field, psi] : by_field) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        rho(i, j) += psi[static_cast<std::size_t>(i)] * std::conj(psi[static_cast<std::size_t>(j)]);
  }
  return DensityMatrix3(rho);
}

DensityMatrix3 assemble_atomic_density_matrix(const TwoModeAmplitudes& initial,
                                              const CouplingConfig& coupling, double tau) {
  const int N = initial.total_photons();
  // Initial field amplitude A(n_a, n_b); zero off the antidiagonal.
  auto field = [&](int n_a, int n_b) -> std::complex<double> {
    if (n_a < 0 || n_b < 0 || n_a + n_b != N) return {};
    return initial[n_a];
  };
  std::vector<SectorAmplitudes> sectors;
  sectors.reserve(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) sectors.push_back(sector_amplitudes(n, N - n, coupling, tau));
  auto sector = [&](int n_a, int n_b) -> const SectorAmplitudes* {
    if (n_a < 0 || n_b < 0 || n_a + n_b != N) return nullptr;
    return &sectors[static_cast<std::size_t>(n_a)];
  };

  // Amplitude of |level; n_a, n_b> built from the sector it comes from.
  using Component = std::function<std::complex<double>(int, int)>;
  const std::array<Component, 3> level_amplitude = {
      [&](int n_a, int n_b) {
        const auto* s = sector(n_a, n_b);
        return s ? field(n_a, n_b) * s->c0 : std::complex<double>{};
      },
      [&](int n_a, int n_b) {
        const auto* s = sector(n_a + 1, n_b);
        return s ? field(n_a + 1, n_b) * s->c1 : std::complex<double>{};
      },
      [&](int n_a, int n_b) {
        const auto* s = sector(n_a + 1, n_b - 1);
        return s ? field(n_a + 1, n_b - 1) * s->c2 : std::complex<double>{};
      },
  };

  // Field configurations reachable from sector N: n_a + n_b in {N - 1, N}.
  Eigen::Matrix3cd rho = Eigen::Matrix3cd::Zero();
  for (int n_a = 0; n_a <= N; ++n_a) {
    for (int n_b = std::max(0, N - 1 - n_a); n_b <= N - n_a; ++n_b) {
      std::array<std::complex<double>, 3> psi{};
      for (std::size_t level = 0; level < 3; ++level) psi[level] = level_amplitude[level](n_a, n_b);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          rho(static_cast<int>(i), static_cast<int>(j)) += psi[i] * std::conj(psi[j]);
    }
  }
  return DensityMatrix3(rho);
}

CubicCoefficients characteristic_coefficients(const DensityMatrix3& rho) {
  const auto& m = rho.matrix();
  const double r11 = m(0, 0).real();
  const double r22 = m(1, 1).real();
  const double r33 = m(2, 2).real();
  CubicCoefficients c;
  c.b0 = -(r11 + r22 + r33);
  c.b1 = r11 * r22 + r11 * r33 + r22 * r33 - (m(0, 1) * m(1, 0)).real() -
         (m(0, 2) * m(2, 0)).real() - (m(1, 2) * m(2, 1)).real();
  c.b2 = -m.determinant().real();
  return c;
}

std::array<double, 3> iterative_eigenvalues(const DensityMatrix3& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(rho.matrix(), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();  // ascending
  return {ev(2), ev(1), ev(0)};
}

Spectrum3 cubic_eigenvalues(const DensityMatrix3& rho) {
  const auto c = characteristic_coefficients(rho);
  const double radicand = c.b0 * c.b0 - 3.0 * c.b1;
  Spectrum3 out;
  if (radicand < 1e-14) {
    out.values = iterative_eigenvalues(rho);
    out.fallback = true;
    return out;
  }
  const double root = std::sqrt(radicand);
  const double argument = (9.0 * c.b0 * c.b1 - 2.0 * c.b0 * c.b0 * c.b0 - 27.0 * c.b2) /
                          (2.0 * radicand * root);
  // A double root puts the argument at +-1, where acos amplifies coefficient
  // roundoff to sqrt(eps) in the split of the pair.
  if (1.0 - std::abs(argument) < 1e-8) {
    out.values = iterative_eigenvalues(rho);
    out.fallback = true;
    return out;
  }
  const double alpha = std::acos(std::clamp(argument, -1.0, 1.0)) / 3.0;
  for (int i = 0; i < 3; ++i) {
    out.values[static_cast<std::size_t>(i)] =
        -c.b0 / 3.0 + (2.0 / 3.0) * root * std::cos(alpha + 2.0 * i * std::numbers::pi / 3.0);
  }
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  return out;
}

double entropy_from_eigenvalues(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double lambda : eigenvalues) {
    if (lambda < -1e-8)
      throw IntegrityError("density matrix eigenvalue " + std::to_string(lambda) +
                           " is negative beyond roundoff");
    // Roots within roundoff of zero count as zero, so pure states give S = 0.
    if (lambda > 1e-14) s -= lambda * std::log(lambda);
  }
  return s;
}

namespace {

// Rescale away the roundoff in the trace so that a pure state has an exact
// unit eigenvalue.
DensityMatrix3 unit_trace(const DensityMatrix3& rho) {
  return DensityMatrix3(rho.matrix() / rho.matrix().trace().real());
}

}  // namespace

double von_neumann_entropy(const DensityMatrix3& rho) {
  const auto spectrum = cubic_eigenvalues(unit_trace(rho));
  return entropy_from_eigenvalues(spectrum.values);
}

std::vector<EntropyPoint> entropy_trace(const TwoModeAmplitudes& initial,
                                        const CouplingConfig& coupling,
                                        std::span<const double> tau_grid) {
  require_increasing_grid(tau_grid);
  std::vector<EntropyPoint> out;
  out.reserve(tau_grid.size());
  for (double t : tau_grid) {
    const auto rho = assemble_atomic_density_matrix(initial, coupling, t);
    rho.validate();
    const auto spectrum = cubic_eigenvalues(unit_trace(rho));
    out.push_back({t, entropy_from_eigenvalues(spectrum.values), spectrum});
  }
  return out;
}

void write_entropy_csv(std::ostream& os, std::span<const EntropyPoint> points) {
  os << "tau,entropy,lambda1,lambda2,lambda3,fallback_flag\n";
  for (const auto& p : points) {
    os << format_number(p.tau) << ',' << format_number(p.entropy) << ','
       << format_number(p.spectrum.values[0]) << ',' << format_number(p.spectrum.values[1]) << ','
       << format_number(p.spectrum.values[2]) << ',' << (p.spectrum.fallback ? 1 : 0) << '\n';
  }
}

}  // namespace kerrcs
