#include "oracles.hpp"

#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <cmath>

namespace kerrcs::oracle {

Matrix annihilation(int cutoff) {
  Matrix a = Matrix::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Matrix TwoModeSpace::a() const {
  return Eigen::kroneckerProduct(annihilation(cutoff), Matrix::Identity(cutoff + 1, cutoff + 1)).eval();
}

Matrix TwoModeSpace::b() const {
  return Eigen::kroneckerProduct(Matrix::Identity(cutoff + 1, cutoff + 1), annihilation(cutoff)).eval();
}

Matrix deformed_j_plus(const TwoModeSpace& space, double kappa_tilde) {
  const Matrix b = space.b();
  const Matrix n_b = b.adjoint() * b;
  Matrix f = Matrix::Zero(space.dim(), space.dim());
  for (int i = 0; i < space.dim(); ++i) f(i, i) = std::sqrt(1.0 + kappa_tilde * n_b(i, i).real());
  return f * space.a().adjoint() * b;
}

std::vector<std::complex<double>> ckncs_by_series(int N, std::complex<double> mu, double kappa_tilde) {
  const TwoModeSpace space{N};
  const Matrix j_plus = deformed_j_plus(space, kappa_tilde);
  Vector term = Vector::Zero(space.dim());
  term(space.index(0, N)) = 1.0;
  Vector sum = term;
  for (int k = 1; k < 10000; ++k) {
    term = (mu / static_cast<double>(k)) * (j_plus * term);
    sum += term;
    if (term.norm() < 1e-16 * std::max(1.0, sum.norm())) break;
  }
  sum /= sum.norm();
  std::vector<std::complex<double>> out(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) out[static_cast<std::size_t>(n)] = sum(space.index(n, N - n));
  return out;
}

Matrix AtomFieldSpace::embed_field(const Matrix& field_op) const {
  return Eigen::kroneckerProduct(Matrix::Identity(3, 3), field_op).eval();
}

Matrix AtomFieldSpace::sigma(int i, int j) const {
  Matrix s = Matrix::Zero(3, 3);
  s(i, j) = 1.0;
  return Eigen::kroneckerProduct(s, Matrix::Identity(modes.dim(), modes.dim())).eval();
}

Matrix interaction_hamiltonian(const AtomFieldSpace& space, double g_a, double g_b) {
  const Matrix a = space.embed_field(space.modes.a());
  const Matrix b = space.embed_field(space.modes.b());
  const Matrix h_a = space.sigma(1, 0) * a + a.adjoint() * space.sigma(0, 1);
  const Matrix h_b = space.sigma(1, 2) * b + b.adjoint() * space.sigma(2, 1);
  return g_a * h_a + g_b * h_b;
}

Vector product_initial_state(const AtomFieldSpace& space,
                             const std::vector<std::complex<double>>& field_amplitudes) {
  const int N = static_cast<int>(field_amplitudes.size()) - 1;
  Vector psi = Vector::Zero(space.dim());
  for (int n = 0; n <= N; ++n) psi(space.index(0, n, N - n)) = field_amplitudes[static_cast<std::size_t>(n)];
  return psi;
}

Vector evolve_dense(const AtomFieldSpace& space, double g_a, double g_b, const Vector& psi0, double tau) {
  const Matrix h = interaction_hamiltonian(space, g_a, g_b);
  const Matrix u = (std::complex<double>(0.0, -tau / g_a) * h).exp();
  return u * psi0;
}

Eigen::Matrix3cd partial_trace_over_field(const AtomFieldSpace& space, const Vector& psi) {
  const int fd = space.modes.dim();
  Eigen::Matrix3cd rho = Eigen::Matrix3cd::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < fd; ++k) rho(i, j) += psi(i * fd + k) * std::conj(psi(j * fd + k));
  return rho;
}

std::vector<double> field_reduced_eigenvalues(const AtomFieldSpace& space, const Vector& psi) {
  const int fd = space.modes.dim();
  Matrix rho_f = Matrix::Zero(fd, fd);
  for (int k = 0; k < fd; ++k)
    for (int l = 0; l < fd; ++l)
      for (int level = 0; level < 3; ++level)
        rho_f(k, l) += psi(level * fd + k) * std::conj(psi(level * fd + l));
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_f, Eigen::EigenvaluesOnly);
  std::vector<double> out;
  for (int i = fd - 1; i >= 0; --i) out.push_back(solver.eigenvalues()(i));
  return out;
}

std::vector<std::array<std::complex<double>, 3>> integrate_sector(int n_a, int n_b, double g_ratio,
                                                                  const std::vector<double>& checkpoints,
                                                                  double max_step) {
  using State = std::array<std::complex<double>, 3>;
  const double omega_a = std::sqrt(static_cast<double>(n_a));
  const double omega_b = g_ratio * std::sqrt(n_b + 1.0);
  const std::complex<double> minus_i(0.0, -1.0);
  auto rhs = [&](const State& c, State& dc, double) {
    dc[0] = minus_i * omega_a * c[1];
    dc[1] = minus_i * (omega_a * c[0] + omega_b * c[2]);
    dc[2] = minus_i * omega_b * c[1];
  };
  boost::numeric::odeint::runge_kutta4<State, double, State, double,
                                       boost::numeric::odeint::array_algebra>
      stepper;
  State c{1.0, 0.0, 0.0};
  double t = 0.0;
  std::vector<State> out;
  for (double target : checkpoints) {
    const double span = target - t;
    const long steps = std::max(1L, static_cast<long>(std::ceil(span / max_step)));
    const double dt = span / static_cast<double>(steps);
    for (long s = 0; s < steps; ++s) stepper.do_step(rhs, c, t + dt * static_cast<double>(s), dt);
    t = target;
    out.push_back(c);
  }
  return out;
}

std::complex<double> expectation(const Matrix& op, const Vector& psi) { return psi.dot(op * psi); }

}  // namespace kerrcs::oracle
