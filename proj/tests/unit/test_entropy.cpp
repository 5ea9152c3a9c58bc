#include <doctest.h>

#include "kerrcs/entropy.hpp"
#include "kerrcs/errors.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace kerrcs;

namespace {

DensityMatrix3 diag(double a, double b, double c) {
  return DensityMatrix3(Eigen::Vector3cd(a, b, c).asDiagonal());
}

DensityMatrix3 random_density(std::mt19937& rng, int rank) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(3, rank);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < rank; ++j) m(i, j) = {g(rng), g(rng)};
  Eigen::Matrix3cd rho = m * m.adjoint();
  rho /= rho.trace();
  return DensityMatrix3(rho);
}

TwoModeAmplitudes state(int N, std::complex<double> mu, double kappa) {
  return build_ckncs({SectorDimension(N), mu, DeformationParameter(kappa), {}});
}

}  // namespace

TEST_SUITE("entropy") {
  TEST_CASE("simple spectra") {
    const auto pure = cubic_eigenvalues(diag(1, 0, 0));
    CHECK(pure.values[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(pure.values[1]) < 1e-15);
    CHECK(std::abs(pure.values[2]) < 1e-15);

    const auto split = cubic_eigenvalues(diag(0.5, 0.3, 0.2));
    CHECK_FALSE(split.fallback);
    CHECK(split.values[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(split.values[1] == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(split.values[2] == doctest::Approx(0.2).epsilon(1e-14));

    const auto mixed = cubic_eigenvalues(diag(1.0 / 3, 1.0 / 3, 1.0 / 3));
    CHECK(mixed.fallback);
    for (double v : mixed.values) CHECK(v == doctest::Approx(1.0 / 3).epsilon(1e-15));
  }

  TEST_CASE("characteristic coefficients") {
    std::mt19937 rng(1);
    for (int i = 0; i < 20; ++i) CHECK(characteristic_coefficients(random_density(rng, 3)).b0 ==
                                       doctest::Approx(-1.0).epsilon(1e-14));
    const auto c = characteristic_coefficients(diag(0.5, 0.3, 0.2));
    CHECK(c.b1 == doctest::Approx(0.15 + 0.1 + 0.06).epsilon(1e-15));
    CHECK(c.b2 == doctest::Approx(-0.03).epsilon(1e-15));
  }

  TEST_CASE("closed form against the iterative solver on random matrices") {
    std::mt19937 rng(2024);
    int fallbacks = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto rho = random_density(rng, 1 + i % 3);
      const auto closed = cubic_eigenvalues(rho);
      const auto iter = iterative_eigenvalues(rho);
      fallbacks += closed.fallback;
      double sum = 0.0;
      for (std::size_t k = 0; k < 3; ++k) {
        CHECK(std::abs(closed.values[k] - iter[k]) < 1e-9);
        sum += closed.values[k];
      }
      CHECK(std::abs(sum - 1.0) < 1e-10);
      CHECK(closed.values[0] >= closed.values[1]);
      CHECK(closed.values[1] >= closed.values[2]);
    }
    CHECK(fallbacks >= 300);  // every rank-1 draw has a double root at 0
    CHECK(fallbacks < 400);
  }

  TEST_CASE("entropy values") {
    CHECK(von_neumann_entropy(diag(1, 0, 0)) == 0.0);
    CHECK(von_neumann_entropy(diag(1.0 / 3, 1.0 / 3, 1.0 / 3)) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(von_neumann_entropy(diag(0.5, 0.5, 0)) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    const std::array<double, 3> roundoff{1.0, -5e-9, 0.0};
    CHECK(entropy_from_eigenvalues(roundoff) == 0.0);
    const std::array<double, 3> broken{1.1, -0.1, 0.0};
    CHECK_THROWS_AS(entropy_from_eigenvalues(broken), IntegrityError);
  }

  TEST_CASE("density matrix validation") {
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
    m(0, 0) = 1.0;
    m(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityMatrix3(m).validate(), IntegrityError);
    CHECK_THROWS_AS(diag(0.5, 0.2, 0.2).validate(), IntegrityError);
    CHECK_NOTHROW(diag(0.5, 0.3, 0.2).validate());
  }

  TEST_CASE("initial and frozen states are pure ground states") {
    const auto expected = diag(1, 0, 0).matrix();
    const auto init = state(5, 0.7, 0.3);
    CHECK((assemble_atomic_density_matrix(init, CouplingConfig::from_ratio(1.0), 0.0).matrix() - expected)
              .cwiseAbs()
              .maxCoeff() < 1e-15);
    const auto vac = state(5, 0.0, 0.3);
    for (double tau : {0.5, 11.0}) {
      CHECK((assemble_atomic_density_matrix(vac, CouplingConfig::from_ratio(2.0), tau).matrix() - expected)
                .cwiseAbs()
                .maxCoeff() == 0.0);
      CHECK((atomic_density_matrix(evolve(vac, CouplingConfig::from_ratio(2.0), tau)).matrix() - expected)
                .cwiseAbs()
                .maxCoeff() == 0.0);
    }
  }

  TEST_CASE("sector assembly, sparse partial trace and dense partial trace agree") {
    for (int N : {1, 2, 6, 10})
      for (double tau : {0.3, 1.0, 9.0}) {
        const auto init = state(N, {0.6, -0.7}, 0.25);
        const double ratio = 1.5;
        const auto assembled = assemble_atomic_density_matrix(init, CouplingConfig::from_ratio(ratio), tau);
        const auto traced = atomic_density_matrix(evolve(init, CouplingConfig::from_ratio(ratio), tau));
        const oracle::AtomFieldSpace space{{N}};
        const auto psi = oracle::evolve_dense(space, 1.0, ratio,
                                              oracle::product_initial_state(space, init.amplitudes()), tau);
        const auto dense = oracle::partial_trace_over_field(space, psi);
        CHECK((assembled.matrix() - traced.matrix()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((assembled.matrix() - dense).cwiseAbs().maxCoeff() < 1e-12);
        CHECK_NOTHROW(assembled.validate());
      }
  }

  TEST_CASE("atomic and field entropies coincide") {
    for (int N = 1; N <= 6; ++N) {
      const auto init = state(N, 1.0, 0.5);
      const oracle::AtomFieldSpace space{{N}};
      const auto psi0 = oracle::product_initial_state(space, init.amplitudes());
      for (double tau : {0.7, 3.0}) {
        const auto psi = oracle::evolve_dense(space, 1.0, 2.0, psi0, tau);
        const auto field = oracle::field_reduced_eigenvalues(space, psi);
        // Schmidt rank at most 3.
        for (std::size_t i = 3; i < field.size(); ++i) CHECK(std::abs(field[i]) < 1e-12);
        const double s_field = entropy_from_eigenvalues(std::span(field).first(3));
        const double s_atom =
            von_neumann_entropy(assemble_atomic_density_matrix(init, CouplingConfig::from_ratio(2.0), tau));
        CHECK(std::abs(s_field - s_atom) < 1e-9);
      }
    }
  }

  TEST_CASE("entropy traces") {
    const auto grid = make_tau_grid(50.0, 1001);
    for (double ratio : {1.0, 2.0})
      for (double k : {0.0, 0.1, 1.0}) {
        const auto init = state(10, 1.0, k);
        const auto coupling = CouplingConfig::from_ratio(ratio);
        const auto trace = entropy_trace(init, coupling, grid);
        CHECK(trace.front().entropy == 0.0);
        for (std::size_t i = 0; i < trace.size(); i += 10) {
          const auto& p = trace[i];
          CHECK(p.entropy >= 0.0);
          CHECK(p.entropy <= std::log(3.0) + 1e-12);
          const auto iter = iterative_eigenvalues(assemble_atomic_density_matrix(init, coupling, p.tau));
          for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(p.spectrum.values[j] - iter[j]) < 1e-9);
        }
      }
  }

  TEST_CASE("entropy CSV") {
    const std::vector<EntropyPoint> points{{0.0, 0.0, cubic_eigenvalues(diag(1, 0, 0))},
                                           {0.5, 0.0, cubic_eigenvalues(diag(0.5, 0.3, 0.2))},
                                           {1.0, std::log(3.0), cubic_eigenvalues(diag(1.0 / 3, 1.0 / 3, 1.0 / 3))}};
    std::ostringstream out;
    write_entropy_csv(out, points);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "tau,entropy,lambda1,lambda2,lambda3,fallback_flag");
    std::getline(in, line);
    CHECK(line.substr(0, 6) == "0,0,1,");
    CHECK(line.back() == '1');
    std::getline(in, line);
    CHECK(line.back() == '0');
    std::getline(in, line);
    CHECK(line.back() == '1');
  }
}
