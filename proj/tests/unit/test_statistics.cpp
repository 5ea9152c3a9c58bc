#include <doctest.h>

#include "kerrcs/coherent_states.hpp"
#include "kerrcs/errors.hpp"
#include "kerrcs/statistics.hpp"

#include <cmath>
#include <sstream>

using namespace kerrcs;

namespace {

JointPhotonDistribution ckncs_table(int N, std::complex<double> mu, double kappa) {
  return joint_distribution(build_ckncs({SectorDimension(N), mu, DeformationParameter(kappa), {}}));
}

// Product of two Poissonians truncated where the tail falls below 1e-18 and
// renormalized.
JointPhotonDistribution poisson_table(double mean_a, double mean_b, int cutoff) {
  auto poisson = [cutoff](double m) {
    std::vector<double> p(static_cast<std::size_t>(cutoff) + 1);
    double sum = 0.0;
    for (int n = 0; n <= cutoff; ++n) sum += p[static_cast<std::size_t>(n)] = std::exp(n * std::log(m) - m - std::lgamma(n + 1.0));
    for (auto& v : p) v /= sum;
    return p;
  };
  const auto pa = poisson(mean_a);
  const auto pb = poisson(mean_b);
  std::vector<std::vector<double>> table(pa.size(), std::vector<double>(pb.size()));
  for (std::size_t i = 0; i < pa.size(); ++i)
    for (std::size_t j = 0; j < pb.size(); ++j) table[i][j] = pa[i] * pb[j];
  return {std::move(table), "poisson"};
}

}  // namespace

TEST_SUITE("statistics") {
  TEST_CASE("table validation") {
    CHECK_THROWS_AS(JointPhotonDistribution({{0.5, 0.6}}, "x"), IntegrityError);
    CHECK_THROWS_AS(JointPhotonDistribution({{1.1, -0.1}}, "x"), IntegrityError);
    const JointPhotonDistribution d({{0.25, 0.25}, {0.5, 0.0}}, "x");
    CHECK(d(5, 0) == 0.0);
    CHECK(d.marginal(Mode::A) == std::vector<double>{0.5, 0.5});
    CHECK(d.marginal(Mode::B) == std::vector<double>{0.75, 0.25});
  }

  TEST_CASE("means") {
    const auto vac = mean_occupations(ckncs_table(7, 0.0, 0.4));
    CHECK(vac.a == 0.0);
    CHECK(vac.b == 7.0);
    const auto sym = mean_occupations(ckncs_table(2, 1.0, 0.0));
    CHECK(sym.a == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sym.b == doctest::Approx(1.0).epsilon(1e-15));
    const auto deformed = mean_occupations(ckncs_table(2, 1.0, 1.0));
    CHECK(deformed.a == doctest::Approx(8.0 / 7).epsilon(1e-14));
    CHECK(deformed.b == doctest::Approx(6.0 / 7).epsilon(1e-14));
  }

  TEST_CASE("cross-correlation") {
    for (double k : {0.0, 0.5, 3.0}) CHECK(*cross_correlation(ckncs_table(1, 0.7, k)) == 0.0);
    CHECK(*cross_correlation(poisson_table(1.3, 2.1, 40)) == doctest::Approx(1.0).epsilon(1e-12));
    const auto g2 = cross_correlation(ckncs_table(10, 0.1, 0.1));
    REQUIRE(g2);
    CHECK(*g2 > 0.0);
    CHECK(*g2 < 1.0);
    CHECK_FALSE(cross_correlation(ckncs_table(5, 0.0, 0.1)));
  }

  TEST_CASE("cross-correlation by brute-force summation") {
    const auto s = build_ckncs({SectorDimension(10), 0.1, DeformationParameter(0.1), {}});
    double na = 0.0, nb = 0.0, nab = 0.0;
    for (int n = 0; n <= 10; ++n) {
      na += n * s.probability(n);
      nb += (10 - n) * s.probability(n);
      nab += n * (10 - n) * s.probability(n);
    }
    CHECK(*cross_correlation(joint_distribution(s)) == doctest::Approx(nab / (na * nb)).epsilon(1e-13));
  }

  TEST_CASE("Mandel parameter") {
    CHECK(*mandel_parameter(ckncs_table(4, 0.0, 0.2), Mode::B) == -1.0);
    CHECK_FALSE(mandel_parameter(ckncs_table(4, 0.0, 0.2), Mode::A));
    const auto pois = poisson_table(2.5, 0.8, 60);
    CHECK(std::abs(*mandel_parameter(pois, Mode::A)) < 1e-12);
    CHECK(std::abs(*mandel_parameter(pois, Mode::B)) < 1e-12);
    CHECK(*mandel_parameter(ckncs_table(2, 1.0, 0.0), Mode::A) == doctest::Approx(-0.5).epsilon(1e-14));
  }

  TEST_CASE("mode statistics") {
    const auto s = mode_statistics(ckncs_table(2, 1.0, 0.0), Mode::B);
    CHECK(s.mean == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.variance == doctest::Approx(0.5).epsilon(1e-15));
  }

  TEST_CASE("invariants over CK-NCS families") {
    for (int N = 1; N <= 40; N += 3)
      for (double k : {0.0, 0.1, 1.0, 10.0})
        for (double m : {0.1, 0.5, 1.0, 2.0}) {
          const auto d = ckncs_table(N, std::polar(m, 0.9), k);
          const auto means = mean_occupations(d);
          CHECK(means.a + means.b == doctest::Approx(N).epsilon(1e-13));
          CHECK(*cross_correlation(d) <= 1.0 + 1e-12);
          CHECK(*cross_correlation(d) ==
                doctest::Approx(*cross_correlation(ckncs_table(N, m, k))).epsilon(1e-12));
          for (auto mode : {Mode::A, Mode::B}) {
            const auto st = mode_statistics(d, mode);
            CHECK(st.variance >= 0.0);
            CHECK(*st.mandel_q >= -1.0 - 1e-12);
          }
        }
  }

  TEST_CASE("approach to unity with N") {
    const double g5 = *cross_correlation(ckncs_table(5, 0.1, 0.1));
    const double g60 = *cross_correlation(ckncs_table(60, 0.1, 0.1));
    CHECK(g60 > g5);
    CHECK(1.0 - g60 < 1.0 - g5);
  }

  TEST_CASE("CSV rows render undefined as empty") {
    const std::vector<StatisticsRow> rows{statistics_row(0.0, ckncs_table(3, 0.0, 0.0)),
                                          statistics_row(0.5, JointPhotonDistribution({{0.0, 0.0}, {0.0, 1.0}}, "fock"))};
    std::ostringstream out;
    write_statistics_csv(out, "kappa_tilde", rows);
    CHECK(out.str() == "kappa_tilde,mean_a,mean_b,g2,q_a,q_b\n"
                       "0,0,3,,,-1\n"
                       "0.5,1,1,1,-1,-1\n");
  }
}
