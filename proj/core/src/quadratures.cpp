#include "kerrcs/quadratures.hpp"

#include "kerrcs/csv.hpp"
#include "kerrcs/errors.hpp"

#include <cmath>
#include <ostream>

namespace kerrcs {

LadderExpectations ladder_expectations(const AtomFieldState& state) {
  LadderExpectations m;
  // <psi| O |psi> for O mapping |l; n_a, n_b> to coeff |l; n_a + da, n_b + db>.
  auto shifted = [&](const AtomFieldKet& ket, int da, int db) {
    return std::conj(state.amplitude(ket.level, ket.n_a + da, ket.n_b + db));
  };
  for (const auto& [ket, amp] : state.amplitudes) {
    const double na = ket.n_a;
    const double nb = ket.n_b;
    const double p = std::norm(amp);
    m.n_a += na * p;
    m.n_b += nb * p;
    if (ket.n_a >= 1) m.a += std::sqrt(na) * shifted(ket, -1, 0) * amp;
    if (ket.n_b >= 1) m.b += std::sqrt(nb) * shifted(ket, 0, -1) * amp;
    if (ket.n_a >= 2) m.a2 += std::sqrt(na * (na - 1.0)) * shifted(ket, -2, 0) * amp;
    if (ket.n_b >= 2) m.b2 += std::sqrt(nb * (nb - 1.0)) * shifted(ket, 0, -2) * amp;
    if (ket.n_a >= 1 && ket.n_b >= 1) m.ab += std::sqrt(na * nb) * shifted(ket, -1, -1) * amp;
    if (ket.n_b >= 1) m.adag_b += std::sqrt((na + 1.0) * nb) * shifted(ket, 1, -1) * amp;
  }
  return m;
}

QuadratureReport quadrature_report(const LadderExpectations& m) {
  // u = a + b:  X1 = (u + u^dag) / (2 sqrt 2),  X2 = (u - u^dag) / (2 i sqrt 2)
  const auto u = m.a + m.b;
  const auto u2 = m.a2 + 2.0 * m.ab + m.b2;
  const double udag_u = m.n_a + m.n_b + 2.0 * m.adag_b.real();
  QuadratureReport r;
  r.var_x1 = 0.25 * (u2.real() + udag_u + 1.0) - 0.5 * u.real() * u.real();
  r.var_x2 = 0.25 * (-u2.real() + udag_u + 1.0) - 0.5 * u.imag() * u.imag();
  if (r.var_x1 < -1e-12 || r.var_x2 < -1e-12)
    throw IntegrityError("negative quadrature variance");
  r.var_x1 = std::max(r.var_x1, 0.0);
  r.var_x2 = std::max(r.var_x2, 0.0);
  r.s_x1 = 4.0 * r.var_x1 - 1.0;
  r.s_x2 = 4.0 * r.var_x2 - 1.0;
  r.uncertainty_product = r.var_x1 * r.var_x2;
  return r;
}

QuadratureReport quadrature_report(const AtomFieldState& state) {
  return quadrature_report(ladder_expectations(state));
}

std::vector<SqueezingPoint> squeezing_trace(const TwoModeAmplitudes& initial,
                                            const CouplingConfig& coupling,
                                            std::span<const double> tau_grid) {
  require_increasing_grid(tau_grid);
  std::vector<SqueezingPoint> out;
  out.reserve(tau_grid.size());
  for (double t : tau_grid) out.push_back({t, quadrature_report(evolve(initial, coupling, t))});
  return out;
}

void write_squeezing_csv(std::ostream& os, std::span<const SqueezingPoint> points) {
  os << "tau,s_x1,s_x2,var_x1,var_x2,product\n";
  for (const auto& p : points) {
    os << format_number(p.tau) << ',' << format_number(p.report.s_x1) << ','
       << format_number(p.report.s_x2) << ',' << format_number(p.report.var_x1) << ','
       << format_number(p.report.var_x2) << ',' << format_number(p.report.uncertainty_product)
       << '\n';
  }
}

}  // namespace kerrcs
