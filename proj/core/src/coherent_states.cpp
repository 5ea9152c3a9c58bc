#include "kerrcs/coherent_states.hpp"

#include "kerrcs/csv.hpp"
#include "kerrcs/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace kerrcs {

TwoModeAmplitudes::TwoModeAmplitudes(int N, std::vector<std::complex<double>> amps)
    : n_(N), amps_(std::move(amps)) {
  if (N < 0 || amps_.size() != static_cast<std::size_t>(N) + 1)
    throw IntegrityError("amplitude vector length must be N + 1");
  double norm = 0.0;
  for (const auto& c : amps_) norm += std::norm(c);
  if (std::abs(norm - 1.0) > 1e-12) throw IntegrityError("two-mode amplitudes are not normalized");
}

TwoModeAmplitudes build_ckncs(const CkncsParams& params) {
  const int N = params.N.total();
  const double mu_abs = std::abs(params.mu);
  const double phase = std::arg(params.mu);
  std::vector<std::complex<double>> amps(static_cast<std::size_t>(N) + 1);

  if (mu_abs == 0.0) {
    amps[0] = 1.0;
    return {N, std::move(amps)};
  }

  // log|c_n| = 0.5 log binom_kappa(N, n) + n log|mu|
  std::vector<double> log_mag(amps.size());
  for (int n = 0; n <= N; ++n) {
    log_mag[static_cast<std::size_t>(n)] =
        0.5 * log_deformed_binomial(N, n, params.kappa, params.convention) + n * std::log(mu_abs);
  }
  const double peak = *std::max_element(log_mag.begin(), log_mag.end());
  double norm = 0.0;
  for (int n = 0; n <= N; ++n) {
    const double mag = std::exp(log_mag[static_cast<std::size_t>(n)] - peak);
    norm += mag * mag;
    amps[static_cast<std::size_t>(n)] = std::polar(mag, n * phase);
  }
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& c : amps) c *= scale;
  return {N, std::move(amps)};
}

JointPhotonDistribution joint_distribution(const TwoModeAmplitudes& state) {
  const int N = state.total_photons();
  std::vector<std::vector<double>> table(static_cast<std::size_t>(N) + 1,
                                         std::vector<double>(static_cast<std::size_t>(N) + 1, 0.0));
  for (int n = 0; n <= N; ++n)
    table[static_cast<std::size_t>(n)][static_cast<std::size_t>(N - n)] = state.probability(n);
  return {std::move(table), "initial state"};
}

std::vector<double> marginal_distribution(const TwoModeAmplitudes& state, Mode mode) {
  const int N = state.total_photons();
  std::vector<double> out(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n)
    out[static_cast<std::size_t>(mode == Mode::A ? n : N - n)] = state.probability(n);
  return out;
}

namespace {

double log_sum_exp(const std::vector<double>& terms) {
  const double peak = *std::max_element(terms.begin(), terms.end());
  if (!std::isfinite(peak)) return peak;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - peak);
  return peak + std::log(sum);
}

double log_deformed_polynomial(int M, double log_x, DeformationParameter kappa,
                               CoefficientConvention convention) {
  std::vector<double> terms(static_cast<std::size_t>(M) + 1);
  for (int m = 0; m <= M; ++m)
    terms[static_cast<std::size_t>(m)] = log_deformed_binomial(M, m, kappa, convention) + m * log_x;
  return log_sum_exp(terms);
}

template <unsigned Points>
double integrate_unit(const auto& integrand, const QuadratureSpec& spec) {
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, Points>::integrate(
      integrand, 0.0, 1.0, static_cast<unsigned>(spec.max_depth), spec.tolerance, &error, &l1);
  if (!std::isfinite(value) || error > spec.tolerance * std::max(std::abs(value), 1e-300) + 1e-15)
    throw ConvergenceError("radial quadrature did not converge (estimated error " +
                               std::to_string(error) + ")",
                           error);
  return value;
}

}  // namespace

double deformed_binomial_polynomial(int M, double x, DeformationParameter kappa,
                                    CoefficientConvention convention) {
  if (M < 0) throw DomainError("polynomial order must be >= 0");
  if (x < 0.0) throw DomainError("deformed binomial polynomial needs x >= 0");
  if (x == 0.0) return 1.0;
  return std::exp(log_deformed_polynomial(M, std::log(x), kappa, convention));
}

std::vector<double> identity_resolution_diagonal(SectorDimension N, DeformationParameter kappa,
                                                 const QuadratureSpec& quadrature,
                                                 CoefficientConvention convention) {
  const int total = N.total();
  std::vector<double> diagonal(static_cast<std::size_t>(N.kets()));
  for (int n = 0; n <= total; ++n) {
    const double log_coeff = log_deformed_binomial(total, n, kappa, convention);
    // x = |mu|^2 = s / (1 - s), dx = ds / (1 - s)^2
    auto integrand = [&](double s) {
      if (s <= 0.0) return n == 0 ? 1.0 : 0.0;
      if (s >= 1.0) return 0.0;
      const double log_x = std::log(s) - std::log1p(-s);
      const double log_value = log_coeff + n * log_x -
                               log_deformed_polynomial(total, log_x, kappa, convention) -
                               log_deformed_polynomial(2, log_x, kappa, convention) -
                               2.0 * std::log1p(-s);
      return std::exp(log_value);
    };
    const double radial = quadrature.high_order ? integrate_unit<31>(integrand, quadrature)
                                                : integrate_unit<15>(integrand, quadrature);
    diagonal[static_cast<std::size_t>(n)] = (total + 1.0) * radial;
  }
  return diagonal;
}

double identity_resolution_check(SectorDimension N, DeformationParameter kappa,
                                 const QuadratureSpec& quadrature, CoefficientConvention convention) {
  double worst = 0.0;
  for (double d : identity_resolution_diagonal(N, kappa, quadrature, convention))
    worst = std::max(worst, std::abs(d - 1.0));
  return worst;
}

std::string_view convention_name(CoefficientConvention convention) {
  return convention == CoefficientConvention::OperatorExpansion ? "operator" : "literal";
}

CoefficientConvention parse_convention(std::string_view name) {
  if (name == "operator") return CoefficientConvention::OperatorExpansion;
  if (name == "literal") return CoefficientConvention::LiteralFactorial;
  throw DomainError("unknown convention '" + std::string(name) + "' (expected operator|literal)");
}

void write_state_csv(std::ostream& os, const CkncsParams& params, const TwoModeAmplitudes& state) {
  os << "N,mu_re,mu_im,kappa_tilde,convention\n"
     << params.N.total() << ',' << format_number(params.mu.real()) << ','
     << format_number(params.mu.imag()) << ',' << format_number(params.kappa.value()) << ','
     << convention_name(params.convention) << '\n'
     << "n,amp_re,amp_im,probability\n";
  for (int n = 0; n <= state.total_photons(); ++n) {
    os << n << ',' << format_number(state[n].real()) << ',' << format_number(state[n].imag()) << ','
       << format_number(state.probability(n)) << '\n';
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw DomainError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw DomainError("not a number: '" + text + "'");
  return value;
}

}  // namespace

StateCsv read_state_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "N,mu_re,mu_im,kappa_tilde,convention")
    throw DomainError("state CSV: missing parameter header");
  if (!std::getline(is, line)) throw DomainError("state CSV: missing parameter row");
  const auto p = split_csv_line(line);
  if (p.size() != 5) throw DomainError("state CSV: parameter row needs 5 fields");
  StateCsv out;
  out.params.N = SectorDimension(static_cast<int>(parse_double(p[0])));
  out.params.mu = {parse_double(p[1]), parse_double(p[2])};
  out.params.kappa = DeformationParameter(parse_double(p[3]));
  out.params.convention = parse_convention(p[4]);
  if (!std::getline(is, line) || line != "n,amp_re,amp_im,probability")
    throw DomainError("state CSV: missing amplitude header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto row = split_csv_line(line);
    if (row.size() != 4) throw DomainError("state CSV: amplitude row needs 4 fields");
    if (static_cast<std::size_t>(parse_double(row[0])) != out.amplitudes.size())
      throw DomainError("state CSV: amplitude rows out of order");
    out.amplitudes.emplace_back(parse_double(row[1]), parse_double(row[2]));
  }
  if (out.amplitudes.size() != static_cast<std::size_t>(out.params.N.kets()))
    throw DomainError("state CSV: expected N + 1 amplitude rows");
  return out;
}

}  // namespace kerrcs
