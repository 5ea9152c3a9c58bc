#include "kerrcs/dynamics.hpp"

#include "kerrcs/errors.hpp"
#include "kerrcs/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kerrcs {

CouplingConfig::CouplingConfig(double g_a, double g_b) : g_a_(g_a), g_b_(g_b) {
  if (!(g_a > 0.0) || !(g_b > 0.0) || !std::isfinite(g_a) || !std::isfinite(g_b))
    throw DomainError("couplings g_a and g_b must be positive and finite");
}

double one_photon_rabi(double g, int n) {
  if (n < 0) throw DomainError("photon number must be >= 0");
  return g * std::sqrt(n + 1.0);
}

double two_photon_rabi(const CouplingConfig& coupling, int n_a, int n_b) {
  return std::hypot(one_photon_rabi(coupling.g_a(), n_a), one_photon_rabi(coupling.g_b(), n_b));
}

namespace {

// Frequencies in units of g_a, so that Omega t = omega * tau.
struct SectorFrequencies {
  double a;      // Omega_A / g_a = sqrt(n_a)
  double b;      // Omega_B / g_a = (g_b/g_a) sqrt(n_b + 1)
  double total;  // sqrt(a^2 + b^2)
};

SectorFrequencies sector_frequencies(int n_a, int n_b, const CouplingConfig& coupling) {
  if (n_a < 0 || n_b < 0) throw DomainError("sector labels must be >= 0");
  const double a = std::sqrt(static_cast<double>(n_a));
  const double b = coupling.ratio() * std::sqrt(n_b + 1.0);
  return {a, b, std::hypot(a, b)};
}

}  // namespace

SectorAmplitudes sector_amplitudes(int n_a, int n_b, const CouplingConfig& coupling, double tau) {
  const auto w = sector_frequencies(n_a, n_b, coupling);
  const double phase = w.total * tau;
  const double c = std::cos(phase);
  const double s = std::sin(phase);
  const double w2 = w.a * w.a + w.b * w.b;
  SectorAmplitudes out;
  out.n_a = n_a;
  out.n_b = n_b;
  out.c0 = (w.b * w.b + w.a * w.a * c) / w2;
  out.c1 = {0.0, -(w.a / w.total) * s};
  out.c2 = w.a * w.b * (c - 1.0) / w2;
  return out;
}

LevelProbabilities sector_populations(int n_a, int n_b, const CouplingConfig& coupling, double tau) {
  const auto w = sector_frequencies(n_a, n_b, coupling);
  const double c = std::cos(w.total * tau);
  const double s = std::sin(w.total * tau);
  const double a2 = w.a * w.a;
  const double b2 = w.b * w.b;
  const double w2 = a2 + b2;
  const double w4 = w2 * w2;
  LevelProbabilities p;
  p.p0 = b2 * b2 / w4 + 2.0 * a2 * b2 / w4 * c + a2 * a2 / w4 * c * c;
  p.p1 = a2 / w2 * s * s;
  p.p2 = a2 * b2 / w4 * (1.0 - 2.0 * c + c * c);
  return p;
}

double AtomFieldState::norm() const {
  double sum = 0.0;
  for (const auto& [ket, amp] : amplitudes) sum += std::norm(amp);
  return sum;
}

std::complex<double> AtomFieldState::amplitude(int level, int n_a, int n_b) const {
  const auto it = amplitudes.find({level, n_a, n_b});
  return it == amplitudes.end() ? std::complex<double>{} : it->second;
}

int excitation_charge(const AtomFieldKet& ket) { return ket.n_a + ket.n_b + (ket.level == 1 ? 1 : 0); }

AtomFieldState evolve(const TwoModeAmplitudes& initial, const CouplingConfig& coupling, double tau) {
  const int N = initial.total_photons();
  AtomFieldState state;
  state.tau = tau;
  auto put = [&](int level, int n_a, int n_b, std::complex<double> amp) {
    if (amp != 0.0) state.amplitudes[{level, n_a, n_b}] += amp;
  };
  for (int n = 0; n <= N; ++n) {
    const auto weight = initial[n];
    if (weight == 0.0) continue;
    const auto c = sector_amplitudes(n, N - n, coupling, tau);
    put(0, n, N - n, weight * c.c0);
    if (n > 0) {
      put(1, n - 1, N - n, weight * c.c1);
      put(2, n - 1, N - n + 1, weight * c.c2);
    }
  }
  return state;
}

OccupationTraces atomic_occupations(const TwoModeAmplitudes& initial, const CouplingConfig& coupling,
                                    std::span<const double> tau_grid) {
  require_increasing_grid(tau_grid);
  const int N = initial.total_photons();
  const std::vector<double> tau(tau_grid.begin(), tau_grid.end());
  OccupationTraces out{{"P0", tau, {}}, {"P1", tau, {}}, {"P2", tau, {}}};
  // Dividing by the summed weights keeps P0(0) = 1 exact despite roundoff in
  // the normalization of the initial state.
  double total = 0.0;
  for (int n = 0; n <= N; ++n) total += initial.probability(n);
  for (double t : tau) {
    double p0 = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    for (int n = 0; n <= N; ++n) {
      const double weight = initial.probability(n);
      if (weight == 0.0) continue;
      const auto c = sector_amplitudes(n, N - n, coupling, t);
      p0 += weight * std::norm(c.c0);
      p1 += weight * std::norm(c.c1);
      p2 += weight * std::norm(c.c2);
    }
    out.p0.values.emplace_back(p0 / total);
    out.p1.values.emplace_back(p1 / total);
    out.p2.values.emplace_back(p2 / total);
  }
  return out;
}

JointPhotonDistribution joint_distribution_at(const AtomFieldState& state) {
  if (state.amplitudes.empty()) throw IntegrityError("atom-field state has no populated kets");
  int max_na = 0;
  int max_nb = 0;
  for (const auto& [ket, amp] : state.amplitudes) {
    max_na = std::max(max_na, ket.n_a);
    max_nb = std::max(max_nb, ket.n_b);
  }
  std::vector<std::vector<double>> table(static_cast<std::size_t>(max_na) + 1,
                                         std::vector<double>(static_cast<std::size_t>(max_nb) + 1));
  for (const auto& [ket, amp] : state.amplitudes)
    table[static_cast<std::size_t>(ket.n_a)][static_cast<std::size_t>(ket.n_b)] += std::norm(amp);
  return {std::move(table), "tau=" + std::to_string(state.tau)};
}

std::pair<std::vector<double>, std::vector<double>> marginals_at(const AtomFieldState& state) {
  const auto joint = joint_distribution_at(state);
  return {joint.marginal(Mode::A), joint.marginal(Mode::B)};
}

TimeStatistics time_statistics(const TwoModeAmplitudes& initial, const CouplingConfig& coupling,
                               std::span<const double> tau_grid) {
  require_increasing_grid(tau_grid);
  const std::vector<double> tau(tau_grid.begin(), tau_grid.end());
  TimeStatistics out{{"g2", tau, {}},
                     {"q_a", tau, {}},
                     {"q_b", tau, {}},
                     {"mean_a", tau, {}},
                     {"mean_b", tau, {}}};
  for (double t : tau) {
    const auto joint = joint_distribution_at(evolve(initial, coupling, t));
    const auto means = mean_occupations(joint);
    out.g2.values.push_back(cross_correlation(joint));
    out.q_a.values.push_back(mandel_parameter(joint, Mode::A));
    out.q_b.values.push_back(mandel_parameter(joint, Mode::B));
    out.mean_a.values.emplace_back(means.a);
    out.mean_b.values.emplace_back(means.b);
  }
  return out;
}

std::optional<double> revival_period(const ObservableTrace& trace, double significance,
                                     double prominence) {
  const std::size_t len = trace.values.size();
  if (len < 4 || trace.tau.size() != len) return std::nullopt;
  const double step = (trace.tau.back() - trace.tau.front()) / static_cast<double>(len - 1);
  for (std::size_t i = 1; i < len; ++i) {
    if (std::abs(trace.tau[i] - trace.tau[i - 1] - step) > 1e-9 * std::max(1.0, step) + 1e-12)
      throw DomainError("revival_period needs a uniform grid");
  }

  std::vector<double> x(len);
  double mean = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    if (!trace.values[i]) return std::nullopt;
    x[i] = *trace.values[i];
    mean += x[i];
  }
  mean /= static_cast<double>(len);
  for (auto& v : x) v -= mean;

  const std::size_t max_lag = len / 2;
  std::vector<double> r(max_lag + 1, 0.0);
  for (std::size_t k = 0; k <= max_lag; ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i + k < len; ++i) sum += x[i] * x[i + k];
    r[k] = sum;
  }
  // Flat within roundoff of the trace magnitude: nothing oscillates.
  double scale = 0.0;
  for (std::size_t i = 0; i < len; ++i) scale = std::max(scale, std::abs(*trace.values[i]));
  if (r[0] <= static_cast<double>(len) * std::pow(1e-12 * std::max(scale, 1.0), 2))
    return std::nullopt;
  const double r0 = r[0];
  for (auto& v : r) v /= r0;

  // Skip the zero-lag lobe.
  std::size_t start = 1;
  while (start < max_lag && r[start] >= 0.0) ++start;

  std::vector<std::size_t> peaks;
  for (std::size_t k = std::max<std::size_t>(start, 1); k < max_lag; ++k) {
    if (r[k] > r[k - 1] && r[k] >= r[k + 1] && r[k] > 0.0) peaks.push_back(k);
  }
  if (peaks.empty()) return std::nullopt;

  double running_min = r[peaks.front()];
  for (std::size_t i = 1; i < peaks.size(); ++i) {
    running_min = std::min(running_min, r[peaks[i]]);
    if (r[peaks[i]] - running_min < prominence) continue;
    // Climb to the top of the envelope rise.
    while (i + 1 < peaks.size() && r[peaks[i + 1]] > r[peaks[i]]) ++i;
    if (r[peaks[i]] > significance) return static_cast<double>(peaks[i]) * step;
    break;
  }
  if (r[peaks.front()] > significance) return static_cast<double>(peaks.front()) * step;
  return std::nullopt;
}

}  // namespace kerrcs
