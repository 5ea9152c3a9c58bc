#include "kerrcs/app/run.hpp"

#include "kerrcs/app/svg.hpp"
#include "kerrcs/coherent_states.hpp"
#include "kerrcs/csv.hpp"
#include "kerrcs/dynamics.hpp"
#include "kerrcs/entropy.hpp"
#include "kerrcs/errors.hpp"
#include "kerrcs/quadratures.hpp"
#include "kerrcs/statistics.hpp"
#include "parallel.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace kerrcs::app {

namespace {

// One observable on one series value: named columns over a shared x grid.
struct Table {
  std::vector<std::string> columns;
  std::vector<double> x;
  std::vector<std::vector<std::optional<double>>> rows;  // rows[i][column]
};

struct SeriesResult {
  std::map<Observable, Table> tables;
  std::map<Observable, std::string> csv;
  std::map<std::string, std::string> extra_files;
};

std::string series_suffix(const Scenario& s, double value) {
  if (!s.series) return "";
  return "_" + std::string(parameter_name(*s.series)) + "=" + format_number(value);
}

std::string series_label(const Scenario& s, double value) {
  if (!s.series) return "";
  return std::string(parameter_name(*s.series)) + "=" + format_number(value);
}

TwoModeAmplitudes build_state(const PointParams& p, CoefficientConvention convention) {
  return build_ckncs({SectorDimension(p.N), std::polar(p.mu_abs, p.mu_phase), DeformationParameter(p.kappa_tilde),
                      convention});
}

void check(bool ok, const std::string& what) {
  if (!ok) throw IntegrityError(what);
}

std::string table_csv(const std::string& x_name, const Table& t) {
  std::ostringstream out;
  out << x_name;
  for (const auto& c : t.columns) out << ',' << c;
  out << '\n';
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    out << format_number(t.x[i]);
    for (const auto& v : t.rows[i]) out << ',' << format_number(v);
    out << '\n';
  }
  return out.str();
}

Table from_traces(const std::vector<const ObservableTrace*>& traces) {
  Table t;
  t.x = traces.front()->tau;
  for (const auto* tr : traces) t.columns.push_back(tr->name);
  t.rows.resize(t.x.size());
  for (std::size_t i = 0; i < t.x.size(); ++i)
    for (const auto* tr : traces) t.rows[i].push_back(tr->values[i]);
  return t;
}

std::string csv_of_traces(const std::vector<const ObservableTrace*>& traces) {
  std::vector<ObservableTrace> copy;
  for (const auto* t : traces) copy.push_back(*t);
  std::ostringstream out;
  write_traces_csv(out, copy);
  return out.str();
}

bool wants(const Scenario& s, Observable o) {
  return std::find(s.observables.begin(), s.observables.end(), o) != s.observables.end();
}

// ---- static scenarios -------------------------------------------------------

struct StaticPoint {
  StatisticsRow row;
  std::optional<double> identity_residual;
  std::string state_csv;
};

StaticPoint compute_static_point(const Scenario& s, const PointParams& p, double axis_value, bool keep_state) {
  StaticPoint out;
  const auto state = build_state(p, s.convention);
  const auto joint = joint_distribution(state);
  out.row = statistics_row(axis_value, joint);
  const double scale = std::max(1.0, static_cast<double>(p.N));
  check(std::abs(out.row.means.a + out.row.means.b - p.N) <= 1e-9 * scale,
        "mean occupations do not add up to N");
  for (const auto& q : {out.row.q_a, out.row.q_b}) check(!q || *q >= -1.0 - 1e-12, "Mandel parameter below -1");
  check(!out.row.g2 || *out.row.g2 >= 0.0, "negative cross-correlation");
  if (wants(s, Observable::IdentityCheck)) {
    out.identity_residual = identity_resolution_check(SectorDimension(p.N), DeformationParameter(p.kappa_tilde),
                                                      {}, s.convention);
    check(std::isfinite(*out.identity_residual), "identity residual is not finite");
  }
  if (keep_state) {
    std::ostringstream csv;
    write_state_csv(csv, {SectorDimension(p.N), std::polar(p.mu_abs, p.mu_phase), DeformationParameter(p.kappa_tilde),
                          s.convention},
                    state);
    out.state_csv = csv.str();
  }
  return out;
}

std::vector<SeriesResult> compute_static(const Scenario& s, Verb verb, int threads) {
  const auto series = s.series_values();
  const auto& axis = s.values.at(*s.axis);
  const bool keep_states = verb == Verb::State;
  std::vector<StaticPoint> points(series.size() * axis.size());
  parallel_for(points.size(), threads, [&](std::size_t k) {
    const double sv = series[k / axis.size()];
    const double av = axis[k % axis.size()];
    points[k] = compute_static_point(s, s.point(sv, av), av, keep_states);
  });

  const std::string axis_name(parameter_name(*s.axis));
  std::vector<SeriesResult> out(series.size());
  for (std::size_t si = 0; si < series.size(); ++si) {
    auto& r = out[si];
    std::vector<StatisticsRow> rows;
    for (std::size_t ai = 0; ai < axis.size(); ++ai) rows.push_back(points[si * axis.size() + ai].row);
    for (auto o : s.observables) {
      Table t;
      t.x = axis;
      switch (o) {
        case Observable::Means: t.columns = {"mean_a", "mean_b"}; break;
        case Observable::G2: t.columns = {"g2"}; break;
        case Observable::Mandel: t.columns = {"q_a", "q_b"}; break;
        case Observable::IdentityCheck: t.columns = {"residual"}; break;
        default: break;
      }
      for (std::size_t ai = 0; ai < axis.size(); ++ai) {
        const auto& p = points[si * axis.size() + ai];
        switch (o) {
          case Observable::Means: t.rows.push_back({p.row.means.a, p.row.means.b}); break;
          case Observable::G2: t.rows.push_back({p.row.g2}); break;
          case Observable::Mandel: t.rows.push_back({p.row.q_a, p.row.q_b}); break;
          case Observable::IdentityCheck: t.rows.push_back({p.identity_residual}); break;
          default: break;
        }
      }
      r.csv[o] = table_csv(axis_name, t);
      r.tables[o] = std::move(t);
    }
    if (verb == Verb::State) {
      const auto suffix = series_suffix(s, series[si]);
      std::ostringstream stats;
      write_statistics_csv(stats, axis_name, rows);
      r.extra_files["statistics" + suffix + ".csv"] = stats.str();
      for (std::size_t ai = 0; ai < axis.size(); ++ai)
        r.extra_files["states/state_" + axis_name + "=" + format_number(axis[ai]) + suffix + ".csv"] =
            points[si * axis.size() + ai].state_csv;
    }
  }
  return out;
}

// ---- dynamic scenarios ------------------------------------------------------

SeriesResult compute_dynamic_series(const Scenario& s, const PointParams& p) {
  SeriesResult r;
  const auto initial = build_state(p, s.convention);
  const auto coupling = CouplingConfig::from_ratio(p.g_ratio);
  const auto grid = make_tau_grid(s.tau_max, s.tau_points);

  const auto occ = atomic_occupations(initial, coupling, grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    check(std::abs(*occ.p0.values[i] + *occ.p1.values[i] + *occ.p2.values[i] - 1.0) <= 1e-10,
          "level populations do not sum to 1 at tau = " + format_number(grid[i]));
  if (wants(s, Observable::Occupations)) {
    const std::vector<const ObservableTrace*> t{&occ.p0, &occ.p1, &occ.p2};
    r.tables[Observable::Occupations] = from_traces(t);
    r.csv[Observable::Occupations] = csv_of_traces(t);
  }

  if (wants(s, Observable::Means) || wants(s, Observable::G2) || wants(s, Observable::Mandel)) {
    const auto ts = time_statistics(initial, coupling, grid);
    const double scale = std::max(1.0, static_cast<double>(p.N));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      check(std::abs(*ts.mean_a.values[i] + *ts.mean_b.values[i] + *occ.p1.values[i] - p.N) <= 1e-9 * scale,
            "excitation number not conserved at tau = " + format_number(grid[i]));
      for (const auto* q : {&ts.q_a, &ts.q_b})
        check(!q->values[i] || *q->values[i] >= -1.0 - 1e-12, "Mandel parameter below -1");
    }
    auto add = [&](Observable o, std::vector<const ObservableTrace*> t) {
      if (!wants(s, o)) return;
      r.tables[o] = from_traces(t);
      r.csv[o] = csv_of_traces(t);
    };
    add(Observable::Means, {&ts.mean_a, &ts.mean_b});
    add(Observable::G2, {&ts.g2});
    add(Observable::Mandel, {&ts.q_a, &ts.q_b});
  }

  if (wants(s, Observable::Squeezing)) {
    const auto points = squeezing_trace(initial, coupling, grid);
    Table t{{"s_x1", "s_x2", "var_x1", "var_x2", "product"}, grid, {}};
    for (const auto& pt : points) {
      check(pt.report.uncertainty_product >= 1.0 / 16 - 1e-10,
            "uncertainty product below 1/16 at tau = " + format_number(pt.tau));
      t.rows.push_back({pt.report.s_x1, pt.report.s_x2, pt.report.var_x1, pt.report.var_x2,
                        pt.report.uncertainty_product});
    }
    std::ostringstream csv;
    write_squeezing_csv(csv, points);
    r.csv[Observable::Squeezing] = csv.str();
    r.tables[Observable::Squeezing] = std::move(t);
  }

  if (wants(s, Observable::Entropy)) {
    const auto points = entropy_trace(initial, coupling, grid);
    Table t{{"entropy", "lambda1", "lambda2", "lambda3"}, grid, {}};
    for (const auto& pt : points) {
      check(pt.entropy >= 0.0 && pt.entropy <= std::log(3.0) + 1e-12,
            "entropy outside [0, ln 3] at tau = " + format_number(pt.tau));
      double sum = 0.0;
      for (double l : pt.spectrum.values) sum += l;
      check(std::abs(sum - 1.0) <= 1e-10, "eigenvalues do not sum to 1 at tau = " + format_number(pt.tau));
      t.rows.push_back({pt.entropy, pt.spectrum.values[0], pt.spectrum.values[1], pt.spectrum.values[2]});
    }
    std::ostringstream csv;
    write_entropy_csv(csv, points);
    r.csv[Observable::Entropy] = csv.str();
    r.tables[Observable::Entropy] = std::move(t);
  }
  return r;
}

std::vector<SeriesResult> compute_dynamic(const Scenario& s, int threads) {
  const auto series = s.series_values();
  std::vector<SeriesResult> out(series.size());
  parallel_for(series.size(), threads,
               [&](std::size_t i) { out[i] = compute_dynamic_series(s, s.point(series[i], 0.0)); });
  return out;
}

// ---- rendering --------------------------------------------------------------

std::string x_label(const Scenario& s) {
  return s.mode == ScenarioMode::Dynamic ? "g_a t" : std::string(parameter_name(*s.axis));
}

// Columns drawn in the overview plot of each observable.
std::size_t plotted_columns(Observable o, std::size_t available) {
  switch (o) {
    case Observable::Squeezing: return 2;
    case Observable::Entropy: return 1;
    default: return available;
  }
}

std::string render_plot(const Scenario& s, Observable o, const std::vector<SeriesResult>& results) {
  const auto series = s.series_values();
  std::vector<PlotSeries> curves;
  for (std::size_t si = 0; si < results.size(); ++si) {
    const auto& t = results[si].tables.at(o);
    const auto n = plotted_columns(o, t.columns.size());
    for (std::size_t c = 0; c < n; ++c) {
      PlotSeries curve;
      const auto tag = series_label(s, series[si]);
      curve.label = n > 1 || tag.empty() ? t.columns[c] + (tag.empty() ? "" : ", " + tag) : tag;
      curve.x = t.x;
      for (const auto& row : t.rows) curve.y.push_back(row[c]);
      curves.push_back(std::move(curve));
    }
  }
  return render_svg(s.name + ": " + std::string(observable_name(o)), x_label(s), curves);
}

std::string sweep_csv(const Scenario& s, const std::vector<SeriesResult>& results) {
  const bool dynamic = s.mode == ScenarioMode::Dynamic;
  const Parameter key = dynamic ? *s.series : *s.axis;
  std::ostringstream out;
  out << parameter_name(key) << ",tau,observable,value\n";
  if (dynamic) {
    const auto series = s.series_values();
    for (std::size_t si = 0; si < results.size(); ++si)
      for (auto o : s.observables) {
        const auto& t = results[si].tables.at(o);
        for (std::size_t i = 0; i < t.x.size(); ++i)
          for (std::size_t c = 0; c < t.columns.size(); ++c)
            out << format_number(series[si]) << ',' << format_number(t.x[i]) << ',' << t.columns[c] << ','
                << format_number(t.rows[i][c]) << '\n';
      }
  } else {
    const auto& axis = s.values.at(*s.axis);
    for (std::size_t ai = 0; ai < axis.size(); ++ai)
      for (auto o : s.observables) {
        const auto& t = results.front().tables.at(o);
        for (std::size_t c = 0; c < t.columns.size(); ++c)
          out << format_number(axis[ai]) << ",," << t.columns[c] << ',' << format_number(t.rows[ai][c]) << '\n';
      }
  }
  return out.str();
}

std::string manifest(const Scenario& s, Verb verb, const OutputSet& outputs) {
  std::ostringstream out;
  out << "kerrcs " << KERRCS_VERSION << "\ncommand = " << verb_name(verb) << "\nsource = " << s.source << "\n\n"
      << describe(s) << "\n[files]\n";
  for (const auto& [name, content] : outputs.files) out << name << '\n';
  return out.str();
}

}  // namespace

std::string_view verb_name(Verb verb) {
  switch (verb) {
    case Verb::State: return "state";
    case Verb::Dynamics: return "dynamics";
    case Verb::IdentityCheck: return "identity-check";
    case Verb::Sweep: return "sweep";
    case Verb::Figures: return "figures";
  }
  return "?";
}

ScenarioRequest request_for(Verb verb, const RunOptions& options) {
  ScenarioRequest r;
  r.convention = options.convention;
  switch (verb) {
    case Verb::State: r.mode = ScenarioMode::Static; break;
    case Verb::Dynamics: r.mode = ScenarioMode::Dynamic; break;
    case Verb::IdentityCheck:
      r.mode = ScenarioMode::Static;
      r.observables = std::vector{Observable::IdentityCheck};
      break;
    case Verb::Sweep: r.single_list = true; break;
    case Verb::Figures: break;
  }
  return r;
}

OutputSet compute_scenario(const Scenario& s, Verb verb, const RunOptions& options) {
  const auto results = s.mode == ScenarioMode::Static ? compute_static(s, verb, options.threads)
                                                      : compute_dynamic(s, options.threads);
  OutputSet out;
  if (verb == Verb::Sweep) {
    out.files["sweep.csv"] = sweep_csv(s, results);
  } else {
    const auto series = s.series_values();
    for (std::size_t si = 0; si < results.size(); ++si) {
      const auto suffix = series_suffix(s, series[si]);
      for (const auto& [o, csv] : results[si].csv) out.files[std::string(observable_name(o)) + suffix + ".csv"] = csv;
      for (const auto& [name, content] : results[si].extra_files) out.files[name] = content;
    }
    for (auto o : s.observables) out.files[std::string(observable_name(o)) + ".svg"] = render_plot(s, o, results);
  }
  out.files["manifest.txt"] = manifest(s, verb, out);
  return out;
}

OutputSet run_scenario(const RawConfig& config, Verb verb, const RunOptions& options) {
  return compute_scenario(resolve_scenario(config, request_for(verb, options)), verb, options);
}

OutputSet run_figures(const RunOptions& options) {
  // Resolve everything first so a bad bundled scenario fails before any work.
  std::vector<Scenario> scenarios;
  for (const auto& b : bundled_scenarios())
    scenarios.push_back(
        resolve_scenario(parse_config(b.text, "bundled/" + std::string(b.name) + ".cfg"), request_for(Verb::Figures, options)));
  OutputSet all;
  for (const auto& s : scenarios)
    for (auto& [name, content] : compute_scenario(s, Verb::Figures, options).files)
      all.files[s.name + "/" + name] = std::move(content);
  return all;
}

void write_outputs(const OutputSet& outputs, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  for (const auto& [name, content] : outputs.files) {
    const fs::path target = dir / name;
    fs::create_directories(target.parent_path());
    fs::path partial = target;
    partial += ".partial";
    {
      std::ofstream out(partial, std::ios::binary | std::ios::trunc);
      out.write(content.data(), static_cast<std::streamsize>(content.size()));
      if (!out.flush()) throw std::runtime_error("cannot write " + target.string());
    }
    fs::rename(partial, target);
  }
}

}  // namespace kerrcs::app
