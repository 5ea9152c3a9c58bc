#include "kerrcs/app/scenario.hpp"

#include "kerrcs/coherent_states.hpp"
#include "kerrcs/csv.hpp"
#include "kerrcs/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

namespace kerrcs::app {

namespace {

constexpr std::array kParameters{Parameter::N, Parameter::MuAbs, Parameter::MuPhase, Parameter::KappaTilde,
                                 Parameter::GRatio};
constexpr std::array kObservables{Observable::Means,   Observable::G2,      Observable::Mandel,
                                  Observable::Occupations, Observable::Squeezing, Observable::Entropy,
                                  Observable::IdentityCheck};

const std::map<std::string, std::set<std::string>> kKnownFields{
    {"scenario", {"name", "mode", "observables", "axis"}},
    {"state", {"N", "mu_abs", "mu_phase", "kappa_tilde", "convention"}},
    {"coupling", {"g_ratio"}},
    {"time", {"tau_max", "tau_points"}},
};

std::string section_of(Parameter p) { return p == Parameter::GRatio ? "coupling" : "state"; }

class Reader {
 public:
  explicit Reader(const RawConfig& raw) : raw_(raw) {}

  const RawValue* find(const std::string& field) const {
    const auto it = raw_.entries.find(field);
    return it == raw_.entries.end() ? nullptr : &it->second;
  }

  std::string where(const std::string& field) const {
    const auto* v = find(field);
    return raw_.source + (v ? ":" + std::to_string(v->line) : std::string()) + ": field '" + field + "'";
  }

  const RawValue& require(const std::string& field) const {
    const auto* v = find(field);
    if (!v) throw ConfigError(raw_.source + ": missing required field '" + field + "'");
    return *v;
  }

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw ConfigError(where(field) + ": " + what);
  }

 private:
  const RawConfig& raw_;
};

template <typename E, std::size_t K, typename Name>
std::optional<E> lookup(const std::array<E, K>& all, std::string_view word, Name name) {
  for (auto e : all)
    if (name(e) == word) return e;
  return std::nullopt;
}

bool is_static_observable(Observable o) {
  return o == Observable::Means || o == Observable::G2 || o == Observable::Mandel ||
         o == Observable::IdentityCheck;
}

bool is_dynamic_observable(Observable o) { return o != Observable::IdentityCheck; }

}  // namespace

std::string_view parameter_name(Parameter p) {
  switch (p) {
    case Parameter::N: return "N";
    case Parameter::MuAbs: return "mu_abs";
    case Parameter::MuPhase: return "mu_phase";
    case Parameter::KappaTilde: return "kappa_tilde";
    case Parameter::GRatio: return "g_ratio";
  }
  return "?";
}

std::string_view observable_name(Observable o) {
  switch (o) {
    case Observable::Means: return "means";
    case Observable::G2: return "g2";
    case Observable::Mandel: return "mandel";
    case Observable::Occupations: return "occupations";
    case Observable::Squeezing: return "squeezing";
    case Observable::Entropy: return "entropy";
    case Observable::IdentityCheck: return "identity_check";
  }
  return "?";
}

std::string_view mode_name(ScenarioMode m) { return m == ScenarioMode::Static ? "static" : "dynamic"; }

std::vector<double> Scenario::series_values() const {
  if (!series) return {0.0};
  return values.at(*series);
}

PointParams Scenario::point(double series_value, double axis_value) const {
  auto get = [&](Parameter p) {
    if (series && *series == p) return series_value;
    if (axis && *axis == p) return axis_value;
    return values.at(p).front();
  };
  return {static_cast<int>(get(Parameter::N)), get(Parameter::MuAbs), get(Parameter::MuPhase),
          get(Parameter::KappaTilde), get(Parameter::GRatio)};
}

Scenario resolve_scenario(const RawConfig& raw, const ScenarioRequest& request) {
  const Reader in(raw);
  for (const auto& [field, value] : raw.entries) {
    const auto dot = field.find('.');
    const auto section = kKnownFields.find(field.substr(0, dot));
    if (section == kKnownFields.end())
      throw ConfigError(raw.source + ":" + std::to_string(value.line) + ": unknown section '" +
                        field.substr(0, dot) + "'");
    if (!section->second.contains(field.substr(dot + 1)))
      throw ConfigError(in.where(field) + ": unknown field");
  }

  Scenario s;
  s.source = raw.source;

  const auto& name = in.require("scenario.name");
  const auto name_words = parse_words(name.text, in.where("scenario.name"));
  if (name_words.size() != 1 || name.text.front() == '[') in.fail("scenario.name", "expected a single name");
  s.name = name_words.front();

  std::optional<ScenarioMode> file_mode;
  if (const auto* m = in.find("scenario.mode")) {
    if (m->text == "static") file_mode = ScenarioMode::Static;
    else if (m->text == "dynamic") file_mode = ScenarioMode::Dynamic;
    else in.fail("scenario.mode", "expected 'static' or 'dynamic', got '" + m->text + "'");
  }
  if (request.mode && file_mode && *request.mode != *file_mode)
    in.fail("scenario.mode", "this command runs " + std::string(mode_name(*request.mode)) + " scenarios");
  s.mode = request.mode.value_or(file_mode.value_or(ScenarioMode::Dynamic));

  if (request.observables) {
    s.observables = *request.observables;
  } else {
    const auto& obs = in.require("scenario.observables");
    for (const auto& word : parse_words(obs.text, in.where("scenario.observables"))) {
      const auto o = lookup(kObservables, word, observable_name);
      if (!o) in.fail("scenario.observables", "unknown observable '" + word + "'");
      if (std::find(s.observables.begin(), s.observables.end(), *o) != s.observables.end())
        in.fail("scenario.observables", "observable '" + word + "' listed twice");
      s.observables.push_back(*o);
    }
  }
  for (auto o : s.observables) {
    const bool ok = s.mode == ScenarioMode::Static ? is_static_observable(o) : is_dynamic_observable(o);
    if (!ok)
      in.fail("scenario.observables", "observable '" + std::string(observable_name(o)) + "' is not available in " +
                                          std::string(mode_name(s.mode)) + " scenarios");
  }

  std::vector<Parameter> lists;
  for (auto p : kParameters) {
    const std::string field = section_of(p) + "." + std::string(parameter_name(p));
    const auto* raw_value = in.find(field);
    if (!raw_value) {
      if (p == Parameter::MuPhase) s.values[p] = {0.0};
      else if (p == Parameter::KappaTilde) s.values[p] = {0.0};
      else if (p == Parameter::GRatio && s.mode == ScenarioMode::Static) s.values[p] = {1.0};
      else in.require(field);
      continue;
    }
    bool is_list = false;
    auto values = parse_numbers(raw_value->text, in.where(field), is_list);
    for (double v : values) {
      switch (p) {
        case Parameter::N:
          if (v != std::floor(v) || v < 0 || v > 200) in.fail(field, "must be an integer in [0, 200]");
          break;
        case Parameter::MuAbs:
        case Parameter::KappaTilde:
          if (v < 0) in.fail(field, "must be >= 0");
          break;
        case Parameter::GRatio:
          if (!(v > 0)) in.fail(field, "must be > 0");
          break;
        case Parameter::MuPhase:
          break;
      }
    }
    if (is_list) lists.push_back(p);
    s.values[p] = std::move(values);
  }

  if (request.convention) {
    s.convention = *request.convention;
  } else if (const auto* c = in.find("state.convention")) {
    try {
      s.convention = parse_convention(c->text);
    } catch (const DomainError&) {
      in.fail("state.convention", "expected 'operator' or 'literal', got '" + c->text + "'");
    }
  }

  if (const auto* axis = in.find("scenario.axis")) {
    if (s.mode != ScenarioMode::Static) in.fail("scenario.axis", "only static scenarios take an axis; time is the axis");
    const auto p = lookup(kParameters, axis->text, parameter_name);
    if (!p) in.fail("scenario.axis", "unknown parameter '" + axis->text + "'");
    if (std::find(lists.begin(), lists.end(), *p) == lists.end())
      in.fail("scenario.axis", "axis '" + axis->text + "' must be given as a list");
    s.axis = p;
  } else if (s.mode == ScenarioMode::Static) {
    if (lists.size() > 1)
      in.fail("scenario.axis", "required when more than one parameter is a list");
    s.axis = lists.empty() ? Parameter::N : lists.front();
  }

  std::vector<Parameter> others;
  for (auto p : lists)
    if (!s.axis || *s.axis != p) others.push_back(p);
  auto list_names = [&] {
    std::string out;
    for (auto p : lists) out += (out.empty() ? "" : ", ") + std::string(parameter_name(p));
    return out;
  };
  if (request.single_list) {
    if (lists.size() != 1)
      throw ConfigError(raw.source + ": a sweep needs exactly one list-valued parameter, found " +
                        std::to_string(lists.size()) + (lists.empty() ? "" : " (" + list_names() + ")"));
  } else if (others.size() > 1) {
    throw ConfigError(raw.source + ": at most one list-valued parameter besides the axis, found " + list_names());
  }
  if (!others.empty()) s.series = others.front();

  if (s.mode == ScenarioMode::Dynamic) {
    if (const auto* t = in.find("time.tau_max")) {
      bool is_list = false;
      s.tau_max = parse_numbers(t->text, in.where("time.tau_max"), is_list).front();
      if (is_list) in.fail("time.tau_max", "must be a single value");
      if (!(s.tau_max > 0)) in.fail("time.tau_max", "must be > 0");
    }
    if (const auto* t = in.find("time.tau_points")) {
      bool is_list = false;
      const double n = parse_numbers(t->text, in.where("time.tau_points"), is_list).front();
      if (is_list) in.fail("time.tau_points", "must be a single value");
      if (n != std::floor(n) || n < 2 || n > 1e6) in.fail("time.tau_points", "must be an integer in [2, 1e6]");
      s.tau_points = static_cast<int>(n);
    }
  }
  return s;
}

std::string describe(const Scenario& s) {
  std::ostringstream out;
  out << "[scenario]\nname = " << s.name << "\nmode = " << mode_name(s.mode) << "\nobservables = [";
  for (std::size_t i = 0; i < s.observables.size(); ++i)
    out << (i ? ", " : "") << observable_name(s.observables[i]);
  out << "]\n";
  if (s.axis) out << "axis = " << parameter_name(*s.axis) << '\n';
  auto values = [&](Parameter p) {
    const auto& v = s.values.at(p);
    const bool list = (s.axis && *s.axis == p) || (s.series && *s.series == p);
    std::string text = list ? "[" : "";
    for (std::size_t i = 0; i < v.size(); ++i) text += (i ? ", " : "") + format_number(v[i]);
    return list ? text + "]" : text;
  };
  out << "\n[state]\n";
  for (auto p : {Parameter::N, Parameter::MuAbs, Parameter::MuPhase, Parameter::KappaTilde})
    out << parameter_name(p) << " = " << values(p) << '\n';
  out << "convention = " << convention_name(s.convention) << '\n';
  out << "\n[coupling]\ng_ratio = " << values(Parameter::GRatio) << '\n';
  if (s.mode == ScenarioMode::Dynamic)
    out << "\n[time]\ntau_max = " << format_number(s.tau_max) << "\ntau_points = " << s.tau_points << '\n';
  return out.str();
}

}  // namespace kerrcs::app
