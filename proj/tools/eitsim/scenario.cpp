// Copyright 2026 The eitsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scenario.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "eitsim/error.hpp"
#include "eitsim/optics.hpp"

namespace eitsim::cli {
namespace {

// Reads an object field by field and rejects any key nobody asked for.
class Fields {
 public:
  Fields(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ScenarioError(path_, "expected an object");
  }

  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const Json* find(const std::string& key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const Json& require(const std::string& key) {
    const Json* v = find(key);
    if (v == nullptr) throw ScenarioError(at(key), "required field is missing");
    return *v;
  }

  double number(const std::string& key, double fallback) {
    const Json* v = find(key);
    return v == nullptr ? fallback : as_number(*v, at(key));
  }

  double number(const std::string& key) { return as_number(require(key), at(key)); }

  long long integer(const std::string& key, long long fallback) {
    const Json* v = find(key);
    return v == nullptr ? fallback : as_integer(*v, at(key));
  }

  bool boolean(const std::string& key, bool fallback) {
    const Json* v = find(key);
    if (v == nullptr) return fallback;
    if (!v->is_boolean()) throw ScenarioError(at(key), "expected true or false");
    return v->get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    const Json* v = find(key);
    if (v == nullptr) return fallback;
    if (!v->is_string()) throw ScenarioError(at(key), "expected a string");
    return v->get<std::string>();
  }

  // Call once every expected key has been read.
  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.contains(key)) throw ScenarioError(at(key), "unknown field");
    }
  }

  static double as_number(const Json& v, const std::string& path) {
    if (!v.is_number()) throw ScenarioError(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ScenarioError(path, "must be finite");
    return x;
  }

  static long long as_integer(const Json& v, const std::string& path) {
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_number_float()) {
      const double x = v.get<double>();
      if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9e15) {
        return static_cast<long long>(x);
      }
    }
    throw ScenarioError(path, "expected an integer");
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

Complex parse_complex(const Json& v, const std::string& path) {
  if (v.is_number()) return {Fields::as_number(v, path), 0.0};
  if (v.is_array() && v.size() == 2) {
    return {Fields::as_number(v[0], path + "[0]"), Fields::as_number(v[1], path + "[1]")};
  }
  throw ScenarioError(path, "expected a number or a [re, im] pair");
}

FieldDrive parse_drive(const Json& j, const std::string& path, ModeLabel label) {
  Fields f(j, path);
  FieldDrive d;
  d.label = label;
  d.rabi = parse_complex(f.require("rabi"), f.at("rabi"));
  d.detuning = f.number("detuning", 0.0);
  const Json* fock = f.find("fock");
  const Json* coherent = f.find("coherent");
  if (fock != nullptr && coherent != nullptr) {
    throw ScenarioError(path, "give at most one of 'fock' and 'coherent'");
  }
  if (fock != nullptr) d.occupancy = FockCount{Fields::as_integer(*fock, f.at("fock"))};
  if (coherent != nullptr) d.occupancy = Coherent{Fields::as_number(*coherent, f.at("coherent"))};
  if (const Json* vac = f.find("vacuum_rabi")) d.vacuum_rabi = parse_complex(*vac, f.at("vacuum_rabi"));
  f.finish();
  return d;
}

std::map<int, double> parse_rates(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ScenarioError(path, "expected an object keyed by level");
  std::map<int, double> rates;
  for (const auto& [key, value] : j.items()) {
    const std::string at = path + "." + key;
    if (key.size() != 1 || key[0] < '1' || key[0] > '4') {
      throw ScenarioError(at, "unknown field (levels are \"1\" to \"4\")");
    }
    rates[key[0] - '0'] = Fields::as_number(value, at);
  }
  return rates;
}

SystemSpec parse_system(const Json& j) {
  Fields f(j, "system");
  SystemSpec s;
  const std::string scheme = f.string("scheme", "");
  if (scheme.empty()) throw ScenarioError("system.scheme", "required field is missing");
  try {
    s.scheme = scheme_from_string(scheme);
  } catch (const ValidationError& e) {
    throw ScenarioError("system.scheme", e.what());
  }
  const long long atoms = f.integer("atoms", 1);
  if (atoms < 1 || atoms > std::numeric_limits<int>::max()) {
    throw ScenarioError("system.atoms", "must be a positive integer");
  }
  s.atom_count = static_cast<int>(atoms);
  s.dual_rail = f.boolean("dual_rail", false);
  s.reference_rate = f.number("reference_rate", 1.0);
  const long long maxdim = f.integer("max_dimension", 4096);
  if (maxdim < 1) throw ScenarioError("system.max_dimension", "must be positive");
  s.max_dimension = static_cast<std::size_t>(maxdim);

  if (const Json* drives = f.find("drives")) {
    Fields df(*drives, "system.drives");
    for (const char* m : {"a", "b", "c"}) {
      if (const Json* d = df.find(m)) {
        s.drives.push_back(parse_drive(*d, df.at(m), mode_from_char(m[0])));
      }
    }
    df.finish();
  }
  if (const Json* dec = f.find("decoherence")) {
    Fields df(*dec, "system.decoherence");
    if (const Json* r = df.find("depop")) s.decoherence.depop = parse_rates(*r, df.at("depop"));
    if (const Json* r = df.find("dephase")) s.decoherence.dephase = parse_rates(*r, df.at("dephase"));
    df.finish();
  }
  f.finish();

  try {
    s.validate();
  } catch (const ValidationError& e) {
    throw ScenarioError("system", e.what());
  }
  return s;
}

TaskKind parse_kind(const std::string& name, const std::string& path) {
  for (TaskKind k : {TaskKind::Evolve, TaskKind::Steady, TaskKind::Spectrum, TaskKind::GateMetrics,
                     TaskKind::KerrOverlap, TaskKind::Dressed, TaskKind::Milestones}) {
    if (to_string(k) == name) return k;
  }
  throw ScenarioError(path, "unknown task '" + name + "'");
}

TaskParams parse_task(const Json& j) {
  Fields f(j, "task");
  TaskParams t;
  t.kind = parse_kind(f.string("kind", ""), "task.kind");
  switch (t.kind) {
    case TaskKind::Evolve: {
      t.t_end = f.number("t_end");
      if (!(t.t_end > 0.0)) throw ScenarioError("task.t_end", "must be positive");
      t.step = f.number("step", 0.0);
      const long long stride = f.integer("stride", 100);
      if (stride < 1) throw ScenarioError("task.stride", "must be positive");
      t.stride = static_cast<std::size_t>(stride);
      t.adaptive = f.boolean("adaptive", false);
      t.tolerance = f.number("tolerance", 1e-10);
      const std::string init = f.string("initial", "ground");
      if (init != "ground" && init != "dual-rail") {
        throw ScenarioError("task.initial", "expected \"ground\" or \"dual-rail\"");
      }
      t.dual_rail_start = init == "dual-rail";
      if (const Json* el = f.find("elements")) {
        if (!el->is_array()) throw ScenarioError("task.elements", "expected an array of [i, j]");
        for (std::size_t k = 0; k < el->size(); ++k) {
          const std::string at = "task.elements[" + std::to_string(k) + "]";
          const Json& p = (*el)[k];
          if (!p.is_array() || p.size() != 2) throw ScenarioError(at, "expected [i, j]");
          const long long i = Fields::as_integer(p[0], at), jj = Fields::as_integer(p[1], at);
          if (i < 0 || jj < 0) throw ScenarioError(at, "indices must be non-negative");
          t.elements.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(jj));
        }
      }
      break;
    }
    case TaskKind::Steady:
    case TaskKind::Dressed:
      if (const Json* ts = f.find("times")) t.times = parse_grid(*ts, "task.times");
      break;
    case TaskKind::Spectrum:
      t.nu_a = parse_grid(f.require("nu_a"), "task.nu_a");
      t.kerr_shape = f.boolean("kerr_shape", false);
      t.eta_scale = f.number("eta_scale", 1.0);
      break;
    case TaskKind::GateMetrics:
      t.target_phase = f.number("target_phase", -std::numbers::pi);
      t.margin = f.number("margin", 10.0);
      break;
    case TaskKind::KerrOverlap:
      t.n_a = f.integer("n_a", 1);
      t.n_c = f.integer("n_c", 1);
      t.phi = parse_grid(f.require("phi"), "task.phi");
      t.alpha_sq = parse_grid(f.require("alpha_sq"), "task.alpha_sq");
      break;
    case TaskKind::Milestones: {
      t.omega_a = f.number("omega_a");
      if (const Json* q = f.find("q")) {
        t.q.clear();
        for (double v : parse_grid(*q, "task.q")) {
          if (v != std::floor(v) || v < 1 || v > 1e6) {
            throw ScenarioError("task.q", "revival indices must be integers >= 1");
          }
          t.q.push_back(static_cast<int>(v));
        }
      }
      break;
    }
  }
  f.finish();
  return t;
}

bool needs_system(TaskKind k) { return k != TaskKind::KerrOverlap && k != TaskKind::Milestones; }

RunPoint parse_point(const Json& doc) {
  RunPoint p;
  p.task = parse_task(doc.at("task"));
  if (doc.contains("system")) {
    p.system = parse_system(doc.at("system"));
  } else if (needs_system(p.task.kind)) {
    throw ScenarioError("system", "required for task '" + to_string(p.task.kind) + "'");
  }
  return p;
}

Json::json_pointer pointer_for(const std::string& dotted) {
  std::string ptr;
  std::size_t start = 0;
  while (start <= dotted.size()) {
    const std::size_t dot = dotted.find('.', start);
    const std::string seg = dotted.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (seg.empty()) throw ScenarioError("sweep.parameter", "empty path segment in '" + dotted + "'");
    ptr += '/';
    for (char c : seg) {
      if (c == '~') ptr += "~0";
      else if (c == '/') ptr += "~1";
      else ptr += c;
    }
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return Json::json_pointer(ptr);
}

}  // namespace

std::string to_string(TaskKind k) {
  switch (k) {
    case TaskKind::Evolve: return "evolve";
    case TaskKind::Steady: return "steady";
    case TaskKind::Spectrum: return "spectrum";
    case TaskKind::GateMetrics: return "gate-metrics";
    case TaskKind::KerrOverlap: return "kerr-overlap";
    case TaskKind::Dressed: return "dressed";
    case TaskKind::Milestones: return "milestones";
  }
  return "unknown";
}

std::vector<double> parse_grid(const Json& j, const std::string& path) {
  if (j.is_number()) return {Fields::as_number(j, path)};
  if (j.is_array()) {
    if (j.empty()) throw ScenarioError(path, "must not be empty");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.push_back(Fields::as_number(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
  }
  Fields f(j, path);
  const double start = f.number("start"), stop = f.number("stop");
  const std::string spacing = f.string("spacing", "linear");
  const Json* step = f.find("step");
  const Json* count = f.find("count");
  f.finish();
  if (spacing != "linear" && spacing != "log") {
    throw ScenarioError(f.at("spacing"), "expected \"linear\" or \"log\"");
  }
  if ((step == nullptr) == (count == nullptr)) {
    throw ScenarioError(path, "give exactly one of 'step' and 'count'");
  }
  if (step != nullptr) {
    if (spacing == "log") throw ScenarioError(f.at("step"), "log spacing takes 'count'");
    const double h = Fields::as_number(*step, f.at("step"));
    if (!(h > 0.0) || !(stop >= start)) {
      throw ScenarioError(path, "need step > 0 and stop >= start");
    }
    if ((stop - start) / h > 1e7) throw ScenarioError(path, "more than 1e7 grid points");
    return linear_grid(start, stop, h);
  }
  const long long n = Fields::as_integer(*count, f.at("count"));
  if (n < 1 || n > 10'000'000) throw ScenarioError(f.at("count"), "must be in [1, 1e7]");
  if (spacing == "log" && !(start > 0.0 && stop > 0.0)) {
    throw ScenarioError(path, "log spacing needs positive start and stop");
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    const double u = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    out[static_cast<std::size_t>(i)] =
        spacing == "log" ? std::exp(std::log(start) + u * (std::log(stop) - std::log(start)))
                         : start + u * (stop - start);
  }
  out.front() = start;
  if (n > 1) out.back() = stop;
  return out;
}

Scenario parse_scenario(const Json& doc) {
  Fields f(doc, "");
  Scenario sc;
  sc.name = f.string("name", "");
  if (sc.name.empty()) throw ScenarioError("name", "required field is missing");
  f.require("task");
  f.find("system");

  std::vector<double> sweep_values;
  if (const Json* sw = f.find("sweep")) {
    Fields sf(*sw, "sweep");
    const std::string param = sf.string("parameter", "");
    if (param.empty()) throw ScenarioError("sweep.parameter", "required field is missing");
    sweep_values = parse_grid(sf.require("values"), "sweep.values");
    sf.finish();
    if (!param.starts_with("system.") && !param.starts_with("task.")) {
      throw ScenarioError("sweep.parameter", "must start with 'system.' or 'task.'");
    }
    const auto ptr = pointer_for(param);
    if (!doc.contains(ptr)) {
      throw ScenarioError("sweep.parameter", "'" + param + "' does not name an existing field");
    }
    if (!doc.at(ptr).is_number()) {
      throw ScenarioError("sweep.parameter", "'" + param + "' must name a numeric field");
    }
    sc.sweep_parameter = param;
  }

  if (const Json* out = f.find("output")) {
    Fields of(*out, "output");
    const std::string format = of.string("format", "csv");
    if (format == "csv") sc.format = OutputFormat::Csv;
    else if (format == "json") sc.format = OutputFormat::Json;
    else throw ScenarioError("output.format", "expected \"csv\" or \"json\"");
    sc.output_path = of.string("path", "");
    of.finish();
  }
  f.finish();

  if (!sc.sweep_parameter) {
    sc.points.push_back(parse_point(doc));
  } else {
    const auto ptr = pointer_for(*sc.sweep_parameter);
    Json point = doc;
    sc.points.reserve(sweep_values.size());
    for (double v : sweep_values) {
      point[ptr] = v;
      RunPoint p = parse_point(point);
      p.sweep_value = v;
      sc.points.push_back(std::move(p));
    }
  }
  sc.kind = sc.points.front().task.kind;
  return sc;
}

}  // namespace eitsim::cli
