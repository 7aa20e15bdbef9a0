#include "pcfilm/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pcfilm/error.hpp"

namespace pcfilm {

using nlohmann::json;

const char* to_string(SolvePath path) noexcept { return path == SolvePath::Joint ? "joint" : "sequential"; }

SolvePath solve_path_from_string(const std::string& name) {
  if (name == "joint") return SolvePath::Joint;
  if (name == "sequential") return SolvePath::Sequential;
  throw Error(ErrorKind::InvalidArgument, "unknown solve path '" + name + "'");
}

const char* to_string(NonConvergencePolicy policy) noexcept {
  return policy == NonConvergencePolicy::Halt ? "halt" : "accept";
}

NonConvergencePolicy policy_from_string(const std::string& name) {
  if (name == "halt") return NonConvergencePolicy::Halt;
  if (name == "accept") return NonConvergencePolicy::Accept;
  throw Error(ErrorKind::InvalidArgument, "unknown non-convergence policy '" + name + "'");
}

KinematicState RunConfig::default_initial_state() {
  KinematicState s;
  s.e = {-0.2e-6, 0.2e-6, 0.2e-6, -0.2e-6};
  s.edot = {-3.78e-7, 3.78e-7, 3.78e-7, -3.78e-7};
  return s;
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::InvalidConfig, msg); }

// Counts and sizes: json converts -5 or 2.5 to size_t silently.
template <class T>
struct holds_unsigned : std::is_unsigned<T> {};
template <class T>
struct holds_unsigned<std::vector<T>> : holds_unsigned<T> {};
template <class A, class B>
struct holds_unsigned<std::pair<A, B>> : std::bool_constant<holds_unsigned<A>::value || holds_unsigned<B>::value> {};
template <>
struct holds_unsigned<bool> : std::false_type {};

bool all_numbers_unsigned(const json& j) {
  if (j.is_number()) return j.is_number_unsigned();
  if (j.is_array()) {
    for (const json& e : j)
      if (!all_numbers_unsigned(e)) return false;
  }
  return true;
}

// Reads the keys of one object and rejects anything it was not asked for.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_ + ": expected an object");
  }

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    if constexpr (holds_unsigned<T>::value) {
      if (!all_numbers_unsigned(*it)) fail(path_ + "." + key + ": expected non-negative integers");
    }
    try {
      out = it->template get<T>();
    } catch (const json::exception&) {
      fail(path_ + "." + key + ": wrong type");
    }
  }

  template <class T, class F>
  void get_enum(const char* key, T& out, F&& from_string) {
    std::string name;
    bool present = j_.contains(key);
    get(key, name);
    if (!present) return;
    try {
      out = from_string(name);
    } catch (const Error& e) {
      fail(path_ + "." + key + ": " + e.what());
    }
  }

  const json* child(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) fail(path_ + ": unknown key '" + it.key() + "'");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_vec4(Section& s, const char* key, Vec4& out, const std::string& path) {
  std::vector<double> v(out.begin(), out.end());
  s.get(key, v);
  if (v.size() != 4) fail(path + "." + key + ": expected 4 numbers");
  for (int k = 0; k < 4; ++k) out[k] = v[k];
}

const char* law_name(CouplingLengthLaw law) { return law == CouplingLengthLaw::Constant ? "constant" : "swashplate"; }

CouplingLengthLaw law_from_string(const std::string& s) {
  if (s == "constant") return CouplingLengthLaw::Constant;
  if (s == "swashplate") return CouplingLengthLaw::Swashplate;
  throw Error(ErrorKind::InvalidArgument, "unknown coupling-length law '" + s + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  RunConfig c;
  Section top(root, "config");

  if (const json* j = top.child("pump")) {
    Section s(*j, "pump");
    PumpConfig& p = c.pump;
    s.get("piston_radius", p.piston_radius);
    s.get("bore_radius", p.bore_radius);
    s.get("pitch_radius", p.pitch_radius);
    s.get("min_coupling_length", p.min_coupling_length);
    s.get("swashplate_angle", p.swashplate_angle);
    s.get("shaft_speed_rpm", p.shaft_speed_rpm);
    s.get("piston_mass", p.piston_mass);
    s.get("slipper_mass", p.slipper_mass);
    s.get("oil_viscosity", p.oil_viscosity);
    s.get("outlet_pressure", p.outlet_pressure);
    s.get("fd_step_e", p.fd_step_e);
    s.get("fd_step_edot", p.fd_step_edot);
    s.get_enum("coupling_law", p.coupling_law, law_from_string);
    s.finish();
  }
  if (const json* j = top.child("initial_state")) {
    Section s(*j, "initial_state");
    read_vec4(s, "e", c.initial_state.e, "initial_state");
    read_vec4(s, "edot", c.initial_state.edot, "initial_state");
    s.get("time", c.initial_state.time);
    s.finish();
  }
  if (const json* j = top.child("mesh")) {
    Section s(*j, "mesh");
    s.get("n_theta", c.mesh.n_theta);
    s.get("n_y", c.mesh.n_y);
    s.finish();
  }
  if (const json* j = top.child("texture")) {
    Section s(*j, "texture");
    s.get_enum("kind", c.texture.kind, texture_kind_from_string);
    s.get("depth", c.texture.depth);
    s.get("coverage", c.texture.coverage);
    s.finish();
  }
  if (const json* j = top.child("waveform")) {
    Section s(*j, "waveform");
    s.get_enum("shape", c.waveform.shape, waveform_shape_from_string);
    s.get("low", c.waveform.low);
    s.get("high", c.waveform.high);
    s.get("duty", c.waveform.duty);
    s.get("ramp", c.waveform.ramp);
    s.get("phase", c.waveform.phase);
    s.get("table", c.waveform.table);
    s.finish();
  }
  if (const json* j = top.child("solver")) {
    Section s(*j, "solver");
    SolverSettings& v = c.solver;
    s.get_enum("preconditioner", v.preconditioner, preconditioner_from_string);
    if (const json* w = s.child("omega")) {
      if (w->is_null()) {
        v.omega.reset();
      } else if (w->is_number()) {
        v.omega = w->get<double>();
      } else {
        fail("solver.omega: wrong type");
      }
    }
    s.get("tolerance", v.tolerance);
    s.get("max_iter", v.max_iter);
    s.get_enum("strategy", v.strategy, strategy_from_string);
    s.get("warm_start", v.warm_start);
    s.get_enum("path", v.path, solve_path_from_string);
    s.finish();
  }
  if (const json* j = top.child("dynamics")) {
    Section s(*j, "dynamics");
    DynamicsSettings& d = c.dynamics;
    s.get_enum("scheme", d.scheme, picard_scheme_from_string);
    s.get("periods", d.periods);
    s.get("steps_per_period", d.steps_per_period);
    s.get("eps_dyn", d.eps_dyn);
    s.get("max_picard", d.max_picard);
    s.get("snapshot_every_deg", d.snapshot_every_deg);
    s.get_enum("on_nonconvergence", d.on_nonconvergence, policy_from_string);
    s.get("positivity_backtracking", d.positivity_backtracking);
    s.finish();
  }
  if (const json* j = top.child("output")) {
    Section s(*j, "output");
    s.get("pressure", c.output.pressure);
    s.get("residuals", c.output.residuals);
    s.get("trace", c.output.trace);
    s.get("forces", c.output.forces);
    s.get("snapshots", c.output.snapshots);
    s.get("plots", c.output.plots);
    s.finish();
  }
  if (const json* j = top.child("sweep")) {
    Section s(*j, "sweep");
    std::vector<std::string> names;
    bool has_pre = j->contains("preconditioners");
    s.get("preconditioners", names);
    if (has_pre) {
      c.sweep.preconditioners.clear();
      for (const auto& n : names) {
        try {
          c.sweep.preconditioners.push_back(preconditioner_from_string(n));
        } catch (const Error& e) {
          fail(std::string("sweep.preconditioners: ") + e.what());
        }
      }
    }
    s.get("omegas", c.sweep.omegas);
    s.get("meshes", c.sweep.meshes);
    names.clear();
    bool has_tex = j->contains("textures");
    s.get("textures", names);
    if (has_tex) {
      c.sweep.textures.clear();
      for (const auto& n : names) {
        try {
          c.sweep.textures.push_back(texture_kind_from_string(n));
        } catch (const Error& e) {
          fail(std::string("sweep.textures: ") + e.what());
        }
      }
    }
    s.finish();
  }
  top.get("cavitation_floor", c.cavitation_floor);
  top.get("workers", c.workers);
  top.finish();
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

std::string serialize_config(const RunConfig& c) {
  json j;
  const PumpConfig& p = c.pump;
  j["pump"] = {{"piston_radius", p.piston_radius},
               {"bore_radius", p.bore_radius},
               {"pitch_radius", p.pitch_radius},
               {"min_coupling_length", p.min_coupling_length},
               {"swashplate_angle", p.swashplate_angle},
               {"shaft_speed_rpm", p.shaft_speed_rpm},
               {"piston_mass", p.piston_mass},
               {"slipper_mass", p.slipper_mass},
               {"oil_viscosity", p.oil_viscosity},
               {"outlet_pressure", p.outlet_pressure},
               {"fd_step_e", p.fd_step_e},
               {"fd_step_edot", p.fd_step_edot},
               {"coupling_law", law_name(p.coupling_law)}};
  j["initial_state"] = {{"e", c.initial_state.e}, {"edot", c.initial_state.edot}, {"time", c.initial_state.time}};
  j["mesh"] = {{"n_theta", c.mesh.n_theta}, {"n_y", c.mesh.n_y}};
  j["texture"] = {{"kind", to_string(c.texture.kind)}, {"depth", c.texture.depth}, {"coverage", c.texture.coverage}};
  j["waveform"] = {{"shape", to_string(c.waveform.shape)}, {"low", c.waveform.low},   {"high", c.waveform.high},
                   {"duty", c.waveform.duty},               {"ramp", c.waveform.ramp}, {"phase", c.waveform.phase},
                   {"table", c.waveform.table}};
  const SolverSettings& s = c.solver;
  j["solver"] = {{"preconditioner", to_string(s.preconditioner)},
                 {"omega", s.omega ? json(*s.omega) : json(nullptr)},
                 {"tolerance", s.tolerance},
                 {"max_iter", s.max_iter},
                 {"strategy", to_string(s.strategy)},
                 {"warm_start", s.warm_start},
                 {"path", to_string(s.path)}};
  const DynamicsSettings& d = c.dynamics;
  j["dynamics"] = {{"scheme", to_string(d.scheme)},
                   {"periods", d.periods},
                   {"steps_per_period", d.steps_per_period},
                   {"eps_dyn", d.eps_dyn},
                   {"max_picard", d.max_picard},
                   {"snapshot_every_deg", d.snapshot_every_deg},
                   {"on_nonconvergence", to_string(d.on_nonconvergence)},
                   {"positivity_backtracking", d.positivity_backtracking}};
  j["output"] = {{"pressure", c.output.pressure}, {"residuals", c.output.residuals},
                 {"trace", c.output.trace},       {"forces", c.output.forces},
                 {"snapshots", c.output.snapshots}, {"plots", c.output.plots}};
  std::vector<std::string> pre;
  for (auto k : c.sweep.preconditioners) pre.push_back(to_string(k));
  std::vector<std::string> tex;
  for (auto k : c.sweep.textures) tex.push_back(to_string(k));
  j["sweep"] = {{"preconditioners", pre}, {"omegas", c.sweep.omegas}, {"meshes", c.sweep.meshes}, {"textures", tex}};
  j["cavitation_floor"] = c.cavitation_floor;
  j["workers"] = c.workers;
  return j.dump(2) + "\n";
}

void RunConfig::validate() const {
  auto check = [](auto&& fn, const char* section) {
    try {
      fn();
    } catch (const Error& e) {
      fail(std::string(section) + ": " + e.what());
    }
  };
  check([&] { pump.validate(); }, "pump");
  check([&] { waveform.validate(); }, "waveform");
  check([&] { FilmMesh(mesh.n_theta, mesh.n_y, pump.min_coupling_length, pump.piston_radius).validate(); }, "mesh");
  if (!(texture.depth >= 0.0)) fail("texture.depth must be >= 0");
  if (!(texture.coverage > 0.0 && texture.coverage <= 1.0)) fail("texture.coverage must lie in (0, 1]");
  if (solver.omega && !(*solver.omega > 0.0 && *solver.omega < 2.0)) fail("solver.omega must lie in (0, 2)");
  if (!(solver.tolerance > 0.0)) fail("solver.tolerance must be positive");
  if (solver.max_iter == 0) fail("solver.max_iter must be positive");
  if (dynamics.steps_per_period == 0) fail("dynamics.steps_per_period must be positive");
  if (!(dynamics.eps_dyn > 0.0)) fail("dynamics.eps_dyn must be positive");
  if (dynamics.snapshot_every_deg > 360) fail("dynamics.snapshot_every_deg must not exceed 360");
  if (!(initial_state.time >= 0.0)) fail("initial_state.time must be >= 0");
  for (double w : sweep.omegas) {
    if (!(w > 0.0 && w < 2.0)) fail("sweep.omegas must lie in (0, 2)");
  }
  for (const auto& m : sweep.meshes) {
    if (m.first < 4 || m.second < 4) fail("sweep.meshes need at least 4x4 nodes");
  }
  if (workers < 0) fail("workers must be >= 0");
}

bool operator==(const RunConfig& a, const RunConfig& b) { return serialize_config(a) == serialize_config(b); }

}  // namespace pcfilm
