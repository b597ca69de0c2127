#include "scatterlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace scatterlab {

ConeRegion ConeConfig::build(int dim) const {
  if (kind == "full") return ConeRegion::full_space(dim, id);
  if (kind == "half_line") {
    if (dim != 1) throw std::invalid_argument("cone '" + id + "': half_line needs dim 1");
    return ConeRegion::half_line(sign, id);
  }
  if (kind == "sector") {
    if (dim != 2) throw std::invalid_argument("cone '" + id + "': sector needs dim 2");
    if (half_angle > 0.0)
      return ConeRegion::sector_about({axis[0], axis[1]}, half_angle, id);
    return ConeRegion::sector(theta_min, theta_max, id);
  }
  if (kind == "axial") {
    if (dim != 3) throw std::invalid_argument("cone '" + id + "': axial needs dim 3");
    return ConeRegion::axial(axis, half_angle, id);
  }
  throw std::invalid_argument("cone '" + id + "': unknown kind '" + kind + "'");
}

double ExperimentConfig::dt_effective() const {
  if (dt > 0.0) return dt;
  if (potential.is_zero()) return frame_dt;  // split-step is exact for V = 0
  double raw = 0.005 * dx() * dx();
  long sub = std::lround(std::ceil(frame_dt / raw));
  if (sub < 1) sub = 1;
  return frame_dt / static_cast<double>(sub);
}

double ExperimentConfig::k_max() const {
  double k2 = 0.0;
  for (int a = 0; a < dim; ++a) k2 += k0[a] * k0[a];
  return std::sqrt(k2) + 5.0 / (2.0 * sigma);
}

std::vector<double> ExperimentConfig::ks_check_times() const {
  // Equally spaced targets in (t0, t_final], snapped to frame times.
  std::vector<double> out;
  double span = t_final - t0;
  for (int i = 1; i <= ks_times; ++i) {
    double target = t0 + span * i / ks_times;
    long f = std::lround((target - t0) / frame_dt);
    if (f < 1) f = 1;
    double snapped = t0 + f * frame_dt;
    if (out.empty() || snapped > out.back() + 0.5 * frame_dt) out.push_back(snapped);
  }
  return out;
}

std::vector<double> ExperimentConfig::default_window_flats() const {
  std::vector<double> flats;
  double span = t_final - t0;
  double std_flat = t_final - std::max(1.0, 0.025 * span);
  double wide_flat = 0.5 * (t0 + t_final);
  for (const auto& w : windows) {
    if (w.t_flat > 0.0)
      flats.push_back(w.t_flat);
    else
      flats.push_back(w.name == "wide" ? wide_flat : std_flat);
  }
  return flats;
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_array(const double* v, int n) {
  std::string s = "[";
  for (int i = 0; i < n; ++i) {
    if (i) s += ", ";
    s += fmt_double(v[i]);
  }
  return s + "]";
}

const char* potential_kind_name(Potential::Kind k) {
  switch (k) {
    case Potential::Kind::zero: return "zero";
    case Potential::Kind::constant: return "constant";
    case Potential::Kind::gaussian_bump: return "gaussian_bump";
    case Potential::Kind::soft_power: return "soft_power";
  }
  return "zero";
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

bool parse_long(const std::string& s, long long& out) {
  try {
    std::size_t pos = 0;
    out = std::stoll(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

bool parse_bool(const std::string& s, bool& out) {
  if (s == "true" || s == "1") { out = true; return true; }
  if (s == "false" || s == "0") { out = false; return true; }
  return false;
}

bool parse_array(const std::string& s, std::vector<double>& out) {
  std::string t = trim(s);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') return false;
  out.clear();
  std::string body = t.substr(1, t.size() - 2);
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) return false;
    double v;
    if (!parse_double(item, v)) return false;
    out.push_back(v);
  }
  return !out.empty() || trim(body).empty();
}

bool parse_axis3(const std::string& s, std::array<double, 3>& out) {
  std::vector<double> v;
  if (!parse_array(s, v) || v.empty() || v.size() > 3) return false;
  out = {0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return true;
}

// Applies one key = value pair; returns false for unknown keys, records a
// message for malformed values.
bool apply_key(ExperimentConfig& c, const std::string& key, const std::string& val,
               std::vector<std::string>& errors) {
  auto bad = [&](const char* what) {
    errors.push_back("bad value for " + key + ": " + what);
    return true;
  };
  double d;
  long long l;
  bool b;
  if (key == "dim") return parse_long(val, l) ? (c.dim = static_cast<int>(l), true) : bad("int");
  if (key == "n") return parse_long(val, l) ? (c.n = static_cast<int>(l), true) : bad("int");
  if (key == "length") return parse_double(val, d) ? (c.length = d, true) : bad("number");
  if (key == "x0") return parse_axis3(val, c.x0) ? true : bad("array");
  if (key == "k0") return parse_axis3(val, c.k0) ? true : bad("array");
  if (key == "sigma") return parse_double(val, d) ? (c.sigma = d, true) : bad("number");
  if (key == "potential.kind") {
    if (val == "zero") c.potential.kind = Potential::Kind::zero;
    else if (val == "constant") c.potential.kind = Potential::Kind::constant;
    else if (val == "gaussian_bump") c.potential.kind = Potential::Kind::gaussian_bump;
    else if (val == "soft_power") c.potential.kind = Potential::Kind::soft_power;
    else return bad("zero|constant|gaussian_bump|soft_power");
    return true;
  }
  if (key == "potential.v0") return parse_double(val, d) ? (c.potential.v0 = d, true) : bad("number");
  if (key == "potential.width") return parse_double(val, d) ? (c.potential.width = d, true) : bad("number");
  if (key == "potential.power") return parse_double(val, d) ? (c.potential.power = d, true) : bad("number");
  if (key == "potential.center") return parse_axis3(val, c.potential.center) ? true : bad("array");
  if (key == "dt") return parse_double(val, d) ? (c.dt = d, true) : bad("number");
  if (key == "frame_dt") return parse_double(val, d) ? (c.frame_dt = d, true) : bad("number");
  if (key == "t0") return parse_double(val, d) ? (c.t0 = d, true) : bad("number");
  if (key == "t_final") return parse_double(val, d) ? (c.t_final = d, true) : bad("number");
  if (key == "n_paths") return parse_long(val, l) ? (c.n_paths = static_cast<int>(l), true) : bad("int");
  if (key == "seed") return parse_long(val, l) ? (c.seed = static_cast<std::uint64_t>(l), true) : bad("int");
  if (key == "mode") {
    if (val == "nelson") c.mode = DriftMode::nelson;
    else if (val == "bohmian") c.mode = DriftMode::bohmian;
    else return bad("nelson|bohmian");
    return true;
  }
  if (key == "convention") {
    if (val == "half") c.convention = DriftConvention::half;
    else if (val == "paper_literal") c.convention = DriftConvention::paper_literal;
    else return bad("half|paper_literal");
    return true;
  }
  if (key == "sde_substeps") return parse_long(val, l) ? (c.sde_substeps = static_cast<int>(l), true) : bad("int");
  if (key == "sample_stride") return parse_long(val, l) ? (c.sample_stride = static_cast<int>(l), true) : bad("int");
  if (key == "drift_eps_rel") return parse_double(val, d) ? (c.drift_eps_rel = d, true) : bad("number");
  if (key.rfind("cone.", 0) == 0) {
    std::size_t dot = key.find('.', 5);
    if (dot == std::string::npos) return false;
    long long idx;
    if (!parse_long(key.substr(5, dot - 5), idx) || idx < 0 || idx > 15) return bad("cone index");
    std::string field = key.substr(dot + 1);
    if (c.cones.size() <= static_cast<std::size_t>(idx))
      c.cones.resize(idx + 1);
    ConeConfig& cc = c.cones[idx];
    if (field == "id") return (cc.id = val, true);
    if (field == "kind") return (cc.kind = val, true);
    if (field == "sign") return parse_long(val, l) ? (cc.sign = static_cast<int>(l), true) : bad("int");
    if (field == "theta_min") return parse_double(val, d) ? (cc.theta_min = d, true) : bad("number");
    if (field == "theta_max") return parse_double(val, d) ? (cc.theta_max = d, true) : bad("number");
    if (field == "axis") return parse_axis3(val, cc.axis) ? true : bad("array");
    if (field == "half_angle") return parse_double(val, d) ? (cc.half_angle = d, true) : bad("number");
    return false;
  }
  if (key == "r_list") {
    std::vector<double> v;
    return parse_array(val, v) ? (c.r_list = v, true) : bad("array");
  }
  if (key == "r_outer") return parse_double(val, d) ? (c.r_outer = d, true) : bad("number");
  if (key == "quad_m") return parse_long(val, l) ? (c.quad_m = static_cast<int>(l), true) : bad("int");
  if (key == "ball_radius") return parse_double(val, d) ? (c.ball_radius = d, true) : bad("number");
  if (key == "collar_delta") return parse_double(val, d) ? (c.collar_delta = d, true) : bad("number");
  if (key.rfind("window.", 0) == 0) {
    std::size_t dot = key.find('.', 7);
    if (dot == std::string::npos) return false;
    long long idx;
    if (!parse_long(key.substr(7, dot - 7), idx) || idx < 0 || idx > 15) return bad("window index");
    std::string field = key.substr(dot + 1);
    if (c.windows.size() <= static_cast<std::size_t>(idx))
      c.windows.resize(idx + 1);
    WindowConfig& wc = c.windows[idx];
    if (field == "name") return (wc.name = val, true);
    if (field == "t_flat") return parse_double(val, d) ? (wc.t_flat = d, true) : bad("number");
    return false;
  }
  if (key == "ks_times") return parse_long(val, l) ? (c.ks_times = static_cast<int>(l), true) : bad("int");
  if (key == "ks_alpha") return parse_double(val, d) ? (c.ks_alpha = d, true) : bad("number");
  if (key == "out_dir") return (c.out_dir = val, true);
  if (key == "dump_frames") return parse_bool(val, b) ? (c.dump_frames = b, true) : bad("bool");
  if (key == "dump_frame_stride") return parse_long(val, l) ? (c.dump_frame_stride = static_cast<int>(l), true) : bad("int");
  if (key == "dump_ensemble") return (c.dump_ensemble = val, true);
  if (key == "compare_free_oracle") return parse_bool(val, b) ? (c.compare_free_oracle = b, true) : bad("bool");
  if (key == "oracle_stride") return parse_long(val, l) ? (c.oracle_stride = static_cast<int>(l), true) : bad("int");
  if (key == "band_stat") return parse_double(val, d) ? (c.band_stat = d, true) : bad("number");
  if (key == "band_energy_rel") return parse_double(val, d) ? (c.band_energy_rel = d, true) : bad("number");
  if (key == "band_out_l1") return parse_double(val, d) ? (c.band_out_l1 = d, true) : bad("number");
  return false;
}

}  // namespace

std::string ExperimentConfig::canonical_text() const {
  std::map<std::string, std::string> kv;
  kv["preset"] = preset;
  kv["dim"] = std::to_string(dim);
  kv["n"] = std::to_string(n);
  kv["length"] = fmt_double(length);
  kv["x0"] = fmt_array(x0.data(), dim);
  kv["k0"] = fmt_array(k0.data(), dim);
  kv["sigma"] = fmt_double(sigma);
  kv["potential.kind"] = potential_kind_name(potential.kind);
  kv["potential.v0"] = fmt_double(potential.v0);
  kv["potential.width"] = fmt_double(potential.width);
  kv["potential.power"] = fmt_double(potential.power);
  kv["potential.center"] = fmt_array(potential.center.data(), dim);
  kv["dt"] = fmt_double(dt);
  kv["frame_dt"] = fmt_double(frame_dt);
  kv["t0"] = fmt_double(t0);
  kv["t_final"] = fmt_double(t_final);
  kv["n_paths"] = std::to_string(n_paths);
  kv["seed"] = std::to_string(seed);
  kv["mode"] = to_string(mode);
  kv["convention"] = to_string(convention);
  kv["sde_substeps"] = std::to_string(sde_substeps);
  kv["sample_stride"] = std::to_string(sample_stride);
  kv["drift_eps_rel"] = fmt_double(drift_eps_rel);
  for (std::size_t i = 0; i < cones.size(); ++i) {
    std::string p = "cone." + std::to_string(i) + ".";
    kv[p + "id"] = cones[i].id;
    kv[p + "kind"] = cones[i].kind;
    kv[p + "sign"] = std::to_string(cones[i].sign);
    kv[p + "theta_min"] = fmt_double(cones[i].theta_min);
    kv[p + "theta_max"] = fmt_double(cones[i].theta_max);
    kv[p + "axis"] = fmt_array(cones[i].axis.data(), 3);
    kv[p + "half_angle"] = fmt_double(cones[i].half_angle);
  }
  {
    std::string s = "[";
    for (std::size_t i = 0; i < r_list.size(); ++i) {
      if (i) s += ", ";
      s += fmt_double(r_list[i]);
    }
    kv["r_list"] = s + "]";
  }
  kv["r_outer"] = fmt_double(r_outer);
  kv["quad_m"] = std::to_string(quad_m);
  kv["ball_radius"] = fmt_double(ball_radius);
  kv["collar_delta"] = fmt_double(collar_delta);
  for (std::size_t i = 0; i < windows.size(); ++i) {
    std::string p = "window." + std::to_string(i) + ".";
    kv[p + "name"] = windows[i].name;
    kv[p + "t_flat"] = fmt_double(windows[i].t_flat);
  }
  kv["ks_times"] = std::to_string(ks_times);
  kv["ks_alpha"] = fmt_double(ks_alpha);
  kv["out_dir"] = out_dir;
  kv["dump_frames"] = dump_frames ? "true" : "false";
  kv["dump_frame_stride"] = std::to_string(dump_frame_stride);
  kv["dump_ensemble"] = dump_ensemble;
  kv["compare_free_oracle"] = compare_free_oracle ? "true" : "false";
  kv["oracle_stride"] = std::to_string(oracle_stride);
  kv["band_stat"] = fmt_double(band_stat);
  kv["band_energy_rel"] = fmt_double(band_energy_rel);
  kv["band_out_l1"] = fmt_double(band_out_l1);

  std::string text;
  for (const auto& [k, v] : kv) text += k + " = " + v + "\n";
  return text;
}

std::uint64_t ExperimentConfig::hash() const {
  std::string text = canonical_text();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ExperimentConfig preset_config(const std::string& name) {
  ExperimentConfig c;
  c.preset = name;
  if (name == "free-1d") {
    c.dim = 1;
    c.n = 1024;
    c.length = 200.0;
    c.x0 = {0, 0, 0};
    c.k0 = {2, 0, 0};
    c.sigma = 1.0;
    c.frame_dt = 0.05;
    c.t0 = 1.0;
    c.t_final = 10.0;
    c.n_paths = 20000;
    c.sde_substeps = 4;
    c.sample_stride = 1;  // resolve crossings against the smallest R
    ConeConfig cone;
    cone.id = "right";
    cone.kind = "half_line";
    cone.sign = +1;
    c.cones = {cone};
    // Initial support (center 2 at t0, spread ~1.1) must sit inside the
    // smallest sphere or paths that start outside never log a crossing.
    c.r_list = {4, 5, 6};
    c.ball_radius = 10.0;
    c.compare_free_oracle = true;
    return c;
  }
  if (name == "free-2d-cone" || name == "bohmian-2d") {
    c.dim = 2;
    c.n = 1024;
    c.length = 576.0;
    c.x0 = {0, 0, 0};
    c.k0 = {2, 0, 0};
    c.sigma = 1.0;
    c.frame_dt = 0.1;
    c.t0 = 1.0;
    c.t_final = 40.0;
    c.n_paths = 20000;
    c.sde_substeps = 4;
    ConeConfig fwd;
    fwd.id = "fwd30";
    fwd.kind = "sector";
    fwd.axis = {1, 0, 0};
    fwd.half_angle = kPi / 6.0;
    ConeConfig side;
    side.id = "side10";
    side.kind = "sector";
    side.axis = {0, 1, 0};
    side.half_angle = kPi / 18.0;
    c.cones = {fwd, side};
    c.r_list = {20, 40, 60};
    c.ball_radius = 10.0;
    c.compare_free_oracle = true;
    if (name == "bohmian-2d") c.mode = DriftMode::bohmian;
    return c;
  }
  if (name == "bump-2d-cone") {
    c.dim = 2;
    c.n = 1024;
    c.length = 600.0;
    c.x0 = {-6, 0, 0};
    c.k0 = {2, 0, 0};
    c.sigma = 1.0;
    c.potential = Potential::gaussian_bump(1.0, 1.0);
    c.dt = 0.01;
    c.frame_dt = 0.1;
    c.t0 = 1.0;
    c.t_final = 40.0;
    c.n_paths = 20000;
    c.sde_substeps = 4;
    ConeConfig fwd;
    fwd.id = "fwd30";
    fwd.kind = "sector";
    fwd.axis = {1, 0, 0};
    fwd.half_angle = kPi / 6.0;
    ConeConfig side;
    side.id = "side10";
    side.kind = "sector";
    side.axis = {0, 1, 0};
    side.half_angle = kPi / 18.0;
    c.cones = {fwd, side};
    c.r_list = {20, 40, 60};
    c.ball_radius = 10.0;
    c.band_stat = 0.03;        // statistical identities get a wider allowance
    c.band_energy_rel = 1e-4;  // Strang error at dt = 0.01 with this bump
    c.band_out_l1 = 0.01;      // profile still settling between T/2 and T
    return c;
  }
  if (name == "free-3d-small") {
    c.dim = 3;
    c.n = 64;
    c.length = 56.0;
    c.x0 = {0, 0, 0};
    c.k0 = {0.8, 0, 0};
    c.sigma = 1.0;
    c.frame_dt = 0.05;
    c.t0 = 1.0;
    c.t_final = 4.0;
    c.n_paths = 4000;
    c.sde_substeps = 16;
    c.sample_stride = 1;
    ConeConfig cone;
    cone.id = "fwd30";
    cone.kind = "axial";
    cone.axis = {1, 0, 0};
    cone.half_angle = kPi / 6.0;
    c.cones = {cone};
    c.r_list = {2, 3, 4};
    c.ball_radius = 10.0;
    c.compare_free_oracle = true;
    c.band_stat = 0.05;  // small ensemble, short horizon
    return c;
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"free-1d", "free-2d-cone", "bump-2d-cone", "free-3d-small", "bohmian-2d"};
}

ExperimentConfig apply_config_text(const std::string& text,
                                   std::vector<std::string>& errors) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string preset;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    std::size_t hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.erase(hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty()) {
      errors.push_back("line " + std::to_string(lineno) + ": empty key");
      continue;
    }
    if (key == "preset")
      preset = val;
    else
      pairs.emplace_back(key, val);
  }

  ExperimentConfig cfg;
  if (!preset.empty()) {
    try {
      cfg = preset_config(preset);
    } catch (const std::invalid_argument& e) {
      errors.push_back(e.what());
    }
  }
  for (const auto& [key, val] : pairs)
    if (!apply_key(cfg, key, val, errors)) errors.push_back("unknown key: " + key);
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path,
                                  std::vector<std::string>& errors) {
  std::ifstream in(path);
  if (!in) {
    errors.push_back("cannot open config file: " + path);
    return {};
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return apply_config_text(buf.str(), errors);
}

std::vector<std::string> validate(const ExperimentConfig& c) {
  std::vector<std::string> v;
  auto err = [&](const std::string& m) { v.push_back(m); };

  if (c.dim < 1 || c.dim > 3) err("dim must be 1, 2, or 3");
  if (c.n < 8 || (c.n & (c.n - 1)) != 0) err("n must be a power of two >= 8");
  if (c.length <= 0.0) err("length must be positive");
  if (c.sigma <= 0.0) err("sigma must be positive");
  if (c.n_paths < 1) err("n_paths must be >= 1");
  if (c.sde_substeps < 1) err("sde_substeps must be >= 1");
  if (c.sample_stride < 0) err("sample_stride must be >= 0");
  if (c.quad_m < 1) err("quad_m must be >= 1");
  if (c.frame_dt <= 0.0) err("frame_dt must be positive");
  if (c.dim < 1 || c.dim > 3 || c.n < 8 || c.length <= 0.0 || c.sigma <= 0.0 ||
      c.frame_dt <= 0.0)
    return v;  // derived checks below would divide by zero

  // Time alignment.
  if (c.t0 <= 0.0) err("t0 must be positive");
  if (c.t_final <= c.t0) err("t_final must exceed t0");
  auto near_integer = [](double x) { return std::abs(x - std::lround(x)) < 1e-6; };
  if (!near_integer(c.t0 / c.frame_dt)) err("t0 must be a multiple of frame_dt");
  if (!near_integer((c.t_final - c.t0) / c.frame_dt))
    err("t_final - t0 must be a multiple of frame_dt");
  double dt = c.dt_effective();
  if (dt <= 0.0)
    err("dt must be positive");
  else if (!near_integer(c.frame_dt / dt))
    err("frame_dt must be a whole number of dt steps");

  // Spectral headroom.
  double k_nyq = kPi / c.dx();
  if (c.k_max() >= k_nyq)
    err("spectral support " + fmt_double(c.k_max()) + " exceeds the Nyquist limit " +
        fmt_double(k_nyq) + "; raise n or shrink k0/sigma");

  // Box sizing over the full horizon.
  double x0max = 0.0, k2 = 0.0;
  for (int a = 0; a < c.dim; ++a) {
    x0max = std::max(x0max, std::abs(c.x0[a]));
    k2 += c.k0[a] * c.k0[a];
  }
  double sig_k = 0.5 / c.sigma;
  double T = c.t_final;
  double spread_T =
      std::sqrt(c.sigma * c.sigma + T * T / (4.0 * c.sigma * c.sigma));
  double need = 2.0 * (x0max + (std::sqrt(k2) + 5.0 * sig_k) * T + 5.0 * spread_T);
  if (c.length < need)
    err("length " + fmt_double(c.length) + " is below the box-sizing bound " +
        fmt_double(need) + " for this horizon");

  // Geometry.
  if (c.cones.empty()) err("at least one cone is required");
  for (const auto& cc : c.cones) {
    try {
      (void)cc.build(c.dim);
    } catch (const std::invalid_argument& e) {
      err(e.what());
    }
  }
  {
    // Duplicate ids break report keying.
    for (std::size_t i = 0; i < c.cones.size(); ++i)
      for (std::size_t j = i + 1; j < c.cones.size(); ++j)
        if (c.cones[i].id == c.cones[j].id) err("duplicate cone id '" + c.cones[i].id + "'");
  }
  if (c.r_list.empty()) err("r_list must not be empty");
  double r_out = c.r_outer_effective();
  if (r_out > 0.5 * c.length) err("r_outer must not exceed length/2");
  for (double R : c.r_list) {
    if (R <= 0.0) err("radii must be positive");
    else if (R >= r_out) err("radius " + fmt_double(R) + " must stay below r_outer " + fmt_double(r_out));
  }
  if (c.ball_radius <= 0.0 || c.ball_radius > 0.5 * c.length)
    err("ball_radius must lie in (0, length/2]");
  if (c.collar_delta <= 0.0) err("collar_delta must be positive");

  // Windows.
  if (c.windows.empty()) err("at least one window is required");
  for (std::size_t i = 0; i < c.windows.size(); ++i)
    for (std::size_t j = i + 1; j < c.windows.size(); ++j)
      if (c.windows[i].name == c.windows[j].name)
        err("duplicate window name '" + c.windows[i].name + "'");
  for (const auto& w : c.windows)
    if (w.t_flat > 0.0 && (w.t_flat <= c.t0 || w.t_flat >= c.t_final))
      err("window '" + w.name + "': t_flat must lie inside (t0, t_final)");

  // Statistical checks.
  if (c.ks_times < 1) err("ks_times must be >= 1");
  if (c.ks_alpha <= 0.0 || c.ks_alpha >= 0.5) err("ks_alpha must lie in (0, 0.5)");

  // Segment-length resolvability of the stored path polylines: drift capped
  // at 0.5 dx per SDE step plus a 5-sigma noise allowance must stay under
  // half the smallest radius.
  if (!c.r_list.empty() && c.sde_substeps >= 1) {
    int stride = c.sample_stride_effective();
    double delta = c.sde_dt();
    double seg = 0.5 * c.dx() * stride +
                 5.0 * std::sqrt(stride * delta * static_cast<double>(c.dim));
    double r_min = *std::min_element(c.r_list.begin(), c.r_list.end());
    if (c.mode == DriftMode::nelson && seg > 0.5 * r_min)
      err("sampled segments may reach " + fmt_double(seg) +
          ", above half the smallest radius " + fmt_double(r_min) +
          "; lower sample_stride or raise sde_substeps");
  }

  if (c.dump_ensemble != "none" && c.dump_ensemble != "csv" &&
      c.dump_ensemble != "binary")
    err("dump_ensemble must be none, csv, or binary");
  if (c.oracle_stride < 1) err("oracle_stride must be >= 1");
  if (c.dump_frame_stride < 0) err("dump_frame_stride must be >= 0");
  if (c.band_stat <= 0.0) err("band_stat must be positive");
  if (c.band_energy_rel <= 0.0) err("band_energy_rel must be positive");
  if (c.band_out_l1 <= 0.0) err("band_out_l1 must be positive");

  return v;
}

}  // namespace scatterlab
