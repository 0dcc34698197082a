#include "usblnav/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "usblnav/rng.hpp"

namespace usblnav {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Thrown by value converters; the parser adds file/line context.
struct BadValue {
  std::string what;
};

double to_double(std::string_view v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end) throw BadValue{"expected a number, got '" + std::string(v) + "'"};
  return out;
}

template <typename Int>
Int to_int(std::string_view v) {
  Int out = 0;
  const auto* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end) throw BadValue{"expected an integer, got '" + std::string(v) + "'"};
  return out;
}

bool to_bool(std::string_view v) {
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw BadValue{"expected true/false, got '" + std::string(v) + "'"};
}

template <typename T, typename F>
std::vector<T> to_list(std::string_view v, F conv) {
  std::vector<T> out;
  while (true) {
    const auto comma = v.find(',');
    const auto item = trim(v.substr(0, comma));
    if (item.empty()) throw BadValue{"empty list element"};
    out.push_back(conv(item));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

// Shortest text that parses back to the same double.
std::string fmt(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct Field {
  const char* section;
  const char* key;
  std::function<void(SimConfig&, std::string_view)> set;
  std::function<std::string(const SimConfig&)> get;
};

#define USBLNAV_NUM(SEC, KEY, MEMBER)                                     \
  Field {                                                                 \
    SEC, KEY, [](SimConfig& c, std::string_view v) { c.MEMBER = to_double(v); }, \
        [](const SimConfig& c) { return fmt(c.MEMBER); }                  \
  }
#define USBLNAV_INT(SEC, KEY, MEMBER, TYPE)                                      \
  Field {                                                                        \
    SEC, KEY, [](SimConfig& c, std::string_view v) { c.MEMBER = to_int<TYPE>(v); }, \
        [](const SimConfig& c) { return std::to_string(c.MEMBER); }              \
  }
#define USBLNAV_DEG(SEC, KEY, MEMBER)                                                \
  Field {                                                                            \
    SEC, KEY, [](SimConfig& c, std::string_view v) { c.MEMBER = deg2rad(to_double(v)); }, \
        [](const SimConfig& c) { return fmt(rad2deg(c.MEMBER)); }                    \
  }
#define USBLNAV_BOOL(SEC, KEY, MEMBER)                                     \
  Field {                                                                  \
    SEC, KEY, [](SimConfig& c, std::string_view v) { c.MEMBER = to_bool(v); }, \
        [](const SimConfig& c) { return std::string(c.MEMBER ? "true" : "false"); } \
  }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      USBLNAV_NUM("scenario", "L", side),
      USBLNAV_INT("scenario", "n_auv", n_auv, int),
      USBLNAV_NUM("scenario", "duration", duration),
      USBLNAV_NUM("scenario", "tick_rate", tick_rate),
      USBLNAV_INT("scenario", "seed", seed, std::uint64_t),
      USBLNAV_NUM("scenario", "depth", depth),
      USBLNAV_NUM("scenario", "track_spacing", track_spacing),
      Field{"scenario", "first_leg",
            [](SimConfig& c, std::string_view v) {
              if (v == "neg_x") c.first_leg = FirstLeg::kNegativeX;
              else if (v == "pos_x") c.first_leg = FirstLeg::kPositiveX;
              else throw BadValue{"expected neg_x or pos_x, got '" + std::string(v) + "'"};
            },
            [](const SimConfig& c) { return std::string(c.first_leg == FirstLeg::kNegativeX ? "neg_x" : "pos_x"); }},
      USBLNAV_NUM("scenario", "plan_length", plan_length),

      USBLNAV_INT("formation", "n_asv", n_asv, int),
      USBLNAV_NUM("formation", "r_hf", r_hf),
      USBLNAV_NUM("formation", "delta_b", delta_b),
      USBLNAV_DEG("formation", "alpha0_deg", alpha0),
      USBLNAV_NUM("formation", "asv_jitter", asv_jitter),

      USBLNAV_NUM("acoustic", "sigma_r", noise.sigma_r),
      USBLNAV_DEG("acoustic", "sigma_theta_deg", noise.sigma_theta),
      USBLNAV_DEG("acoustic", "sigma_phi_deg", noise.sigma_phi),
      Field{"acoustic", "sound_speed",
            [](SimConfig& c, std::string_view v) { c.noise.sound_speed = c.timing.sound_speed = to_double(v); },
            [](const SimConfig& c) { return fmt(c.noise.sound_speed); }},
      USBLNAV_NUM("acoustic", "loss_a", loss.a),
      USBLNAV_NUM("acoustic", "loss_b", loss.b),
      USBLNAV_NUM("acoustic", "loss_c0", loss.c0),
      USBLNAV_NUM("acoustic", "loss_d", loss.d),
      USBLNAV_NUM("acoustic", "loss_r_clip", loss.r_clip),
      USBLNAV_NUM("acoustic", "p_col", loss.p_col),
      USBLNAV_NUM("acoustic", "p_cap", loss.p_cap),
      Field{"acoustic", "contention",
            [](SimConfig& c, std::string_view v) {
              if (v == "fleet") c.contention = ContentionMode::kFleet;
              else if (v == "group") c.contention = ContentionMode::kGroup;
              else throw BadValue{"expected fleet or group, got '" + std::string(v) + "'"};
            },
            [](const SimConfig& c) { return std::string(c.contention == ContentionMode::kFleet ? "fleet" : "group"); }},

      USBLNAV_NUM("timing", "ping_duration", timing.ping_duration),
      USBLNAV_NUM("timing", "guard_factor_ul", timing.guard_factor_ul),
      USBLNAV_NUM("timing", "min_slot_factor_ul", timing.min_slot_factor_ul),
      USBLNAV_NUM("timing", "guard_factor_dl", timing.guard_factor_dl),
      USBLNAV_NUM("timing", "min_slot_factor_dl", timing.min_slot_factor_dl),
      USBLNAV_NUM("timing", "downlink_rate", timing.downlink_rate),
      USBLNAV_NUM("timing", "overhead", timing.overhead),
      USBLNAV_INT("timing", "header_bytes", timing.header_bytes, int),
      USBLNAV_INT("timing", "fix_bytes", timing.fix_bytes, int),
      USBLNAV_NUM("timing", "r_mf", timing.r_mf),
      Field{"timing", "pacing",
            [](SimConfig& c, std::string_view v) {
              if (v == "mf_paced") c.pacing = UplinkPacing::kMfPaced;
              else if (v == "immediate") c.pacing = UplinkPacing::kImmediate;
              else throw BadValue{"expected mf_paced or immediate, got '" + std::string(v) + "'"};
            },
            [](const SimConfig& c) { return std::string(c.pacing == UplinkPacing::kMfPaced ? "mf_paced" : "immediate"); }},

      USBLNAV_NUM("nav", "bias_x", nav.bias.x),
      USBLNAV_NUM("nav", "bias_y", nav.bias.y),
      USBLNAV_NUM("nav", "sigma", nav.sigma),
      USBLNAV_NUM("nav", "sigma_z", nav.sigma_z),
      USBLNAV_NUM("nav", "gamma", nav.gamma),

      USBLNAV_NUM("guidance", "cruise_speed", guidance.cruise_speed),
      USBLNAV_NUM("guidance", "capture_radius", guidance.capture_radius),
      USBLNAV_NUM("guidance", "max_yaw_rate", guidance.max_yaw_rate),

      Field{"engine", "graph_source",
            [](SimConfig& c, std::string_view v) {
              if (v == "truth") c.graph_source = GraphSource::kTruth;
              else if (v == "last_fix") c.graph_source = GraphSource::kLastFix;
              else throw BadValue{"expected truth or last_fix, got '" + std::string(v) + "'"};
            },
            [](const SimConfig& c) { return std::string(c.graph_source == GraphSource::kTruth ? "truth" : "last_fix"); }},
      USBLNAV_BOOL("engine", "usbl_enabled", usbl_enabled),
      USBLNAV_BOOL("engine", "truth_guidance", truth_guidance),
  };
  return table;
}

#undef USBLNAV_NUM
#undef USBLNAV_INT
#undef USBLNAV_DEG
#undef USBLNAV_BOOL

void set_sweep_key(SweepSpec& s, std::string_view key, std::string_view v) {
  if (key == "L") s.side = to_list<double>(v, to_double);
  else if (key == "n_auv") s.n_auv = to_list<int>(v, to_int<int>);
  else if (key == "n_asv") s.n_asv = to_list<int>(v, to_int<int>);
  else if (key == "alpha0_deg") s.alpha0_deg = to_list<double>(v, to_double);
  else if (key == "seeds") s.seeds = to_int<int>(v);
  else if (key == "collapse_angles") s.collapse_angles = to_bool(v);
  else throw BadValue{"unknown key 'sweep." + std::string(key) + "'"};
}

}  // namespace

void SweepSpec::validate() const {
  if (side.empty()) throw std::invalid_argument("sweep.L must not be empty");
  if (n_auv.empty()) throw std::invalid_argument("sweep.n_auv must not be empty");
  if (n_asv.empty()) throw std::invalid_argument("sweep.n_asv must not be empty");
  if (alpha0_deg.empty()) throw std::invalid_argument("sweep.alpha0_deg must not be empty");
  if (seeds < 1) throw std::invalid_argument("sweep.seeds must be >= 1");
  for (const double l : side)
    if (!(l > 0.0)) throw std::invalid_argument("sweep.L values must be > 0");
  for (const int n : n_auv)
    if (n < 1) throw std::invalid_argument("sweep.n_auv values must be >= 1");
  for (const int n : n_asv)
    if (n < 1) throw std::invalid_argument("sweep.n_asv values must be >= 1");
}

ConfigFile parse_config(std::string_view text, std::string_view origin) {
  ConfigFile out;
  std::string section;
  std::set<std::string> seen;
  std::set<std::string> sections;
  const std::set<std::string> known = {"scenario", "formation", "acoustic", "timing",
                                       "nav",      "guidance",  "engine",   "sweep"};
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) -> ConfigError {
    return ConfigError(std::string(origin) + ":" + std::to_string(line_no) + ": " + msg);
  };

  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw fail("malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known.count(section)) throw fail("unknown section [" + section + "]");
      if (!sections.insert(section).second) throw fail("duplicate section [" + section + "]");
      if (section == "sweep") out.has_sweep = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw fail("expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (section.empty()) throw fail("key '" + std::string(key) + "' outside any section");
    if (key.empty()) throw fail("missing key");
    if (value.empty()) throw fail("missing value for '" + section + "." + std::string(key) + "'");
    const std::string full = section + "." + std::string(key);
    if (!seen.insert(full).second) throw fail("duplicate key '" + full + "'");

    try {
      if (section == "sweep") {
        set_sweep_key(out.sweep, key, value);
        continue;
      }
      const auto& table = fields();
      const auto it = std::find_if(table.begin(), table.end(),
                                   [&](const Field& f) { return section == f.section && key == f.key; });
      if (it == table.end()) throw fail("unknown key '" + full + "'");
      it->set(out.sim, value);
    } catch (const BadValue& e) {
      throw fail(full + ": " + e.what);
    }
  }

  out.sim.timing.tick_rate = out.sim.tick_rate;
  out.sim.noise.r_max = out.sim.r_hf;
  try {
    out.sim.validate();
    out.sweep.base = out.sim;
    if (out.has_sweep) out.sweep.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(origin) + ": " + e.what());
  }
  return out;
}

ConfigFile load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::string to_ini(const SimConfig& cfg) {
  std::string out;
  std::string section;
  for (const auto& f : fields()) {
    if (section != f.section) {
      if (!section.empty()) out += '\n';
      section = f.section;
      out += "[" + section + "]\n";
    }
    out += std::string(f.key) + " = " + f.get(cfg) + "\n";
  }
  return out;
}

std::string config_hash(const SimConfig& cfg) {
  SimConfig c = cfg;
  c.seed = 0;
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(to_ini(c))));
  return buf;
}

}  // namespace usblnav
