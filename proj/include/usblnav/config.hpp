#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "usblnav/engine.hpp"

namespace usblnav {

/// Parse or validation failure, prefixed "<file>:<line>: " when a line is known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Experiment grid. Each cell runs `seeds` seeds starting at base.seed.
struct SweepSpec {
  std::vector<double> side{60.0};
  std::vector<int> n_auv{4};
  std::vector<int> n_asv{1};
  std::vector<double> alpha0_deg{0.0};
  int seeds = 1;
  bool collapse_angles = true;  ///< a lone ASV has no orientation: run one angle only
  SimConfig base;

  void validate() const;
};

struct ConfigFile {
  SimConfig sim;
  SweepSpec sweep;
  bool has_sweep = false;
};

/// INI-style text:
///   [section]
///   key = value      # comment
/// Sections: scenario, formation, acoustic, timing, nav, guidance, engine, sweep.
/// Unknown sections or keys, duplicate keys and malformed values are errors.
ConfigFile parse_config(std::string_view text, std::string_view origin = "<config>");
ConfigFile load_config(const std::string& path);

/// Every tunable key with its current value, in parse order. Feeding the
/// output back through parse_config reproduces `cfg` (seed included).
std::string to_ini(const SimConfig& cfg);

/// Stable 16-hex-digit digest of every setting except the seed.
std::string config_hash(const SimConfig& cfg);

}  // namespace usblnav
