#pragma once

#include <string>

#include "usblnav/engine.hpp"

namespace usblnav {

/// Full report as pretty-printed JSON (event log and trace excluded).
std::string report_json(const MissionReport& rep, const SimConfig& cfg);

/// Per-AUV table with Fixes / Cov(%) / CTE(m) / Dist(m) columns plus a
/// fleet footer.
std::string summary_table(const MissionReport& rep);

}  // namespace usblnav
