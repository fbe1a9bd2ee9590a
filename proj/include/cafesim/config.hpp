#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "cafesim/analysis.hpp"
#include "cafesim/model.hpp"

namespace cafesim {

/// Parses a scenario document, normalizing paper-friendly units to SI
/// (kgf -> N, mm -> m, degrees -> radians) and validating every invariant.
/// Unknown keys raise ConfigError naming the key; invariant violations
/// raise ValidationError naming the field and bound.
Scenario load_scenario(const nlohmann::json& doc);
Scenario load_scenario_file(const std::filesystem::path& path);

/// Schema parse and unit normalization only — no invariant validation.
/// Lets a front-end list every violation via validate().
Scenario parse_scenario(const nlohmann::json& doc);
Scenario parse_scenario_file(const std::filesystem::path& path);

/// Serializes in canonical SI form; load_scenario(to_json(s)) == s
/// field-wise, and normalization is idempotent.
nlohmann::json to_json(const Scenario& scenario);
std::string to_json_string(const Scenario& scenario);

/// Sweep grid documents for the sweep front-end.
SweepSpec load_sweep_spec(const nlohmann::json& doc);
SweepSpec load_sweep_spec_file(const std::filesystem::path& path);
nlohmann::json to_json(const SweepSpec& spec);

/// The bench-rig scenario: 1.5 m span, measured cable stiffness
/// 18148.5 N/m, 60 kgf pretension on each of six load-bearing cables, two
/// 1.4 kg platforms near midspan, 105 mm/s drive surface speed, 0.3 s
/// switch latency, horizontal run, empty timeline.
Scenario default_paper_scenario();

/// Rated drive surface speed of the stock roller motor (m/s); the default
/// scenario drives below it.
inline constexpr double kRatedSurfaceSpeed = 0.120;

}  // namespace cafesim
