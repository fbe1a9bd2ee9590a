#include "cafesim/config.hpp"

#include <fstream>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "cafesim/error.hpp"
#include "cafesim/units.hpp"

namespace cafesim {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.contains(key)) throw ConfigError(path + "." + key, "unknown key");
}

double number_at(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.contains(key)) throw ConfigError(path + "." + key, "missing required key");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(path + "." + key, "expected a number");
  return v.get<double>();
}

double number_or(const json& obj, const std::string& path, const std::string& key,
                 double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(path + "." + key, "expected a number");
  return v.get<double>();
}

// Pretension accepts a plain number (N), a "<value> N|kgf" string, or an
// object {value, unit}.
double parse_pretension(const json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  double value = 0.0;
  std::string unit;
  if (v.is_string()) {
    const auto text = v.get<std::string>();
    std::size_t consumed = 0;
    try {
      value = std::stod(text, &consumed);
    } catch (const std::exception&) {
      throw ConfigError(path, "cannot parse '" + text + "' as '<value> <unit>'");
    }
    while (consumed < text.size() && text[consumed] == ' ') ++consumed;
    unit = text.substr(consumed);
  } else if (v.is_object()) {
    check_keys(v, path, {"value", "unit"});
    value = number_at(v, path, "value");
    if (!v.contains("unit") || !v.at("unit").is_string())
      throw ConfigError(path + ".unit", "missing unit string");
    unit = v.at("unit").get<std::string>();
  } else {
    throw ConfigError(path, "expected a number, string or {value, unit} object");
  }
  if (unit == "N") return value;
  if (unit == "kgf") return units::kgf_to_newton(value);
  throw ConfigError(path, "unknown unit '" + unit + "' (expected N or kgf)");
}

CableSystemConfig parse_system(const json& doc) {
  CableSystemConfig config;

  if (!doc.contains("system")) throw ConfigError("system", "missing required section");
  const auto& sys = doc.at("system");
  check_keys(sys, "system",
             {"span_length_m", "stiffness_n_per_m", "pretension", "incline_deg",
              "incline_rad", "load_bearing_cables", "anchor_spacing_m"});
  config.span_length = number_at(sys, "system", "span_length_m");
  config.stiffness = number_at(sys, "system", "stiffness_n_per_m");
  if (!sys.contains("pretension"))
    throw ConfigError("system.pretension", "missing required key");
  config.pretension = parse_pretension(sys.at("pretension"), "system.pretension");
  if (sys.contains("incline_rad"))
    config.incline_angle = number_at(sys, "system", "incline_rad");
  else
    config.incline_angle = units::deg_to_rad(number_or(sys, "system", "incline_deg", 0.0));
  if (sys.contains("load_bearing_cables")) {
    const auto& v = sys.at("load_bearing_cables");
    if (!v.is_number_integer())
      throw ConfigError("system.load_bearing_cables", "expected an integer");
    config.load_bearing_cables = v.get<int>();
  }
  config.anchor_spacing = number_or(sys, "system", "anchor_spacing_m", 0.0);

  if (!doc.contains("roller")) throw ConfigError("roller", "missing required section");
  const auto& roller = doc.at("roller");
  check_keys(roller, "roller", {"radius_m", "omega_rad_s", "surface_speed_mm_s"});
  config.roller_radius = number_at(roller, "roller", "radius_m");
  if (roller.contains("omega_rad_s") && roller.contains("surface_speed_mm_s"))
    throw ConfigError("roller", "give omega_rad_s or surface_speed_mm_s, not both");
  if (roller.contains("surface_speed_mm_s")) {
    const double speed = units::mm_to_m(number_at(roller, "roller", "surface_speed_mm_s"));
    if (!(config.roller_radius > 0.0))
      throw ConfigError("roller.radius_m", "must be > 0 to derive omega from speed");
    config.roller_omega = speed / config.roller_radius;
  } else {
    config.roller_omega = number_at(roller, "roller", "omega_rad_s");
  }
  return config;
}

ClampingParams parse_clamping(const json& doc) {
  ClampingParams params;
  if (!doc.contains("clamping")) throw ConfigError("clamping", "missing required section");
  const auto& cl = doc.at("clamping");
  check_keys(cl, "clamping",
             {"cam_radius_m", "effective_modulus_pa", "theta_left_deg", "theta_left_rad",
              "theta_right_deg", "theta_right_rad", "theta_stationary_deg",
              "theta_stationary_rad", "cam_speed_deg_s", "cam_speed_rad_s",
              "transition_duration_s", "max_deformation_mm", "max_deformation_m",
              "friction_mu"});
  params.cam_radius = number_at(cl, "clamping", "cam_radius_m");
  params.effective_modulus = number_at(cl, "clamping", "effective_modulus_pa");

  const auto angle = [&](const char* rad_key, const char* deg_key) {
    if (cl.contains(rad_key)) return number_at(cl, "clamping", rad_key);
    return units::deg_to_rad(number_at(cl, "clamping", deg_key));
  };
  params.theta_left = angle("theta_left_rad", "theta_left_deg");
  params.theta_right = angle("theta_right_rad", "theta_right_deg");
  params.theta_stationary = angle("theta_stationary_rad", "theta_stationary_deg");

  if (cl.contains("cam_speed_rad_s"))
    params.cam_speed = number_at(cl, "clamping", "cam_speed_rad_s");
  else
    params.cam_speed = units::deg_to_rad(number_at(cl, "clamping", "cam_speed_deg_s"));

  params.transition_duration = number_at(cl, "clamping", "transition_duration_s");
  if (cl.contains("max_deformation_m"))
    params.max_deformation = number_at(cl, "clamping", "max_deformation_m");
  else
    params.max_deformation = units::mm_to_m(number_at(cl, "clamping", "max_deformation_mm"));
  params.friction_mu = number_at(cl, "clamping", "friction_mu");
  return params;
}

std::vector<CafeState> parse_cafes(const json& doc) {
  std::vector<CafeState> cafes;
  if (!doc.contains("cafes")) return cafes;
  const auto& arr = doc.at("cafes");
  if (!arr.is_array()) throw ConfigError("cafes", "expected an array");
  int id = 0;
  for (const auto& entry : arr) {
    const std::string path = "cafes[" + std::to_string(id) + "]";
    check_keys(entry, path, {"mass_kg", "x0_m", "damping_c", "z0_m"});
    CafeState cafe;
    cafe.id = id++;
    cafe.mass = number_at(entry, path, "mass_kg");
    cafe.x = number_at(entry, path, "x0_m");
    cafe.damping = number_or(entry, path, "damping_c", 5.0);
    cafe.z = number_or(entry, path, "z0_m", 0.0);
    cafes.push_back(cafe);
  }
  return cafes;
}

ClampTimeline parse_timeline(const json& doc, std::size_t cafe_count) {
  ClampTimeline timeline;
  timeline.resize(cafe_count);
  if (!doc.contains("timeline")) return timeline;
  const auto& arr = doc.at("timeline");
  if (!arr.is_array()) throw ConfigError("timeline", "expected an array");
  std::size_t index = 0;
  for (const auto& entry : arr) {
    const std::string path = "timeline[" + std::to_string(index++) + "]";
    check_keys(entry, path, {"t_s", "cafe_id", "state"});
    const double time = number_at(entry, path, "t_s");
    if (!entry.contains("cafe_id") || !entry.at("cafe_id").is_number_integer())
      throw ConfigError(path + ".cafe_id", "expected an integer");
    const int cafe_id = entry.at("cafe_id").get<int>();
    if (cafe_id < 0 || static_cast<std::size_t>(cafe_id) >= cafe_count)
      throw ConfigError(path + ".cafe_id", "no such cafe");
    if (!entry.contains("state") || !entry.at("state").is_string())
      throw ConfigError(path + ".state", "expected left|right|stationary");
    ClampMode mode;
    try {
      mode = clamp_mode_from_string(entry.at("state").get<std::string>());
    } catch (const ArgumentError& e) {
      throw ConfigError(path + ".state", e.what());
    }
    timeline.commands[static_cast<std::size_t>(cafe_id)].push_back({time, mode});
  }
  return timeline;
}

}  // namespace

Scenario parse_scenario(const json& doc) {
  check_keys(doc, "scenario", {"system", "roller", "clamping", "cafes", "timeline"});
  Scenario scenario;
  scenario.system = parse_system(doc);
  scenario.clamping = parse_clamping(doc);
  scenario.cafes = parse_cafes(doc);
  scenario.timeline = parse_timeline(doc, scenario.cafes.size());
  return scenario;
}

Scenario parse_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string(), e.what());
  }
  return parse_scenario(doc);
}

Scenario load_scenario(const json& doc) {
  Scenario scenario = parse_scenario(doc);
  validate_or_throw(scenario);
  return scenario;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  Scenario scenario = parse_scenario_file(path);
  validate_or_throw(scenario);
  return scenario;
}

json to_json(const Scenario& s) {
  json doc;
  doc["system"] = {{"span_length_m", s.system.span_length},
                   {"stiffness_n_per_m", s.system.stiffness},
                   {"pretension", {{"value", s.system.pretension}, {"unit", "N"}}},
                   {"incline_rad", s.system.incline_angle},
                   {"load_bearing_cables", s.system.load_bearing_cables},
                   {"anchor_spacing_m", s.system.anchor_spacing}};
  doc["roller"] = {{"radius_m", s.system.roller_radius},
                   {"omega_rad_s", s.system.roller_omega}};
  doc["clamping"] = {{"cam_radius_m", s.clamping.cam_radius},
                     {"effective_modulus_pa", s.clamping.effective_modulus},
                     {"theta_left_rad", s.clamping.theta_left},
                     {"theta_right_rad", s.clamping.theta_right},
                     {"theta_stationary_rad", s.clamping.theta_stationary},
                     {"cam_speed_rad_s", s.clamping.cam_speed},
                     {"transition_duration_s", s.clamping.transition_duration},
                     {"max_deformation_m", s.clamping.max_deformation},
                     {"friction_mu", s.clamping.friction_mu}};
  doc["cafes"] = json::array();
  for (const auto& cafe : s.cafes)
    doc["cafes"].push_back({{"mass_kg", cafe.mass},
                            {"x0_m", cafe.x},
                            {"damping_c", cafe.damping},
                            {"z0_m", cafe.z}});
  doc["timeline"] = json::array();
  for (std::size_t id = 0; id < s.timeline.commands.size(); ++id)
    for (const auto& cmd : s.timeline.commands[id])
      doc["timeline"].push_back({{"t_s", cmd.time},
                                 {"cafe_id", static_cast<int>(id)},
                                 {"state", std::string(to_string(cmd.state))}});
  return doc;
}

std::string to_json_string(const Scenario& scenario) { return to_json(scenario).dump(2); }

SweepSpec load_sweep_spec(const json& doc) {
  check_keys(doc, "sweep",
             {"span_lengths_m", "robot_counts", "pretensions_n", "pretensions_kgf",
              "robot_mass_kg", "placement", "cluster_position_m", "cluster_spacing_m"});
  SweepSpec spec;
  const auto list_of = [&](const char* key) {
    std::vector<double> values;
    for (const auto& v : doc.at(key)) {
      if (!v.is_number()) throw ConfigError(key, "expected numbers");
      values.push_back(v.get<double>());
    }
    return values;
  };
  if (!doc.contains("span_lengths_m"))
    throw ConfigError("span_lengths_m", "missing required key");
  spec.span_lengths = list_of("span_lengths_m");
  if (!doc.contains("robot_counts")) throw ConfigError("robot_counts", "missing required key");
  for (const auto& v : doc.at("robot_counts")) {
    if (!v.is_number_integer()) throw ConfigError("robot_counts", "expected integers");
    spec.robot_counts.push_back(v.get<int>());
  }
  if (doc.contains("pretensions_n") && doc.contains("pretensions_kgf"))
    throw ConfigError("pretensions_n", "give pretensions_n or pretensions_kgf, not both");
  if (doc.contains("pretensions_n")) {
    spec.pretensions = list_of("pretensions_n");
  } else if (doc.contains("pretensions_kgf")) {
    for (const double kgf : list_of("pretensions_kgf"))
      spec.pretensions.push_back(units::kgf_to_newton(kgf));
  } else {
    throw ConfigError("pretensions_n", "missing required key");
  }
  spec.robot_mass = number_or(doc, "sweep", "robot_mass_kg", 1.4);
  if (doc.contains("placement")) {
    const auto name = doc.at("placement").get<std::string>();
    if (name == "evenly")
      spec.placement = Placement::Evenly;
    else if (name == "clustered")
      spec.placement = Placement::Clustered;
    else
      throw ConfigError("placement", "expected evenly|clustered");
  }
  spec.cluster_position = number_or(doc, "sweep", "cluster_position_m", 0.0);
  spec.cluster_spacing = number_or(doc, "sweep", "cluster_spacing_m", 0.1);
  return spec;
}

SweepSpec load_sweep_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string(), e.what());
  }
  return load_sweep_spec(doc);
}

json to_json(const SweepSpec& spec) {
  json doc;
  doc["span_lengths_m"] = spec.span_lengths;
  doc["robot_counts"] = spec.robot_counts;
  doc["pretensions_n"] = spec.pretensions;
  doc["robot_mass_kg"] = spec.robot_mass;
  doc["placement"] = spec.placement == Placement::Evenly ? "evenly" : "clustered";
  doc["cluster_position_m"] = spec.cluster_position;
  doc["cluster_spacing_m"] = spec.cluster_spacing;
  return doc;
}

Scenario default_paper_scenario() {
  Scenario s;
  s.system.span_length = 1.5;
  s.system.incline_angle = 0.0;
  s.system.stiffness = 18148.5;                       // measured, 3 mm cable
  s.system.pretension = units::kgf_to_newton(60.0);   // 588.399 N per cable
  s.system.load_bearing_cables = 6;                   // all strands share the weight
  s.system.roller_radius = 0.015;
  s.system.roller_omega = 7.0;                        // 105 mm/s surface speed
  s.system.anchor_spacing = 0.0;

  s.clamping.cam_radius = 0.01;
  s.clamping.effective_modulus = 1.0e7;               // thermoplastic elastomer pad
  s.clamping.theta_left = units::deg_to_rad(-90.0);
  s.clamping.theta_right = units::deg_to_rad(90.0);
  s.clamping.theta_stationary = 0.0;
  s.clamping.cam_speed = units::deg_to_rad(340.0);
  s.clamping.transition_duration = 0.3;
  s.clamping.max_deformation = 1e-3;
  s.clamping.friction_mu = 0.8;

  s.cafes.resize(2);
  s.cafes[0] = {0, 1.4, 0.65, 0.0, 0.0, 5.0, ClampState::settled(ClampMode::Stationary)};
  s.cafes[1] = {1, 1.4, 0.85, 0.0, 0.0, 5.0, ClampState::settled(ClampMode::Stationary)};
  s.timeline.resize(s.cafes.size());
  return s;
}

}  // namespace cafesim
