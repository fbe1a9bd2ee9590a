#include <doctest.h>

#include <nlohmann/json.hpp>

#include "cafesim/config.hpp"
#include "cafesim/error.hpp"
#include "cafesim/model.hpp"
#include "cafesim/units.hpp"

using nlohmann::json;

namespace {

json minimal_doc() {
  return json{
      {"system",
       {{"span_length_m", 1.5},
        {"stiffness_n_per_m", 18148.5},
        {"pretension", "60 kgf"},
        {"incline_deg", 0.0},
        {"load_bearing_cables", 6}}},
      {"roller", {{"radius_m", 0.015}, {"surface_speed_mm_s", 105.0}}},
      {"clamping",
       {{"cam_radius_m", 0.01},
        {"effective_modulus_pa", 1.0e7},
        {"theta_left_deg", -90.0},
        {"theta_right_deg", 90.0},
        {"theta_stationary_deg", 0.0},
        {"cam_speed_deg_s", 340.0},
        {"transition_duration_s", 0.3},
        {"max_deformation_mm", 1.0},
        {"friction_mu", 0.8}}},
      {"cafes",
       {{{"mass_kg", 1.4}, {"x0_m", 0.65}, {"damping_c", 5.0}},
        {{"mass_kg", 1.4}, {"x0_m", 0.85}, {"damping_c", 5.0}}}},
      {"timeline",
       {{{"t_s", 0.0}, {"cafe_id", 0}, {"state", "right"}},
        {{"t_s", 2.0}, {"cafe_id", 0}, {"state", "stationary"}}}}};
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("kgf pretension normalizes to newtons") {
  const auto s = cafesim::load_scenario(minimal_doc());
  CHECK(s.system.pretension == doctest::Approx(588.399).epsilon(1e-12));
}

TEST_CASE("pretension accepts number, string and object forms") {
  auto doc = minimal_doc();
  doc["system"]["pretension"] = 588.399;
  CHECK(cafesim::load_scenario(doc).system.pretension == 588.399);
  doc["system"]["pretension"] = json{{"value", 60.0}, {"unit", "kgf"}};
  CHECK(cafesim::load_scenario(doc).system.pretension ==
        doctest::Approx(588.399).epsilon(1e-12));
  doc["system"]["pretension"] = json{{"value", 500.0}, {"unit", "N"}};
  CHECK(cafesim::load_scenario(doc).system.pretension == 500.0);
  doc["system"]["pretension"] = "1 lbf";
  CHECK_THROWS_AS(cafesim::load_scenario(doc), cafesim::ConfigError);
}

TEST_CASE("stiffness in N/m is stored unchanged") {
  const auto s = cafesim::load_scenario(minimal_doc());
  CHECK(s.system.stiffness == 18148.5);
}

TEST_CASE("surface speed derives roller omega") {
  const auto s = cafesim::load_scenario(minimal_doc());
  CHECK(s.system.roller_omega == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(s.system.surface_speed() == doctest::Approx(0.105).epsilon(1e-12));
}

TEST_CASE("negative mass is a validation error naming the field") {
  auto doc = minimal_doc();
  doc["cafes"][0]["mass_kg"] = -1.0;
  try {
    cafesim::load_scenario(doc);
    FAIL("expected ValidationError");
  } catch (const cafesim::ValidationError& e) {
    CHECK(e.field == "cafes[0].mass_kg");
  }
}

TEST_CASE("unknown keys are configuration errors naming the key") {
  auto doc = minimal_doc();
  doc["system"]["span_lenght_m"] = 1.5;  // typo'd key
  try {
    cafesim::load_scenario(doc);
    FAIL("expected ConfigError");
  } catch (const cafesim::ConfigError& e) {
    CHECK(e.key == "system.span_lenght_m");
  }
}

TEST_CASE("overlapping timeline commands are rejected") {
  auto doc = minimal_doc();
  // Second command lands inside the 0.3 s switch started at t = 0.
  doc["timeline"] = json::array({json{{"t_s", 0.0}, {"cafe_id", 0}, {"state", "right"}},
                                 json{{"t_s", 0.1}, {"cafe_id", 0}, {"state", "left"}}});
  CHECK_THROWS_AS(cafesim::load_scenario(doc), cafesim::ValidationError);

  // A no-op command (same settled state) inside the window is fine.
  doc["timeline"] = json::array({json{{"t_s", 0.0}, {"cafe_id", 0}, {"state", "right"}},
                                 json{{"t_s", 0.4}, {"cafe_id", 0}, {"state", "right"}}});
  CHECK_NOTHROW(cafesim::load_scenario(doc));
}

TEST_CASE("timeline times must strictly increase per cafe") {
  auto doc = minimal_doc();
  doc["timeline"] = json::array({json{{"t_s", 1.0}, {"cafe_id", 0}, {"state", "right"}},
                                 json{{"t_s", 1.0}, {"cafe_id", 0}, {"state", "left"}}});
  CHECK_THROWS_AS(cafesim::load_scenario(doc), cafesim::ValidationError);
}

TEST_CASE("round trip: serialize then load gives field-wise equality") {
  const auto first = cafesim::load_scenario(minimal_doc());
  const auto second = cafesim::load_scenario(cafesim::to_json(first));
  CHECK(first == second);
}

TEST_CASE("normalization is idempotent") {
  const auto once = cafesim::load_scenario(minimal_doc());
  const auto twice = cafesim::load_scenario(cafesim::to_json(cafesim::load_scenario(
      cafesim::to_json(once))));
  CHECK(once == twice);
}

TEST_CASE("default paper scenario passes all invariants") {
  const auto s = cafesim::default_paper_scenario();
  CHECK(cafesim::validate(s).empty());
  CHECK(s.system.span_length == 1.5);
  CHECK(s.system.stiffness == 18148.5);
  CHECK(s.system.pretension == doctest::Approx(588.399).epsilon(1e-12));
  REQUIRE(s.cafes.size() == 2);
  CHECK(s.cafes[0].mass == 1.4);
  CHECK(s.cafes[1].mass == 1.4);
  CHECK(s.clamping.transition_duration == 0.3);
  CHECK(s.system.surface_speed() == doctest::Approx(0.105).epsilon(1e-12));
  CHECK(s.system.surface_speed() < cafesim::kRatedSurfaceSpeed);
}

TEST_CASE("validate lists every violation") {
  auto s = cafesim::default_paper_scenario();
  s.system.stiffness = -1.0;
  s.cafes[1].x = 99.0;
  const auto violations = cafesim::validate(s);
  REQUIRE(violations.size() == 2);
  CHECK(violations[0].key == "system.stiffness_n_per_m");
  CHECK(violations[1].key == "cafes[1].x0_m");
}

TEST_CASE("incline bound is open at 90 degrees") {
  auto s = cafesim::default_paper_scenario();
  s.system.incline_angle = cafesim::units::deg_to_rad(90.0);
  CHECK(!cafesim::validate(s).empty());
  s.system.incline_angle = cafesim::units::deg_to_rad(89.0);
  CHECK(cafesim::validate(s).empty());
}

TEST_CASE("clamp mode round trips through labels") {
  using cafesim::ClampMode;
  for (const auto mode :
       {ClampMode::Leftward, ClampMode::Rightward, ClampMode::Stationary})
    CHECK(cafesim::clamp_mode_from_string(cafesim::to_string(mode)) == mode);
  CHECK(cafesim::direction_sign(ClampMode::Leftward) == -1);
  CHECK(cafesim::direction_sign(ClampMode::Stationary) == 0);
  CHECK(cafesim::direction_sign(ClampMode::Rightward) == +1);
}

}  // TEST_SUITE
