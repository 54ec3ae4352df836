// Built-in scenario documents.
#include "autoglide/harness/presets.hpp"

#include <array>

#include "autoglide/errors.hpp"

namespace autoglide::harness {

namespace {

using nlohmann::json;

struct InitRow {
    double north, east, alt, heading_deg;
};

// Clear-weather start positions, one per trial.
constexpr std::array<InitRow, 5> kTrialInits{{
    {13163.0, -7164.9, 3000.0, 78.5},
    {13353.0, -14380.0, 4000.0, 110.3},
    {23429.0, -6675.6, 5000.0, 85.6},
    {20719.0, -11652.0, 3000.0, 256.74},
    {21323.0, -11021.0, 2000.0, 69.594},
}};

struct WeatherRow {
    double direction_deg, speed_kts, turbulence_pct, gust_kts, shear_pct;
};

// Severe-weather settings, one per trial.
constexpr std::array<WeatherRow, 5> kWeatherRows{{
    {20.0, 14.0, 10.0, 10.0, 10.0},
    {0.0, 3.0, 8.0, 14.0, 8.0},
    {4.0, 5.0, 10.0, 8.0, 14.0},
    {14.0, 7.0, 12.0, 22.0, 8.0},
    {27.0, 12.0, 4.0, 9.0, 4.0},
}};

json site_1() {
    return {{"id", 1},         {"name", "site 1"},
            {"north", 21822.0}, {"east", -9751.8},
            {"elevation", 235.0}, {"final_heading_deg", 24.18}};
}

json all_sites() {
    return json::array(
        {site_1(),
         {{"id", 2},
          {"name", "site 2"},
          {"north", 11822.0},
          {"east", -6751.8},
          {"elevation", 235.0},
          {"final_heading_deg", 130.0}},
         {{"id", 3},
          {"name", "site 3"},
          {"north", 46000.0},
          {"east", -39751.8},
          {"elevation", 235.0},
          {"final_heading_deg", 40.0}},
         {{"id", 4},
          {"name", "site 4"},
          {"north", 36000.0},
          {"east", -19751.8},
          {"elevation", 235.0},
          {"final_heading_deg", 40.0}}});
}

json init_json(const InitRow& r) {
    return {{"north", r.north},
            {"east", r.east},
            {"alt", r.alt},
            {"heading_deg", r.heading_deg}};
}

json weather_json(const WeatherRow& r) {
    return {{"direction_deg", r.direction_deg},
            {"speed_kts", r.speed_kts},
            {"turbulence_pct", r.turbulence_pct},
            {"gust_increase_kts", r.gust_kts},
            {"shear_pct", r.shear_pct}};
}

json base_doc() {
    return {{"mode", "in-process"},
            {"engine", {{"failure_time_s", 1.0}}},
            {"sites", json::array({site_1()})}};
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (int i = 1; i <= 5; ++i) names.push_back("table1_trial" + std::to_string(i));
    for (int i = 1; i <= 5; ++i) names.push_back("table2_trial" + std::to_string(i));
    names.push_back("table3_eval");
    names.push_back("skip_demo");
    return names;
}

bool is_preset(const std::string& name) {
    const auto names = preset_names();
    for (const auto& n : names)
        if (n == name) return true;
    return false;
}

json preset_doc(const std::string& name) {
    for (int i = 1; i <= 5; ++i) {
        if (name == "table1_trial" + std::to_string(i)) {
            json doc = base_doc();
            doc["initial"] = init_json(kTrialInits[static_cast<std::size_t>(i - 1)]);
            doc["seed"] = i;
            return doc;
        }
    }
    for (int i = 1; i <= 5; ++i) {
        if (name == "table2_trial" + std::to_string(i)) {
            json doc = base_doc();
            doc["initial"] = init_json(kTrialInits[0]);
            doc["weather"] =
                weather_json(kWeatherRows[static_cast<std::size_t>(i - 1)]);
            doc["seed"] = 10 + i;
            return doc;
        }
    }
    if (name == "table3_eval") {
        json doc = base_doc();
        doc["initial"] = init_json(kTrialInits[0]);
        doc["sites"] = all_sites();
        doc["seed"] = 3;
        return doc;
    }
    if (name == "skip_demo") {
        // Low start 300 m past the approach entry, already below the cutoff
        // altitude and lined up with the runway, so guidance goes straight
        // from Cruise to Approach.
        json doc = base_doc();
        doc["initial"] = {{"north", 19267.4},
                          {"east", -10898.8},
                          {"alt", 655.0},
                          {"heading_deg", 24.18}};
        doc["engine"] = {{"failure_time_s", 0.25}};
        doc["seed"] = 7;
        return doc;
    }
    throw ValidationError("unknown preset '" + name + "'");
}

}  // namespace autoglide::harness
