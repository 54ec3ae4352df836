// Run orchestration: the in-process loop, the lockstep SITL loop, and the
// run summary both produce.
#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "autoglide/harness/log.hpp"
#include "autoglide/harness/scenario.hpp"
#include "autoglide/planner.hpp"

namespace autoglide::harness {

struct RunSummary {
    bool landed = false;            // touched ground before the time limit
    bool landed_on_target = false;  // within tolerance, runway-aligned
    double touchdown_time = 0.0;
    double miss_distance = 0.0;     // m from the selected threshold
    double heading_error = 0.0;     // rad from the runway heading
    double detected_at = -1.0;      // engine failure declaration, s
    double activated_at = -1.0;     // landing plan activation, s
    int selected_site = -1;
    int identified_model = -1;
    bool identify_ambiguous = false;
    double min_airspeed = 0.0;
    double min_envelope_margin = 0.0;  // smallest margin seen, > 0 is clean
    double max_command_norm = 0.0;     // max ||W r_d||_inf over the run
    int envelope_violations = 0;
    std::string phase_sequence;        // e.g. "Cruise,Loiter,Approach,Terminal"
    std::optional<planner::FeasibilityReport> report;
};

/// Suggested process exit code: 0 success, 3 no feasible site, 4 crash or
/// off-target touchdown.
int exit_code_for(const RunSummary& summary);

nlohmann::json summary_json(const RunSummary& summary);
nlohmann::json report_json(const planner::FeasibilityReport& report);

struct RunResult {
    RunSummary summary;
    TrajectoryLog log;
};

/// Single-loop run: plant and autopilot in one call stack.
RunResult run_in_process(const Scenario& sc);

/// Lockstep SITL run: the same plant and autopilot behind the framed
/// loopback link. With a lossless link the trajectory matches
/// run_in_process bit-for-bit.
RunResult run_lockstep(const Scenario& sc);

/// Dispatch on sc.mode.
RunResult run_scenario(const Scenario& sc);

}  // namespace autoglide::harness
