// Engine-failure detection and fault-model identification from output
// residuals.
#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "autoglide/airframe.hpp"
#include "autoglide/envelope.hpp"

namespace autoglide::monitor {

/// Persistence-counted detection: rpm below rpm_floor, or longitudinal
/// deceleration beyond decel_limit, for persist_samples consecutive samples.
struct DetectionThresholds {
    double rpm_floor = 300.0;       // rpm
    double decel_limit = 2.0;       // m/s^2
    int persist_samples = 20;
};

void validate(const DetectionThresholds& th);

enum class Mode { Normal, SafeMode };

struct MonitorVerdict {
    Mode mode = Mode::Normal;
    double detected_at = 0.0;  // time of the sample that tripped the counter
};

/// Running state of the detector. Transition is one-way: once SafeMode is
/// latched the counters stop mattering.
struct MonitorState {
    MonitorVerdict verdict;
    int rpm_low_run = 0;
    int decel_run = 0;
    double last_V = 0.0;
    double last_t = 0.0;
    bool has_last = false;
};

/// Feed one sample (monotone t). Returns the verdict after this sample.
MonitorVerdict update(MonitorState& ms, const sim::AircraftState& s,
                      const DetectionThresholds& th);

/// Linear output-residual model. Outputs y = (V, gamma). Each candidate is
/// propagated open-loop from the measured output at detection:
///   x' = A (x - y_eq) + B (u - u_eq),  y = x
/// and scored by windowed RMS against the measured outputs.
struct FaultModel {
    int id = 0;
    std::string label;
    Eigen::Matrix2d A = Eigen::Matrix2d::Zero();
    Eigen::Matrix2d B = Eigen::Matrix2d::Zero();
    Eigen::Vector2d y_eq = Eigen::Vector2d::Zero();
    Eigen::Vector2d u_eq = Eigen::Vector2d::Zero();
};

/// The two stock hypotheses: a powered cruise model trimmed at 40 m/s level
/// flight, and an engine-out model trimmed at best glide.
std::vector<FaultModel> default_models(const sim::GliderParams& params);

/// Residual time series for one model against a measured output history.
/// ys[i] is the measurement at ts[i]; us[i] the command input (roll, pitch).
/// The model is integrated from ys.front() with explicit Euler at the
/// measurement spacing.
std::vector<Eigen::Vector2d> output_residuals(
    const FaultModel& model, const std::vector<double>& ts,
    const std::vector<Eigen::Vector2d>& ys,
    const std::vector<Eigen::Vector2d>& us);

struct IdentifyResult {
    int index = 0;           // position in the history list
    bool ambiguous = false;  // runner-up within 1% of the best RMS
    double best_rms = 0.0;
    double second_rms = 0.0;
};

/// RMS of one residual history: sqrt of the mean squared 2-norm.
double residual_rms(const std::vector<Eigen::Vector2d>& history);

/// Pick the history with the smallest RMS. Ties break toward the lowest
/// index; a runner-up within 1% of the winner sets `ambiguous` (the caller
/// should keep gathering samples). Positive scaling of every history leaves
/// the winner unchanged.
IdentifyResult identify_model(
    const std::vector<std::vector<Eigen::Vector2d>>& residual_histories);

}  // namespace autoglide::monitor
