// Engine-failure detection and residual-based model identification.
#include "autoglide/monitor.hpp"

#include <cmath>
#include <limits>

#include "autoglide/errors.hpp"

namespace autoglide::monitor {

void validate(const DetectionThresholds& th) {
    if (!(th.rpm_floor >= 0.0))
        throw ValidationError("monitor.rpm_floor: must be non-negative");
    if (!(th.decel_limit > 0.0))
        throw ValidationError("monitor.decel_limit: must be positive");
    if (th.persist_samples < 1)
        throw ValidationError("monitor.persist_samples: must be at least 1");
}

MonitorVerdict update(MonitorState& ms, const sim::AircraftState& s,
                      const DetectionThresholds& th) {
    if (ms.verdict.mode == Mode::SafeMode) return ms.verdict;  // latched

    if (s.rpm < th.rpm_floor)
        ++ms.rpm_low_run;
    else
        ms.rpm_low_run = 0;

    if (ms.has_last && s.t > ms.last_t) {
        const double decel = (ms.last_V - s.V) / (s.t - ms.last_t);
        if (decel > th.decel_limit)
            ++ms.decel_run;
        else
            ms.decel_run = 0;
    }
    ms.last_V = s.V;
    ms.last_t = s.t;
    ms.has_last = true;

    if (ms.rpm_low_run >= th.persist_samples ||
        ms.decel_run >= th.persist_samples) {
        ms.verdict.mode = Mode::SafeMode;
        ms.verdict.detected_at = s.t;
    }
    return ms.verdict;
}

std::vector<FaultModel> default_models(const sim::GliderParams& params) {
    // Both hypotheses share the airspeed relaxation (3 s) and the
    // flight-path lag; they differ in trim: the powered model holds cruise
    // speed and level flight with a pitch offset, the engine-out model sits
    // on the best glide with no offset.
    const double tau_v = 3.0;
    Eigen::Matrix2d A;
    A << -1.0 / tau_v, 0.0, 0.0, -1.0 / params.tau_gamma;
    Eigen::Matrix2d B;
    B << 0.0, 0.0, 0.0, 1.0 / params.tau_gamma;

    FaultModel powered;
    powered.id = 0;
    powered.label = "powered cruise";
    powered.A = A;
    powered.B = B;
    powered.y_eq = Eigen::Vector2d(40.0, 0.0);
    powered.u_eq = Eigen::Vector2d(0.0, -params.gamma_opt);

    FaultModel engine_out;
    engine_out.id = 1;
    engine_out.label = "engine-out glide";
    engine_out.A = A;
    engine_out.B = B;
    engine_out.y_eq = Eigen::Vector2d(params.V_opt, params.gamma_opt);
    engine_out.u_eq = Eigen::Vector2d::Zero();

    return {powered, engine_out};
}

std::vector<Eigen::Vector2d> output_residuals(
    const FaultModel& model, const std::vector<double>& ts,
    const std::vector<Eigen::Vector2d>& ys,
    const std::vector<Eigen::Vector2d>& us) {
    if (ts.size() != ys.size() || ts.size() != us.size())
        throw ValidationError("output_residuals: history lengths differ");
    std::vector<Eigen::Vector2d> resid;
    resid.reserve(ts.size());
    if (ts.empty()) return resid;

    Eigen::Vector2d yhat = ys.front();
    resid.push_back(Eigen::Vector2d::Zero());
    for (std::size_t i = 1; i < ts.size(); ++i) {
        const double dt = ts[i] - ts[i - 1];
        yhat += dt * (model.A * (yhat - model.y_eq) +
                      model.B * (us[i - 1] - model.u_eq));
        resid.push_back(ys[i] - yhat);
    }
    return resid;
}

double residual_rms(const std::vector<Eigen::Vector2d>& history) {
    if (history.empty()) return 0.0;
    double acc = 0.0;
    for (const auto& r : history) acc += r.squaredNorm();
    return std::sqrt(acc / static_cast<double>(history.size()));
}

IdentifyResult identify_model(
    const std::vector<std::vector<Eigen::Vector2d>>& residual_histories) {
    if (residual_histories.empty())
        throw ValidationError("identify_model: no residual histories");

    IdentifyResult out;
    out.best_rms = std::numeric_limits<double>::infinity();
    out.second_rms = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < residual_histories.size(); ++i) {
        const double rms = residual_rms(residual_histories[i]);
        if (rms < out.best_rms) {
            out.second_rms = out.best_rms;
            out.best_rms = rms;
            out.index = static_cast<int>(i);
        } else if (rms < out.second_rms) {
            out.second_rms = rms;
        }
    }
    out.ambiguous = std::isfinite(out.second_rms) &&
                    (out.second_rms - out.best_rms) < 0.01 * out.best_rms;
    return out;
}

}  // namespace autoglide::monitor
