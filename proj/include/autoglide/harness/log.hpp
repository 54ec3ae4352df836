// Trajectory logging: fixed CSV column set, shortest-round-trip float text.
#pragma once

#include <string>
#include <vector>

namespace autoglide::harness {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double v);

/// One plant step of the run, in log order.
struct TrajectoryRow {
    double t = 0.0;
    double north = 0.0;
    double east = 0.0;
    double alt = 0.0;
    double V = 0.0;
    double psi = 0.0;
    double gamma = 0.0;
    double phi = 0.0;
    double phase = 0.0;
    double psi_des = 0.0;
    double gamma_des = 0.0;
    double roll_cmd = 0.0;
    double pitch_cmd = 0.0;
    double w_n = 0.0;
    double w_e = 0.0;
};

class TrajectoryLog {
  public:
    static const char* header();  // "t,north,east,..." without newline

    void add(const TrajectoryRow& row) { rows_.push_back(row); }
    const std::vector<TrajectoryRow>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }

    /// Header plus one line per row, '\n' separators, trailing newline.
    std::string to_csv() const;
    void write_csv(const std::string& path) const;

  private:
    std::vector<TrajectoryRow> rows_;
};

}  // namespace autoglide::harness
