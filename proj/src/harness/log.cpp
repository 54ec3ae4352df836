// CSV trajectory log.
#include "autoglide/harness/log.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "autoglide/errors.hpp"

namespace autoglide::harness {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

const char* TrajectoryLog::header() {
    return "t,north,east,alt,V,psi,gamma,phi,phase,psi_des,gamma_des,"
           "roll_cmd,pitch_cmd,w_n,w_e";
}

std::string TrajectoryLog::to_csv() const {
    std::string out = header();
    out += '\n';
    for (const auto& r : rows_) {
        const double fields[] = {r.t,         r.north,    r.east,
                                 r.alt,       r.V,        r.psi,
                                 r.gamma,     r.phi,      r.phase,
                                 r.psi_des,   r.gamma_des, r.roll_cmd,
                                 r.pitch_cmd, r.w_n,      r.w_e};
        bool first = true;
        for (double f : fields) {
            if (!first) out += ',';
            out += format_double(f);
            first = false;
        }
        out += '\n';
    }
    return out;
}

void TrajectoryLog::write_csv(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open log file '" + path + "'");
    f << to_csv();
    if (!f) throw ValidationError("failed writing log file '" + path + "'");
}

}  // namespace autoglide::harness
