// Frame codec: fixed little-endian layout with a CRC-32 trailer.
#include "autoglide/wire/frame.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>

#include "autoglide/errors.hpp"

namespace autoglide::wire {

namespace {

std::array<std::uint32_t, 256> make_crc_table() {
    std::array<std::uint32_t, 256> table{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = i;
        for (int k = 0; k < 8; ++k)
            c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : (c >> 1);
        table[i] = c;
    }
    return table;
}

void put_u16(std::vector<std::uint8_t>& buf, std::uint16_t v) {
    buf.push_back(static_cast<std::uint8_t>(v & 0xFF));
    buf.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        buf.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::vector<std::uint8_t>& buf, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i)
        buf.push_back(static_cast<std::uint8_t>((bits >> (8 * i)) & 0xFF));
}

std::uint16_t get_u16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) |
           (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) |
           (static_cast<std::uint32_t>(p[3]) << 24);
}

double get_f64(const std::uint8_t* p) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i)
        bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return std::bit_cast<double>(bits);
}

template <std::size_t N>
void put_fields(std::vector<std::uint8_t>& buf, const double (&fields)[N]) {
    for (double v : fields) {
        if (!std::isfinite(v))
            throw NonFiniteError("encode_frame: non-finite field");
        put_f64(buf, v);
    }
}

}  // namespace

std::uint32_t crc32(const std::uint8_t* data, std::size_t n) {
    static const auto table = make_crc_table();
    std::uint32_t c = 0xFFFFFFFFu;
    for (std::size_t i = 0; i < n; ++i)
        c = table[(c ^ data[i]) & 0xFFu] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

MsgType type_of(const Payload& p) {
    if (std::holds_alternative<StateMsg>(p)) return MsgType::State;
    if (std::holds_alternative<CommandMsg>(p)) return MsgType::Command;
    if (std::holds_alternative<WeatherMsg>(p)) return MsgType::Weather;
    return MsgType::Heartbeat;
}

std::size_t payload_size(MsgType t) {
    switch (t) {
        case MsgType::State: return 13 * 8;
        case MsgType::Command: return 4 * 8;
        case MsgType::Weather: return 5 * 8;
        case MsgType::Heartbeat: return 8;
    }
    return 0;
}

std::vector<std::uint8_t> encode_frame(const Payload& p, std::uint32_t seq) {
    const MsgType type = type_of(p);
    std::vector<std::uint8_t> buf;
    buf.reserve(kHeaderSize + payload_size(type) + kCrcSize);
    buf.insert(buf.end(), kMagic, kMagic + 4);
    buf.push_back(kVersion);
    buf.push_back(static_cast<std::uint8_t>(type));
    put_u32(buf, seq);
    put_u16(buf, static_cast<std::uint16_t>(payload_size(type)));

    std::visit(
        [&buf](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, StateMsg>) {
                put_fields(buf, {m.t, m.north, m.east, m.alt, m.V, m.psi,
                                 m.gamma, m.phi, m.theta, m.p, m.q, m.r,
                                 m.rpm});
            } else if constexpr (std::is_same_v<T, CommandMsg>) {
                put_fields(buf, {m.t, m.roll_cmd, m.pitch_cmd, m.phase});
            } else if constexpr (std::is_same_v<T, WeatherMsg>) {
                put_fields(buf, {m.t, m.w_n, m.w_e, m.w_up, m.dV});
            } else {
                put_fields(buf, {m.t});
            }
        },
        p);

    put_u32(buf, crc32(buf.data(), buf.size()));
    return buf;
}

std::vector<std::uint8_t> FrameEncoder::encode(const Payload& p) {
    const auto idx = static_cast<std::size_t>(type_of(p)) - 1;
    return encode_frame(p, seq_[idx]++);
}

std::uint32_t FrameEncoder::next_seq(MsgType t) const {
    return seq_[static_cast<std::size_t>(t) - 1];
}

const char* decode_error_name(DecodeError e) {
    switch (e) {
        case DecodeError::Ok: return "Ok";
        case DecodeError::BadLength: return "BadLength";
        case DecodeError::BadMagic: return "BadMagic";
        case DecodeError::BadVersion: return "BadVersion";
        case DecodeError::UnknownType: return "UnknownType";
        case DecodeError::BadCrc: return "BadCrc";
        case DecodeError::NonFiniteField: return "NonFiniteField";
    }
    return "?";
}

DecodeResult decode_frame(const std::uint8_t* data, std::size_t n) {
    DecodeResult out;
    if (n < kHeaderSize + kCrcSize || n > kMaxFrameSize) {
        out.error = DecodeError::BadLength;
        return out;
    }
    if (std::memcmp(data, kMagic, 4) != 0) {
        out.error = DecodeError::BadMagic;
        return out;
    }
    if (data[4] != kVersion) {
        out.error = DecodeError::BadVersion;
        return out;
    }
    const std::uint8_t type_byte = data[5];
    if (type_byte < 0x01 || type_byte > 0x04) {
        out.error = DecodeError::UnknownType;
        return out;
    }
    const auto type = static_cast<MsgType>(type_byte);
    const std::uint16_t len = get_u16(data + 10);
    if (len != n - kHeaderSize - kCrcSize || len != payload_size(type)) {
        out.error = DecodeError::BadLength;
        return out;
    }
    const std::uint32_t want = get_u32(data + n - kCrcSize);
    if (crc32(data, n - kCrcSize) != want) {
        out.error = DecodeError::BadCrc;
        return out;
    }

    const std::uint8_t* f = data + kHeaderSize;
    const std::size_t n_fields = len / 8;
    bool finite = true;
    double v[13];
    for (std::size_t i = 0; i < n_fields; ++i) {
        v[i] = get_f64(f + 8 * i);
        finite = finite && std::isfinite(v[i]);
    }
    if (!finite) {
        out.error = DecodeError::NonFiniteField;
        return out;
    }

    Message msg;
    msg.seq = get_u32(data + 6);
    switch (type) {
        case MsgType::State:
            msg.payload = StateMsg{v[0], v[1], v[2], v[3], v[4], v[5], v[6],
                                   v[7], v[8], v[9], v[10], v[11], v[12]};
            break;
        case MsgType::Command:
            msg.payload = CommandMsg{v[0], v[1], v[2], v[3]};
            break;
        case MsgType::Weather:
            msg.payload = WeatherMsg{v[0], v[1], v[2], v[3], v[4]};
            break;
        case MsgType::Heartbeat:
            msg.payload = HeartbeatMsg{v[0]};
            break;
    }
    out.message = std::move(msg);
    return out;
}

DecodeResult decode_frame(const std::vector<std::uint8_t>& buf) {
    return decode_frame(buf.data(), buf.size());
}

}  // namespace autoglide::wire
