// Datagram framing for the autopilot <-> plant link: fixed header, typed
// little-endian payloads, CRC-32 trailer.
#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace autoglide::wire {

// Layout of every frame:
//   offset 0   magic   "MASC" (4 bytes)
//   offset 4   version 0x01
//   offset 5   type    message type
//   offset 6   seq     u32 LE, per sender per type
//   offset 10  len     u16 LE, payload byte count
//   offset 12  payload len bytes, f64 fields LE
//   tail       crc     u32 LE, CRC-32 over everything before it
inline constexpr char kMagic[4] = {'M', 'A', 'S', 'C'};
inline constexpr std::uint8_t kVersion = 1;
inline constexpr std::size_t kHeaderSize = 12;
inline constexpr std::size_t kCrcSize = 4;
inline constexpr std::size_t kMaxFrameSize = 512;

enum class MsgType : std::uint8_t {
    State = 0x01,
    Command = 0x02,
    Weather = 0x03,
    Heartbeat = 0x04,
};

/// Plant -> autopilot, 13 fields, 104-byte payload.
struct StateMsg {
    double t = 0.0;
    double north = 0.0;
    double east = 0.0;
    double alt = 0.0;
    double V = 0.0;
    double psi = 0.0;
    double gamma = 0.0;
    double phi = 0.0;
    double theta = 0.0;
    double p = 0.0;
    double q = 0.0;
    double r = 0.0;
    double rpm = 0.0;
};

/// Autopilot -> plant, 4 fields, 32-byte payload.
struct CommandMsg {
    double t = 0.0;
    double roll_cmd = 0.0;
    double pitch_cmd = 0.0;
    double phase = 0.0;
};

/// Plant -> autopilot wind telemetry, 5 fields, 40-byte payload.
struct WeatherMsg {
    double t = 0.0;
    double w_n = 0.0;
    double w_e = 0.0;
    double w_up = 0.0;
    double dV = 0.0;
};

/// Either direction, 1 field, 8-byte payload; 24 bytes on the wire.
struct HeartbeatMsg {
    double t = 0.0;
};

using Payload = std::variant<StateMsg, CommandMsg, WeatherMsg, HeartbeatMsg>;

struct Message {
    std::uint32_t seq = 0;
    Payload payload;
};

MsgType type_of(const Payload& p);
std::size_t payload_size(MsgType t);

/// CRC-32 (reflected polynomial 0xEDB88320, init and final xor 0xFFFFFFFF).
/// crc32 of "123456789" is 0xCBF43926.
std::uint32_t crc32(const std::uint8_t* data, std::size_t n);

/// Stateful encoder: keeps an independent sequence counter per message type,
/// starting at zero.
class FrameEncoder {
  public:
    std::vector<std::uint8_t> encode(const Payload& p);
    /// Sequence number the next frame of this type will carry.
    std::uint32_t next_seq(MsgType t) const;

  private:
    std::uint32_t seq_[4] = {0, 0, 0, 0};
};

/// Single frame with an explicit sequence number (tests, replay).
std::vector<std::uint8_t> encode_frame(const Payload& p, std::uint32_t seq);

enum class DecodeError {
    Ok,
    BadLength,     // shorter than a header + CRC, or len field inconsistent
    BadMagic,
    BadVersion,
    UnknownType,
    BadCrc,
    NonFiniteField,
};

const char* decode_error_name(DecodeError e);

struct DecodeResult {
    DecodeError error = DecodeError::Ok;
    std::optional<Message> message;
};

/// Validation order: overall length, magic, version, type, payload length
/// against the type's schema, CRC, field finiteness. A frame is accepted
/// only when every check passes.
DecodeResult decode_frame(const std::uint8_t* data, std::size_t n);
DecodeResult decode_frame(const std::vector<std::uint8_t>& buf);

}  // namespace autoglide::wire
