// Frame codec hardening: layout, CRC, corruption, transports.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <random>
#include <thread>

#include "autoglide/errors.hpp"
#include "autoglide/wire/frame.hpp"
#include "autoglide/wire/transport.hpp"

using namespace autoglide;

namespace {

// Rewrites the CRC trailer after a deliberate payload patch.
void refresh_crc(std::vector<std::uint8_t>& buf) {
    const std::uint32_t c = wire::crc32(buf.data(), buf.size() - 4);
    for (int i = 0; i < 4; ++i)
        buf[buf.size() - 4 + i] = static_cast<std::uint8_t>((c >> (8 * i)) & 0xFF);
}

void patch_f64(std::vector<std::uint8_t>& buf, std::size_t offset, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i)
        buf[offset + i] = static_cast<std::uint8_t>((bits >> (8 * i)) & 0xFF);
}

wire::StateMsg random_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    wire::StateMsg m;
    m.t = u(rng);
    m.north = u(rng);
    m.east = u(rng);
    m.alt = u(rng);
    m.V = u(rng);
    m.psi = u(rng);
    m.gamma = u(rng);
    m.phi = u(rng);
    m.theta = u(rng);
    m.p = u(rng);
    m.q = u(rng);
    m.r = u(rng);
    m.rpm = u(rng);
    return m;
}

}  // namespace

TEST_CASE("crc32 matches the reference check value") {
    const char* s = "123456789";
    CHECK(wire::crc32(reinterpret_cast<const std::uint8_t*>(s), 9) ==
          0xCBF43926u);
    CHECK(wire::crc32(nullptr, 0) == 0u);
}

TEST_CASE("a zero heartbeat has the frozen wire image") {
    const auto buf = wire::encode_frame(wire::HeartbeatMsg{0.0}, 0);
    REQUIRE(buf.size() == 24);
    const std::uint8_t prefix[12] = {0x4D, 0x41, 0x53, 0x43, 0x01, 0x04,
                                     0x00, 0x00, 0x00, 0x00, 0x08, 0x00};
    CHECK(std::memcmp(buf.data(), prefix, 12) == 0);
    for (int i = 12; i < 20; ++i) CHECK(buf[i] == 0);
    const std::uint32_t want = wire::crc32(buf.data(), 20);
    std::uint32_t got = 0;
    for (int i = 0; i < 4; ++i)
        got |= static_cast<std::uint32_t>(buf[20 + i]) << (8 * i);
    CHECK(got == want);
}

TEST_CASE("payload fields sit at the documented offsets") {
    wire::StateMsg m;
    m.t = 7.0;
    m.north = 1.5;
    auto buf = wire::encode_frame(m, 42);
    REQUIRE(buf.size() == 12 + 104 + 4);

    std::uint64_t bits = 0;
    std::memcpy(&bits, buf.data() + 20, 8);  // second field of the payload
    CHECK(std::bit_cast<double>(bits) == 1.5);

    patch_f64(buf, 20, 2.5);
    refresh_crc(buf);
    const auto res = wire::decode_frame(buf);
    REQUIRE(res.error == wire::DecodeError::Ok);
    REQUIRE(res.message.has_value());
    CHECK(res.message->seq == 42);
    CHECK(std::get<wire::StateMsg>(res.message->payload).north == 2.5);
    CHECK(std::get<wire::StateMsg>(res.message->payload).t == 7.0);
}

TEST_CASE("sizes and types agree across the schema") {
    CHECK(wire::payload_size(wire::MsgType::State) == 104);
    CHECK(wire::payload_size(wire::MsgType::Command) == 32);
    CHECK(wire::payload_size(wire::MsgType::Weather) == 40);
    CHECK(wire::payload_size(wire::MsgType::Heartbeat) == 8);
    CHECK(wire::type_of(wire::StateMsg{}) == wire::MsgType::State);
    CHECK(wire::type_of(wire::CommandMsg{}) == wire::MsgType::Command);
    CHECK(wire::type_of(wire::WeatherMsg{}) == wire::MsgType::Weather);
    CHECK(wire::type_of(wire::HeartbeatMsg{}) == wire::MsgType::Heartbeat);
    CHECK(wire::decode_error_name(wire::DecodeError::BadCrc) ==
          std::string("BadCrc"));
}

TEST_CASE("every message type round-trips bit for bit") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    wire::FrameEncoder enc;
    std::uint32_t expect_seq[4] = {0, 0, 0, 0};

    for (int i = 0; i < 10000; ++i) {
        wire::Payload p;
        const int kind = i % 4;
        switch (kind) {
            case 0: p = random_state(rng); break;
            case 1: p = wire::CommandMsg{u(rng), u(rng), u(rng), 2.0}; break;
            case 2:
                p = wire::WeatherMsg{u(rng), u(rng), u(rng), u(rng), u(rng)};
                break;
            default: p = wire::HeartbeatMsg{u(rng)}; break;
        }
        const auto buf = enc.encode(p);
        const auto res = wire::decode_frame(buf);
        REQUIRE(res.error == wire::DecodeError::Ok);
        REQUIRE(res.message.has_value());
        CHECK(res.message->seq == expect_seq[kind]++);

        const auto& got = res.message->payload;
        REQUIRE(wire::type_of(got) == wire::type_of(p));
        if (kind == 0) {
            const auto& a = std::get<wire::StateMsg>(p);
            const auto& b = std::get<wire::StateMsg>(got);
            CHECK(a.t == b.t);
            CHECK(a.north == b.north);
            CHECK(a.east == b.east);
            CHECK(a.alt == b.alt);
            CHECK(a.V == b.V);
            CHECK(a.psi == b.psi);
            CHECK(a.gamma == b.gamma);
            CHECK(a.phi == b.phi);
            CHECK(a.theta == b.theta);
            CHECK(a.p == b.p);
            CHECK(a.q == b.q);
            CHECK(a.r == b.r);
            CHECK(a.rpm == b.rpm);
        } else if (kind == 1) {
            const auto& a = std::get<wire::CommandMsg>(p);
            const auto& b = std::get<wire::CommandMsg>(got);
            CHECK(a.t == b.t);
            CHECK(a.roll_cmd == b.roll_cmd);
            CHECK(a.pitch_cmd == b.pitch_cmd);
            CHECK(a.phase == b.phase);
        } else if (kind == 2) {
            const auto& a = std::get<wire::WeatherMsg>(p);
            const auto& b = std::get<wire::WeatherMsg>(got);
            CHECK(a.t == b.t);
            CHECK(a.w_n == b.w_n);
            CHECK(a.w_e == b.w_e);
            CHECK(a.w_up == b.w_up);
            CHECK(a.dV == b.dV);
        } else {
            CHECK(std::get<wire::HeartbeatMsg>(p).t ==
                  std::get<wire::HeartbeatMsg>(got).t);
        }
    }
    CHECK(enc.next_seq(wire::MsgType::State) == 2500);
    CHECK(enc.next_seq(wire::MsgType::Heartbeat) == 2500);
}

TEST_CASE("random buffers never decode and never crash") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> len(0, 140);
    std::uniform_int_distribution<int> byte(0, 255);
    int oks = 0;
    for (int i = 0; i < 20000; ++i) {
        std::vector<std::uint8_t> buf(static_cast<std::size_t>(len(rng)));
        for (auto& b : buf) b = static_cast<std::uint8_t>(byte(rng));
        const auto res = wire::decode_frame(buf);
        if (res.error == wire::DecodeError::Ok) ++oks;
    }
    CHECK(oks == 0);
}

TEST_CASE("every single-bit corruption is rejected with the right reason") {
    std::mt19937_64 rng(5);
    const auto frame = wire::encode_frame(random_state(rng), 1234);
    REQUIRE(frame.size() == 120);

    for (std::size_t byte = 0; byte < frame.size(); ++byte) {
        for (int bit = 0; bit < 8; ++bit) {
            auto buf = frame;
            buf[byte] ^= static_cast<std::uint8_t>(1 << bit);
            const auto res = wire::decode_frame(buf);
            REQUIRE(res.error != wire::DecodeError::Ok);
            if (byte < 4) {
                CHECK(res.error == wire::DecodeError::BadMagic);
            } else if (byte == 4) {
                CHECK(res.error == wire::DecodeError::BadVersion);
            } else if (byte >= 6 && byte <= 9) {
                CHECK(res.error == wire::DecodeError::BadCrc);
            } else if (byte == 10 || byte == 11) {
                CHECK(res.error == wire::DecodeError::BadLength);
            } else if (byte >= 12) {
                CHECK(res.error == wire::DecodeError::BadCrc);
            }
            // byte 5 (type) lands on UnknownType or a schema length clash
        }
    }
}

TEST_CASE("truncated and oversized frames are length errors") {
    std::mt19937_64 rng(6);
    const auto frame = wire::encode_frame(random_state(rng), 7);
    for (std::size_t n = 0; n < frame.size(); ++n) {
        const auto res = wire::decode_frame(frame.data(), n);
        CHECK(res.error == wire::DecodeError::BadLength);
    }
    const std::vector<std::uint8_t> big(600, 0);
    CHECK(wire::decode_frame(big).error == wire::DecodeError::BadLength);
}

TEST_CASE("non-finite fields are refused on both sides") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(wire::encode_frame(wire::CommandMsg{0.0, nan, 0.0, 0.0}, 0),
                    NonFiniteError);

    auto buf = wire::encode_frame(wire::CommandMsg{1.0, 0.2, -0.1, 0.0}, 9);
    patch_f64(buf, 12 + 8, nan);  // roll_cmd
    refresh_crc(buf);
    CHECK(wire::decode_frame(buf).error == wire::DecodeError::NonFiniteField);
}

TEST_CASE("the loopback link preserves order and applies seeded loss") {
    wire::LoopbackLink link;
    for (std::uint8_t i = 0; i < 100; ++i) link.end_a().send({i, 1, 2});
    for (std::uint8_t i = 0; i < 100; ++i) {
        const auto d = link.end_b().recv();
        REQUIRE(d.has_value());
        CHECK((*d)[0] == i);
    }
    CHECK(!link.end_b().recv().has_value());
    link.end_b().send({0xEE});
    const auto back = link.end_a().recv();
    REQUIRE(back.has_value());
    CHECK((*back)[0] == 0xEE);

    auto kept_pattern = [](std::uint64_t seed) {
        wire::LoopbackLink lossy(0.25, seed);
        std::vector<std::uint8_t> kept;
        for (int i = 0; i < 1000; ++i)
            lossy.end_a().send({static_cast<std::uint8_t>(i & 0xFF)});
        while (auto d = lossy.end_b().recv()) kept.push_back((*d)[0]);
        CHECK(kept.size() + lossy.dropped() == 1000);
        CHECK(lossy.dropped() > 150);
        CHECK(lossy.dropped() < 400);
        return kept;
    };
    const auto k1 = kept_pattern(9);
    const auto k2 = kept_pattern(9);
    const auto k3 = kept_pattern(10);
    CHECK(k1 == k2);
    CHECK(k1 != k3);

    CHECK_THROWS_AS(wire::LoopbackLink(1.0, 0), ValidationError);
}

TEST_CASE("udp transports exchange datagrams on the local host") {
    wire::UdpTransport a("127.0.0.1", 48911, 48912);
    wire::UdpTransport b("127.0.0.1", 48912, 48911);
    CHECK(!a.recv().has_value());

    const auto frame = wire::encode_frame(wire::HeartbeatMsg{3.5}, 77);
    a.send(frame);
    std::optional<wire::Datagram> got;
    for (int i = 0; i < 2000 && !got; ++i) {
        got = b.recv();
        if (!got) std::this_thread::sleep_for(std::chrono::milliseconds(1));
    }
    REQUIRE(got.has_value());
    CHECK(*got == frame);

    b.send({1, 2, 3});
    std::optional<wire::Datagram> back;
    for (int i = 0; i < 2000 && !back; ++i) {
        back = a.recv();
        if (!back) std::this_thread::sleep_for(std::chrono::milliseconds(1));
    }
    REQUIRE(back.has_value());
    CHECK(back->size() == 3);
}

TEST_CASE("port overrides come from the environment") {
    ::unsetenv("AUTOGLIDE_STATE_PORT");
    CHECK(wire::state_port_from_env() == 47800);
    ::setenv("AUTOGLIDE_STATE_PORT", "", 1);
    CHECK(wire::state_port_from_env() == 47800);
    ::setenv("AUTOGLIDE_STATE_PORT", "50123", 1);
    CHECK(wire::state_port_from_env() == 50123);
    ::setenv("AUTOGLIDE_STATE_PORT", "notaport", 1);
    CHECK_THROWS_AS(wire::state_port_from_env(), ValidationError);
    ::setenv("AUTOGLIDE_STATE_PORT", "70000", 1);
    CHECK_THROWS_AS(wire::state_port_from_env(), ValidationError);
    ::unsetenv("AUTOGLIDE_STATE_PORT");

    ::unsetenv("AUTOGLIDE_CMD_PORT");
    CHECK(wire::cmd_port_from_env() == 47801);
    ::unsetenv("AUTOGLIDE_HOST");
    CHECK(wire::host_from_env() == "127.0.0.1");
    ::setenv("AUTOGLIDE_HOST", "10.0.0.5", 1);
    CHECK(wire::host_from_env() == "10.0.0.5");
    ::unsetenv("AUTOGLIDE_HOST");
}
