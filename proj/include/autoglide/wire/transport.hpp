// Datagram transports: an in-memory loopback pair for deterministic tests
// and a thin UDP socket wrapper for running the two halves as processes.
#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "autoglide/weather.hpp"

namespace autoglide::wire {

using Datagram = std::vector<std::uint8_t>;

/// Unreliable, unordered-in-principle datagram channel. send() never blocks;
/// recv() returns nothing when no datagram is waiting.
class Transport {
  public:
    virtual ~Transport() = default;
    virtual void send(const Datagram& d) = 0;
    virtual std::optional<Datagram> recv() = 0;
};

/// A pair of queues with optional seeded loss, emulating one bidirectional
/// link. end_a() and end_b() each return a Transport whose send feeds the
/// other end's recv.
class LoopbackLink {
  public:
    /// loss_rate in [0, 1): each datagram is dropped i.i.d. with this
    /// probability, using a private splitmix64 stream.
    explicit LoopbackLink(double loss_rate = 0.0, std::uint64_t seed = 0);
    ~LoopbackLink();

    Transport& end_a();
    Transport& end_b();

    std::size_t dropped() const { return dropped_; }

  private:
    class End;
    bool deliver();  // loss draw

    std::deque<Datagram> to_a_;
    std::deque<Datagram> to_b_;
    double loss_rate_;
    weather::Rng rng_;
    std::size_t dropped_ = 0;
    std::unique_ptr<End> a_;
    std::unique_ptr<End> b_;
};

/// Non-blocking UDP socket bound to a local port, sending to a fixed peer.
/// Throws TransportError on socket failures.
class UdpTransport : public Transport {
  public:
    UdpTransport(const std::string& host, std::uint16_t local_port,
                 std::uint16_t remote_port);
    ~UdpTransport() override;

    UdpTransport(const UdpTransport&) = delete;
    UdpTransport& operator=(const UdpTransport&) = delete;

    void send(const Datagram& d) override;
    std::optional<Datagram> recv() override;

  private:
    int fd_ = -1;
    std::string host_;
    std::uint16_t remote_port_ = 0;
};

/// Default ports; the environment variables AUTOGLIDE_STATE_PORT,
/// AUTOGLIDE_CMD_PORT and AUTOGLIDE_HOST override them.
inline constexpr std::uint16_t kDefaultStatePort = 47800;
inline constexpr std::uint16_t kDefaultCmdPort = 47801;

std::uint16_t state_port_from_env();
std::uint16_t cmd_port_from_env();
std::string host_from_env();

}  // namespace autoglide::wire
