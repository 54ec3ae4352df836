// Loopback and UDP datagram transports.
#include "autoglide/wire/transport.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <utility>

#include "autoglide/errors.hpp"
#include "autoglide/wire/frame.hpp"

namespace autoglide::wire {

class LoopbackLink::End : public Transport {
  public:
    End(LoopbackLink& link, std::deque<Datagram>& out, std::deque<Datagram>& in)
        : link_(link), out_(out), in_(in) {}

    void send(const Datagram& d) override {
        if (link_.deliver())
            out_.push_back(d);
        else
            ++link_.dropped_;
    }

    std::optional<Datagram> recv() override {
        if (in_.empty()) return std::nullopt;
        Datagram d = std::move(in_.front());
        in_.pop_front();
        return d;
    }

  private:
    LoopbackLink& link_;
    std::deque<Datagram>& out_;
    std::deque<Datagram>& in_;
};

LoopbackLink::LoopbackLink(double loss_rate, std::uint64_t seed)
    : loss_rate_(loss_rate), rng_(seed) {
    if (!(loss_rate >= 0.0 && loss_rate < 1.0))
        throw ValidationError("LoopbackLink: loss_rate must be in [0, 1)");
    a_ = std::make_unique<End>(*this, to_b_, to_a_);
    b_ = std::make_unique<End>(*this, to_a_, to_b_);
}

LoopbackLink::~LoopbackLink() = default;

Transport& LoopbackLink::end_a() { return *a_; }
Transport& LoopbackLink::end_b() { return *b_; }

bool LoopbackLink::deliver() {
    if (loss_rate_ <= 0.0) return true;
    return rng_.next_double() >= loss_rate_;
}

namespace {

sockaddr_in resolve(const std::string& host, std::uint16_t port) {
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_DGRAM;
    addrinfo* res = nullptr;
    const int rc = ::getaddrinfo(host.c_str(), nullptr, &hints, &res);
    if (rc != 0 || res == nullptr)
        throw TransportError("cannot resolve host '" + host +
                             "': " + ::gai_strerror(rc));
    sockaddr_in addr{};
    std::memcpy(&addr, res->ai_addr, sizeof(addr));
    addr.sin_port = htons(port);
    ::freeaddrinfo(res);
    return addr;
}

}  // namespace

UdpTransport::UdpTransport(const std::string& host, std::uint16_t local_port,
                           std::uint16_t remote_port)
    : host_(host), remote_port_(remote_port) {
    fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
    if (fd_ < 0)
        throw TransportError(std::string("socket: ") + std::strerror(errno));

    const int one = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

    sockaddr_in local{};
    local.sin_family = AF_INET;
    local.sin_addr.s_addr = htonl(INADDR_ANY);
    local.sin_port = htons(local_port);
    if (::bind(fd_, reinterpret_cast<const sockaddr*>(&local), sizeof(local)) <
        0) {
        const std::string why = std::strerror(errno);
        ::close(fd_);
        fd_ = -1;
        throw TransportError("bind port " + std::to_string(local_port) + ": " +
                             why);
    }

    const int flags = ::fcntl(fd_, F_GETFL, 0);
    if (flags < 0 || ::fcntl(fd_, F_SETFL, flags | O_NONBLOCK) < 0) {
        const std::string why = std::strerror(errno);
        ::close(fd_);
        fd_ = -1;
        throw TransportError("fcntl O_NONBLOCK: " + why);
    }
}

UdpTransport::~UdpTransport() {
    if (fd_ >= 0) ::close(fd_);
}

void UdpTransport::send(const Datagram& d) {
    const sockaddr_in peer = resolve(host_, remote_port_);
    const auto n =
        ::sendto(fd_, d.data(), d.size(), 0,
                 reinterpret_cast<const sockaddr*>(&peer), sizeof(peer));
    if (n < 0) {
        if (errno == EAGAIN || errno == EWOULDBLOCK || errno == ECONNREFUSED)
            return;  // best effort, like the link itself
        throw TransportError(std::string("sendto: ") + std::strerror(errno));
    }
}

std::optional<Datagram> UdpTransport::recv() {
    std::uint8_t buf[kMaxFrameSize + 1];
    const auto n = ::recvfrom(fd_, buf, sizeof(buf), 0, nullptr, nullptr);
    if (n < 0) {
        if (errno == EAGAIN || errno == EWOULDBLOCK || errno == ECONNREFUSED)
            return std::nullopt;
        throw TransportError(std::string("recvfrom: ") + std::strerror(errno));
    }
    return Datagram(buf, buf + n);
}

namespace {

std::uint16_t port_from_env(const char* name, std::uint16_t fallback) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return fallback;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v < 1 || v > 65535)
        throw ValidationError(std::string(name) + ": invalid port '" + raw +
                              "'");
    return static_cast<std::uint16_t>(v);
}

}  // namespace

std::uint16_t state_port_from_env() {
    return port_from_env("AUTOGLIDE_STATE_PORT", kDefaultStatePort);
}

std::uint16_t cmd_port_from_env() {
    return port_from_env("AUTOGLIDE_CMD_PORT", kDefaultCmdPort);
}

std::string host_from_env() {
    const char* raw = std::getenv("AUTOGLIDE_HOST");
    return (raw == nullptr || *raw == '\0') ? std::string("127.0.0.1")
                                            : std::string(raw);
}

}  // namespace autoglide::wire
