#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace secrisk {

struct IpAddress {
    bool v6 = false;
    std::array<std::uint8_t, 16> bytes{};  // IPv4 uses the first four

    std::string text() const;
    auto operator<=>(const IpAddress&) const = default;
};

/// Dotted-quad IPv4 (no leading zeros beyond a lone 0) or RFC 4291 IPv6,
/// optionally in brackets.
std::optional<IpAddress> parse_ip(std::string_view text);
bool validate_ip(std::string_view text);

/// False for loopback, private, shared, link-local, unique-local,
/// unspecified, documentation, benchmarking, reserved, multicast and
/// broadcast ranges, and for IPv6 addresses embedding such an IPv4.
bool is_routable(const IpAddress& ip);

/// Label syntax: 1-63 alphanumeric or '-' bytes without a leading or
/// trailing hyphen, total length <= 253 (one trailing dot ignored), at
/// least two labels, and an alphabetic top label.
bool validate_dns_format(std::string_view host);

/// Hosts made of digits, dots, colons and x/X/* only, with either a colon
/// or three dots, are judged as IP addresses rather than DNS names.
bool looks_like_ip(std::string_view host);

/// Lower-cased, brackets and one trailing dot removed.
std::string normalize_host(std::string_view host);

}  // namespace secrisk
