#include "secrisk/ease/host.hpp"

#include <arpa/inet.h>

#include <algorithm>
#include <cctype>

#include "secrisk/common/text.hpp"

namespace secrisk {

namespace {

bool strict_ipv4(std::string_view s, std::array<std::uint8_t, 16>& out) {
    int parts = 0;
    std::size_t i = 0;
    while (parts < 4) {
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        std::size_t j = i;
        int value = 0;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])) && j - i < 4) {
            value = value * 10 + (s[j] - '0');
            ++j;
        }
        if (j - i > 3 || value > 255 || (j - i > 1 && s[i] == '0')) return false;
        out[parts++] = static_cast<std::uint8_t>(value);
        i = j;
        if (parts < 4) {
            if (i >= s.size() || s[i] != '.') return false;
            ++i;
        }
    }
    return i == s.size();
}

struct Net4 {
    std::uint32_t base;
    int prefix;
};

std::uint32_t v4_word(const std::array<std::uint8_t, 16>& b) {
    return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) | b[3];
}

bool in_net(std::uint32_t ip, Net4 n) {
    const std::uint32_t mask = n.prefix == 0 ? 0 : ~std::uint32_t{0} << (32 - n.prefix);
    return (ip & mask) == (n.base & mask);
}

constexpr std::uint32_t v4(unsigned a, unsigned b, unsigned c, unsigned d) { return (a << 24) | (b << 16) | (c << 8) | d; }

bool routable_v4(std::uint32_t ip) {
    static constexpr Net4 kBlocked[] = {
        {v4(0, 0, 0, 0), 8},        {v4(10, 0, 0, 0), 8},     {v4(100, 64, 0, 0), 10},
        {v4(127, 0, 0, 0), 8},      {v4(169, 254, 0, 0), 16}, {v4(172, 16, 0, 0), 12},
        {v4(192, 0, 0, 0), 24},     {v4(192, 0, 2, 0), 24},   {v4(192, 88, 99, 0), 24},
        {v4(192, 168, 0, 0), 16},   {v4(198, 18, 0, 0), 15},  {v4(198, 51, 100, 0), 24},
        {v4(203, 0, 113, 0), 24},   {v4(224, 0, 0, 0), 4},    {v4(240, 0, 0, 0), 4},
    };
    return std::none_of(std::begin(kBlocked), std::end(kBlocked), [&](Net4 n) { return in_net(ip, n); });
}

bool prefix_is(const std::array<std::uint8_t, 16>& b, std::initializer_list<std::uint8_t> head, int bits) {
    int bit = 0;
    for (std::uint8_t h : head) {
        const int take = std::min(8, bits - bit);
        if (take <= 0) break;
        const std::uint8_t mask = static_cast<std::uint8_t>(0xFF << (8 - take));
        if ((b[bit / 8] & mask) != (h & mask)) return false;
        bit += 8;
    }
    return true;
}

bool routable_v6(const std::array<std::uint8_t, 16>& b) {
    const bool zero_head = std::all_of(b.begin(), b.begin() + 10, [](std::uint8_t x) { return x == 0; });
    if (zero_head && b[10] == 0xFF && b[11] == 0xFF) {  // ::ffff:a.b.c.d
        std::array<std::uint8_t, 16> v{};
        std::copy(b.begin() + 12, b.end(), v.begin());
        return routable_v4(v4_word(v));
    }
    if (zero_head && b[10] == 0 && b[11] == 0) return false;  // ::, ::1, deprecated IPv4-compatible
    if (prefix_is(b, {0x00, 0x64, 0xFF, 0x9B}, 32)) {        // 64:ff9b::/96 NAT64
        std::array<std::uint8_t, 16> v{};
        std::copy(b.begin() + 12, b.end(), v.begin());
        return routable_v4(v4_word(v));
    }
    if (prefix_is(b, {0x01, 0x00}, 64) && std::all_of(b.begin() + 2, b.begin() + 8, [](std::uint8_t x) { return x == 0; }))
        return false;                                            // 100::/64 discard
    if (prefix_is(b, {0x20, 0x01, 0x0D, 0xB8}, 32)) return false;  // documentation
    if (prefix_is(b, {0x20, 0x01, 0x00}, 23)) return false;        // IETF protocol assignments
    if (prefix_is(b, {0x20, 0x02}, 16)) {                           // 6to4 embeds an IPv4
        std::array<std::uint8_t, 16> v{};
        std::copy(b.begin() + 2, b.begin() + 6, v.begin());
        return routable_v4(v4_word(v));
    }
    if (prefix_is(b, {0xFC}, 7)) return false;        // unique local
    if (prefix_is(b, {0xFE, 0x80}, 10)) return false;  // link local
    if (prefix_is(b, {0xFE, 0xC0}, 10)) return false;  // site local
    if (prefix_is(b, {0xFF}, 8)) return false;         // multicast
    return prefix_is(b, {0x20}, 3);                    // global unicast 2000::/3
}

}  // namespace

std::string IpAddress::text() const {
    char buf[INET6_ADDRSTRLEN] = {};
    inet_ntop(v6 ? AF_INET6 : AF_INET, bytes.data(), buf, sizeof buf);
    return buf;
}

std::optional<IpAddress> parse_ip(std::string_view s) {
    s = text::trim(s);
    if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
    IpAddress ip;
    if (s.find(':') == std::string_view::npos) {
        if (!strict_ipv4(s, ip.bytes)) return std::nullopt;
        return ip;
    }
    if (s.find('%') != std::string_view::npos) return std::nullopt;  // zone ids name no routable asset
    const std::string z(s);
    if (inet_pton(AF_INET6, z.c_str(), ip.bytes.data()) != 1) return std::nullopt;
    ip.v6 = true;
    return ip;
}

bool validate_ip(std::string_view text) { return parse_ip(text).has_value(); }

bool is_routable(const IpAddress& ip) { return ip.v6 ? routable_v6(ip.bytes) : routable_v4(v4_word(ip.bytes)); }

bool validate_dns_format(std::string_view host) {
    if (!host.empty() && host.back() == '.') host.remove_suffix(1);
    if (host.empty() || host.size() > 253) return false;
    const auto labels = text::split(host, '.', true);
    if (labels.size() < 2) return false;
    for (const auto& label : labels) {
        if (label.empty() || label.size() > 63) return false;
        if (label.front() == '-' || label.back() == '-') return false;
        for (unsigned char c : label)
            if (!std::isalnum(c) && c != '-') return false;
    }
    const auto& top = labels.back();
    return std::all_of(top.begin(), top.end(), [](unsigned char c) { return std::isalpha(c); });
}

bool looks_like_ip(std::string_view host) {
    if (host.size() >= 2 && host.front() == '[' && host.back() == ']') return true;
    if (host.empty()) return false;
    int dots = 0;
    const bool colon = host.find(':') != std::string_view::npos;
    for (char c : host) {
        if (c == '.') ++dots;
        else if (c == ':') continue;
        else if (!std::isdigit(static_cast<unsigned char>(c)) && c != 'x' && c != 'X' && c != '*' &&
                 !(colon && std::isxdigit(static_cast<unsigned char>(c))))
            return false;
    }
    return colon || dots == 3;
}

std::string normalize_host(std::string_view host) {
    host = text::trim(host);
    if (host.size() >= 2 && host.front() == '[' && host.back() == ']') host = host.substr(1, host.size() - 2);
    if (!host.empty() && host.back() == '.') host.remove_suffix(1);
    return text::to_lower_ascii(host);
}

}  // namespace secrisk
