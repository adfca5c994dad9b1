#include "secrisk/ease/fixtures.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "secrisk/common/error.hpp"
#include "secrisk/common/text.hpp"
#include "secrisk/ease/host.hpp"

namespace secrisk {

namespace {

std::string slurp(const std::filesystem::path& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(std::string("cannot read ") + what + " " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Whitespace-separated fields of each non-comment line, with line numbers.
template <class F>
void for_each_record(std::string_view content, F f) {
    int line_no = 0;
    for (const auto& raw : text::split_lines(content)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        std::istringstream in{std::string(text::trim(line))};
        std::vector<std::string> fields;
        for (std::string f; in >> f;) fields.push_back(f);
        if (!fields.empty()) f(line_no, fields);
    }
}

}  // namespace

FixtureDns FixtureDns::parse(std::string_view content, const std::string& source) {
    FixtureDns dns;
    for_each_record(content, [&](int line_no, const std::vector<std::string>& f) {
        const std::string where = source + ":" + std::to_string(line_no);
        DnsAnswer a;
        if (f.size() == 2 && text::iequals(f[1], "NXDOMAIN")) {
            a.kind = DnsAnswer::Kind::NxDomain;
        } else if (f.size() == 2 && text::iequals(f[1], "TIMEOUT")) {
            a.kind = DnsAnswer::Kind::Failure;
            a.value = "timeout";
        } else if (f.size() == 3 && text::iequals(f[1], "CNAME")) {
            a.kind = DnsAnswer::Kind::Cname;
            a.value = normalize_host(f[2]);
        } else if (f.size() == 2) {
            a.kind = DnsAnswer::Kind::Address;
            a.value = f[1];
        } else {
            throw Error(where + ": expected 'name ip', 'name CNAME target', 'name NXDOMAIN' or 'name TIMEOUT'");
        }
        if (!dns.answers_.emplace(normalize_host(f[0]), a).second)
            throw Error(where + ": duplicate name '" + f[0] + "'");
    });
    return dns;
}

FixtureDns FixtureDns::load(const std::filesystem::path& path) {
    return parse(slurp(path, "DNS fixture"), path.string());
}

DnsAnswer FixtureDns::query(std::string_view host) const {
    const auto it = answers_.find(normalize_host(host));
    if (it == answers_.end()) return {DnsAnswer::Kind::NxDomain, {}};
    return it->second;
}

FixtureScan FixtureScan::parse(std::string_view content, const std::string& source) {
    FixtureScan scan;
    for_each_record(content, [&](int line_no, const std::vector<std::string>& f) {
        const std::string where = source + ":" + std::to_string(line_no);
        if (f.size() != 2) throw Error(where + ": expected 'ip port,port,...', 'ip -' or 'ip TIMEOUT'");
        ScanAnswer a;
        if (text::iequals(f[1], "TIMEOUT")) {
            a.kind = ScanAnswer::Kind::Failure;
            a.message = "timeout";
        } else {
            a.kind = ScanAnswer::Kind::Found;
            if (f[1] != "-") {
                for (const auto& p : text::split(f[1], ',')) {
                    int port = 0;
                    const auto [end, ec] = std::from_chars(p.data(), p.data() + p.size(), port);
                    if (ec != std::errc{} || end != p.data() + p.size() || port < 1 || port > 65535)
                        throw Error(where + ": bad port '" + p + "'");
                    a.ports.insert(port);
                }
            }
        }
        const auto ip = parse_ip(f[0]);
        if (!ip) throw Error(where + ": bad IP address '" + f[0] + "'");
        if (!scan.answers_.emplace(ip->text(), a).second) throw Error(where + ": duplicate address '" + f[0] + "'");
    });
    return scan;
}

FixtureScan FixtureScan::load(const std::filesystem::path& path) {
    return parse(slurp(path, "scan fixture"), path.string());
}

ScanAnswer FixtureScan::services(std::string_view ip) const {
    const auto parsed = parse_ip(ip);
    const auto it = parsed ? answers_.find(parsed->text()) : answers_.end();
    if (it == answers_.end()) return {ScanAnswer::Kind::NotFound, {}, {}};
    return it->second;
}

}  // namespace secrisk
