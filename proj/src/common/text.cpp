#include "secrisk/common/text.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <unordered_map>

namespace secrisk::text {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }
char upper(char c) { return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c; }

}  // namespace

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::string to_upper_ascii(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = upper(c);
    return out;
}

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = lower(c);
    return out;
}

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (lower(a[i]) != lower(b[i])) return false;
    return true;
}

bool starts_with_icase(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && iequals(s.substr(0, prefix.size()), prefix);
}

bool ends_with_icase(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && iequals(s.substr(s.size() - suffix.size()), suffix);
}

bool is_ascii(std::string_view s) {
    for (unsigned char c : s)
        if (c >= 0x80) return false;
    return true;
}

std::vector<std::string> split(std::string_view s, char sep, bool keep_empty) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) pos = s.size();
        auto piece = s.substr(start, pos - start);
        if (keep_empty || !piece.empty()) out.emplace_back(piece);
        start = pos + 1;
    }
    return out;
}

std::vector<std::string> split_lines(std::string_view s) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\n') {
            std::size_t end = i;
            if (end > start && s[end - 1] == '\r') --end;
            lines.emplace_back(s.substr(start, end - start));
            start = i + 1;
        }
    }
    if (start < s.size()) {
        auto tail = s.substr(start);
        if (!tail.empty() && tail.back() == '\r') tail.remove_suffix(1);
        lines.emplace_back(tail);
    }
    return lines;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string strip_quotes(std::string_view s) {
    s = trim(s);
    if (s.size() >= 2) {
        char f = s.front(), b = s.back();
        if ((f == '"' && b == '"') || (f == '\'' && b == '\'') || (f == '`' && b == '`') ||
            (f == '[' && b == ']'))
            return std::string(trim(s.substr(1, s.size() - 2)));
    }
    return std::string(s);
}

std::u32string utf8_decode(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        auto c = static_cast<unsigned char>(s[i]);
        char32_t cp = 0xFFFD;
        std::size_t len = 1;
        if (c < 0x80) {
            cp = c;
        } else if ((c >> 5) == 0x6) {
            len = 2;
        } else if ((c >> 4) == 0xE) {
            len = 3;
        } else if ((c >> 3) == 0x1E) {
            len = 4;
        }
        if (len > 1) {
            if (i + len > s.size()) {
                len = 1;
            } else {
                cp = c & (0xFF >> (len + 1));
                bool ok = true;
                for (std::size_t k = 1; k < len; ++k) {
                    auto cc = static_cast<unsigned char>(s[i + k]);
                    if ((cc >> 6) != 0x2) {
                        ok = false;
                        break;
                    }
                    cp = (cp << 6) | (cc & 0x3F);
                }
                if (!ok) {
                    cp = 0xFFFD;
                    len = 1;
                }
            }
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string utf8_encode(std::u32string_view s) {
    std::string out;
    for (char32_t cp : s) {
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }
    return out;
}

std::string fold_diacritics_lower(std::string_view s) {
    // Latin-1 supplement, Latin Extended-A and the pinyin caron vowels.
    static const std::unordered_map<char32_t, char> fold = [] {
        std::unordered_map<char32_t, char> m;
        auto add = [&](std::u32string_view cps, char ascii) {
            for (char32_t cp : cps) m[cp] = ascii;
        };
        add(U"ÀÁÂÃÄÅàáâãäåĀāĂăĄąǍǎ", 'a');
        add(U"ÇçĆćĈĉĊċČč", 'c');
        add(U"ĎďĐđ", 'd');
        add(U"ÈÉÊËèéêëĒēĔĕĖėĘęĚě", 'e');
        add(U"ĜĝĞğĠġĢģ", 'g');
        add(U"ĤĥĦħ", 'h');
        add(U"ÌÍÎÏìíîïĨĩĪīĬĭĮįİıǏǐ", 'i');
        add(U"Ĵĵ", 'j');
        add(U"Ķķ", 'k');
        add(U"ĹĺĻļĽľĿŀŁł", 'l');
        add(U"ÑñŃńŅņŇň", 'n');
        add(U"ÒÓÔÕÖØòóôõöøŌōŎŏŐőǑǒ", 'o');
        add(U"ŔŕŖŗŘř", 'r');
        add(U"ŚśŜŝŞşŠš", 's');
        add(U"ŢţŤťŦŧ", 't');
        add(U"ÙÚÛÜùúûüŨũŪūŬŭŮůŰűŲųǓǔǕǖǗǘǙǚǛǜ", 'u');
        add(U"Ŵŵ", 'w');
        add(U"ÝýÿŶŷŸ", 'y');
        add(U"ŹźŻżŽž", 'z');
        return m;
    }();
    std::u32string out;
    for (char32_t cp : utf8_decode(s)) {
        if (cp < 0x80) {
            out.push_back(static_cast<char32_t>(lower(static_cast<char>(cp))));
        } else if (auto it = fold.find(cp); it != fold.end()) {
            out.push_back(static_cast<char32_t>(it->second));
        } else {
            out.push_back(cp);
        }
    }
    return utf8_encode(out);
}

std::uint64_t fnv1a64(std::string_view s, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint32_t fnv1a32(std::string_view s) {
    std::uint32_t h = 2166136261u;
    for (unsigned char c : s) {
        h ^= c;
        h *= 16777619u;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

double shannon_entropy(std::string_view s) {
    if (s.empty()) return 0.0;
    std::array<std::size_t, 256> counts{};
    for (unsigned char c : s) ++counts[c];
    double h = 0.0;
    const double n = static_cast<double>(s.size());
    for (auto count : counts) {
        if (!count) continue;
        double p = static_cast<double>(count) / n;
        h -= p * std::log2(p);
    }
    return h;
}

std::size_t common_prefix_icase(std::string_view a, std::string_view b) {
    std::size_t n = 0;
    while (n < a.size() && n < b.size() && lower(a[n]) == lower(b[n])) ++n;
    return n;
}

}  // namespace secrisk::text
