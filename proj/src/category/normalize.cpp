#include "secrisk/category/normalize.hpp"

#include <algorithm>
#include <cctype>

#include "secrisk/common/text.hpp"

namespace secrisk {

namespace {

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }
bool is_word(char c) { return std::isalnum(static_cast<unsigned char>(c)) || static_cast<unsigned char>(c) >= 0x80; }

bool stop_token(const std::string& t) { return t == "DB" || t == "TBL" || t == "COL"; }

std::string join_tokens(const std::vector<std::string>& tokens) { return text::join(tokens, "_"); }

}  // namespace

std::vector<std::string> identifier_tokens(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) out.push_back(text::to_upper_ascii(cur));
        cur.clear();
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (!is_word(c)) {
            flush();
            continue;
        }
        if (!cur.empty()) {
            const char p = s[i - 1];
            const bool hump = is_lower(p) && is_upper(c);
            const bool acronym_end = is_upper(p) && is_upper(c) && i + 1 < s.size() && is_lower(s[i + 1]);
            if (hump || acronym_end) flush();
        }
        cur += c;
    }
    flush();
    return out;
}

std::vector<std::string> normalize_keyword(std::string_view keyword) {
    std::vector<std::string> forms;
    auto add = [&](const std::string& f) {
        if (!f.empty() && std::find(forms.begin(), forms.end(), f) == forms.end()) forms.push_back(f);
    };
    const auto tokens = identifier_tokens(keyword);
    add(join_tokens(tokens));

    std::vector<std::string> unsplit;
    for (const auto& part : text::split(keyword, '_')) {
        std::string piece;
        for (char c : part) {
            if (is_word(c)) {
                piece += c;
            } else if (!piece.empty()) {
                unsplit.push_back(text::to_upper_ascii(piece));
                piece.clear();
            }
        }
        if (!piece.empty()) unsplit.push_back(text::to_upper_ascii(piece));
    }
    add(join_tokens(unsplit));

    std::vector<std::string> stripped;
    for (const auto& t : tokens)
        if (!stop_token(t)) stripped.push_back(t);
    if (!stripped.empty() && !(stripped.size() == 1 && stripped[0] == "ID")) add(join_tokens(stripped));
    return forms;
}

bool is_structural_keyword(std::string_view keyword) {
    const auto tokens = identifier_tokens(keyword);
    return !tokens.empty() &&
           std::all_of(tokens.begin(), tokens.end(), [](const std::string& t) { return stop_token(t) || t == "ID"; });
}

}  // namespace secrisk
