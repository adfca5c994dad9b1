#include "secrisk/category/translate.hpp"

#include <fstream>
#include <sstream>

#include "secrisk/common/error.hpp"
#include "secrisk/common/text.hpp"

namespace secrisk {

namespace {

bool has_non_ascii(std::string_view s) {
    for (unsigned char c : s)
        if (c >= 0x80) return true;
    return false;
}

std::vector<std::string> word_tokens(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == '_' || c == '-' || c == ' ' || c == '.') {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

}  // namespace

LexiconTranslator LexiconTranslator::parse(std::string_view content, const std::string& source) {
    LexiconTranslator t;
    std::size_t line_no = 0;
    for (const auto& raw : text::split_lines(content)) {
        ++line_no;
        std::string_view line = text::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto bar = line.find('|');
        const std::string where = source + ":" + std::to_string(line_no);
        if (bar == std::string_view::npos) throw Error(where + ": expected 'source | english'");
        const std::string key = text::fold_diacritics_lower(text::trim(line.substr(0, bar)));
        const std::string english(text::trim(line.substr(bar + 1)));
        if (key.empty() || english.empty()) throw Error(where + ": empty lexicon field");
        if (!t.entries_.emplace(key, english).second) throw Error(where + ": duplicate lexicon entry '" + key + "'");
    }
    return t;
}

LexiconTranslator LexiconTranslator::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read lexicon " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

bool LexiconTranslator::knows(std::string_view word) const {
    return entries_.count(text::fold_diacritics_lower(word)) > 0;
}

std::optional<std::string> LexiconTranslator::translate(std::string_view keyword) const {
    const std::string folded = text::fold_diacritics_lower(text::trim(keyword));
    if (const auto it = entries_.find(folded); it != entries_.end()) return it->second;
    const auto tokens = word_tokens(folded);
    if (tokens.size() < 2) return std::nullopt;
    std::vector<std::string> parts;
    bool any = false;
    for (const auto& tok : tokens) {
        if (const auto it = entries_.find(tok); it != entries_.end()) {
            parts.push_back(it->second);
            any = true;
        } else if (has_non_ascii(tok)) {
            return std::nullopt;
        } else {
            parts.push_back(tok);
        }
    }
    if (!any) return std::nullopt;
    return text::join(parts, "_");
}

bool needs_translation(std::string_view keyword, const LexiconTranslator* lexicon) {
    if (has_non_ascii(keyword)) return true;
    if (!lexicon) return false;
    if (lexicon->knows(keyword)) return true;
    for (const auto& tok : word_tokens(keyword))
        if (lexicon->knows(tok)) return true;
    return false;
}

std::optional<std::string> translate_keyword(std::string_view keyword,
                                             const std::vector<const TranslationProvider*>& providers,
                                             Diagnostics& diags) {
    for (const auto* p : providers) {
        if (!p) continue;
        try {
            if (auto english = p->translate(keyword)) return english;
        } catch (const std::exception& e) {
            diags.warn("category", "translation via " + p->name() + " failed for '" + std::string(keyword) +
                                       "': " + e.what());
        }
    }
    diags.info("category", "no translation for '" + std::string(keyword) + "'");
    return std::nullopt;
}

}  // namespace secrisk
