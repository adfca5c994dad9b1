#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "secrisk/common/diagnostics.hpp"

namespace secrisk {

/// Keyword -> English. Returns nullopt when the provider has no
/// translation; throws secrisk::Error on a provider failure.
class TranslationProvider {
public:
    virtual ~TranslationProvider() = default;
    virtual std::string name() const = 0;
    virtual std::optional<std::string> translate(std::string_view keyword) const = 0;
};

/// Bundled `source | english` table. Sources are compared after diacritic
/// folding and lower-casing, so "Xìngbié" and "xingbie" share an entry.
class LexiconTranslator : public TranslationProvider {
public:
    static LexiconTranslator parse(std::string_view text, const std::string& source);
    static LexiconTranslator load(const std::filesystem::path& path);

    std::string name() const override { return "lexicon"; }
    /// Whole-keyword lookup first, then per token split at '_', '-', ' '
    /// and '.'. Tokens without an entry are kept when ASCII; any untranslated
    /// non-ASCII token makes the result nullopt.
    std::optional<std::string> translate(std::string_view keyword) const override;
    bool knows(std::string_view word) const;
    std::size_t size() const { return entries_.size(); }

private:
    std::unordered_map<std::string, std::string> entries_;
};

/// True for keywords with non-ASCII bytes or with a whole or token match in
/// the lexicon.
bool needs_translation(std::string_view keyword, const LexiconTranslator* lexicon);

/// Tries each provider in order; a failure is recorded and the next one is
/// tried. Returns the English text of the first provider that answers.
std::optional<std::string> translate_keyword(std::string_view keyword,
                                             const std::vector<const TranslationProvider*>& providers,
                                             Diagnostics& diags);

}  // namespace secrisk
