#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "secrisk/category/embedding.hpp"
#include "secrisk/category/taxonomy.hpp"
#include "secrisk/category/translate.hpp"
#include "secrisk/common/diagnostics.hpp"
#include "secrisk/keywords/keyword_set.hpp"

namespace secrisk {

enum class Matcher { None, Prefix, Substring, Semantic };

const char* to_string(Matcher m);

struct MatcherCutoffs {
    double prefix = 0.7;
    double substring = 0.7;
    double semantic = 0.65;
};

struct CategoryMatch {
    const DataCategory* category = nullptr;
    double score = 0.0;
};

/// Highest-scoring category; equal scores prefer higher sensitivity, then the
/// smaller name. Accepted iff score >= cutoff.
std::optional<CategoryMatch> prefix_match(std::string_view form, const Taxonomy& taxonomy, double cutoff);
std::optional<CategoryMatch> substring_match(std::string_view form, const Taxonomy& taxonomy, double cutoff);

/// Mean token vectors of every category name, computed once.
class SemanticIndex {
public:
    SemanticIndex(const Taxonomy& taxonomy, const EmbeddingProvider& provider);

    /// Tokens of `form` are split at '_' and lower-cased.
    std::optional<CategoryMatch> match(std::string_view form, double cutoff) const;
    /// Best category and its cosine regardless of any cutoff.
    CategoryMatch best(std::string_view form) const;

private:
    const Taxonomy* taxonomy_;
    const EmbeddingProvider* provider_;
    std::vector<Vector> category_vectors_;
};

struct CategoryMapping {
    std::string keyword;
    std::string normalized;  // form that matched, else the first form
    std::optional<DataCategory> category;
    Matcher matcher = Matcher::None;
    double score = 0.0;
    std::optional<std::string> translation;  // English text used for matching

    ValueLevel level() const { return category ? to_value_level(category->sensitivity) : ValueLevel::Unspecified; }
};

struct ValueCategory {
    ValueLevel level = ValueLevel::Unspecified;
    std::vector<CategoryMapping> evidence;
};

struct CategoryMapperOptions {
    MatcherCutoffs cutoffs;
    /// Tried in order for keywords that need translation.
    std::vector<const TranslationProvider*> translators;
    /// Decides which keywords need translation; may be null.
    const LexiconTranslator* lexicon = nullptr;
};

/// Read-only after construction; map() may be called concurrently with
/// per-caller Diagnostics.
class CategoryMapper {
public:
    /// `embedder` may be null, which disables the semantic matcher.
    CategoryMapper(const Taxonomy& taxonomy, const EmbeddingProvider* embedder, CategoryMapperOptions options = {});

    /// Translation when needed, then Prefix over every form, then Substring,
    /// then Semantic; the first acceptance wins.
    CategoryMapping map(std::string_view keyword, Diagnostics& diags) const;

    const Taxonomy& taxonomy() const { return *taxonomy_; }
    const MatcherCutoffs& cutoffs() const { return options_.cutoffs; }

private:
    const Taxonomy* taxonomy_;
    std::optional<SemanticIndex> semantic_;
    CategoryMapperOptions options_;
};

/// One mapping per keyword of the set, databases first, then tables, then
/// columns, each in key order.
std::vector<CategoryMapping> map_keyword_set(const DatabaseKeywordSet& keywords, const CategoryMapper& mapper,
                                             Diagnostics& diags);

/// Maximum sensitivity over the mappings; an empty keyword set is
/// Unspecified.
ValueCategory aggregate_value(const DatabaseKeywordSet& keywords, std::vector<CategoryMapping> mappings);

}  // namespace secrisk
