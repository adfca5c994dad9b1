#include "secrisk/category/mapper.hpp"

#include <algorithm>

#include "secrisk/category/normalize.hpp"
#include "secrisk/category/similarity.hpp"
#include "secrisk/common/text.hpp"

namespace secrisk {

const char* to_string(Matcher m) {
    switch (m) {
        case Matcher::None: return "None";
        case Matcher::Prefix: return "Prefix";
        case Matcher::Substring: return "Substring";
        case Matcher::Semantic: return "Semantic";
    }
    return "None";
}

namespace {

bool better(double score, const DataCategory& cat, const CategoryMatch& current) {
    if (!current.category) return true;
    if (score != current.score) return score > current.score;
    if (cat.sensitivity != current.category->sensitivity) return cat.sensitivity > current.category->sensitivity;
    return cat.name < current.category->name;
}

template <class Score>
CategoryMatch best_by(const Taxonomy& taxonomy, Score score) {
    CategoryMatch best;
    for (const auto& cat : taxonomy.categories()) {
        const double s = score(cat);
        if (better(s, cat, best)) best = {&cat, s};
    }
    return best;
}

std::optional<CategoryMatch> accept(CategoryMatch m, double cutoff) {
    if (!m.category || m.score < cutoff) return std::nullopt;
    return m;
}

std::vector<std::string> lower_tokens(std::string_view form) {
    std::vector<std::string> out;
    for (const auto& t : text::split(form, '_'))
        if (!t.empty()) out.push_back(text::to_lower_ascii(t));
    return out;
}

constexpr const char* kNoEmbedder = "semantic matcher skipped: no embedding provider";

}  // namespace

std::optional<CategoryMatch> prefix_match(std::string_view form, const Taxonomy& taxonomy, double cutoff) {
    return accept(best_by(taxonomy, [&](const DataCategory& c) { return jaro_winkler(form, c.name); }), cutoff);
}

std::optional<CategoryMatch> substring_match(std::string_view form, const Taxonomy& taxonomy, double cutoff) {
    return accept(best_by(taxonomy, [&](const DataCategory& c) { return ratcliff_obershelp(form, c.name); }), cutoff);
}

SemanticIndex::SemanticIndex(const Taxonomy& taxonomy, const EmbeddingProvider& provider)
    : taxonomy_(&taxonomy), provider_(&provider) {
    category_vectors_.reserve(taxonomy.size());
    for (const auto& cat : taxonomy.categories())
        category_vectors_.push_back(mean_vector(lower_tokens(cat.name), provider));
}

CategoryMatch SemanticIndex::best(std::string_view form) const {
    const Vector v = mean_vector(lower_tokens(form), *provider_);
    CategoryMatch best;
    if (v.empty()) return best;
    const auto& cats = taxonomy_->categories();
    for (std::size_t i = 0; i < cats.size(); ++i) {
        const double s = cosine(v, category_vectors_[i]);
        if (better(s, cats[i], best)) best = {&cats[i], s};
    }
    return best;
}

std::optional<CategoryMatch> SemanticIndex::match(std::string_view form, double cutoff) const {
    return accept(best(form), cutoff);
}

CategoryMapper::CategoryMapper(const Taxonomy& taxonomy, const EmbeddingProvider* embedder,
                               CategoryMapperOptions options)
    : taxonomy_(&taxonomy), options_(std::move(options)) {
    if (embedder) semantic_.emplace(taxonomy, *embedder);
}

CategoryMapping CategoryMapper::map(std::string_view keyword, Diagnostics& diags) const {
    CategoryMapping m;
    m.keyword = std::string(text::trim(keyword));
    if (m.keyword.empty()) return m;

    std::string subject = m.keyword;
    if (needs_translation(subject, options_.lexicon)) {
        if (auto english = translate_keyword(subject, options_.translators, diags)) {
            m.translation = *english;
            subject = *english;
        }
    }

    const auto forms = normalize_keyword(subject);
    if (!forms.empty()) m.normalized = forms.front();
    if (forms.empty() || is_structural_keyword(subject)) return m;

    auto take = [&](Matcher matcher, const std::string& form, const CategoryMatch& hit) {
        m.matcher = matcher;
        m.normalized = form;
        m.category = *hit.category;
        m.score = hit.score;
    };
    for (const auto& form : forms)
        if (auto hit = prefix_match(form, *taxonomy_, options_.cutoffs.prefix)) {
            take(Matcher::Prefix, form, *hit);
            return m;
        }
    for (const auto& form : forms)
        if (auto hit = substring_match(form, *taxonomy_, options_.cutoffs.substring)) {
            take(Matcher::Substring, form, *hit);
            return m;
        }
    if (!semantic_) {
        if (!diags.contains(kNoEmbedder)) diags.warn("category", kNoEmbedder);
        return m;
    }
    for (const auto& form : forms)
        if (auto hit = semantic_->match(form, options_.cutoffs.semantic)) {
            take(Matcher::Semantic, form, *hit);
            return m;
        }
    return m;
}

std::vector<CategoryMapping> map_keyword_set(const DatabaseKeywordSet& keywords, const CategoryMapper& mapper,
                                             Diagnostics& diags) {
    std::vector<CategoryMapping> out;
    for (const auto& [kind, entry] : keywords.all()) out.push_back(mapper.map(entry->text, diags));
    return out;
}

ValueCategory aggregate_value(const DatabaseKeywordSet& keywords, std::vector<CategoryMapping> mappings) {
    ValueCategory v;
    v.evidence = std::move(mappings);
    if (keywords.empty()) return v;
    for (const auto& m : v.evidence) v.level = std::max(v.level, m.level());
    return v;
}

}  // namespace secrisk
