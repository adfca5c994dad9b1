#include <gtest/gtest.h>

#include "corpus.hpp"
#include "secrisk/category/embedding.hpp"
#include "secrisk/category/mapper.hpp"
#include "secrisk/category/normalize.hpp"
#include "secrisk/category/similarity.hpp"
#include "secrisk/category/taxonomy.hpp"
#include "secrisk/category/translate.hpp"
#include "secrisk/common/error.hpp"
#include "secrisk/common/text.hpp"

using namespace secrisk;

namespace {

struct Bundled {
    Taxonomy taxonomy = Taxonomy::load(testkit::data_dir() / "taxonomy.txt");
    SubwordEmbedding embedding = SubwordEmbedding::load(testkit::data_dir() / "embeddings.vec");
    LexiconTranslator lexicon = LexiconTranslator::load(testkit::data_dir() / "lexicon.txt");

    CategoryMapper mapper() const {
        CategoryMapperOptions o;
        o.translators = {&lexicon};
        o.lexicon = &lexicon;
        return CategoryMapper(taxonomy, &embedding, o);
    }
};

const Bundled& bundled() {
    static const Bundled b;
    return b;
}

CategoryMapping map(const std::string& keyword) {
    Diagnostics d;
    return bundled().mapper().map(keyword, d);
}

std::string category_of(const CategoryMapping& m) { return m.category ? m.category->name : "-"; }

}  // namespace

TEST(Taxonomy, BundledSizeAndLookup) {
    const auto& t = bundled().taxonomy;
    EXPECT_EQ(t.size(), 113u);
    ASSERT_NE(t.find("PASSPORT"), nullptr);
    EXPECT_EQ(t.find("PASSPORT")->sensitivity, Sensitivity::High);
    EXPECT_EQ(t.find("NO_SUCH_CATEGORY"), nullptr);
}

TEST(Taxonomy, DuplicateRejected) {
    EXPECT_THROW(Taxonomy::parse("A | PII | LOW\nA | PII | HIGH\n", "t"), Error);
}

TEST(Taxonomy, MalformedRejected) {
    EXPECT_THROW(Taxonomy::parse("A | PII\n", "t"), Error);
    EXPECT_THROW(Taxonomy::parse("A | PII | EXTREME\n", "t"), Error);
}

TEST(Similarity, IdenticalIsOne) {
    EXPECT_DOUBLE_EQ(jaro_winkler("PASSPORT", "PASSPORT"), 1.0);
    EXPECT_DOUBLE_EQ(ratcliff_obershelp("NID_NUMBER", "NID_NUMBER"), 1.0);
}

TEST(Similarity, EmptyInputs) {
    EXPECT_DOUBLE_EQ(ratcliff_obershelp("", ""), 1.0);
    EXPECT_DOUBLE_EQ(jaro_winkler("", "abc"), 0.0);
}

TEST(Similarity, TextbookJaroWinkler) {
    EXPECT_NEAR(jaro("MARTHA", "MARHTA"), 0.944444444444, 1e-9);
    EXPECT_NEAR(jaro_winkler("MARTHA", "MARHTA"), 0.961111111111, 1e-9);
    EXPECT_NEAR(jaro_winkler("DIXON", "DICKSONX"), 0.813333333333, 1e-9);
}

TEST(Similarity, AbbreviationPairsClearCutoff) {
    EXPECT_GE(jaro_winkler("FINANCIAL_ACC", "FINANCIAL_ACCOUNT_NUMBER"), 0.7);
    EXPECT_GE(ratcliff_obershelp("NID_NUMBER", "NATIONAL_ID_NUMBER"), 0.7);
}

TEST(Normalize, DatabasePrefixStripped) {
    EXPECT_EQ(normalize_keyword("db_patient"), (std::vector<std::string>{"DB_PATIENT", "PATIENT"}));
}

TEST(Normalize, CamelSplit) {
    const auto forms = normalize_keyword("dateOfBirth");
    ASSERT_FALSE(forms.empty());
    EXPECT_EQ(forms.front(), "DATE_OF_BIRTH");
}

TEST(Normalize, SingleLetter) { EXPECT_EQ(normalize_keyword("x"), std::vector<std::string>{"X"}); }

TEST(Normalize, AcronymBoundary) {
    EXPECT_EQ(identifier_tokens("userIDNumber"), (std::vector<std::string>{"USER", "ID", "NUMBER"}));
}

TEST(Normalize, StructuralOnly) {
    EXPECT_TRUE(is_structural_keyword("id"));
    EXPECT_TRUE(is_structural_keyword("tbl_id"));
    EXPECT_FALSE(is_structural_keyword("user_id"));
}

TEST(Embedding, BundledCoversTaxonomyTokens) {
    const auto& e = bundled().embedding;
    EXPECT_EQ(e.dimension(), static_cast<std::size_t>(kEmbeddingDim));
    for (const auto& c : bundled().taxonomy.categories())
        for (const auto& t : identifier_tokens(c.name)) EXPECT_TRUE(e.contains(text::to_lower_ascii(t))) << t;
}

TEST(Embedding, OutOfVocabularyIsSubwordComposed) {
    const auto& e = bundled().embedding;
    ASSERT_FALSE(e.contains("zqxwvutqq"));
    const auto v = e.embed("zqxwvutqq");
    EXPECT_EQ(v.size(), e.dimension());
    EXPECT_NEAR(cosine(v, subword_vector("zqxwvutqq", e.dimension())), 1.0, 1e-9);
}

TEST(Embedding, GeneratorIsReproducible) {
    const std::string concepts = "phone: phone telephone\ncell = phone\n";
    const std::string vocab = "phone\ncell\nnumber\n";
    const auto a = format_embedding_table(build_embedding_table(concepts, vocab, 16), 16);
    const auto b = format_embedding_table(build_embedding_table(concepts, vocab, 16), 16);
    EXPECT_EQ(a, b);
    const auto parsed = SubwordEmbedding::parse(a, "gen");
    EXPECT_GT(cosine(parsed.embed("cell"), parsed.embed("phone")), 0.6);
}

TEST(Translate, ChineseAndPinyin) {
    const auto& lex = bundled().lexicon;
    EXPECT_TRUE(needs_translation("性别", &lex));
    EXPECT_EQ(lex.translate("性别"), "gender");
    EXPECT_EQ(lex.translate("Xìngbié"), "gender");
}

TEST(Translate, EnglishSkipsTranslation) {
    EXPECT_FALSE(needs_translation("email_address", &bundled().lexicon));
}

TEST(Translate, MissRecordedAndKeywordKept) {
    Diagnostics d;
    const auto lex = LexiconTranslator::parse("gato | cat\n", "l");
    const std::vector<const TranslationProvider*> providers{&lex};
    EXPECT_FALSE(translate_keyword("über_feld", providers, d).has_value());
    EXPECT_TRUE(d.contains("no translation"));
}

TEST(Mapper, AbbreviationAndSynonymExamples) {
    EXPECT_EQ(category_of(map("FINANCIAL_ACC")), "FINANCIAL_ACCOUNT_NUMBER");
    EXPECT_EQ(category_of(map("NID_NUMBER")), "NATIONAL_ID_NUMBER");
    EXPECT_EQ(category_of(map("CELL_NO")), "PHONE_NO");
    EXPECT_EQ(category_of(map("DATE_OF_BIRTH")), "BIRTH_DATE");
}

TEST(Mapper, SemanticStageForSynonyms) {
    EXPECT_EQ(map("CELL_NO").matcher, Matcher::Semantic);
    EXPECT_EQ(map("DATE_OF_BIRTH").matcher, Matcher::Semantic);
}

TEST(Mapper, TestIsUnspecified) {
    const auto m = map("test");
    EXPECT_EQ(m.matcher, Matcher::None);
    EXPECT_EQ(m.level(), ValueLevel::Unspecified);
}

TEST(Mapper, IdentityPrefix) {
    const auto m = map("PASSPORT");
    EXPECT_EQ(m.matcher, Matcher::Prefix);
    EXPECT_DOUBLE_EQ(m.score, 1.0);
}

TEST(Mapper, TranslatedChineseKeyword) {
    const auto m = map("性别");
    EXPECT_EQ(category_of(m), "GENDER");
    EXPECT_TRUE(m.translation.has_value());
}

TEST(Mapper, CategoryNameSelfSimilarity) {
    const SemanticIndex index(bundled().taxonomy, bundled().embedding);
    for (const auto& c : bundled().taxonomy.categories()) {
        const auto best = index.best(c.name);
        EXPECT_GE(best.score, 0.65) << c.name;
    }
}

TEST(Mapper, NoEmbedderWarnsOnce) {
    Diagnostics d;
    const CategoryMapper m(bundled().taxonomy, nullptr);
    m.map("CELL_NO", d);
    EXPECT_TRUE(d.contains("semantic matcher skipped"));
}

TEST(Aggregate, MaxRule) {
    DatabaseKeywordSet ks;
    ks.add(KeywordKind::Column, "phone", KeywordSource::SqlQuery);
    ks.add(KeywordKind::Column, "email", KeywordSource::SqlQuery);
    Diagnostics d;
    const auto mapper = bundled().mapper();
    const auto v = aggregate_value(ks, map_keyword_set(ks, mapper, d));
    EXPECT_EQ(v.level, ValueLevel::Moderate);
}

TEST(Aggregate, EmptySetIsUnspecified) {
    EXPECT_EQ(aggregate_value({}, {}).level, ValueLevel::Unspecified);
}

TEST(Aggregate, MixedLevels) {
    auto mk = [](Sensitivity s) {
        CategoryMapping m;
        m.category = DataCategory{"X", Domain::PII, s};
        return m;
    };
    DatabaseKeywordSet ks;
    ks.add(KeywordKind::Column, "a", KeywordSource::SqlQuery);
    const auto v = aggregate_value(ks, {mk(Sensitivity::Moderate), mk(Sensitivity::High), CategoryMapping{}});
    EXPECT_EQ(v.level, ValueLevel::High);
    EXPECT_EQ(aggregate_value(ks, {CategoryMapping{}, CategoryMapping{}}).level, ValueLevel::Unspecified);
}
