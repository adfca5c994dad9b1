#include <gtest/gtest.h>

#include <algorithm>
#include <json.hpp>

#include "corpus.hpp"
#include "secrisk/category/similarity.hpp"
#include "secrisk/common/text.hpp"
#include "secrisk/dataflow/def_use.hpp"
#include "secrisk/dataflow/python_parser.hpp"
#include "secrisk/keywords/sql_extract.hpp"

using namespace secrisk;
using nlohmann::json;

namespace {

json oracle(const std::string& name) { return json::parse(testkit::read_text(testkit::oracle_dir() / name)); }

std::set<std::string> lowered(const std::set<std::string>& s) {
    std::set<std::string> out;
    for (const auto& x : s) out.insert(text::to_lower_ascii(x));
    return out;
}

}  // namespace

TEST(SimilarityOracle, HundredPairsWithinTolerance) {
    const auto doc = oracle("similarity_pairs.json");
    ASSERT_EQ(doc["pairs"].size(), 100u);
    for (const auto& p : doc["pairs"]) {
        const auto a = p["a"].get<std::string>();
        const auto b = p["b"].get<std::string>();
        EXPECT_NEAR(jaro_winkler(a, b), p["jaro_winkler"].get<double>(), 1e-9) << a << " | " << b;
        EXPECT_NEAR(ratcliff_obershelp(a, b), p["ratcliff_obershelp"].get<double>(), 1e-9) << a << " | " << b;
    }
}

TEST(DataflowOracle, ThirtySnippets) {
    const auto doc = oracle("dataflow_cases.json");
    ASSERT_EQ(doc["cases"].size(), 30u);
    for (const auto& c : doc["cases"]) {
        const auto name = c["name"].get<std::string>();
        Diagnostics d;
        const auto module = py::parse_source(c["code"].get<std::string>(), "snippet.py", d);
        const auto graph = flow::build_def_use(module);
        const auto v = graph.final_value(c["target"].get<std::string>());
        ASSERT_TRUE(v) << name;
        const auto fragments = flow::string_fragments(*v, {});
        if (c["hole"].get<bool>()) {
            EXPECT_FALSE(flow::fully_resolved(fragments)) << name;
            EXPECT_TRUE(std::any_of(fragments.begin(), fragments.end(), [](const auto& f) { return f.is_hole(); }))
                << name;
        } else {
            EXPECT_TRUE(flow::fully_resolved(fragments)) << name;
            EXPECT_EQ(flow::join_fragments(fragments), c["expected"].get<std::string>()) << name;
        }
    }
}

TEST(SqlOracle, FiftyStatements) {
    const auto doc = oracle("sql_statements.json");
    ASSERT_EQ(doc["cases"].size(), 50u);
    for (const auto& c : doc["cases"]) {
        const auto sql = c["sql"].get<std::string>();
        Diagnostics d;
        const auto k = extract_sql_keywords(sql, d);
        const auto expected_tables = c["tables"].get<std::set<std::string>>();
        const auto expected_columns = c["columns"].get<std::set<std::string>>();
        const bool lower_bound = c["columns_lower_bound"].get<bool>();
        const auto columns = lowered(k.columns);
        EXPECT_EQ(lowered(k.tables), expected_tables) << sql;
        if (lower_bound) {
            EXPECT_TRUE(std::includes(columns.begin(), columns.end(), expected_columns.begin(), expected_columns.end()))
                << sql;
            continue;
        }
        EXPECT_EQ(columns, expected_columns) << sql;
        std::set<std::pair<std::string, std::string>> pairs;
        for (const auto& p : c["table_columns"]) pairs.insert({p[0].get<std::string>(), p[1].get<std::string>()});
        for (const auto& [table, cols] : k.table_columns)
            for (const auto& col : cols)
                EXPECT_TRUE(pairs.count({text::to_lower_ascii(table), text::to_lower_ascii(col)}))
                    << sql << ": " << table << "." << col;
    }
}
