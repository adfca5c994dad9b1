#include <gtest/gtest.h>

#include "corpus.hpp"
#include "secrisk/dataflow/python_parser.hpp"
#include "secrisk/keywords/keyword_set.hpp"
#include "secrisk/keywords/nosql_extract.hpp"
#include "secrisk/keywords/orm_extract.hpp"
#include "secrisk/keywords/sql_extract.hpp"

using namespace secrisk;

namespace {

using Names = std::set<std::string>;

SqlKeywords sql(const std::string& text) {
    Diagnostics d;
    return extract_sql_keywords(text, d);
}

struct Graph {
    py::Module module;
    flow::DefUseGraph graph;
};

Graph graph_of(const std::string& code) {
    Diagnostics d;
    Graph g{py::parse_source(code, "m.py", d), {}};
    g.graph = flow::build_def_use(g.module);
    return g;
}

const std::vector<flow::DriverSinkSpec>& specs() {
    static const auto s = flow::load_sink_specs(testkit::data_dir() / "sinks.txt");
    return s;
}

}  // namespace

TEST(SqlExtract, SelectWithWhere) {
    const auto k = sql("SELECT name, disease FROM patient_info WHERE id=1");
    EXPECT_EQ(k.tables, Names{"patient_info"});
    EXPECT_EQ(k.columns, (Names{"name", "disease", "id"}));
}

TEST(SqlExtract, StarProjection) {
    const auto k = sql("SELECT * FROM t");
    EXPECT_EQ(k.tables, Names{"t"});
    EXPECT_TRUE(k.columns.empty());
}

TEST(SqlExtract, CreateTable) {
    const auto k = sql("CREATE TABLE users (username TEXT, password TEXT)");
    EXPECT_EQ(k.tables, Names{"users"});
    EXPECT_EQ(k.columns, (Names{"username", "password"}));
}

TEST(SqlExtract, CastTypeIsNotAColumn) {
    const auto k = sql("SELECT CAST(total AS INTEGER) FROM orders");
    EXPECT_EQ(k.columns, Names{"total"});
}

TEST(SqlExtract, UnparseableIsEmptyWithDiagnostic) {
    Diagnostics d;
    const auto k = extract_sql_keywords("SELECT FROM WHERE (((", d);
    EXPECT_TRUE(k.tables.empty());
    EXPECT_TRUE(k.columns.empty());
    EXPECT_FALSE(d.empty());
}

TEST(SqlExtract, HoleNeverReachesOutput) {
    const std::string q = std::string("SELECT a FROM ") + kSqlHole + " WHERE b = 1";
    const auto k = sql(q);
    EXPECT_TRUE(k.tables.empty());
    EXPECT_EQ(k.columns, (Names{"a", "b"}));
}

TEST(NoSqlExtract, SubscriptChainAndDocument) {
    auto g = graph_of(
        "from pymongo import MongoClient\nclient = MongoClient(\"mongodb://u:p@h/\")\n"
        "client[\"shop\"][\"orders\"].insert_one({\"email\": e, \"phone\": p})\n");
    const auto sinks = flow::find_sinks(g.graph, specs());
    Diagnostics d;
    const auto k = extract_nosql_keywords(g.graph, sinks, sinks.front().call_id, d);
    EXPECT_EQ(k.database, "shop");
    EXPECT_EQ(k.collections, Names{"orders"});
    EXPECT_EQ(k.fields, (Names{"email", "phone"}));
}

TEST(NoSqlExtract, AttributeCollection) {
    auto g = graph_of(
        "import pymongo\nclient = pymongo.MongoClient(\"mongodb://u:p@h/\")\ndb = client[\"app\"]\n"
        "db.users.find_one({\"username\": n})\n");
    const auto sinks = flow::find_sinks(g.graph, specs());
    Diagnostics d;
    const auto k = extract_nosql_keywords(g.graph, sinks, sinks.front().call_id, d);
    EXPECT_EQ(k.collections, Names{"users"});
}

TEST(NoSqlExtract, DynamicDocumentWarns) {
    auto g = graph_of(
        "import pymongo\nclient = pymongo.MongoClient(\"mongodb://u:p@h/\")\ndoc = build()\n"
        "client[\"a\"][\"b\"].insert_one(doc)\n");
    const auto sinks = flow::find_sinks(g.graph, specs());
    Diagnostics d;
    const auto k = extract_nosql_keywords(g.graph, sinks, sinks.front().call_id, d);
    EXPECT_TRUE(k.fields.empty());
    EXPECT_FALSE(d.empty());
}

TEST(OrmExtract, DeclarativeModel) {
    auto g = graph_of(
        "from sqlalchemy import Column, Integer, String\nfrom sqlalchemy.orm import declarative_base\n"
        "Base = declarative_base()\nclass User(Base):\n    __tablename__ = \"users\"\n"
        "    username = Column(String)\n    password = Column(String)\n");
    Diagnostics d;
    const auto models = extract_orm_models({&g.graph}, d);
    ASSERT_EQ(models.size(), 1u);
    EXPECT_EQ(models[0].table, "users");
    EXPECT_EQ(models[0].columns, (std::vector<std::string>{"username", "password"}));
}

TEST(OrmExtract, ModelWithoutColumns) {
    auto g = graph_of(
        "import peewee\nclass Audit(peewee.Model):\n    class Meta:\n        table_name = \"audit\"\n");
    Diagnostics d;
    const auto models = extract_orm_models({&g.graph}, d);
    ASSERT_EQ(models.size(), 1u);
    EXPECT_EQ(models[0].table, "audit");
    EXPECT_TRUE(models[0].columns.empty());
}

TEST(KeywordSet, DatabaseOnlyPair) {
    SecretAssetPair p;
    p.secret = "Fm)4dj";
    p.asset.host = "127.0.0.1";
    p.asset.database_name = "db_patient";
    const auto set = assemble_keyword_set(p, {});
    EXPECT_EQ(set.names(KeywordKind::Database), std::vector<std::string>{"db_patient"});
    EXPECT_TRUE(set.names(KeywordKind::Table).empty());
    EXPECT_TRUE(set.names(KeywordKind::Column).empty());
}

TEST(KeywordSet, UnionWithSelect) {
    SecretAssetPair p;
    p.asset.database_name = "db_patient";
    Extraction e;
    e.tables = {"patient_info"};
    e.columns = {"name"};
    const auto set = assemble_keyword_set(p, {e});
    EXPECT_EQ(set.size(), 3u);
}

TEST(KeywordSet, DuplicateTableKeepsBothSources) {
    SecretAssetPair p;
    Extraction a;
    a.source = KeywordSource::SqlQuery;
    a.tables = {"users"};
    Extraction b;
    b.source = KeywordSource::OrmModel;
    b.tables = {"Users"};
    const auto set = assemble_keyword_set(p, {a, b});
    EXPECT_EQ(set.names(KeywordKind::Table).size(), 1u);
    EXPECT_EQ(set.sources_of(KeywordKind::Table, "USERS"),
              (std::set<KeywordSource>{KeywordSource::SqlQuery, KeywordSource::OrmModel}));
}

TEST(KeywordSet, CaseInsensitiveKeepsFirstCasing) {
    DatabaseKeywordSet s;
    EXPECT_TRUE(s.add(KeywordKind::Column, "Email", KeywordSource::SqlQuery));
    s.add(KeywordKind::Column, "EMAIL", KeywordSource::OrmModel);
    EXPECT_FALSE(s.add(KeywordKind::Column, "  ", KeywordSource::SqlQuery));
    EXPECT_EQ(s.names(KeywordKind::Column), std::vector<std::string>{"Email"});
}
