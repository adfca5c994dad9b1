#include "secrisk/keywords/keyword_set.hpp"

#include <algorithm>

#include "secrisk/common/text.hpp"
#include "secrisk/common/thread_pool.hpp"
#include "secrisk/dataflow/queries.hpp"
#include "secrisk/detector/dataflow_pairs.hpp"
#include "secrisk/keywords/nosql_extract.hpp"
#include "secrisk/keywords/orm_extract.hpp"
#include "secrisk/keywords/sql_extract.hpp"

namespace secrisk {

const char* to_string(KeywordSource s) {
    switch (s) {
        case KeywordSource::SqlQuery: return "SqlQuery";
        case KeywordSource::SqlFile: return "SqlFile";
        case KeywordSource::NoSqlChain: return "NoSqlChain";
        case KeywordSource::OrmModel: return "OrmModel";
        case KeywordSource::AssetIdentifier: return "AssetIdentifier";
    }
    return "?";
}

const char* to_string(KeywordKind k) {
    switch (k) {
        case KeywordKind::Database: return "database";
        case KeywordKind::Table: return "table";
        case KeywordKind::Column: return "column";
    }
    return "?";
}

std::map<std::string, KeywordEntry>& DatabaseKeywordSet::slot(KeywordKind kind) {
    switch (kind) {
        case KeywordKind::Database: return databases_;
        case KeywordKind::Table: return tables_;
        case KeywordKind::Column: break;
    }
    return columns_;
}

const std::map<std::string, KeywordEntry>& DatabaseKeywordSet::entries(KeywordKind kind) const {
    return const_cast<DatabaseKeywordSet*>(this)->slot(kind);
}

bool DatabaseKeywordSet::add(KeywordKind kind, std::string_view keyword, KeywordSource source) {
    const std::string clean(text::trim(text::strip_quotes(text::trim(keyword))));
    if (clean.empty()) return false;
    auto [it, inserted] = slot(kind).try_emplace(text::to_lower_ascii(clean), KeywordEntry{clean, {}});
    it->second.sources.insert(source);
    return true;
}

void DatabaseKeywordSet::merge(const DatabaseKeywordSet& other) {
    for (KeywordKind kind : {KeywordKind::Database, KeywordKind::Table, KeywordKind::Column}) {
        for (const auto& [key, e] : other.entries(kind)) {
            auto [it, inserted] = slot(kind).try_emplace(key, KeywordEntry{e.text, {}});
            it->second.sources.insert(e.sources.begin(), e.sources.end());
        }
    }
}

std::vector<std::string> DatabaseKeywordSet::names(KeywordKind kind) const {
    std::vector<std::string> out;
    for (const auto& [key, e] : entries(kind)) out.push_back(e.text);
    return out;
}

std::vector<std::pair<KeywordKind, const KeywordEntry*>> DatabaseKeywordSet::all() const {
    std::vector<std::pair<KeywordKind, const KeywordEntry*>> out;
    for (KeywordKind kind : {KeywordKind::Database, KeywordKind::Table, KeywordKind::Column})
        for (const auto& [key, e] : entries(kind)) out.emplace_back(kind, &e);
    return out;
}

std::set<KeywordSource> DatabaseKeywordSet::sources_of(KeywordKind kind, std::string_view keyword) const {
    const auto& m = entries(kind);
    auto it = m.find(text::to_lower_ascii(text::trim(keyword)));
    return it == m.end() ? std::set<KeywordSource>{} : it->second.sources;
}

bool DatabaseKeywordSet::contains(KeywordKind kind, std::string_view keyword) const {
    return entries(kind).count(text::to_lower_ascii(text::trim(keyword))) > 0;
}

bool DatabaseKeywordSet::empty() const { return databases_.empty() && tables_.empty() && columns_.empty(); }

std::size_t DatabaseKeywordSet::size() const { return databases_.size() + tables_.size() + columns_.size(); }

DatabaseKeywordSet assemble_keyword_set(const SecretAssetPair& pair, const std::vector<Extraction>& extractions) {
    DatabaseKeywordSet set;
    set.pair_id = pair.pair_id;
    if (pair.asset.database_name) set.add(KeywordKind::Database, *pair.asset.database_name, KeywordSource::AssetIdentifier);
    for (const auto& e : extractions) {
        if (e.database) set.add(KeywordKind::Database, *e.database, e.source);
        for (const auto& t : e.tables) set.add(KeywordKind::Table, t, e.source);
        for (const auto& c : e.columns) set.add(KeywordKind::Column, c, e.source);
    }
    return set;
}

namespace {

bool is_mongo(const SecretAssetPair& p) { return p.asset.db_type == DbType::MongoDB || p.families.count("mongo"); }

bool has_role(const flow::DriverSinkSpec& spec, flow::Role role) {
    for (const auto& [i, r] : spec.positional_slots)
        if (r == role) return true;
    for (const auto& [k, r] : spec.keyword_slots)
        if (r == role) return true;
    return false;
}

Extraction from_sql(const SqlKeywords& k, KeywordSource source) {
    Extraction e;
    e.source = source;
    e.tables = k.tables;
    e.columns = k.columns;
    return e;
}

// Pair indices for one contribution, per the attribution tiers.
struct Attribution {
    const RepositoryScan& scan;

    std::vector<std::size_t> linked(const std::string& path, int root_call, const FileAnalysis& fa) const {
        std::vector<std::size_t> out;
        if (root_call < 0) return out;
        for (std::size_t i = 0; i < fa.sinks.size(); ++i) {
            if (fa.sinks[i].call_id != root_call || fa.sinks[i].spec->is_method()) continue;
            const SinkRef ref{path, static_cast<int>(i)};
            for (std::size_t p = 0; p < scan.pairs.size(); ++p)
                if (scan.pairs[p].sinks.count(ref)) out.push_back(p);
        }
        return out;
    }

    template <typename Pred>
    std::vector<std::size_t> in_file(const std::string& path, Pred ok) const {
        std::vector<std::size_t> out;
        for (std::size_t p = 0; p < scan.pairs.size(); ++p) {
            const auto& pair = scan.pairs[p];
            if (!ok(pair)) continue;
            const bool here = pair.secret_location.path == path ||
                              std::any_of(pair.sinks.begin(), pair.sinks.end(),
                                          [&](const SinkRef& r) { return r.path == path; });
            if (here) out.push_back(p);
        }
        return out;
    }

    template <typename Pred>
    std::vector<std::size_t> anywhere(Pred ok) const {
        std::vector<std::size_t> out;
        for (std::size_t p = 0; p < scan.pairs.size(); ++p)
            if (ok(scan.pairs[p])) out.push_back(p);
        return out;
    }

    template <typename Pred>
    std::vector<std::size_t> tiers(const FileAnalysis& fa, int root_call, Pred ok) const {
        auto out = linked(fa.path, root_call, fa);
        if (out.empty()) out = in_file(fa.path, ok);
        if (out.empty()) out = anywhere(ok);
        return out;
    }
};

}  // namespace

std::vector<DatabaseKeywordSet> extract_keywords(const RepositoryScan& scan, Diagnostics& diags, std::size_t workers) {
    if (workers == 0) workers = default_worker_count();
    std::vector<std::vector<Extraction>> per_pair(scan.pairs.size());
    const Attribution attr{scan};
    const auto sql_pair = [](const SecretAssetPair& p) { return !is_mongo(p); };

    // Per-file extraction in parallel; attribution afterwards in file order.
    struct Contribution {
        std::vector<std::size_t> pairs;
        Extraction extraction;
    };
    std::vector<std::vector<Contribution>> per_file(scan.files.size());
    std::vector<Diagnostics> file_diags(scan.files.size());
    parallel_for(scan.files.size(), workers, [&](std::size_t fi) {
        const FileAnalysis& fa = scan.files[fi];
        Diagnostics& d = file_diags[fi];
        auto& out = per_file[fi];
        if (!fa.graph) return;
        const auto& g = *fa.graph;
        for (const auto& sc : fa.sinks) {
            if (!sc.spec->is_method() || !has_role(*sc.spec, flow::Role::RawQuery)) continue;
            if (!sc.bindings.count(flow::Role::RawQuery)) continue;
            const auto query = flow::trace_query_fragments(g, sc);
            const std::string sql = text_with_holes(query.fragments);
            if (text::trim(sql).empty()) continue;
            const SqlKeywords k = extract_sql_keywords(sql, d, sc.location);
            if (k.tables.empty() && k.columns.empty()) continue;
            out.push_back({attr.tiers(fa, sc.root_call, sql_pair), from_sql(k, KeywordSource::SqlQuery)});
        }
        for (const auto& a : extract_nosql_accesses(g, fa.sinks, d)) {
            Extraction e;
            e.source = KeywordSource::NoSqlChain;
            e.database = a.database;
            if (a.collection) e.tables.insert(*a.collection);
            e.columns = a.fields;
            out.push_back({attr.tiers(fa, a.root_call, is_mongo), std::move(e)});
        }
        for (const auto& rel : fa.sql_files) {
            const FileAnalysis* sqlf = scan.file(rel);
            if (!sqlf) {
                d.info("keywords", "opened SQL file was not scanned: " + rel, SourceLocation{fa.path, 1, 1});
                continue;
            }
            const SqlKeywords k = extract_sql_keywords(sqlf->text, d, SourceLocation{rel, 1, 1});
            auto targets = attr.in_file(fa.path, [&](const SecretAssetPair& p) {
                return std::any_of(p.sinks.begin(), p.sinks.end(), [&](const SinkRef& r) { return r.path == fa.path; });
            });
            if (targets.empty())
                targets = attr.in_file(fa.path, [&](const SecretAssetPair& p) { return p.secret_location.path == fa.path; });
            if (targets.empty()) {
                d.info("keywords", "no pair in the file that opens " + rel, SourceLocation{fa.path, 1, 1});
                continue;
            }
            out.push_back({std::move(targets), from_sql(k, KeywordSource::SqlFile)});
        }
    });
    for (auto& d : file_diags) diags.append(d);

    std::vector<const flow::DefUseGraph*> graphs;
    for (const auto& fa : scan.files)
        if (fa.graph) graphs.push_back(&*fa.graph);
    for (const auto& model : extract_orm_models(graphs, diags)) {
        auto targets = attr.anywhere([&](const SecretAssetPair& p) { return p.families.count(model.family) > 0; });
        if (targets.empty()) {
            diags.info("keywords", "no " + model.family + " connection for model table " + model.table, model.location);
            continue;
        }
        Extraction e;
        e.source = KeywordSource::OrmModel;
        e.tables.insert(model.table);
        e.columns.insert(model.columns.begin(), model.columns.end());
        for (std::size_t p : targets) per_pair[p].push_back(e);
    }
    for (auto& contributions : per_file)
        for (auto& c : contributions)
            for (std::size_t p : c.pairs) per_pair[p].push_back(c.extraction);

    std::vector<DatabaseKeywordSet> sets(scan.pairs.size());
    parallel_for(scan.pairs.size(), workers,
                 [&](std::size_t p) { sets[p] = assemble_keyword_set(scan.pairs[p], per_pair[p]); });
    return sets;
}

}  // namespace secrisk
