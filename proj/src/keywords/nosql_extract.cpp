#include "secrisk/keywords/nosql_extract.hpp"

#include <algorithm>

namespace secrisk {

namespace {

using flow::Step;
using flow::Value;

std::optional<std::string> name_argument(const flow::CallRecord& call) {
    if (!call.args.empty() && call.args[0]) return flow::resolved_text(*call.args[0]);
    for (const auto& [k, v] : call.keywords)
        if (k == "name" && v) return flow::resolved_text(*v);
    return std::nullopt;
}

enum class State { Client, FlaskRoot, Database, Collection, Lost };

}  // namespace

bool document_fields(const Value& document, std::set<std::string>& fields) {
    if (document.kind == Value::Kind::Seq) {
        bool ok = !document.open;
        for (const auto& item : document.items) ok = item && document_fields(*item, fields) && ok;
        return ok;
    }
    if (document.kind != Value::Kind::Dict) return false;
    bool ok = !document.open;
    for (const auto& entry : document.entries) {
        const auto key = entry.key ? flow::resolved_text(*entry.key) : std::nullopt;
        if (!key || key->empty()) {
            ok = false;
            continue;
        }
        const Value* value = entry.value.get();
        if ((*key)[0] == '$') {
            if (value && (value->kind == Value::Kind::Dict || value->kind == Value::Kind::Seq)) {
                std::set<std::string> inner;
                const bool inner_ok = document_fields(*value, inner);
                // An operator over a list of scalars ($in) contributes nothing.
                if (value->kind == Value::Kind::Dict || !inner.empty()) ok = inner_ok && ok;
                fields.insert(inner.begin(), inner.end());
            }
            continue;
        }
        fields.insert(*key);
        if (value && value->kind == Value::Kind::Dict && !value->open) {
            for (const auto& sub : value->entries) {
                const auto inner = sub.key ? flow::resolved_text(*sub.key) : std::nullopt;
                if (inner && !inner->empty() && (*inner)[0] != '$') fields.insert(*key + "." + *inner);
            }
        }
    }
    return ok;
}

std::vector<NoSqlAccess> extract_nosql_accesses(const flow::DefUseGraph& graph,
                                                const std::vector<flow::SinkCall>& sinks, Diagnostics& diags) {
    std::vector<NoSqlAccess> out;
    for (std::size_t i = 0; i < sinks.size(); ++i) {
        const auto& sc = sinks[i];
        if (!sc.spec || !sc.spec->is_method()) continue;
        const bool document_sink = std::any_of(sc.spec->positional_slots.begin(), sc.spec->positional_slots.end(),
                                               [](const auto& s) { return s.second == flow::Role::Document; }) ||
                                   std::any_of(sc.spec->keyword_slots.begin(), sc.spec->keyword_slots.end(),
                                               [](const auto& s) { return s.second == flow::Role::Document; });
        if (!document_sink) continue;

        NoSqlAccess a;
        a.sink_index = i;
        a.root_call = sc.root_call;
        a.location = sc.location;

        std::vector<Step> steps = sc.chain.steps;
        if (!steps.empty() && steps.back().kind == Step::Kind::Attr) steps.pop_back();  // the sink method

        State state = State::Client;
        if (sc.root_call >= 0) {
            if (const auto* root = graph.call(sc.root_call); root && graph.callee_name(*root) == "flask_pymongo.PyMongo")
                state = State::FlaskRoot;
        } else {
            std::size_t accesses = 0;
            for (std::size_t k = 0; k < steps.size(); ++k) {
                const bool method = steps[k].kind == Step::Kind::Attr && k + 1 < steps.size() &&
                                    steps[k + 1].kind == Step::Kind::Call;
                if (steps[k].kind != Step::Kind::Call && !method) ++accesses;
            }
            if (!steps.empty() && steps.front().kind == Step::Kind::Attr && steps.front().name == "db")
                state = State::FlaskRoot;
            else
                state = accesses >= 2 ? State::Client : State::Database;
        }

        for (std::size_t k = 0; k < steps.size() && state != State::Lost; ++k) {
            const Step& st = steps[k];
            if (st.kind == Step::Kind::Call) continue;
            const bool method = st.kind == Step::Kind::Attr && k + 1 < steps.size() &&
                                steps[k + 1].kind == Step::Kind::Call;
            if (method) {
                const auto* call = graph.call(steps[k + 1].call_id);
                ++k;
                if (st.name == "with_options") continue;
                if ((state == State::Client || state == State::FlaskRoot) &&
                    (st.name == "get_database" || st.name == "get_db")) {
                    a.database = call ? name_argument(*call) : std::nullopt;
                    state = a.database ? State::Database : State::Lost;
                } else if ((state == State::Client || state == State::FlaskRoot) && st.name == "get_default_database") {
                    state = State::Database;
                } else if (state == State::Database && st.name == "get_collection") {
                    a.collection = call ? name_argument(*call) : std::nullopt;
                    state = a.collection ? State::Collection : State::Lost;
                } else {
                    state = State::Lost;
                }
                continue;
            }
            switch (state) {
                case State::FlaskRoot:
                    state = st.name == "db" ? State::Database : st.name == "cx" ? State::Client : State::Lost;
                    break;
                case State::Client:
                    a.database = st.name;
                    state = State::Database;
                    break;
                case State::Database:
                    a.collection = st.name;
                    state = State::Collection;
                    break;
                case State::Collection:
                    *a.collection += "." + st.name;  // sub-collection such as fs.files
                    break;
                case State::Lost:
                    break;
            }
        }
        if (state == State::Lost) {
            a.database.reset();
            a.collection.reset();
        }
        for (const auto& [role, value] : sc.values) {
            if (role != flow::Role::Document || !value) continue;
            if (!document_fields(*value, a.fields)) a.dynamic_fields = true;
        }
        if (a.dynamic_fields)
            diags.warn("keywords", "document fields are built dynamically; some field names are unknown", sc.location);
        if (!a.database && !a.collection && a.fields.empty()) continue;
        out.push_back(std::move(a));
    }
    return out;
}

NoSqlKeywords extract_nosql_keywords(const flow::DefUseGraph& graph, const std::vector<flow::SinkCall>& sinks,
                                     int root_call, Diagnostics& diags) {
    NoSqlKeywords k;
    for (const auto& a : extract_nosql_accesses(graph, sinks, diags)) {
        if (a.root_call != root_call) continue;
        if (a.database && !k.database) k.database = a.database;
        if (a.collection) k.collections.insert(*a.collection);
        k.fields.insert(a.fields.begin(), a.fields.end());
    }
    return k;
}

}  // namespace secrisk
