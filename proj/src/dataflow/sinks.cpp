#include "secrisk/dataflow/sinks.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include "secrisk/common/error.hpp"
#include "secrisk/common/text.hpp"

namespace secrisk::flow {

namespace {

constexpr std::array<std::string_view, 12> kSqlVerbs = {"SELECT", "INSERT", "UPDATE", "DELETE",
                                                        "CREATE", "ALTER",  "WITH",   "REPLACE",
                                                        "DROP",   "TRUNCATE", "MERGE", "UPSERT"};

bool role_may_repeat(Role r) { return r == Role::RawQuery || r == Role::Document; }

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool looks_like_sql(const ResolvedArgument& arg) {
    if (arg.fragments.empty() || arg.fragments.front().is_hole()) return false;
    std::string head = text::to_upper_ascii(text::trim(*arg.fragments.front().text));
    for (auto verb : kSqlVerbs) {
        if (head.rfind(verb, 0) == 0 &&
            (head.size() == verb.size() || !std::isalnum(static_cast<unsigned char>(head[verb.size()]))))
            return true;
    }
    return false;
}

struct ArgView {
    const std::vector<ValuePtr>* args = nullptr;
    std::size_t args_known = 0;
    bool args_open = false;
    const std::vector<std::pair<std::string, ValuePtr>>* keywords = nullptr;
    bool keywords_open = false;
};

SinkCall bind(const DriverSinkSpec& spec, const ArgView& a, const SourceLocation& loc, int call_id) {
    SinkCall sc;
    sc.spec = &spec;
    sc.call_id = call_id;
    sc.location = loc;
    auto put = [&](Role role, const ValuePtr& v) {
        sc.values.emplace_back(role, v);
        if (!sc.bindings.count(role)) sc.bindings.emplace(role, resolve_argument(role, v, loc));
    };
    const auto& args = *a.args;
    for (const auto& [pos, role] : spec.positional_slots) {
        const auto p = static_cast<std::size_t>(pos);
        if (p < a.args_known)
            put(role, args[p]);
        else if (a.args_open)
            put(role, make_hole(loc));
    }
    for (const auto& es : spec.element_slots) {
        const auto p = static_cast<std::size_t>(es.position);
        if (p >= a.args_known && !a.args_open) continue;
        ValuePtr v = make_hole(loc);
        if (p < a.args_known && args[p]->kind == Value::Kind::Seq && !args[p]->open &&
            static_cast<std::size_t>(es.element) < args[p]->items.size())
            v = args[p]->items[static_cast<std::size_t>(es.element)];
        put(es.role, v);
    }
    std::set<std::string> seen;
    for (const auto& [name, v] : *a.keywords) {
        seen.insert(name);
        auto it = spec.keyword_slots.find(name);
        if (it != spec.keyword_slots.end()) {
            put(it->second, v);
        } else if (auto t = resolved_text(*v)) {
            sc.extras[name] = *t;
        }
    }
    if (a.keywords_open) {
        for (const auto& [name, role] : spec.keyword_slots)
            if (!seen.count(name) && !sc.bindings.count(role)) put(role, make_hole(loc));
    }
    return sc;
}

void bind_setting(const DriverSinkSpec& spec, const ValuePtr& value, const SourceLocation& loc,
                  std::vector<SinkCall>& out) {
    static const std::vector<ValuePtr> no_args;
    auto keywords_of = [](const Value& d) {
        std::vector<std::pair<std::string, ValuePtr>> kws;
        for (const auto& e : d.entries)
            if (auto k = e.key->kind == Value::Kind::Str ? resolved_text(*e.key) : std::nullopt)
                kws.emplace_back(*k, e.value);
        return kws;
    };
    if (!spec.keyword_slots.empty() && value->kind == Value::Kind::Dict) {
        bool nested = !value->entries.empty();
        for (const auto& e : value->entries)
            if (e.value->kind != Value::Kind::Dict) nested = false;
        if (nested) {
            for (const auto& e : value->entries) {
                auto kws = keywords_of(*e.value);
                out.push_back(bind(spec, ArgView{&no_args, 0, false, &kws, e.value->open}, e.value->location, -1));
            }
            return;
        }
        auto kws = keywords_of(*value);
        out.push_back(bind(spec, ArgView{&no_args, 0, false, &kws, value->open}, loc, -1));
        return;
    }
    std::vector<ValuePtr> args{value};
    std::vector<std::pair<std::string, ValuePtr>> kws;
    out.push_back(bind(spec, ArgView{&args, 1, false, &kws, false}, loc, -1));
}

}  // namespace

const char* to_string(SinkCategory c) {
    switch (c) {
        case SinkCategory::SqlDriver: return "SqlDriver";
        case SinkCategory::NoSqlDriver: return "NoSqlDriver";
        case SinkCategory::OrmFramework: return "OrmFramework";
        case SinkCategory::Passthrough: return "Passthrough";
    }
    return "SqlDriver";
}

bool DriverSinkSpec::is_query() const {
    auto q = [](Role r) { return role_may_repeat(r); };
    for (const auto& [p, r] : positional_slots)
        if (!q(r)) return false;
    for (const auto& es : element_slots)
        if (!q(es.role)) return false;
    for (const auto& [k, r] : keyword_slots)
        if (!q(r)) return false;
    return true;
}

std::string DriverSinkSpec::option(const std::string& key) const {
    auto it = options.find(key);
    return it == options.end() ? "" : it->second;
}

std::vector<DriverSinkSpec> parse_sink_specs(std::string_view text, const std::string& source) {
    std::vector<DriverSinkSpec> specs;
    int line_no = 0;
    for (const auto& raw : text::split_lines(text)) {
        ++line_no;
        auto line = text::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const std::string where = source + ":" + std::to_string(line_no);
        auto fields = text::split(line, '|', true);
        if (fields.size() < 3 || fields.size() > 4) throw Error(where + ": expected 3 or 4 '|' separated fields");
        DriverSinkSpec spec;
        spec.callable = std::string(text::trim(fields[0]));
        std::string category(text::trim(fields[1]));
        if (category == "SqlDriver")
            spec.category = SinkCategory::SqlDriver;
        else if (category == "NoSqlDriver")
            spec.category = SinkCategory::NoSqlDriver;
        else if (category == "OrmFramework")
            spec.category = SinkCategory::OrmFramework;
        else if (category == "Passthrough")
            spec.category = SinkCategory::Passthrough;
        else
            throw Error(where + ": unknown category '" + category + "'");
        if (spec.callable.empty()) throw Error(where + ": empty callable");

        std::set<Role> positional_roles;
        std::set<Role> keyword_roles;
        std::istringstream slots{std::string(fields[2])};
        std::string token;
        while (slots >> token) {
            auto colon = token.rfind(':');
            if (colon == std::string::npos) throw Error(where + ": slot '" + token + "' lacks a role");
            auto role = parse_role(token.substr(colon + 1));
            if (!role) throw Error(where + ": unknown role in '" + token + "'");
            std::string key = token.substr(0, colon);
            auto dot = key.find('.');
            if (all_digits(key)) {
                int pos = std::stoi(key);
                if (spec.positional_slots.count(pos)) throw Error(where + ": position bound twice");
                if (!role_may_repeat(*role) && !positional_roles.insert(*role).second)
                    throw Error(where + ": role '" + std::string(to_string(*role)) + "' repeated");
                spec.positional_slots[pos] = *role;
            } else if (dot != std::string::npos && all_digits(key.substr(0, dot)) && all_digits(key.substr(dot + 1))) {
                if (!role_may_repeat(*role) && !positional_roles.insert(*role).second)
                    throw Error(where + ": role '" + std::string(to_string(*role)) + "' repeated");
                spec.element_slots.push_back(
                    ElementSlot{std::stoi(key.substr(0, dot)), std::stoi(key.substr(dot + 1)), *role});
            } else if (!key.empty()) {
                if (spec.keyword_slots.count(key)) throw Error(where + ": keyword bound twice");
                spec.keyword_slots[key] = *role;
                keyword_roles.insert(*role);
            } else {
                throw Error(where + ": empty slot name");
            }
        }
        if (spec.positional_slots.empty() && spec.keyword_slots.empty() && spec.element_slots.empty())
            throw Error(where + ": no slots");
        if (fields.size() == 4) {
            std::istringstream opts{std::string(fields[3])};
            while (opts >> token) {
                auto eq = token.find('=');
                if (eq == std::string::npos) throw Error(where + ": option '" + token + "' is not key=value");
                spec.options[token.substr(0, eq)] = token.substr(eq + 1);
            }
        }
        specs.push_back(std::move(spec));
    }
    return specs;
}

std::vector<DriverSinkSpec> load_sink_specs(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read sink inventory " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_sink_specs(ss.str(), path.filename().string());
}

std::vector<SinkCall> find_sinks(const DefUseGraph& graph, const std::vector<DriverSinkSpec>& specs) {
    std::map<std::string, const DriverSinkSpec*> by_name;
    std::map<std::string, const DriverSinkSpec*> by_method;
    std::map<std::string, const DriverSinkSpec*> by_setting;
    for (const auto& s : specs) {
        if (s.category == SinkCategory::Passthrough) continue;
        if (s.is_method())
            by_method.emplace(s.callable.substr(1), &s);
        else if (s.is_setting())
            by_setting.emplace(s.callable.substr(1), &s);
        else
            by_name.emplace(s.callable, &s);
    }

    std::vector<const CallRecord*> calls;
    for (const auto& c : graph.calls) calls.push_back(&c);
    std::stable_sort(calls.begin(), calls.end(),
                     [](const CallRecord* a, const CallRecord* b) { return a->location < b->location; });

    std::vector<SinkCall> drivers;
    std::set<int> driver_ids;
    for (const CallRecord* c : calls) {
        auto it = by_name.find(graph.callee_name(*c));
        if (it == by_name.end()) continue;
        drivers.push_back(bind(*it->second, ArgView{&c->args, c->args_known, c->args_open, &c->keywords, c->keywords_open},
                               c->location, c->id));
        if (!it->second->is_query()) driver_ids.insert(c->id);
    }

    std::vector<SinkCall> settings;
    for (const auto& a : graph.assignments) {
        auto it = by_setting.find(a.key);
        if (it != by_setting.end() && a.value) bind_setting(*it->second, a.value, a.location, settings);
    }
    for (const CallRecord* c : calls) {
        if (c->method != "update" && c->method != "from_mapping") continue;
        for (const auto& [name, v] : c->keywords) {
            auto it = by_setting.find(name);
            if (it != by_setting.end()) bind_setting(*it->second, v, c->location, settings);
        }
    }
    std::stable_sort(settings.begin(), settings.end(),
                     [](const SinkCall& a, const SinkCall& b) { return a.location < b.location; });

    std::vector<SinkCall> methods;
    for (const CallRecord* c : calls) {
        if (c->method.empty()) continue;
        auto it = by_method.find(c->method);
        if (it == by_method.end()) continue;
        SinkCall sc = bind(*it->second, ArgView{&c->args, c->args_known, c->args_open, &c->keywords, c->keywords_open},
                           c->location, c->id);
        if (c->callee && c->callee->kind == Value::Kind::Object) sc.chain = graph.chain_of(*c->callee);
        if (sc.chain.root_call >= 0 && driver_ids.count(sc.chain.root_call)) sc.root_call = sc.chain.root_call;
        if (sc.root_call < 0) {
            // Without a driver root, keep only calls whose arguments look like a query or a document.
            auto q = sc.bindings.find(Role::RawQuery);
            const bool sql = q != sc.bindings.end() && looks_like_sql(q->second);
            const bool document = std::any_of(sc.values.begin(), sc.values.end(), [](const auto& rv) {
                return rv.first == Role::Document && rv.second->kind == Value::Kind::Dict;
            });
            if (!sql && !(document && !sc.chain.steps.empty())) continue;
        }
        methods.push_back(std::move(sc));
    }

    std::vector<SinkCall> out = std::move(drivers);
    out.insert(out.end(), std::make_move_iterator(settings.begin()), std::make_move_iterator(settings.end()));
    out.insert(out.end(), std::make_move_iterator(methods.begin()), std::make_move_iterator(methods.end()));
    return out;
}

}  // namespace secrisk::flow
