#include "secrisk/dataflow/value.hpp"

#include <array>

namespace secrisk::flow {

ValuePtr make_hole(const SourceLocation& loc) {
    auto v = std::make_shared<Value>();
    v->kind = Value::Kind::Hole;
    v->location = loc;
    return v;
}

ValuePtr make_str(const SourceLocation& loc, std::string text) {
    auto v = std::make_shared<Value>();
    v->kind = Value::Kind::Str;
    v->location = loc;
    v->fragments.push_back(Fragment{loc, std::move(text)});
    return v;
}

ValuePtr make_str(std::vector<Fragment> fragments, const SourceLocation& loc) {
    auto v = std::make_shared<Value>();
    v->kind = Value::Kind::Str;
    v->location = loc;
    v->fragments = std::move(fragments);
    return v;
}

ValuePtr make_int(const SourceLocation& loc, long long value) {
    return make_num(loc, std::to_string(value), true);
}

ValuePtr make_num(const SourceLocation& loc, std::string text, bool is_int) {
    auto v = std::make_shared<Value>();
    v->kind = Value::Kind::Num;
    v->location = loc;
    v->text = std::move(text);
    v->is_int = is_int;
    return v;
}

ValuePtr make_const(const SourceLocation& loc, std::string name) {
    auto v = std::make_shared<Value>();
    v->kind = Value::Kind::Const;
    v->location = loc;
    v->text = std::move(name);
    return v;
}

ValuePtr make_global(const SourceLocation& loc, std::string qualified) {
    auto v = std::make_shared<Value>();
    v->kind = Value::Kind::Object;
    v->location = loc;
    v->qualified = std::move(qualified);
    return v;
}

std::vector<Fragment> string_fragments(const Value& v, const SourceLocation& use) {
    switch (v.kind) {
        case Value::Kind::Str: return v.fragments;
        case Value::Kind::Num:
            if (v.is_int) return {Fragment{v.location, v.text}};
            break;
        case Value::Kind::Const:
            if (v.text == "None" || v.text == "True" || v.text == "False") return {Fragment{v.location, v.text}};
            break;
        default: break;
    }
    return {Fragment{use, std::nullopt}};
}

bool fully_resolved(const std::vector<Fragment>& fragments) {
    for (const auto& f : fragments)
        if (f.is_hole()) return false;
    return true;
}

std::string join_fragments(const std::vector<Fragment>& fragments) {
    std::string out;
    for (const auto& f : fragments)
        if (f.text) out += *f.text;
    return out;
}

std::optional<std::string> resolved_text(const Value& v) {
    if (v.kind == Value::Kind::Str && fully_resolved(v.fragments)) return join_fragments(v.fragments);
    if (v.kind == Value::Kind::Num && v.is_int) return v.text;
    return std::nullopt;
}

bool same_value(const Value& a, const Value& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Value::Kind::Hole: return false;
        case Value::Kind::Str:
            if (fully_resolved(a.fragments) && fully_resolved(b.fragments))
                return join_fragments(a.fragments) == join_fragments(b.fragments);
            return a.fragments == b.fragments;
        case Value::Kind::Num: return a.text == b.text && a.is_int == b.is_int;
        case Value::Kind::Const: return a.text == b.text;
        case Value::Kind::Dict: {
            if (a.open || b.open || a.entries.size() != b.entries.size()) return false;
            for (std::size_t i = 0; i < a.entries.size(); ++i) {
                if (!same_value(*a.entries[i].key, *b.entries[i].key) ||
                    !same_value(*a.entries[i].value, *b.entries[i].value))
                    return false;
            }
            return true;
        }
        case Value::Kind::Seq: {
            if (a.open || b.open || a.is_tuple != b.is_tuple || a.items.size() != b.items.size()) return false;
            for (std::size_t i = 0; i < a.items.size(); ++i)
                if (!same_value(*a.items[i], *b.items[i])) return false;
            return true;
        }
        case Value::Kind::Object:
            return a.qualified == b.qualified && a.origin_call == b.origin_call && a.steps == b.steps &&
                   a.class_id == b.class_id;
        case Value::Kind::Function:
        case Value::Kind::Class: return a.text == b.text && a.location == b.location;
    }
    return false;
}

ValuePtr phi(const ValuePtr& a, const ValuePtr& b, const SourceLocation& loc) {
    if (a && b && (a == b || same_value(*a, *b))) return a;
    return make_hole(loc);
}

ValuePtr dict_lookup(const Value& dict, const std::string& key, const SourceLocation& loc, bool* found) {
    if (found) *found = false;
    if (dict.kind != Value::Kind::Dict) return make_hole(loc);
    ValuePtr hit;
    bool uncertain = dict.open;
    for (const auto& e : dict.entries) {
        auto k = resolved_text(*e.key);
        if (!k || e.key->kind != Value::Kind::Str) {
            uncertain = true;
            continue;
        }
        if (*k == key) {
            hit = e.value;
            uncertain = false;
        }
    }
    if (hit && !uncertain) {
        if (found) *found = true;
        return hit;
    }
    if (uncertain) return make_hole(loc);
    return nullptr;
}

namespace {
constexpr std::array<std::pair<Role, std::string_view>, 8> kRoleNames = {{
    {Role::Host, "host"},
    {Role::Port, "port"},
    {Role::User, "user"},
    {Role::Password, "password"},
    {Role::Database, "database"},
    {Role::ConnectionString, "connection_string"},
    {Role::RawQuery, "raw_query"},
    {Role::Document, "document"},
}};
}  // namespace

const char* to_string(Role r) {
    for (const auto& [role, name] : kRoleNames)
        if (role == r) return name.data();
    return "unknown";
}

std::optional<Role> parse_role(std::string_view s) {
    for (const auto& [role, name] : kRoleNames)
        if (name == s) return role;
    return std::nullopt;
}

ResolvedArgument resolve_argument(Role role, const ValuePtr& v, const SourceLocation& use) {
    ResolvedArgument arg;
    arg.role = role;
    arg.fragments = v ? string_fragments(*v, use) : std::vector<Fragment>{Fragment{use, std::nullopt}};
    arg.fully_resolved = fully_resolved(arg.fragments);
    if (arg.fully_resolved) arg.value = join_fragments(arg.fragments);
    return arg;
}

}  // namespace secrisk::flow
