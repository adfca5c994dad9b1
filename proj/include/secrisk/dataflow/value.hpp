#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "secrisk/common/source_location.hpp"

namespace secrisk::flow {

/// A piece of a string value; `text` is empty when the piece is a HOLE.
struct Fragment {
    SourceLocation location;
    std::optional<std::string> text;

    bool is_hole() const { return !text.has_value(); }
    bool operator==(const Fragment&) const = default;
};

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

struct Step {
    enum class Kind { Attr, Item, Call };
    Kind kind = Kind::Attr;
    std::string name;  // attribute name or constant item key
    int call_id = -1;  // Call steps: the call record that produced the next object

    bool operator==(const Step&) const = default;
};

struct DictEntry {
    ValuePtr key;
    ValuePtr value;
};

struct Value {
    enum class Kind { Hole, Str, Num, Const, Dict, Seq, Object, Function, Class };

    Kind kind = Kind::Hole;
    SourceLocation location;

    std::vector<Fragment> fragments;  // Str
    std::string text;                 // Num: canonical decimal; Const: None/True/False; Function/Class: name
    bool is_int = false;              // Num

    std::vector<DictEntry> entries;   // Dict
    std::vector<ValuePtr> items;      // Seq
    bool open = false;                // Dict/Seq with entries that could not be enumerated
    bool is_tuple = false;            // Seq

    // Object: rooted at a qualified global name, or at the result of call `origin_call`.
    std::string qualified;
    int origin_call = -1;
    std::vector<Step> steps;
    int class_id = -1;                // Class, or an Object that is an instance of a known class
};

ValuePtr make_hole(const SourceLocation& loc);
ValuePtr make_str(const SourceLocation& loc, std::string text);
ValuePtr make_str(std::vector<Fragment> fragments, const SourceLocation& loc);
ValuePtr make_int(const SourceLocation& loc, long long v);
ValuePtr make_num(const SourceLocation& loc, std::string text, bool is_int);
ValuePtr make_const(const SourceLocation& loc, std::string name);
ValuePtr make_global(const SourceLocation& loc, std::string qualified);

/// Fragments this value contributes when used where a string is expected.
/// Anything that is not a string, integer, or None/True/False becomes one HOLE.
std::vector<Fragment> string_fragments(const Value& v, const SourceLocation& use);

/// Text of a fully resolved string or integer value.
std::optional<std::string> resolved_text(const Value& v);

bool fully_resolved(const std::vector<Fragment>& fragments);
std::string join_fragments(const std::vector<Fragment>& fragments);

/// Structural equality; resolved strings compare by text only.
bool same_value(const Value& a, const Value& b);

/// Join of two branch values: equal values are kept, anything else is a HOLE.
ValuePtr phi(const ValuePtr& a, const ValuePtr& b, const SourceLocation& loc);

/// Dictionary lookup with a constant key. Returns null when the key is
/// absent from a closed dict, a HOLE when the answer is unknown.
ValuePtr dict_lookup(const Value& dict, const std::string& key, const SourceLocation& loc, bool* found);

enum class Role { Host, Port, User, Password, Database, ConnectionString, RawQuery, Document };

const char* to_string(Role r);
std::optional<Role> parse_role(std::string_view s);

struct ResolvedArgument {
    Role role = Role::RawQuery;
    std::optional<std::string> value;
    std::vector<Fragment> fragments;
    bool fully_resolved = false;
};

ResolvedArgument resolve_argument(Role role, const ValuePtr& v, const SourceLocation& use);

}  // namespace secrisk::flow
