#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "secrisk/common/diagnostics.hpp"
#include "secrisk/dataflow/python_ast.hpp"
#include "secrisk/dataflow/value.hpp"

namespace secrisk::flow {

struct DefNode {
    int id = -1;
    std::string name;
    std::string scope;
    SourceLocation location;
    ValuePtr value;
};

struct UseNode {
    int id = -1;
    std::string name;
    std::string scope;
    SourceLocation location;
    std::vector<int> reaching;  // definition ids
};

struct CallRecord {
    int id = -1;
    SourceLocation location;
    std::string scope;
    ValuePtr callee;
    std::string method;          // attribute name when called as `receiver.method(...)`
    std::vector<ValuePtr> args;
    std::size_t args_known = 0;  // leading positions not preceded by an unknown *expansion
    bool args_open = false;      // an unknown *expansion was passed
    std::vector<std::pair<std::string, ValuePtr>> keywords;
    bool keywords_open = false;  // an unknown **expansion was passed
};

/// Assignment to a plain name, attribute, or constant subscript key.
struct AssignRecord {
    std::string key;
    SourceLocation location;
    ValuePtr value;
};

struct ClassAttr {
    std::string name;
    SourceLocation location;
    ValuePtr value;            // null for bare annotations
    ValuePtr annotation;       // evaluated annotation expression, if any
    std::string annotation_head;  // leading identifier of the annotation, e.g. "Mapped"
};

struct ClassRecord {
    int id = -1;
    std::string name;
    SourceLocation location;
    std::vector<ValuePtr> bases;
    std::vector<ClassAttr> attrs;
    int parent = -1;
};

struct DefUseOptions {
    /// Callables that return their first argument unchanged (e.g. SQL text wrappers).
    std::set<std::string> passthrough = {"sqlalchemy.text", "sqlalchemy.sql.text",
                                         "sqlalchemy.sql.expression.text"};
};

struct ObjectChain {
    int root_call = -1;      // call whose callee is a qualified global, or -1
    std::string qualified;   // qualified root when root_call < 0
    std::vector<Step> steps;
};

class DefUseGraph {
public:
    std::string path;
    std::vector<DefNode> defs;
    std::vector<UseNode> uses;
    std::vector<std::pair<int, int>> edges;  // def id -> use id
    std::map<int, std::string> literals;     // def id -> statically known text
    std::vector<CallRecord> calls;
    std::vector<AssignRecord> assignments;
    std::vector<ClassRecord> classes;
    std::map<std::string, std::string> imports;  // local alias -> qualified name
    std::map<std::string, ValuePtr> module_env;
    Diagnostics diagnostics;

    const CallRecord* call(int id) const;
    const CallRecord* call_at(int line) const;

    /// Final module-level binding of `name`.
    ValuePtr final_value(const std::string& name) const;

    /// Latest definition of `name` on or before `line`.
    const DefNode* definition(const std::string& name, int line) const;

    /// Expands an object value through intermediate method calls to its root.
    ObjectChain chain_of(const Value& object) const;

    /// Qualified name of the callee of `call`, when it is a global reference.
    std::string callee_name(const CallRecord& call) const;
};

DefUseGraph build_def_use(const py::Module& module, const DefUseOptions& options = {});

}  // namespace secrisk::flow
