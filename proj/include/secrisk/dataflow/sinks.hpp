#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "secrisk/dataflow/def_use.hpp"

namespace secrisk::flow {

enum class SinkCategory { SqlDriver, NoSqlDriver, OrmFramework, Passthrough };

const char* to_string(SinkCategory c);

struct ElementSlot {
    int position = 0;
    int element = 0;
    Role role = Role::User;
};

/// One record of the driver/ORM sink inventory.
///
/// `callable` is a qualified name (`pymysql.connect`), a method name on any
/// object derived from a driver call (`.execute`), or a settings key whose
/// assigned value is treated as the call arguments (`@DATABASES`).
struct DriverSinkSpec {
    std::string callable;
    SinkCategory category = SinkCategory::SqlDriver;
    std::map<int, Role> positional_slots;
    std::vector<ElementSlot> element_slots;
    std::map<std::string, Role> keyword_slots;
    std::map<std::string, std::string> options;  // db=MySQL family=sql dbkey=ENGINE

    bool is_method() const { return !callable.empty() && callable[0] == '.'; }
    bool is_setting() const { return !callable.empty() && callable[0] == '@'; }
    /// True when every slot is raw_query or document.
    bool is_query() const;
    std::string option(const std::string& key) const;
};

/// Parses the inventory format; throws secrisk::Error on a malformed record
/// or a record that violates the slot invariants.
std::vector<DriverSinkSpec> parse_sink_specs(std::string_view text, const std::string& source);
std::vector<DriverSinkSpec> load_sink_specs(const std::filesystem::path& path);

struct SinkCall {
    const DriverSinkSpec* spec = nullptr;
    int call_id = -1;        // -1 for settings assignments
    SourceLocation location;
    std::map<Role, ResolvedArgument> bindings;        // first binding per role
    std::vector<std::pair<Role, ValuePtr>> values;    // every bound slot in slot order
    std::map<std::string, std::string> extras;        // resolved keyword arguments without a role
    int root_call = -1;      // method sinks: the driver call the receiver derives from
    ObjectChain chain;       // method sinks: full receiver chain
};

/// Matches call sites and settings assignments against the inventory.
/// Driver calls come first in source order, then method sinks.
std::vector<SinkCall> find_sinks(const DefUseGraph& graph, const std::vector<DriverSinkSpec>& specs);

}  // namespace secrisk::flow
