#pragma once

#include <string>
#include <vector>

#include "secrisk/common/diagnostics.hpp"
#include "secrisk/dataflow/def_use.hpp"

namespace secrisk {

/// A mapped table found in model classes or SQLAlchemy Core `Table(...)` calls.
struct OrmModel {
    std::string family;      // sqlalchemy, peewee, django
    std::string class_name;  // empty for Core tables
    SourceLocation location;
    std::string table;
    std::vector<std::string> columns;  // declaration order, unique

    bool operator==(const OrmModel&) const = default;
};

/// Model discovery across all graphs of a repository. Base classes are
/// recognized by value (declarative_base(), SQLAlchemy().Model) or by
/// qualified name, then by subclassing, across files by leaf name. Abstract
/// models are skipped.
std::vector<OrmModel> extract_orm_models(const std::vector<const flow::DefUseGraph*>& graphs, Diagnostics& diags);

}  // namespace secrisk
