#pragma once

#include <memory>
#include <string>
#include <vector>

#include "secrisk/common/source_location.hpp"

namespace secrisk::py {

struct Expr;
struct Stmt;
using ExprPtr = std::shared_ptr<Expr>;
using StmtPtr = std::shared_ptr<Stmt>;

/// One piece of a string literal: literal text, or an f-string replacement field.
struct StrPart {
    bool is_field = false;
    std::string text;      // decoded literal text when !is_field
    ExprPtr expr;          // replacement expression when is_field
    char conversion = 0;   // 's', 'r', 'a' or 0
    bool has_spec = false; // format spec or '=' debug marker present
    SourceLocation location;
};

struct Keyword {
    std::string name;  // empty for **expansion
    ExprPtr value;
};

struct Comprehension;

struct Expr {
    enum class Kind {
        Name,
        Attribute,  // children[0].name
        Subscript,  // children[0][children[1]]
        Call,       // children[0](children[1..]) + keywords
        Str,
        Bytes,
        Num,
        BinOp,      // op in `op`
        UnaryOp,
        BoolOp,
        Compare,
        IfExp,      // children: body, test, orelse
        Dict,       // children pairs key,value; null key means **expansion
        List,
        Tuple,
        Set,
        Starred,
        DoubleStarred,
        Await,
        NamedExpr,  // children[0] := children[1]
        Slice,
        Const,      // None / True / False / Ellipsis, text in `name`
        Other,
    };

    Kind kind = Kind::Other;
    SourceLocation location;
    std::string name;  // identifier, attribute name, constant name, or numeric text
    std::string op;
    std::vector<ExprPtr> children;
    std::vector<Keyword> keywords;
    std::vector<StrPart> parts;
    bool is_fstring = false;
};

struct ImportName {
    std::string name;    // dotted module name, or the imported member for from-imports
    std::string asname;  // empty when not aliased
};

struct Handler {
    ExprPtr type;
    std::string name;
    std::vector<StmtPtr> body;
};

struct WithItem {
    ExprPtr context;
    ExprPtr target;  // may be null
};

struct Stmt {
    enum class Kind {
        Expr,
        Assign,     // targets = value (chained targets allowed)
        AugAssign,  // targets[0] op= value
        AnnAssign,  // targets[0]: annotation [= value]
        Import,
        ImportFrom,
        ClassDef,
        FunctionDef,
        If,
        For,
        While,
        With,
        Try,
        Return,
        Other,
    };

    Kind kind = Kind::Other;
    SourceLocation location;
    std::vector<ExprPtr> targets;
    ExprPtr value;
    ExprPtr annotation;
    std::string op;

    // Import / ImportFrom
    std::string module;
    int level = 0;
    std::vector<ImportName> names;

    // ClassDef / FunctionDef
    std::string name;
    std::vector<ExprPtr> bases;
    std::vector<Keyword> class_keywords;
    std::vector<std::string> params;
    std::vector<ExprPtr> decorators;
    bool is_async = false;

    std::vector<WithItem> items;
    std::vector<StmtPtr> body;
    std::vector<StmtPtr> orelse;
    std::vector<Handler> handlers;
    std::vector<StmtPtr> finalbody;
};

struct Module {
    std::string path;
    std::vector<StmtPtr> body;
};

}  // namespace secrisk::py
