#include "secrisk/keywords/sql_extract.hpp"

#include <cctype>
#include <cstring>
#include <optional>
#include <set>
#include <stdexcept>

#include "secrisk/common/text.hpp"

namespace secrisk {

namespace {

// ---------------------------------------------------------------- tokens

enum class T { Word, QIdent, DQuoted, String, Number, Param, Punct, End };

struct Tok {
    T kind = T::End;
    std::string text;   // identifier without quotes, literal body, or punctuation
    std::string upper;  // Word only
    bool hole = false;
};

bool word_byte(unsigned char c) { return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80 || c == kSqlHole; }

std::vector<Tok> tokenize(std::string_view s) {
    std::vector<Tok> out;
    std::size_t i = 0;
    const std::size_t n = s.size();
    auto quoted = [&](char close, bool doubled_escape, bool backslash_escape) {
        std::string body;
        ++i;
        while (i < n) {
            const char c = s[i];
            if (backslash_escape && c == '\\' && i + 1 < n) {
                body += s[i + 1];
                i += 2;
                continue;
            }
            if (c == close) {
                if (doubled_escape && i + 1 < n && s[i + 1] == close) {
                    body += close;
                    i += 2;
                    continue;
                }
                ++i;
                return body;
            }
            body += c;
            ++i;
        }
        throw std::runtime_error("unterminated quoted token");
    };
    while (i < n) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (c == '-' && i + 1 < n && s[i + 1] == '-') {
            while (i < n && s[i] != '\n') ++i;
            continue;
        }
        if (c == '#') {
            while (i < n && s[i] != '\n') ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && s[i + 1] == '*') {
            const auto end = s.find("*/", i + 2);
            i = end == std::string_view::npos ? n : end + 2;
            continue;
        }
        Tok t;
        if (c == '\'') {
            t.kind = T::String;
            t.text = quoted('\'', true, true);
        } else if (c == '"') {
            t.kind = T::DQuoted;
            t.text = quoted('"', true, false);
        } else if (c == '`') {
            t.kind = T::QIdent;
            t.text = quoted('`', true, false);
        } else if (c == '[' && i + 1 < n && !std::isdigit(static_cast<unsigned char>(s[i + 1])) && s[i + 1] != ']') {
            t.kind = T::QIdent;
            t.text = quoted(']', false, false);
        } else if (std::isdigit(c) || (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
            t.kind = T::Number;
            while (i < n && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '.')) {
                if ((s[i] == 'e' || s[i] == 'E') && i + 1 < n && (s[i + 1] == '+' || s[i + 1] == '-')) t.text += s[i++];
                t.text += s[i++];
            }
        } else if (c == '%' && i + 1 < n && (s[i + 1] == '(' || std::isalpha(static_cast<unsigned char>(s[i + 1])))) {
            t.kind = T::Param;
            ++i;
            if (s[i] == '(') {
                while (i < n && s[i] != ')') ++i;
                ++i;
            }
            while (i < n && std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
        } else if (c == '?' || ((c == '$' || c == ':' || c == '@') && i + 1 < n &&
                                (std::isalnum(static_cast<unsigned char>(s[i + 1])) || s[i + 1] == '_') &&
                                !(c == ':' && i > 0 && s[i - 1] == ':'))) {
            t.kind = T::Param;
            ++i;
            while (i < n && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
        } else if (word_byte(c)) {
            // A one-letter prefix directly before a quote is a typed string (E'..', N'..', X'..').
            if (i + 1 < n && s[i + 1] == '\'' && std::strchr("EeNnXxBbUu", static_cast<char>(c)) != nullptr) {
                ++i;
                t.kind = T::String;
                t.text = quoted('\'', true, true);
                out.push_back(std::move(t));
                continue;
            }
            t.kind = T::Word;
            while (i < n && word_byte(static_cast<unsigned char>(s[i]))) {
                if (s[i] == kSqlHole) t.hole = true;
                t.text += s[i++];
            }
            t.upper = text::to_upper_ascii(t.text);
        } else {
            t.kind = T::Punct;
            static const char* kMulti[] = {"->>", "<=>", "<>", "<=", ">=", "!=", "||", "::", "->", ":=", "=>", "==", "&&"};
            for (const char* m : kMulti) {
                if (s.substr(i, std::strlen(m)) == m) {
                    t.text = m;
                    break;
                }
            }
            if (t.text.empty()) t.text = std::string(1, static_cast<char>(c));
            i += t.text.size();
        }
        out.push_back(std::move(t));
    }
    out.push_back(Tok{});
    return out;
}

// ---------------------------------------------------------------- keywords

const std::set<std::string>& reserved() {
    static const std::set<std::string> k = {
        "ALL", "AND", "ANY", "AS", "ASC", "BETWEEN", "BY", "CASE", "CAST", "COLLATE", "CROSS", "CURRENT_DATE",
        "CURRENT_TIME", "CURRENT_TIMESTAMP", "CURRENT_USER", "DEFAULT", "DELETE", "DESC", "DISTINCT", "DIV", "ELSE",
        "END", "ESCAPE", "EXCEPT", "EXISTS", "FALSE", "FETCH", "FOR", "FROM", "FULL", "GROUP", "HAVING", "ILIKE",
        "IN", "INNER", "INSERT", "INTERSECT", "INTERVAL", "INTO", "IS", "ISNULL", "JOIN", "LATERAL", "LEFT",
        "LIKE", "LIMIT", "LOCALTIME", "LOCALTIMESTAMP", "MINUS", "MOD", "NATURAL", "NOT", "NOTNULL", "NULL",
        "NULLS", "OFFSET", "ON", "OR", "ORDER", "OUTER", "OVER", "PARTITION", "REGEXP", "RETURNING", "RIGHT",
        "RLIKE", "SELECT", "SET", "SIMILAR", "SOME", "THEN", "TRUE", "UNION", "UNKNOWN", "UPDATE", "USING",
        "VALUES", "WHEN", "WHERE", "WINDOW", "WITH", "XOR", "UNBOUNDED", "PRECEDING", "FOLLOWING", "ROWS",
        "RANGE", "GROUPS", "APPLY", "STRAIGHT_JOIN", "TOP", "PERCENT", "ROLLUP", "CUBE", "DISTINCTROW",
        "SQL_CALC_FOUND_ROWS", "HIGH_PRIORITY", "LOW_PRIORITY", "DELAYED", "IGNORE", "QUICK", "ONLY", "FIRST", "LAST",
        "SYMMETRIC", "ASYMMETRIC", "TO", "WITHIN", "FILTER", "BINARY", "SESSION_USER", "SYSTEM_USER", "SYSDATE",
    };
    return k;
}

// Keywords that end the current expression at top level.
const std::set<std::string>& clause_stops() {
    static const std::set<std::string> k = {
        "FROM", "WHERE", "GROUP", "ORDER", "HAVING", "LIMIT", "OFFSET", "UNION", "INTERSECT", "EXCEPT", "MINUS",
        "JOIN", "INNER", "LEFT", "RIGHT", "FULL", "CROSS", "NATURAL", "ON", "USING", "INTO", "VALUES", "SET",
        "RETURNING", "WINDOW", "FETCH", "FOR", "AS", "STRAIGHT_JOIN", "APPLY", "LOCK", "DO", "OUTER", "WITH",
    };
    return k;
}

const std::set<std::string>& type_literal_words() {
    static const std::set<std::string> k = {"DATE", "TIME", "TIMESTAMP", "TIMESTAMPTZ", "INTERVAL"};
    return k;
}

const std::set<std::string>& constraint_starts() {
    static const std::set<std::string> k = {"CONSTRAINT", "PRIMARY", "FOREIGN", "UNIQUE", "CHECK", "INDEX",
                                            "KEY", "FULLTEXT", "SPATIAL", "EXCLUDE", "LIKE", "PERIOD"};
    return k;
}

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- parser

struct ColRef {
    std::string qualifier;
    std::string name;
    bool alias_ok = false;  // ORDER BY / GROUP BY / HAVING may name a select alias
};

struct Scope {
    Scope* outer = nullptr;
    std::map<std::string, std::optional<std::string>> sources;  // lower alias -> base table (nullopt: derived)
    std::vector<std::optional<std::string>> source_list;
    std::set<std::string> select_aliases;
    std::vector<ColRef> refs;
    std::optional<std::string> default_table;  // unqualified columns belong here regardless of sources
};

class Parser {
public:
    Parser(std::vector<Tok> toks, SqlKeywords& out) : t_(std::move(toks)), out_(out) {}

    std::size_t pos() const { return p_; }
    bool at_end() const { return t_[p_].kind == T::End; }

    // Parses one statement; returns false for statement kinds that are ignored.
    bool statement() {
        ctes_.clear();
        if (kw("WITH")) {
            with_clause(nullptr);
            if (kw("SELECT") || punct("(")) {
                Scope s;
                select_stmt(s);
            } else if (kw("INSERT") || kw("REPLACE")) {
                insert_stmt();
            } else if (kw("UPDATE")) {
                update_stmt();
            } else if (kw("DELETE")) {
                delete_stmt();
            } else {
                fail("expected a statement after WITH");
            }
        } else if (kw("SELECT") || (punct("(") && select_follows(p_))) {
            Scope s;
            select_stmt(s);
        } else if (kw("INSERT") || kw("REPLACE")) {
            insert_stmt();
        } else if (kw("UPDATE")) {
            update_stmt();
        } else if (kw("DELETE")) {
            delete_stmt();
        } else if (kw("CREATE") && create_table_follows()) {
            create_stmt();
        } else if (kw("ALTER") && kw_at(p_ + 1, "TABLE")) {
            alter_stmt();
        } else {
            skip_statement();
            return false;
        }
        if (!punct(";") && !at_end()) fail("unexpected token '" + t_[p_].text + "'");
        return true;
    }

    void skip_statement() {
        int depth = 0;
        while (!at_end()) {
            if (punct("(")) ++depth;
            if (punct(")")) --depth;
            if (punct(";") && depth <= 0) return;
            ++p_;
        }
    }

    void skip_separator() {
        if (punct(";")) ++p_;
    }

private:
    std::vector<Tok> t_;
    std::size_t p_ = 0;
    SqlKeywords& out_;
    std::set<std::string> ctes_;

    [[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

    const Tok& cur() const { return t_[p_]; }
    const Tok& at(std::size_t i) const { return t_[std::min(i, t_.size() - 1)]; }
    bool kw_at(std::size_t i, std::string_view k) const {
        const Tok& t = at(i);
        return t.kind == T::Word && !t.hole && t.upper == k;
    }
    bool kw(std::string_view k) const { return kw_at(p_, k); }
    bool punct_at(std::size_t i, std::string_view s) const { return at(i).kind == T::Punct && at(i).text == s; }
    bool punct(std::string_view s) const { return punct_at(p_, s); }
    bool accept_kw(std::string_view k) {
        if (!kw(k)) return false;
        ++p_;
        return true;
    }
    bool accept_punct(std::string_view s) {
        if (!punct(s)) return false;
        ++p_;
        return true;
    }
    void expect_kw(std::string_view k) {
        if (!accept_kw(k)) fail("expected " + std::string(k));
    }
    void expect_punct(std::string_view s) {
        if (!accept_punct(s)) fail("expected '" + std::string(s) + "'");
    }

    bool is_reserved(const Tok& t) const { return t.kind == T::Word && !t.hole && reserved().count(t.upper); }
    bool is_ident(const Tok& t) const {
        return (t.kind == T::Word && !is_reserved(t)) || t.kind == T::QIdent || t.kind == T::DQuoted;
    }
    bool select_follows(std::size_t i) const {
        while (punct_at(i, "(")) ++i;
        return kw_at(i, "SELECT") || kw_at(i, "WITH");
    }
    bool create_table_follows() const {
        std::size_t i = p_ + 1;
        while (kw_at(i, "OR") || kw_at(i, "REPLACE") || kw_at(i, "GLOBAL") || kw_at(i, "LOCAL") ||
               kw_at(i, "TEMPORARY") || kw_at(i, "TEMP") || kw_at(i, "UNLOGGED"))
            ++i;
        return kw_at(i, "TABLE");
    }

    void emit_table(const std::string& name, bool hole) {
        if (hole || name.empty()) return;
        out_.tables.insert(name);
    }
    void emit_column(const std::string& name, const std::optional<std::string>& table) {
        if (name.empty()) return;
        out_.columns.insert(name);
        if (table) out_.table_columns[*table].insert(name);
    }

    // Identifier token text; `hole` reports whether it came from an unresolved fragment.
    std::string ident(bool* hole = nullptr) {
        const Tok& t = cur();
        if (!is_ident(t)) fail("expected identifier, found '" + t.text + "'");
        if (hole) *hole = t.hole;
        ++p_;
        return t.text;
    }

    // name ('.' name)*; returns the parts.
    std::vector<std::string> dotted(bool* hole) {
        std::vector<std::string> parts;
        bool any_hole = false;
        bool h = false;
        parts.push_back(ident(&h));
        any_hole = any_hole || h;
        while (punct(".") && is_ident(at(p_ + 1))) {
            ++p_;
            parts.push_back(ident(&h));
            any_hole = any_hole || h;
        }
        if (hole) *hole = any_hole || t_[p_ - 1].hole;
        return parts;
    }

    // -------------------------------------------------------- resolution

    std::optional<std::optional<std::string>> lookup(const Scope& s, const std::string& alias) const {
        const std::string key = text::to_lower_ascii(alias);
        for (const Scope* sc = &s; sc; sc = sc->outer) {
            auto it = sc->sources.find(key);
            if (it != sc->sources.end()) return it->second;
        }
        return std::nullopt;
    }

    void resolve(Scope& s) {
        for (const auto& r : s.refs) {
            if (!r.qualifier.empty()) {
                const auto src = lookup(s, r.qualifier);
                emit_column(r.name, src ? *src : std::nullopt);
                continue;
            }
            if (r.alias_ok && s.select_aliases.count(text::to_lower_ascii(r.name))) continue;
            std::optional<std::string> table = s.default_table;
            if (!table && s.source_list.size() == 1) table = s.source_list.front();
            emit_column(r.name, table);
        }
        s.refs.clear();
    }

    void add_source(Scope& s, const std::string& alias, const std::optional<std::string>& table) {
        s.sources[text::to_lower_ascii(alias)] = table;
    }

    // -------------------------------------------------------- expressions

    // Walks one expression, collecting column references into `s`. Stops at
    // ',' or ')' at its own level, at a clause keyword when `top`, and at an
    // identifier directly following a complete operand (an implicit alias).
    void expr(Scope& s, bool top, bool alias_ok, bool dq_literal = false) {
        bool operand = false;
        bool after_compare = false;
        std::size_t start = p_;
        while (true) {
            const Tok& t = cur();
            if (t.kind == T::End || punct(",") || punct(")") || punct(";")) break;
            const bool reserved_call = t.kind == T::Word && !t.hole && punct_at(p_ + 1, "(") &&
                                       (t.upper == "VALUES" || t.upper == "LEFT" || t.upper == "RIGHT" ||
                                        t.upper == "MOD" || t.upper == "INSERT" || t.upper == "CURRENT_DATE");
            if (top && !reserved_call && t.kind == T::Word && !t.hole && clause_stops().count(t.upper)) break;
            if (reserved_call) {
                ++p_;
                function_args(s, t_[p_ - 1].upper, alias_ok, dq_literal);
                operand = true;
                after_compare = false;
                continue;
            }
            if (operand && (t.kind == T::QIdent || (t.kind == T::Word && !is_reserved(t)))) break;
            if (operand && t.kind == T::DQuoted) break;

            if (t.kind == T::Punct) {
                if (t.text == "(") {
                    ++p_;
                    if (select_follows(p_)) {
                        Scope sub;
                        sub.outer = &s;
                        select_stmt(sub);
                    } else {
                        paren_list(s, alias_ok, dq_literal);
                    }
                    expect_punct(")");
                    operand = true;
                    after_compare = false;
                    continue;
                }
                if (t.text == "::") {
                    ++p_;
                    skip_type();
                    operand = true;
                    continue;
                }
                if (t.text == "*" && !operand) {
                    ++p_;  // count(*) or a bare star
                    operand = true;
                    continue;
                }
                if (t.text == "[") {
                    ++p_;
                    paren_list(s, alias_ok, dq_literal, "]");
                    expect_punct("]");
                    operand = true;
                    continue;
                }
                after_compare = t.text == "=" || t.text == "<>" || t.text == "!=" || t.text == "<" ||
                                t.text == ">" || t.text == "<=" || t.text == ">=" || t.text == "==" || t.text == "<=>";
                operand = false;
                ++p_;
                continue;
            }
            if (t.kind == T::String || t.kind == T::Number || t.kind == T::Param) {
                ++p_;
                operand = true;
                after_compare = false;
                continue;
            }
            if (t.kind == T::DQuoted && (after_compare || dq_literal)) {
                ++p_;
                operand = true;
                after_compare = false;
                continue;
            }
            if (t.kind == T::Word && !t.hole && reserved().count(t.upper)) {
                const std::string k = t.upper;
                ++p_;
                if (k == "CAST" && punct("(")) {
                    ++p_;
                    expr(s, true, alias_ok, dq_literal);  // stops at AS
                    if (accept_kw("AS")) skip_type();
                    expect_punct(")");
                    operand = true;
                } else if (k == "INTERVAL") {
                    if (cur().kind == T::String || cur().kind == T::Number || cur().kind == T::Param) ++p_;
                    if (cur().kind == T::Word && !punct_at(p_ + 1, "(")) ++p_;  // unit
                    operand = true;
                } else if (k == "COLLATE") {
                    if (cur().kind == T::Word || cur().kind == T::DQuoted || cur().kind == T::String) ++p_;
                    operand = true;
                } else if (k == "TRUE" || k == "FALSE" || k == "NULL" || k == "CURRENT_DATE" || k == "CURRENT_TIME" ||
                           k == "CURRENT_TIMESTAMP" || k == "LOCALTIME" || k == "LOCALTIMESTAMP" || k == "CURRENT_USER" ||
                           k == "SESSION_USER" || k == "SYSTEM_USER" || k == "SYSDATE" || k == "UNKNOWN" || k == "END") {
                    if (punct("(")) {  // CURRENT_TIMESTAMP(6)
                        ++p_;
                        paren_list(s, alias_ok, dq_literal);
                        expect_punct(")");
                    }
                    operand = true;
                } else if (k == "OVER" && is_ident(cur())) {
                    ++p_;  // named window
                    operand = true;
                } else {
                    operand = false;
                }
                after_compare = after_compare && (k == "NOT" || k == "ANY" || k == "ALL" || k == "SOME");
                if (k == "LIKE" || k == "ILIKE" || k == "REGEXP" || k == "RLIKE" || k == "IN") after_compare = true;
                continue;
            }
            // Identifier: column reference, function call, or typed literal.
            if (t.kind == T::Word && !t.hole && type_literal_words().count(t.upper) && at(p_ + 1).kind == T::String) {
                p_ += 2;
                operand = true;
                continue;
            }
            bool hole = false;
            const std::size_t name_pos = p_;
            auto parts = dotted(&hole);
            if (punct(".") && punct_at(p_ + 1, "*")) {
                p_ += 2;  // t.*
                operand = true;
                continue;
            }
            if (punct("(")) {
                function_args(s, text::to_upper_ascii(parts.back()), alias_ok, dq_literal);
                operand = true;
                after_compare = false;
                continue;
            }
            if (!hole) {
                ColRef r;
                r.name = parts.back();
                if (parts.size() >= 2) r.qualifier = parts[parts.size() - 2];
                r.alias_ok = alias_ok;
                s.refs.push_back(std::move(r));
            }
            (void)name_pos;
            operand = true;
            after_compare = false;
        }
        if (p_ == start && top) fail("empty expression at '" + cur().text + "'");
    }

    void function_args(Scope& s, const std::string& fname, bool alias_ok, bool dq_literal) {
        expect_punct("(");
        if (fname == "EXTRACT" || fname == "DATE_PART" || fname == "DATEADD" || fname == "DATEDIFF" ||
            fname == "DATEPART" || fname == "TIMESTAMPDIFF" || fname == "TIMESTAMPADD") {
            if (cur().kind == T::Word && !punct_at(p_ + 1, "(") && !punct_at(p_ + 1, ".")) ++p_;  // date part
            accept_kw("FROM");
            accept_punct(",");
        }
        if (fname == "CONVERT" || fname == "TRY_CONVERT") {
            // CONVERT(type, expr) or CONVERT(expr USING charset)
        }
        while (!punct(")") && !at_end()) {
            expr(s, false, alias_ok, dq_literal);
            if (accept_kw("AS")) skip_type();
            if (accept_kw("USING")) {
                if (cur().kind == T::Word) ++p_;
            }
            if (!accept_punct(",")) {
                if (punct(")")) break;
                // FROM / FOR / ORDER BY / SEPARATOR inside function arguments
                if (cur().kind == T::Word && !cur().hole) {
                    ++p_;
                    continue;
                }
                fail("unexpected token in function arguments");
            }
        }
        expect_punct(")");
        if (accept_kw("FILTER")) {
            expect_punct("(");
            paren_list(s, alias_ok, dq_literal);
            expect_punct(")");
        }
        if (kw("WITHIN")) {
            ++p_;
            expect_kw("GROUP");
            expect_punct("(");
            paren_list(s, alias_ok, dq_literal);
            expect_punct(")");
        }
        if (accept_kw("OVER")) {
            if (accept_punct("(")) {
                paren_list(s, alias_ok, dq_literal);
                expect_punct(")");
            } else if (is_ident(cur())) {
                ++p_;
            }
        }
    }

    // Comma-separated expressions inside brackets; clause words such as
    // PARTITION BY / ORDER BY are skipped.
    void paren_list(Scope& s, bool alias_ok, bool dq_literal, std::string_view close = ")") {
        while (!punct(close) && !at_end()) {
            if (cur().kind == T::Word && !cur().hole && clause_stops().count(cur().upper)) {
                ++p_;
                continue;
            }
            expr(s, false, alias_ok, dq_literal);
            if (accept_punct(",")) continue;
            if (punct(close)) break;
            if (cur().kind == T::Word || cur().kind == T::QIdent || cur().kind == T::DQuoted) {
                ++p_;  // alias inside a row constructor or ASC/DESC
                continue;
            }
            fail("unexpected token in parentheses");
        }
    }

    void skip_type() {
        // type name words, optional (precision), optional [] suffixes
        while (cur().kind == T::Word || cur().kind == T::QIdent) {
            ++p_;
            if (punct(".")) {
                ++p_;
                continue;
            }
            if (punct("(")) skip_parens();
            if (!(cur().kind == T::Word && (cur().upper == "PRECISION" || cur().upper == "VARYING" ||
                                            cur().upper == "UNSIGNED" || cur().upper == "ZONE" ||
                                            cur().upper == "WITH" || cur().upper == "WITHOUT" || cur().upper == "TIME")))
                break;
        }
        while (punct("[") && punct_at(p_ + 1, "]")) p_ += 2;
    }

    void skip_parens() {
        expect_punct("(");
        int depth = 1;
        while (depth > 0 && !at_end()) {
            if (punct("(")) ++depth;
            if (punct(")")) --depth;
            ++p_;
        }
        if (depth > 0) fail("unbalanced parentheses");
    }

    // -------------------------------------------------------- SELECT

    void with_clause(Scope* outer) {
        expect_kw("WITH");
        accept_kw("RECURSIVE");
        do {
            bool hole = false;
            const std::string name = ident(&hole);
            ctes_.insert(text::to_lower_ascii(name));
            if (punct("(")) skip_parens();
            expect_kw("AS");
            if (accept_kw("NOT")) expect_kw("MATERIALIZED");
            accept_kw("MATERIALIZED");
            expect_punct("(");
            Scope sub;
            sub.outer = outer;
            select_stmt(sub);
            expect_punct(")");
        } while (accept_punct(","));
    }

    void select_stmt(Scope& s) {
        if (kw("WITH")) with_clause(s.outer);
        select_operand(s);
        while (kw("UNION") || kw("INTERSECT") || kw("EXCEPT") || kw("MINUS")) {
            ++p_;
            if (!accept_kw("ALL")) accept_kw("DISTINCT");
            Scope next;
            next.outer = s.outer;
            select_operand(next);
        }
        // ORDER BY / LIMIT after a parenthesized compound
        Scope tail;
        tail.outer = s.outer;
        order_limit(tail);
        resolve(tail);
    }

    void select_operand(Scope& s) {
        if (accept_punct("(")) {
            Scope inner;
            inner.outer = s.outer;
            select_stmt(inner);
            expect_punct(")");
            return;
        }
        select_core(s);
    }

    void select_core(Scope& s) {
        expect_kw("SELECT");
        while (kw("DISTINCT") || kw("ALL") || kw("DISTINCTROW") || kw("SQL_CALC_FOUND_ROWS") ||
               kw("HIGH_PRIORITY") || kw("STRAIGHT_JOIN") || kw("SQL_NO_CACHE") || kw("SQL_CACHE")) {
            const bool distinct = kw("DISTINCT");
            ++p_;
            if (distinct && accept_kw("ON")) {
                expect_punct("(");
                paren_list(s, false, false);
                expect_punct(")");
            }
        }
        if (accept_kw("TOP")) {
            if (accept_punct("(")) {
                expr(s, false, false);
                expect_punct(")");
            } else if (cur().kind == T::Number || cur().kind == T::Param) {
                ++p_;
            }
            accept_kw("PERCENT");
            if (accept_kw("WITH")) expect_kw("TIES");
        }
        // Select list is parsed before FROM but resolved after it.
        do {
            if (accept_punct("*")) continue;
            expr(s, true, false);
            if (accept_kw("AS")) {
                const Tok& a = cur();
                if (a.kind == T::String || is_ident(a) || a.kind == T::Word) {
                    s.select_aliases.insert(text::to_lower_ascii(a.text));
                    ++p_;
                } else {
                    fail("expected alias");
                }
            } else if (is_ident(cur())) {
                s.select_aliases.insert(text::to_lower_ascii(cur().text));
                ++p_;
            }
        } while (accept_punct(","));

        if (accept_kw("INTO")) {
            // INTO OUTFILE 'f' / INTO @var / INTO new_table
            if (accept_kw("OUTFILE") || accept_kw("DUMPFILE")) {
                if (cur().kind == T::String) ++p_;
            } else {
                do {
                    if (cur().kind == T::Param || is_ident(cur())) ++p_;
                } while (accept_punct(","));
            }
        }
        if (accept_kw("FROM")) from_list(s);
        if (accept_kw("WHERE")) expr(s, true, false);
        if (kw("GROUP") && kw_at(p_ + 1, "BY")) {
            p_ += 2;
            do {
                if (kw("ROLLUP") || kw("CUBE") || kw("GROUPING")) {
                    ++p_;
                    if (accept_kw("SETS")) {}
                    expect_punct("(");
                    paren_list(s, true, false);
                    expect_punct(")");
                    continue;
                }
                expr(s, true, true);
            } while (accept_punct(","));
            if (kw("WITH") && kw_at(p_ + 1, "ROLLUP")) p_ += 2;
        }
        if (accept_kw("HAVING")) expr(s, true, true);
        if (accept_kw("WINDOW")) {
            do {
                ident();
                expect_kw("AS");
                expect_punct("(");
                paren_list(s, true, false);
                expect_punct(")");
            } while (accept_punct(","));
        }
        order_limit(s);
        resolve(s);
    }

    void order_limit(Scope& s) {
        if (kw("ORDER") && kw_at(p_ + 1, "BY")) {
            p_ += 2;
            do {
                expr(s, true, true);
                if (!accept_kw("ASC")) accept_kw("DESC");
                if (accept_kw("NULLS")) {
                    if (!accept_kw("FIRST")) expect_kw("LAST");
                }
            } while (accept_punct(","));
        }
        if (accept_kw("LIMIT")) {
            expr(s, true, false);
            if (accept_punct(",")) expr(s, true, false);
        }
        if (accept_kw("OFFSET")) {
            expr(s, true, false);
            if (!accept_kw("ROWS")) accept_kw("ROW");
        }
        if (accept_kw("FETCH")) {
            if (!accept_kw("FIRST")) expect_kw("NEXT");
            if (cur().kind == T::Number || cur().kind == T::Param) ++p_;
            if (!accept_kw("ROWS")) accept_kw("ROW");
            if (!accept_kw("ONLY")) {
                expect_kw("WITH");
                expect_kw("TIES");
            }
        }
        while (kw("FOR") || kw("LOCK")) {
            if (accept_kw("LOCK")) {
                expect_kw("IN");
                while (cur().kind == T::Word && !punct(";")) {
                    const bool mode = kw("MODE");
                    ++p_;
                    if (mode) break;
                }
                continue;
            }
            ++p_;
            if (!accept_kw("UPDATE") && !accept_kw("SHARE")) {
                if (accept_kw("NO")) expect_kw("KEY");
                if (!accept_kw("UPDATE")) accept_kw("SHARE");
            }
            if (accept_kw("OF")) {
                do {
                    ident();
                } while (accept_punct(","));
            }
            if (!accept_kw("NOWAIT") && kw("SKIP")) {
                ++p_;
                expect_kw("LOCKED");
            }
        }
    }

    // -------------------------------------------------------- FROM

    bool join_follows() const {
        std::size_t i = p_;
        if (kw_at(i, "STRAIGHT_JOIN")) return true;
        if (kw_at(i, "NATURAL")) ++i;
        if (kw_at(i, "INNER") || kw_at(i, "CROSS")) ++i;
        else if (kw_at(i, "LEFT") || kw_at(i, "RIGHT") || kw_at(i, "FULL")) {
            ++i;
            if (kw_at(i, "OUTER")) ++i;
        } else if (kw_at(i, "OUTER")) {
            ++i;
        }
        return kw_at(i, "JOIN") || kw_at(i, "APPLY");
    }

    void from_list(Scope& s) {
        table_ref(s);
        while (true) {
            if (accept_punct(",")) {
                table_ref(s);
                continue;
            }
            if (join_follows()) {
                while (!kw("JOIN") && !kw("APPLY") && !kw("STRAIGHT_JOIN")) ++p_;
                ++p_;
                table_ref(s);
                if (accept_kw("ON")) {
                    expr(s, true, false);
                } else if (accept_kw("USING")) {
                    expect_punct("(");
                    do {
                        ColRef r;
                        r.name = ident();
                        s.refs.push_back(r);
                    } while (accept_punct(","));
                    expect_punct(")");
                }
                continue;
            }
            break;
        }
    }

    void table_alias(Scope& s, const std::optional<std::string>& table) {
        std::optional<std::string> alias;
        if (accept_kw("AS")) {
            alias = ident();
        } else if (is_ident(cur()) && !(cur().kind == T::Word && clause_stops().count(cur().upper)) &&
                   !kw("USE") && !kw("FORCE") && !kw("IGNORE") && !kw("TABLESAMPLE")) {
            alias = ident();
        }
        if (alias) {
            add_source(s, *alias, table);
            if (punct("(")) skip_parens();  // column aliases
        }
        // MySQL index hints and SQL Server table hints
        while (kw("USE") || kw("FORCE") || kw("IGNORE")) {
            ++p_;
            if (!accept_kw("INDEX")) expect_kw("KEY");
            if (accept_kw("FOR")) {
                if (kw("ORDER") || kw("GROUP")) {
                    p_ += 2;
                } else {
                    expect_kw("JOIN");
                }
            }
            skip_parens();
        }
        if (kw("WITH") && punct_at(p_ + 1, "(")) {
            ++p_;
            skip_parens();
        }
    }

    void table_ref(Scope& s) {
        accept_kw("LATERAL");
        accept_kw("ONLY");
        if (accept_punct("(")) {
            if (select_follows(p_)) {
                Scope sub;
                sub.outer = &s;
                select_stmt(sub);
                expect_punct(")");
                s.source_list.push_back(std::nullopt);
                table_alias(s, std::nullopt);
            } else {
                from_list(s);
                expect_punct(")");
            }
            return;
        }
        bool hole = false;
        const auto parts = dotted(&hole);
        if (punct("(")) {
            function_args(s, text::to_upper_ascii(parts.back()), false, false);  // table function
            s.source_list.push_back(std::nullopt);
            table_alias(s, std::nullopt);
            return;
        }
        const std::string& name = parts.back();
        std::optional<std::string> table;
        if (!hole && !ctes_.count(text::to_lower_ascii(name))) {
            table = name;
            emit_table(name, hole);
        }
        s.source_list.push_back(table);
        add_source(s, name, table);
        table_alias(s, table);
    }

    // -------------------------------------------------------- DML

    // Single target table of INSERT / UPDATE / DELETE; returns its name.
    std::optional<std::string> target_table(Scope& s) {
        bool hole = false;
        const auto parts = dotted(&hole);
        std::optional<std::string> table;
        if (!hole) {
            table = parts.back();
            emit_table(parts.back(), false);
        }
        s.source_list.push_back(table);
        add_source(s, parts.back(), table);
        return table;
    }

    void column_list(const std::optional<std::string>& table) {
        expect_punct("(");
        do {
            bool hole = false;
            const auto parts = dotted(&hole);
            if (!hole) emit_column(parts.back(), table);
        } while (accept_punct(","));
        expect_punct(")");
    }

    void assignments(Scope& s, const std::optional<std::string>& target) {
        do {
            if (punct("(")) {
                column_list(target);
            } else {
                bool hole = false;
                const auto parts = dotted(&hole);
                if (!hole) {
                    if (parts.size() >= 2) {
                        const auto src = lookup(s, parts[parts.size() - 2]);
                        emit_column(parts.back(), src ? *src : std::nullopt);
                    } else {
                        emit_column(parts.back(), target);
                    }
                }
            }
            expect_punct("=");
            expr(s, true, false, true);
        } while (accept_punct(","));
    }

    void insert_stmt() {
        ++p_;  // INSERT / REPLACE
        while (kw("LOW_PRIORITY") || kw("DELAYED") || kw("HIGH_PRIORITY") || kw("IGNORE")) ++p_;
        if (accept_kw("OR")) ++p_;  // OR REPLACE / OR IGNORE
        accept_kw("INTO");
        Scope s;
        const auto table = target_table(s);
        s.default_table = table;
        if (accept_kw("AS")) add_source(s, ident(), table);
        else if (is_ident(cur()) && !kw("VALUES") && !kw("VALUE") && !kw("SELECT") && !kw("DEFAULT") && !kw("SET"))
            add_source(s, ident(), table);
        if (punct("(") && !select_follows(p_ + 1)) column_list(table);

        if (accept_kw("VALUES") || accept_kw("VALUE")) {
            do {
                expect_punct("(");
                paren_list(s, false, true);
                expect_punct(")");
            } while (accept_punct(","));
        } else if (accept_kw("DEFAULT")) {
            expect_kw("VALUES");
        } else if (accept_kw("SET")) {
            assignments(s, table);
        } else if (kw("SELECT") || kw("WITH") || punct("(")) {
            Scope sub;
            select_stmt(sub);
        } else {
            fail("expected VALUES, SELECT, or SET");
        }
        if (accept_kw("AS")) {
            ident();
            if (punct("(")) skip_parens();
        }
        while (kw("ON")) {
            ++p_;
            if (accept_kw("DUPLICATE")) {
                expect_kw("KEY");
                expect_kw("UPDATE");
                assignments(s, table);
            } else if (accept_kw("CONFLICT")) {
                if (punct("(")) {
                    expect_punct("(");
                    paren_list(s, false, false);
                    expect_punct(")");
                } else if (accept_kw("ON")) {
                    expect_kw("CONSTRAINT");
                    ident();
                }
                if (accept_kw("WHERE")) expr(s, true, false);
                expect_kw("DO");
                if (!accept_kw("NOTHING")) {
                    expect_kw("UPDATE");
                    expect_kw("SET");
                    assignments(s, table);
                    if (accept_kw("WHERE")) expr(s, true, false);
                }
            } else {
                fail("unexpected ON clause");
            }
        }
        returning(s);
        resolve(s);
    }

    void returning(Scope& s) {
        if (!accept_kw("RETURNING")) return;
        do {
            if (accept_punct("*")) continue;
            expr(s, true, false);
            if (accept_kw("AS")) ++p_;
        } while (accept_punct(","));
    }

    void update_stmt() {
        ++p_;
        while (kw("LOW_PRIORITY") || kw("IGNORE") || kw("ONLY")) ++p_;
        Scope s;
        if (kw("TOP")) {
            ++p_;
            skip_parens();
        }
        const std::size_t first_source = s.source_list.size();
        table_ref(s);
        const std::optional<std::string> target = s.source_list.size() > first_source ? s.source_list[first_source] : std::nullopt;
        while (true) {
            if (accept_punct(",")) {
                table_ref(s);
                continue;
            }
            if (join_follows()) {
                while (!kw("JOIN")) ++p_;
                ++p_;
                table_ref(s);
                if (accept_kw("ON")) expr(s, true, false);
                continue;
            }
            break;
        }
        expect_kw("SET");
        assignments(s, target);
        if (accept_kw("FROM")) from_list(s);
        if (accept_kw("WHERE")) expr(s, true, false);
        order_limit(s);
        returning(s);
        s.default_table = s.source_list.size() == 1 ? target : std::nullopt;
        resolve(s);
    }

    void delete_stmt() {
        ++p_;
        while (kw("LOW_PRIORITY") || kw("QUICK") || kw("IGNORE")) ++p_;
        Scope s;
        if (!kw("FROM")) {
            // DELETE t1, t2 FROM ... (targets are aliases resolved by FROM)
            do {
                dotted(nullptr);
                if (punct(".") && punct_at(p_ + 1, "*")) p_ += 2;
            } while (accept_punct(","));
        }
        expect_kw("FROM");
        from_list(s);
        if (accept_kw("USING")) from_list(s);
        if (accept_kw("WHERE")) expr(s, true, false);
        order_limit(s);
        returning(s);
        resolve(s);
    }

    // -------------------------------------------------------- DDL

    void references_clause() {
        // REFERENCES t [(cols)]
        bool hole = false;
        const auto parts = dotted(&hole);
        std::optional<std::string> ref;
        if (!hole) {
            ref = parts.back();
            emit_table(parts.back(), false);
        }
        if (punct("(")) column_list(ref);
    }

    // Skips to the next top-level ',' or ')' while honoring REFERENCES and CHECK.
    void skip_element(const std::optional<std::string>& table) {
        int depth = 0;
        while (!at_end()) {
            if (depth == 0 && (punct(",") || punct(")") || punct(";"))) return;
            if (depth == 0 && kw("REFERENCES")) {
                ++p_;
                references_clause();
                continue;
            }
            if (depth == 0 && kw("CHECK") && punct_at(p_ + 1, "(")) {
                p_ += 2;
                Scope s;
                s.default_table = table;
                paren_list(s, false, false);
                resolve(s);
                expect_punct(")");
                continue;
            }
            if (punct("(")) ++depth;
            if (punct(")")) --depth;
            ++p_;
        }
    }

    void index_columns(const std::optional<std::string>& table) {
        expect_punct("(");
        while (!punct(")") && !at_end()) {
            if (is_ident(cur())) {
                bool hole = false;
                const std::string name = ident(&hole);
                if (!hole && !punct("(")) emit_column(name, table);
                if (punct("(")) skip_parens();  // prefix length or expression
            } else if (punct("(")) {
                skip_parens();
            }
            while (!punct(",") && !punct(")") && !at_end()) {
                if (punct("(")) skip_parens();
                else ++p_;
            }
            accept_punct(",");
        }
        expect_punct(")");
    }

    void constraint(const std::optional<std::string>& table) {
        if (accept_kw("CONSTRAINT")) {
            if (is_ident(cur()) && !constraint_starts().count(cur().upper)) ++p_;
        }
        if (accept_kw("PRIMARY")) {
            expect_kw("KEY");
        } else if (accept_kw("FOREIGN")) {
            expect_kw("KEY");
            if (is_ident(cur())) ++p_;
            index_columns(table);
            expect_kw("REFERENCES");
            references_clause();
            skip_element(table);
            return;
        } else if (kw("CHECK")) {
            skip_element(table);
            return;
        } else if (accept_kw("UNIQUE") || accept_kw("FULLTEXT") || accept_kw("SPATIAL")) {
            if (!accept_kw("INDEX")) accept_kw("KEY");
        } else if (accept_kw("INDEX") || accept_kw("KEY")) {
        } else {
            skip_element(table);
            return;
        }
        if (is_ident(cur()) && !punct_at(p_, "(")) ++p_;  // index name
        if (accept_kw("USING")) ++p_;
        if (punct("(")) index_columns(table);
        skip_element(table);
    }

    void column_def(const std::optional<std::string>& table) {
        bool hole = false;
        const std::string name = ident(&hole);
        if (!hole) emit_column(name, table);
        skip_element(table);
    }

    void table_element(const std::optional<std::string>& table) {
        if (cur().kind == T::Word && !cur().hole && constraint_starts().count(cur().upper) &&
            !(cur().upper == "KEY" && !punct_at(p_ + 1, "(") && !is_ident(at(p_ + 1)))) {
            if (kw("LIKE")) {
                ++p_;
                bool hole = false;
                const auto parts = dotted(&hole);
                if (!hole) emit_table(parts.back(), false);
                skip_element(table);
                return;
            }
            constraint(table);
            return;
        }
        column_def(table);
    }

    void create_stmt() {
        ++p_;
        while (!kw("TABLE")) ++p_;
        ++p_;
        if (kw("IF")) {
            ++p_;
            expect_kw("NOT");
            expect_kw("EXISTS");
        }
        bool hole = false;
        const auto parts = dotted(&hole);
        std::optional<std::string> table;
        if (!hole) {
            table = parts.back();
            emit_table(parts.back(), false);
        }
        if (accept_kw("LIKE")) {
            const auto other = dotted(&hole);
            if (!hole) emit_table(other.back(), false);
            return;
        }
        if (accept_punct("(")) {
            if (kw("LIKE")) {
                table_element(table);
            } else {
                do {
                    if (punct(")")) break;
                    table_element(table);
                } while (accept_punct(","));
            }
            expect_punct(")");
        }
        // table options, then an optional AS SELECT
        while (!at_end() && !punct(";")) {
            if (kw("AS") && select_follows(p_ + 1)) {
                ++p_;
                Scope sub;
                select_stmt(sub);
                return;
            }
            if (kw("SELECT")) {
                Scope sub;
                select_stmt(sub);
                return;
            }
            if (punct("(")) skip_parens();
            else ++p_;
        }
    }

    void alter_stmt() {
        p_ += 2;  // ALTER TABLE
        if (kw("IF")) {
            ++p_;
            expect_kw("EXISTS");
        }
        accept_kw("ONLY");
        bool hole = false;
        const auto parts = dotted(&hole);
        std::optional<std::string> table;
        if (!hole) {
            table = parts.back();
            emit_table(parts.back(), false);
        }
        do {
            alter_action(table);
        } while (accept_punct(","));
    }

    void alter_action(const std::optional<std::string>& table) {
        auto column_name = [&] {
            bool hole = false;
            const std::string name = ident(&hole);
            if (!hole) emit_column(name, table);
        };
        if (accept_kw("ADD")) {
            if (cur().kind == T::Word && !cur().hole && constraint_starts().count(cur().upper) && !kw("LIKE")) {
                constraint(table);
                return;
            }
            accept_kw("COLUMN");
            if (kw("IF")) {
                ++p_;
                expect_kw("NOT");
                expect_kw("EXISTS");
            }
            if (accept_punct("(")) {
                do {
                    table_element(table);
                } while (accept_punct(","));
                expect_punct(")");
                return;
            }
            column_def(table);
            return;
        }
        if (accept_kw("DROP")) {
            if (kw("CONSTRAINT") || kw("INDEX") || kw("KEY") || kw("PRIMARY") || kw("FOREIGN") || kw("CHECK") ||
                kw("DEFAULT")) {
                skip_element(table);
                return;
            }
            accept_kw("COLUMN");
            if (kw("IF")) {
                ++p_;
                expect_kw("EXISTS");
            }
            column_name();
            skip_element(table);
            return;
        }
        if (accept_kw("ALTER") || accept_kw("MODIFY")) {
            if (kw("CONSTRAINT") || kw("INDEX")) {
                skip_element(table);
                return;
            }
            accept_kw("COLUMN");
            column_name();
            skip_element(table);
            return;
        }
        if (accept_kw("CHANGE")) {
            accept_kw("COLUMN");
            column_name();
            column_name();
            skip_element(table);
            return;
        }
        if (accept_kw("RENAME")) {
            if (accept_kw("TO") || accept_kw("AS")) {
                bool hole = false;
                const auto parts = dotted(&hole);
                if (!hole) emit_table(parts.back(), false);
                return;
            }
            if (kw("INDEX") || kw("KEY") || kw("CONSTRAINT")) {
                skip_element(table);
                return;
            }
            accept_kw("COLUMN");
            column_name();
            expect_kw("TO");
            column_name();
            return;
        }
        skip_element(table);
    }
};

bool is_space_or_comment_start(std::string_view s, std::size_t& i) {
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
        } else if (s.compare(i, 2, "--") == 0 || s[i] == '#') {
            while (i < s.size() && s[i] != '\n') ++i;
        } else if (s.compare(i, 2, "/*") == 0) {
            const auto end = s.find("*/", i + 2);
            i = end == std::string_view::npos ? s.size() : end + 2;
        } else if (s[i] == '(') {
            ++i;
        } else {
            return true;
        }
    }
    return false;
}

}  // namespace

void SqlKeywords::merge(const SqlKeywords& other) {
    tables.insert(other.tables.begin(), other.tables.end());
    columns.insert(other.columns.begin(), other.columns.end());
    for (const auto& [t, cols] : other.table_columns) table_columns[t].insert(cols.begin(), cols.end());
    statements += other.statements;
    failed_statements += other.failed_statements;
}

bool starts_with_sql_verb(std::string_view sql_text) {
    std::size_t i = 0;
    if (!is_space_or_comment_start(sql_text, i)) return false;
    std::size_t j = i;
    while (j < sql_text.size() && std::isalpha(static_cast<unsigned char>(sql_text[j]))) ++j;
    const std::string verb = text::to_upper_ascii(sql_text.substr(i, j - i));
    return verb == "SELECT" || verb == "INSERT" || verb == "REPLACE" || verb == "UPDATE" || verb == "DELETE" ||
           verb == "CREATE" || verb == "ALTER" || verb == "WITH";
}

namespace {

// Throws ParseError; `out` is filled only for a complete statement.
void parse_statement(std::vector<Tok> stmt, SqlKeywords& out) {
    Parser parser(std::move(stmt), out);
    if (parser.statement()) {
        if (!parser.at_end()) throw ParseError("trailing tokens");
        out.statements = 1;
    }
}

// Drops tokens consisting solely of HOLE bytes from the end, keeping End.
std::vector<Tok> without_trailing_holes(const std::vector<Tok>& stmt) {
    std::vector<Tok> out(stmt.begin(), stmt.end() - 1);
    while (!out.empty() && out.back().kind == T::Word &&
           out.back().text.find_first_not_of(kSqlHole) == std::string::npos)
        out.pop_back();
    out.push_back(Tok{});
    return out;
}

}  // namespace

SqlKeywords extract_sql_keywords(std::string_view sql_text, Diagnostics& diags, const SourceLocation& where) {
    SqlKeywords result;
    std::vector<Tok> toks;
    try {
        toks = tokenize(sql_text);
    } catch (const std::runtime_error& e) {
        diags.warn("keywords", std::string("SQL not tokenizable: ") + e.what(), where);
        result.failed_statements = 1;
        return result;
    }

    // Statements are parsed one at a time into a scratch result so that a
    // failure discards only that statement.
    std::size_t start = 0;
    while (toks[start].kind != T::End) {
        std::size_t end = start;
        int depth = 0;
        while (toks[end].kind != T::End) {
            if (toks[end].kind == T::Punct) {
                if (toks[end].text == "(") ++depth;
                if (toks[end].text == ")") --depth;
                if (toks[end].text == ";" && depth <= 0) break;
            }
            ++end;
        }
        std::vector<Tok> stmt(toks.begin() + static_cast<std::ptrdiff_t>(start), toks.begin() + static_cast<std::ptrdiff_t>(end));
        stmt.push_back(Tok{});
        start = toks[end].kind == T::End ? end : end + 1;
        if (stmt.size() == 1) continue;

        SqlKeywords scratch;
        try {
            parse_statement(stmt, scratch);
        } catch (const ParseError& e) {
            // A clause appended from an unresolved fragment: retry without it.
            auto trimmed = without_trailing_holes(stmt);
            bool recovered = false;
            if (trimmed.size() < stmt.size() && trimmed.size() > 1) {
                scratch = SqlKeywords{};
                try {
                    parse_statement(std::move(trimmed), scratch);
                    recovered = true;
                } catch (const ParseError&) {
                }
            }
            if (!recovered) {
                diags.warn("keywords", std::string("SQL statement not parsed: ") + e.what(), where);
                ++result.failed_statements;
                continue;
            }
        }
        result.merge(scratch);
    }
    return result;
}

}  // namespace secrisk
