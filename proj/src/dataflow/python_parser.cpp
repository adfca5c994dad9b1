#include "secrisk/dataflow/python_parser.hpp"

#include <set>
#include <stdexcept>

#include "secrisk/dataflow/python_lexer.hpp"

namespace secrisk::py {

namespace {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::set<std::string, std::less<>> kReserved = {
    "and",  "as",     "assert", "async",  "await",    "break", "class", "continue",
    "def",  "del",    "elif",   "else",   "except",   "finally", "for", "from",
    "global", "if",   "import", "in",     "is",       "lambda", "nonlocal", "not",
    "or",   "pass",   "raise",  "return", "try",      "while", "with",  "yield"};

const std::set<std::string, std::less<>> kAugOps = {"+=", "-=", "*=", "/=", "//=", "%=", "**=",
                                                    ">>=", "<<=", "&=", "|=", "^=", "@="};

ExprPtr make(Expr::Kind kind, const SourceLocation& loc) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->location = loc;
    return e;
}

class Parser {
public:
    Parser(std::vector<Token> tokens, const std::string& path, Diagnostics& diags)
        : toks_(std::move(tokens)), path_(path), diags_(diags) {}

    std::vector<StmtPtr> parse_file() {
        std::vector<StmtPtr> body;
        while (!at(TokenKind::End)) parse_statement_into(body, /*in_block=*/false);
        return body;
    }

    ExprPtr parse_standalone_expression() {
        auto e = parse_testlist_star();
        if (!at(TokenKind::End)) throw ParseError("trailing tokens in expression");
        return e;
    }

private:
    // ---- token helpers ----
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[i];
    }
    bool at(TokenKind k) const { return peek().kind == k; }
    bool at_op(std::string_view op, std::size_t ahead = 0) const {
        const auto& t = peek(ahead);
        return t.kind == TokenKind::Op && t.text == op;
    }
    bool at_kw(std::string_view kw, std::size_t ahead = 0) const {
        const auto& t = peek(ahead);
        return t.kind == TokenKind::Name && t.text == kw;
    }
    const Token& advance() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    bool accept_op(std::string_view op) {
        if (!at_op(op)) return false;
        advance();
        return true;
    }
    bool accept_kw(std::string_view kw) {
        if (!at_kw(kw)) return false;
        advance();
        return true;
    }
    void expect_op(std::string_view op) {
        if (!accept_op(op)) fail("expected '" + std::string(op) + "'");
    }
    void expect_kw(std::string_view kw) {
        if (!accept_kw(kw)) fail("expected '" + std::string(kw) + "'");
    }
    std::string expect_name() {
        if (!at(TokenKind::Name) || kReserved.count(peek().text)) fail("expected identifier");
        return advance().text;
    }
    SourceLocation loc() const { return SourceLocation{path_, peek().line, peek().column}; }
    SourceLocation loc_of(const Token& t) const { return SourceLocation{path_, t.line, t.column}; }
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message); }

    // ---- statements ----
    void parse_statement_into(std::vector<StmtPtr>& out, bool in_block) {
        if (at(TokenKind::Newline)) {
            advance();
            return;
        }
        if (at(TokenKind::Indent)) {
            diags_.warn("python", "unexpected indent", loc());
            advance();
            while (!at(TokenKind::Dedent) && !at(TokenKind::End)) parse_statement_into(out, true);
            if (at(TokenKind::Dedent)) advance();
            return;
        }
        if (at(TokenKind::Dedent)) {
            if (!in_block) advance();
            return;
        }
        const std::size_t start = pos_;
        try {
            parse_statement(out);
        } catch (const ParseError& e) {
            diags_.warn("python", std::string("syntax error: ") + e.what(), loc_of(toks_[start]));
            recover();
        }
    }

    void recover() {
        int depth = 0;
        while (!at(TokenKind::End)) {
            if (at(TokenKind::Newline) && depth <= 0) {
                advance();
                return;
            }
            if ((at(TokenKind::Indent) || at(TokenKind::Dedent)) && depth <= 0) return;
            if (at(TokenKind::Op)) {
                const auto& t = peek().text;
                if (t == "(" || t == "[" || t == "{") ++depth;
                if (t == ")" || t == "]" || t == "}") --depth;
            }
            advance();
        }
    }

    std::vector<StmtPtr> parse_block() {
        expect_op(":");
        std::vector<StmtPtr> body;
        if (!at(TokenKind::Newline)) {
            parse_simple_statements(body);
            return body;
        }
        advance();
        if (!at(TokenKind::Indent)) fail("expected an indented block");
        advance();
        while (!at(TokenKind::Dedent) && !at(TokenKind::End)) parse_statement_into(body, true);
        if (at(TokenKind::Dedent)) advance();
        return body;
    }

    void parse_statement(std::vector<StmtPtr>& out) {
        const auto& t = peek();
        if (t.kind == TokenKind::Name) {
            const std::string& w = t.text;
            if (w == "if") return out.push_back(parse_if());
            if (w == "while") return out.push_back(parse_while());
            if (w == "for") return out.push_back(parse_for(false));
            if (w == "try") return out.push_back(parse_try());
            if (w == "with") return out.push_back(parse_with(false));
            if (w == "def") return out.push_back(parse_def({}, false));
            if (w == "class") return out.push_back(parse_class({}));
            if (w == "async") {
                if (at_kw("def", 1)) {
                    advance();
                    return out.push_back(parse_def({}, true));
                }
                if (at_kw("for", 1)) {
                    advance();
                    return out.push_back(parse_for(true));
                }
                if (at_kw("with", 1)) {
                    advance();
                    return out.push_back(parse_with(true));
                }
            }
            if ((w == "match") && looks_like_soft_compound()) return out.push_back(skip_compound());
        }
        if (at_op("@")) return out.push_back(parse_decorated());
        parse_simple_statements(out);
    }

    // `match subject:` followed by an indented block.
    bool looks_like_soft_compound() const {
        int depth = 0;
        for (std::size_t i = pos_ + 1; i < toks_.size(); ++i) {
            const auto& t = toks_[i];
            if (t.kind == TokenKind::Newline || t.kind == TokenKind::End) return false;
            if (t.kind != TokenKind::Op) continue;
            if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
            if (t.text == ")" || t.text == "]" || t.text == "}") --depth;
            if (t.text == "=" && depth == 0) return false;
            if (t.text == ":" && depth == 0)
                return i + 1 < toks_.size() && toks_[i + 1].kind == TokenKind::Newline;
        }
        return false;
    }

    StmtPtr skip_compound() {
        auto s = std::make_shared<Stmt>();
        s->kind = Stmt::Kind::Other;
        s->location = loc();
        while (!at(TokenKind::Newline) && !at(TokenKind::End)) advance();
        if (at(TokenKind::Newline)) advance();
        if (at(TokenKind::Indent)) {
            int depth = 0;
            do {
                if (at(TokenKind::Indent)) ++depth;
                if (at(TokenKind::Dedent)) --depth;
                advance();
            } while (depth > 0 && !at(TokenKind::End));
        }
        return s;
    }

    StmtPtr new_stmt(Stmt::Kind kind, const SourceLocation& l) {
        auto s = std::make_shared<Stmt>();
        s->kind = kind;
        s->location = l;
        return s;
    }

    StmtPtr parse_if() {
        auto s = new_stmt(Stmt::Kind::If, loc());
        advance();  // if / elif
        s->value = parse_namedexpr();
        s->body = parse_block();
        if (at_kw("elif")) {
            s->orelse.push_back(parse_if());
        } else if (accept_kw("else")) {
            s->orelse = parse_block();
        }
        return s;
    }

    StmtPtr parse_while() {
        auto s = new_stmt(Stmt::Kind::While, loc());
        advance();
        s->value = parse_namedexpr();
        s->body = parse_block();
        if (accept_kw("else")) s->orelse = parse_block();
        return s;
    }

    StmtPtr parse_for(bool is_async) {
        auto s = new_stmt(Stmt::Kind::For, loc());
        s->is_async = is_async;
        expect_kw("for");
        s->targets.push_back(parse_target_list());
        expect_kw("in");
        s->value = parse_testlist_star();
        s->body = parse_block();
        if (accept_kw("else")) s->orelse = parse_block();
        return s;
    }

    StmtPtr parse_try() {
        auto s = new_stmt(Stmt::Kind::Try, loc());
        expect_kw("try");
        s->body = parse_block();
        while (at_kw("except")) {
            advance();
            accept_op("*");
            Handler h;
            if (!at_op(":")) {
                h.type = parse_test();
                if (accept_op(",")) {
                    auto tup = make(Expr::Kind::Tuple, h.type->location);
                    tup->children.push_back(h.type);
                    tup->children.push_back(parse_test());
                    while (accept_op(",")) {
                        if (at_op(":") || at_kw("as")) break;
                        tup->children.push_back(parse_test());
                    }
                    h.type = tup;
                }
                if (accept_kw("as")) h.name = expect_name();
            }
            h.body = parse_block();
            s->handlers.push_back(std::move(h));
        }
        if (accept_kw("else")) s->orelse = parse_block();
        if (accept_kw("finally")) s->finalbody = parse_block();
        if (s->handlers.empty() && s->finalbody.empty()) fail("try without except or finally");
        return s;
    }

    StmtPtr parse_with(bool is_async) {
        auto s = new_stmt(Stmt::Kind::With, loc());
        s->is_async = is_async;
        expect_kw("with");
        bool parenthesized = false;
        if (at_op("(") && paren_group_is_with_items()) {
            advance();
            parenthesized = true;
        }
        do {
            if (parenthesized && at_op(")")) break;
            WithItem item;
            item.context = parse_test();
            if (accept_kw("as")) item.target = parse_target();
            s->items.push_back(std::move(item));
        } while (accept_op(","));
        if (parenthesized) expect_op(")");
        s->body = parse_block();
        return s;
    }

    // Distinguishes `with (a as b, c):` from `with (a, b) as c:`.
    bool paren_group_is_with_items() const {
        int depth = 0;
        for (std::size_t i = pos_; i < toks_.size(); ++i) {
            const auto& t = toks_[i];
            if (t.kind == TokenKind::Newline || t.kind == TokenKind::End) return false;
            if (t.kind == TokenKind::Op && (t.text == "(" || t.text == "[" || t.text == "{")) ++depth;
            if (t.kind == TokenKind::Op && (t.text == ")" || t.text == "]" || t.text == "}")) {
                if (--depth == 0) return i + 1 < toks_.size() && toks_[i + 1].kind == TokenKind::Op &&
                                         toks_[i + 1].text == ":";
            }
            if (depth == 1 && t.kind == TokenKind::Name && t.text == "as") return true;
        }
        return false;
    }

    StmtPtr parse_decorated() {
        std::vector<ExprPtr> decorators;
        while (accept_op("@")) {
            decorators.push_back(parse_namedexpr());
            if (!at(TokenKind::Newline)) fail("expected newline after decorator");
            advance();
        }
        if (at_kw("def")) return parse_def(std::move(decorators), false);
        if (at_kw("async") && at_kw("def", 1)) {
            advance();
            return parse_def(std::move(decorators), true);
        }
        if (at_kw("class")) return parse_class(std::move(decorators));
        fail("expected def or class after decorator");
    }

    StmtPtr parse_def(std::vector<ExprPtr> decorators, bool is_async) {
        auto s = new_stmt(Stmt::Kind::FunctionDef, loc());
        s->is_async = is_async;
        s->decorators = std::move(decorators);
        expect_kw("def");
        s->name = expect_name();
        if (at_op("[")) skip_brackets();
        expect_op("(");
        while (!at_op(")")) {
            if (accept_op("/") || accept_op("*") || accept_op("**")) {
                if (at(TokenKind::Name)) s->params.push_back(expect_name());
            } else {
                s->params.push_back(expect_name());
            }
            if (accept_op(":")) parse_test();
            if (accept_op("=")) parse_test();
            if (!accept_op(",")) break;
        }
        expect_op(")");
        if (accept_op("->")) parse_test();
        s->body = parse_block();
        return s;
    }

    StmtPtr parse_class(std::vector<ExprPtr> decorators) {
        auto s = new_stmt(Stmt::Kind::ClassDef, loc());
        s->decorators = std::move(decorators);
        expect_kw("class");
        s->name = expect_name();
        if (at_op("[")) skip_brackets();
        if (accept_op("(")) {
            while (!at_op(")")) {
                if (at(TokenKind::Name) && at_op("=", 1)) {
                    Keyword kw;
                    kw.name = advance().text;
                    advance();
                    kw.value = parse_test();
                    s->class_keywords.push_back(std::move(kw));
                } else if (accept_op("**")) {
                    s->class_keywords.push_back(Keyword{"", parse_test()});
                } else if (accept_op("*")) {
                    parse_test();
                } else {
                    s->bases.push_back(parse_test());
                }
                if (!accept_op(",")) break;
            }
            expect_op(")");
        }
        s->body = parse_block();
        return s;
    }

    void skip_brackets() {
        int depth = 0;
        do {
            if (at(TokenKind::End)) fail("unbalanced brackets");
            if (at_op("[") || at_op("(") || at_op("{")) ++depth;
            if (at_op("]") || at_op(")") || at_op("}")) --depth;
            advance();
        } while (depth > 0);
    }

    void parse_simple_statements(std::vector<StmtPtr>& out) {
        out.push_back(parse_small_statement());
        while (accept_op(";")) {
            if (at(TokenKind::Newline) || at(TokenKind::End)) break;
            out.push_back(parse_small_statement());
        }
        if (at(TokenKind::Newline)) {
            advance();
        } else if (!at(TokenKind::End) && !at(TokenKind::Dedent)) {
            fail("unexpected token '" + peek().text + "'");
        }
    }

    StmtPtr parse_small_statement() {
        const SourceLocation l = loc();
        if (at(TokenKind::Name)) {
            const std::string w = peek().text;
            if (w == "pass" || w == "break" || w == "continue") {
                advance();
                return new_stmt(Stmt::Kind::Other, l);
            }
            if (w == "return") {
                advance();
                auto s = new_stmt(Stmt::Kind::Return, l);
                if (!at_statement_end()) s->value = parse_testlist_star();
                return s;
            }
            if (w == "import") return parse_import();
            if (w == "from") return parse_from_import();
            if (w == "global" || w == "nonlocal" || w == "del" || w == "assert" || w == "raise") {
                advance();
                auto s = new_stmt(Stmt::Kind::Other, l);
                s->op = w;
                if (!at_statement_end()) {
                    if (w == "global" || w == "nonlocal") {
                        do {
                            s->names.push_back(ImportName{expect_name(), ""});
                        } while (accept_op(","));
                    } else {
                        s->value = parse_testlist_star();
                        if (accept_kw("from") || accept_op(",")) parse_test();
                    }
                }
                return s;
            }
        }
        return parse_expression_statement();
    }

    bool at_statement_end() const {
        return at(TokenKind::Newline) || at(TokenKind::End) || at_op(";") || at(TokenKind::Dedent);
    }

    std::string parse_dotted_name() {
        std::string name = expect_name();
        while (accept_op(".")) name += "." + expect_name();
        return name;
    }

    StmtPtr parse_import() {
        auto s = new_stmt(Stmt::Kind::Import, loc());
        expect_kw("import");
        do {
            ImportName n;
            n.name = parse_dotted_name();
            if (accept_kw("as")) n.asname = expect_name();
            s->names.push_back(std::move(n));
        } while (accept_op(","));
        return s;
    }

    StmtPtr parse_from_import() {
        auto s = new_stmt(Stmt::Kind::ImportFrom, loc());
        expect_kw("from");
        while (at_op(".") || at_op("...")) s->level += static_cast<int>(advance().text.size());
        if (!at_kw("import")) s->module = parse_dotted_name();
        expect_kw("import");
        if (accept_op("*")) {
            s->names.push_back(ImportName{"*", ""});
            return s;
        }
        bool paren = accept_op("(");
        do {
            if (paren && at_op(")")) break;
            ImportName n;
            n.name = expect_name();
            if (accept_kw("as")) n.asname = expect_name();
            s->names.push_back(std::move(n));
        } while (accept_op(","));
        if (paren) expect_op(")");
        return s;
    }

    StmtPtr parse_expression_statement() {
        const SourceLocation l = loc();
        ExprPtr first = at_kw("yield") ? parse_yield() : parse_testlist_star();
        if (at_op("=")) {
            auto s = new_stmt(Stmt::Kind::Assign, l);
            s->targets.push_back(first);
            ExprPtr value;
            while (accept_op("=")) {
                value = at_kw("yield") ? parse_yield() : parse_testlist_star();
                if (at_op("=")) s->targets.push_back(value);
            }
            s->value = value;
            return s;
        }
        if (at(TokenKind::Op) && kAugOps.count(peek().text)) {
            auto s = new_stmt(Stmt::Kind::AugAssign, l);
            std::string op = advance().text;
            s->op = op.substr(0, op.size() - 1);
            s->targets.push_back(first);
            s->value = at_kw("yield") ? parse_yield() : parse_testlist_star();
            return s;
        }
        if (accept_op(":")) {
            auto s = new_stmt(Stmt::Kind::AnnAssign, l);
            s->targets.push_back(first);
            s->annotation = parse_test();
            if (accept_op("=")) s->value = at_kw("yield") ? parse_yield() : parse_testlist_star();
            return s;
        }
        auto s = new_stmt(Stmt::Kind::Expr, l);
        s->value = first;
        return s;
    }

    ExprPtr parse_yield() {
        auto e = make(Expr::Kind::Other, loc());
        expect_kw("yield");
        accept_kw("from");
        if (!at_statement_end() && !at_op(")") && !at_op("=")) e->children.push_back(parse_testlist_star());
        return e;
    }

    // ---- expressions ----
    ExprPtr parse_target() {
        if (at_op("*")) {
            auto e = make(Expr::Kind::Starred, loc());
            advance();
            e->children.push_back(parse_or_expr());
            return e;
        }
        return parse_or_expr();
    }

    ExprPtr parse_target_list() {
        const SourceLocation l = loc();
        ExprPtr first = parse_target();
        if (!at_op(",")) return first;
        auto tup = make(Expr::Kind::Tuple, l);
        tup->children.push_back(first);
        while (accept_op(",")) {
            if (at_kw("in") || at_op("=")) break;
            tup->children.push_back(parse_target());
        }
        return tup;
    }

    ExprPtr parse_star_or_test() {
        if (at_op("*")) {
            auto e = make(Expr::Kind::Starred, loc());
            advance();
            e->children.push_back(parse_or_expr());
            return e;
        }
        return parse_namedexpr();
    }

    ExprPtr parse_testlist_star() {
        const SourceLocation l = loc();
        ExprPtr first = parse_star_or_test();
        if (!at_op(",")) return first;
        auto tup = make(Expr::Kind::Tuple, l);
        tup->children.push_back(first);
        while (accept_op(",")) {
            if (at_statement_end() || at_op("=") || at_op(")") || at_op(":") ||
                (at(TokenKind::Op) && kAugOps.count(peek().text)))
                break;
            tup->children.push_back(parse_star_or_test());
        }
        return tup;
    }

    ExprPtr parse_namedexpr() {
        ExprPtr e = parse_test();
        if (at_op(":=")) {
            auto n = make(Expr::Kind::NamedExpr, e->location);
            advance();
            n->children.push_back(e);
            n->children.push_back(parse_test());
            return n;
        }
        return e;
    }

    ExprPtr parse_test() {
        if (at_kw("lambda")) return parse_lambda();
        ExprPtr body = parse_or_test();
        if (at_kw("if")) {
            auto e = make(Expr::Kind::IfExp, body->location);
            advance();
            e->children.push_back(body);
            e->children.push_back(parse_or_test());
            expect_kw("else");
            e->children.push_back(parse_test());
            return e;
        }
        return body;
    }

    ExprPtr parse_lambda() {
        auto e = make(Expr::Kind::Other, loc());
        expect_kw("lambda");
        while (!at_op(":")) {
            if (at(TokenKind::End) || at(TokenKind::Newline)) fail("unterminated lambda");
            if (accept_op("=")) {
                parse_test();
                continue;
            }
            advance();
        }
        advance();
        e->children.push_back(parse_test());
        return e;
    }

    ExprPtr parse_or_test() {
        ExprPtr left = parse_and_test();
        if (!at_kw("or")) return left;
        auto e = make(Expr::Kind::BoolOp, left->location);
        e->op = "or";
        e->children.push_back(left);
        while (accept_kw("or")) e->children.push_back(parse_and_test());
        return e;
    }

    ExprPtr parse_and_test() {
        ExprPtr left = parse_not_test();
        if (!at_kw("and")) return left;
        auto e = make(Expr::Kind::BoolOp, left->location);
        e->op = "and";
        e->children.push_back(left);
        while (accept_kw("and")) e->children.push_back(parse_not_test());
        return e;
    }

    ExprPtr parse_not_test() {
        if (at_kw("not")) {
            auto e = make(Expr::Kind::UnaryOp, loc());
            advance();
            e->op = "not";
            e->children.push_back(parse_not_test());
            return e;
        }
        return parse_comparison();
    }

    bool at_comp_op() const {
        if (at(TokenKind::Op)) {
            const auto& t = peek().text;
            return t == "<" || t == ">" || t == "==" || t == ">=" || t == "<=" || t == "!=" || t == "<>";
        }
        return at_kw("in") || at_kw("is") || (at_kw("not") && at_kw("in", 1));
    }

    ExprPtr parse_comparison() {
        ExprPtr left = parse_or_expr();
        if (!at_comp_op()) return left;
        auto e = make(Expr::Kind::Compare, left->location);
        e->children.push_back(left);
        while (at_comp_op()) {
            std::string op = advance().text;
            if (op == "not") {
                advance();
                op = "not in";
            } else if (op == "is" && accept_kw("not")) {
                op = "is not";
            }
            e->op += (e->op.empty() ? "" : " ") + op;
            e->children.push_back(parse_or_expr());
        }
        return e;
    }

    ExprPtr binary_chain(ExprPtr (Parser::*next)(), std::initializer_list<std::string_view> ops) {
        ExprPtr left = (this->*next)();
        for (;;) {
            bool matched = false;
            for (auto op : ops) {
                if (at_op(op)) {
                    auto e = make(Expr::Kind::BinOp, left->location);
                    e->op = std::string(op);
                    advance();
                    e->children.push_back(left);
                    e->children.push_back((this->*next)());
                    left = e;
                    matched = true;
                    break;
                }
            }
            if (!matched) return left;
        }
    }

    ExprPtr parse_or_expr() { return binary_chain(&Parser::parse_xor_expr, {"|"}); }
    ExprPtr parse_xor_expr() { return binary_chain(&Parser::parse_and_expr, {"^"}); }
    ExprPtr parse_and_expr() { return binary_chain(&Parser::parse_shift_expr, {"&"}); }
    ExprPtr parse_shift_expr() { return binary_chain(&Parser::parse_arith_expr, {"<<", ">>"}); }
    ExprPtr parse_arith_expr() { return binary_chain(&Parser::parse_term, {"+", "-"}); }
    ExprPtr parse_term() { return binary_chain(&Parser::parse_factor, {"*", "/", "//", "%", "@"}); }

    ExprPtr parse_factor() {
        if (at_op("+") || at_op("-") || at_op("~")) {
            auto e = make(Expr::Kind::UnaryOp, loc());
            e->op = advance().text;
            e->children.push_back(parse_factor());
            return e;
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base;
        if (at_kw("await")) {
            base = make(Expr::Kind::Await, loc());
            advance();
            base->children.push_back(parse_primary());
        } else {
            base = parse_primary();
        }
        if (at_op("**")) {
            auto e = make(Expr::Kind::BinOp, base->location);
            e->op = "**";
            advance();
            e->children.push_back(base);
            e->children.push_back(parse_factor());
            return e;
        }
        return base;
    }

    ExprPtr parse_primary() {
        ExprPtr e = parse_atom();
        for (;;) {
            if (at_op(".")) {
                advance();
                auto a = make(Expr::Kind::Attribute, e->location);
                a->name = expect_name_or_keyword();
                a->children.push_back(e);
                e = a;
            } else if (at_op("(")) {
                advance();
                auto c = make(Expr::Kind::Call, e->location);
                c->children.push_back(e);
                parse_call_args(*c);
                expect_op(")");
                e = c;
            } else if (at_op("[")) {
                advance();
                auto s = make(Expr::Kind::Subscript, e->location);
                s->children.push_back(e);
                s->children.push_back(parse_subscript_list());
                expect_op("]");
                e = s;
            } else {
                return e;
            }
        }
    }

    std::string expect_name_or_keyword() {
        if (!at(TokenKind::Name)) fail("expected attribute name");
        return advance().text;
    }

    void parse_call_args(Expr& call) {
        while (!at_op(")")) {
            if (at_op("**")) {
                advance();
                call.keywords.push_back(Keyword{"", parse_test()});
            } else if (at_op("*")) {
                auto s = make(Expr::Kind::Starred, loc());
                advance();
                s->children.push_back(parse_test());
                call.children.push_back(s);
            } else if (at(TokenKind::Name) && at_op("=", 1)) {
                Keyword kw;
                kw.name = advance().text;
                advance();
                kw.value = parse_test();
                call.keywords.push_back(std::move(kw));
            } else {
                ExprPtr arg = parse_namedexpr();
                if (at_kw("for") || (at_kw("async") && at_kw("for", 1))) arg = parse_comprehension(arg);
                call.children.push_back(arg);
            }
            if (!accept_op(",")) break;
        }
    }

    ExprPtr parse_subscript_list() {
        const SourceLocation l = loc();
        ExprPtr first = parse_subscript();
        if (!at_op(",")) return first;
        auto tup = make(Expr::Kind::Tuple, l);
        tup->children.push_back(first);
        while (accept_op(",")) {
            if (at_op("]")) break;
            tup->children.push_back(parse_subscript());
        }
        return tup;
    }

    ExprPtr parse_subscript() {
        const SourceLocation l = loc();
        ExprPtr lower;
        if (!at_op(":")) {
            lower = parse_star_or_test();
            if (!at_op(":")) return lower;
        }
        auto s = make(Expr::Kind::Slice, l);
        s->children.push_back(lower);
        advance();
        s->children.push_back(at_op(":") || at_op("]") || at_op(",") ? nullptr : parse_test());
        if (accept_op(":")) s->children.push_back(at_op("]") || at_op(",") ? nullptr : parse_test());
        return s;
    }

    ExprPtr parse_comprehension(ExprPtr element) {
        auto e = make(Expr::Kind::Other, element->location);
        e->op = "comprehension";
        e->children.push_back(element);
        while (at_kw("for") || (at_kw("async") && at_kw("for", 1))) {
            accept_kw("async");
            expect_kw("for");
            parse_target_list();
            expect_kw("in");
            e->children.push_back(parse_or_test());
            while (accept_kw("if")) e->children.push_back(parse_or_test());
        }
        return e;
    }

    ExprPtr parse_atom() {
        const Token& t = peek();
        const SourceLocation l = loc();
        switch (t.kind) {
            case TokenKind::Name: {
                if (t.text == "None" || t.text == "True" || t.text == "False") {
                    auto e = make(Expr::Kind::Const, l);
                    e->name = advance().text;
                    return e;
                }
                if (kReserved.count(t.text)) fail("unexpected keyword '" + t.text + "'");
                auto e = make(Expr::Kind::Name, l);
                e->name = advance().text;
                return e;
            }
            case TokenKind::Number: {
                auto e = make(Expr::Kind::Num, l);
                e->name = advance().text;
                return e;
            }
            case TokenKind::String: return parse_strings();
            case TokenKind::Op: break;
            default: fail("unexpected token");
        }
        if (accept_op("...")) {
            auto e = make(Expr::Kind::Const, l);
            e->name = "Ellipsis";
            return e;
        }
        if (accept_op("(")) {
            if (accept_op(")")) return make(Expr::Kind::Tuple, l);
            if (at_kw("yield")) {
                auto y = parse_yield();
                expect_op(")");
                return y;
            }
            ExprPtr first = parse_star_or_test();
            if (at_kw("for") || (at_kw("async") && at_kw("for", 1))) {
                auto c = parse_comprehension(first);
                expect_op(")");
                return c;
            }
            if (accept_op(")")) return first;
            auto tup = make(Expr::Kind::Tuple, l);
            tup->children.push_back(first);
            while (accept_op(",")) {
                if (at_op(")")) break;
                tup->children.push_back(parse_star_or_test());
            }
            expect_op(")");
            return tup;
        }
        if (accept_op("[")) {
            auto list = make(Expr::Kind::List, l);
            if (accept_op("]")) return list;
            ExprPtr first = parse_star_or_test();
            if (at_kw("for") || (at_kw("async") && at_kw("for", 1))) {
                auto c = parse_comprehension(first);
                expect_op("]");
                return c;
            }
            list->children.push_back(first);
            while (accept_op(",")) {
                if (at_op("]")) break;
                list->children.push_back(parse_star_or_test());
            }
            expect_op("]");
            return list;
        }
        if (accept_op("{")) return parse_brace(l);
        fail("unexpected '" + t.text + "'");
    }

    ExprPtr parse_brace(const SourceLocation& l) {
        if (accept_op("}")) return make(Expr::Kind::Dict, l);
        auto dict_entry = [&](Expr& d) {
            if (accept_op("**")) {
                d.children.push_back(nullptr);
                d.children.push_back(parse_or_expr());
                return;
            }
            d.children.push_back(parse_test());
            expect_op(":");
            d.children.push_back(parse_test());
        };
        if (at_op("**")) {
            auto d = make(Expr::Kind::Dict, l);
            dict_entry(*d);
            while (accept_op(",")) {
                if (at_op("}")) break;
                dict_entry(*d);
            }
            expect_op("}");
            return d;
        }
        ExprPtr first = parse_star_or_test();
        if (accept_op(":")) {
            auto d = make(Expr::Kind::Dict, l);
            d->children.push_back(first);
            d->children.push_back(parse_test());
            if (at_kw("for") || (at_kw("async") && at_kw("for", 1))) {
                auto c = parse_comprehension(d);
                expect_op("}");
                return c;
            }
            while (accept_op(",")) {
                if (at_op("}")) break;
                dict_entry(*d);
            }
            expect_op("}");
            return d;
        }
        if (at_kw("for") || (at_kw("async") && at_kw("for", 1))) {
            auto c = parse_comprehension(first);
            expect_op("}");
            return c;
        }
        auto set = make(Expr::Kind::Set, l);
        set->children.push_back(first);
        while (accept_op(",")) {
            if (at_op("}")) break;
            set->children.push_back(parse_star_or_test());
        }
        expect_op("}");
        return set;
    }

    ExprPtr parse_strings() {
        auto e = make(Expr::Kind::Str, loc());
        bool any_bytes = false;
        bool any_text = false;
        while (at(TokenKind::String)) {
            const Token& t = advance();
            if (!t.terminated) fail("unterminated string literal");
            const bool is_bytes = t.prefix.find('b') != std::string::npos;
            const bool is_raw = t.prefix.find('r') != std::string::npos;
            const bool is_f = t.prefix.find('f') != std::string::npos || t.prefix.find('t') != std::string::npos;
            (is_bytes ? any_bytes : any_text) = true;
            if (is_f) {
                e->is_fstring = true;
                split_fstring(t, is_raw, *e);
            } else {
                StrPart p;
                p.text = is_raw ? t.body : decode_escapes(t.body, is_bytes);
                p.location = SourceLocation{path_, t.line, t.column};
                e->parts.push_back(std::move(p));
            }
        }
        if (any_bytes && any_text) fail("cannot mix bytes and str literals");
        if (any_bytes) e->kind = Expr::Kind::Bytes;
        return e;
    }

    void split_fstring(const Token& t, bool raw, Expr& out) {
        const std::string& body = t.body;
        int line = t.body_line;
        int col = t.body_column;
        std::string literal;
        SourceLocation literal_loc{path_, t.line, t.column};
        auto flush = [&] {
            if (literal.empty()) return;
            StrPart p;
            p.text = raw ? literal : decode_escapes(literal, false);
            p.location = literal_loc;
            out.parts.push_back(std::move(p));
            literal.clear();
        };
        auto step = [&](char c) {
            if (c == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        };
        std::size_t i = 0;
        while (i < body.size()) {
            char c = body[i];
            if (c == '{' && i + 1 < body.size() && body[i + 1] == '{') {
                literal.push_back('{');
                step(c);
                step(c);
                i += 2;
                continue;
            }
            if (c == '}' && i + 1 < body.size() && body[i + 1] == '}') {
                literal.push_back('}');
                step(c);
                step(c);
                i += 2;
                continue;
            }
            if (c != '{') {
                if (c == '\\' && !raw && i + 1 < body.size()) {
                    literal.push_back(c);
                    step(c);
                    ++i;
                    c = body[i];
                }
                literal.push_back(c);
                step(c);
                ++i;
                continue;
            }
            flush();
            step(c);
            ++i;
            const int expr_line = line;
            const int expr_col = col;
            const std::size_t expr_start = i;
            std::size_t expr_end = std::string::npos;
            int depth = 0;
            char quote = 0;
            StrPart field;
            field.is_field = true;
            field.location = SourceLocation{path_, expr_line, expr_col};
            while (i < body.size()) {
                char d = body[i];
                if (quote) {
                    if (d == quote) quote = 0;
                } else if (d == '\'' || d == '"') {
                    quote = d;
                } else if (d == '(' || d == '[' || d == '{') {
                    ++depth;
                } else if ((d == ')' || d == ']') && depth > 0) {
                    --depth;
                } else if (d == '}') {
                    if (depth == 0) break;
                    --depth;
                } else if (depth == 0) {
                    if (d == '!' && i + 1 < body.size() && body[i + 1] != '=') break;
                    if (d == ':') break;
                    if (d == '=' && i + 1 < body.size() &&
                        (body[i + 1] == '}' || body[i + 1] == '!' || body[i + 1] == ':') && i > expr_start &&
                        std::string_view("=!<>").find(body[i - 1]) == std::string_view::npos)
                        break;
                }
                step(d);
                ++i;
            }
            expr_end = i;
            if (i < body.size() && body[i] == '=') {
                field.has_spec = true;
                step(body[i]);
                ++i;
            }
            if (i < body.size() && body[i] == '!') {
                step(body[i]);
                ++i;
                if (i < body.size()) {
                    field.conversion = body[i];
                    step(body[i]);
                    ++i;
                }
            }
            if (i < body.size() && body[i] == ':') {
                field.has_spec = true;
                int spec_depth = 0;
                while (i < body.size()) {
                    if (body[i] == '{') ++spec_depth;
                    if (body[i] == '}') {
                        if (spec_depth == 0) break;
                        --spec_depth;
                    }
                    step(body[i]);
                    ++i;
                }
            }
            if (i >= body.size() || body[i] != '}') fail("unterminated f-string replacement field");
            step(body[i]);
            ++i;
            field.expr = parse_embedded(body.substr(expr_start, expr_end - expr_start), expr_line, expr_col);
            out.parts.push_back(std::move(field));
            literal_loc = SourceLocation{path_, line, col};
        }
        flush();
    }

    ExprPtr parse_embedded(const std::string& source, int line, int col) {
        Diagnostics local;
        auto tokens = tokenize(source, path_, local, line, col, /*emit_layout=*/false);
        Parser sub(std::move(tokens), path_, diags_);
        try {
            return sub.parse_standalone_expression();
        } catch (const ParseError&) {
            return make(Expr::Kind::Other, SourceLocation{path_, line, col});
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const std::string& path_;
    Diagnostics& diags_;
};

}  // namespace

Module parse_source(std::string_view text, const std::string& path, Diagnostics& diags) {
    Module m;
    m.path = path;
    auto tokens = tokenize(text, path, diags);
    Parser parser(std::move(tokens), path, diags);
    m.body = parser.parse_file();
    return m;
}

}  // namespace secrisk::py
