#include "secrisk/dataflow/python_lexer.hpp"

#include <array>
#include <cstdint>
#include <set>

#include "secrisk/common/text.hpp"

namespace secrisk::py {

namespace {

constexpr std::array<std::string_view, 26> kMultiOps = {
    "**=", "//=", ">>=", "<<=", "...", "->", ":=", "**", "//", "<<", ">>", "<=", ">=",
    "==",  "!=",  "+=",  "-=",  "*=",  "/=", "%=", "&=", "|=", "^=", "@=", "<>", "!"};

bool is_ident_start(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c >= 0x80;
}

bool is_ident_char(unsigned char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_string_prefix(std::string_view p) {
    if (p.size() > 2) return false;
    std::string lower = text::to_lower_ascii(p);
    static constexpr std::array<std::string_view, 14> prefixes = {
        "", "r", "u", "b", "f", "br", "rb", "fr", "rf", "t", "tr", "rt", "bu", "ub"};
    for (auto q : prefixes)
        if (q == lower && q != "bu" && q != "ub") return true;
    return false;
}

class Lexer {
public:
    Lexer(std::string_view src, const std::string& path, Diagnostics& diags, int base_line,
          int base_column, bool layout)
        : src_(src), path_(path), diags_(diags), line_(base_line), line_start_col_(base_column),
          layout_(layout) {
        if (src_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
        line_begin_ = pos_;
    }

    std::vector<Token> run() {
        at_line_start_ = layout_;
        while (pos_ < src_.size()) {
            if (at_line_start_ && depth_ == 0) {
                if (!handle_indentation()) continue;
            }
            char c = src_[pos_];
            if (c == '\n' || c == '\r') {
                consume_newline();
                if (depth_ > 0 && layout_ && opens_statement()) {
                    diags_.warn("python", "unclosed bracket", SourceLocation{path_, tok_line_, tok_col_});
                    depth_ = 0;
                }
                if (depth_ == 0 && layout_ && !line_empty_) {
                    push(TokenKind::Newline, "\n", tok_line_, tok_col_);
                }
                if (depth_ == 0) {
                    at_line_start_ = layout_;
                    line_empty_ = true;
                }
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\f') {
                ++pos_;
                continue;
            }
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n' && src_[pos_] != '\r') ++pos_;
                continue;
            }
            if (c == '\\') {
                std::size_t p = pos_ + 1;
                if (p < src_.size() && (src_[p] == '\n' || src_[p] == '\r')) {
                    pos_ = p;
                    consume_newline();
                    continue;
                }
                error_token("unexpected backslash");
                continue;
            }
            line_empty_ = false;
            lex_token();
        }
        if (layout_) {
            if (!line_empty_) push(TokenKind::Newline, "", line_, column());
            while (indents_.size() > 1) {
                indents_.pop_back();
                push(TokenKind::Dedent, "", line_, column());
            }
        }
        push(TokenKind::End, "", line_, column());
        return std::move(tokens_);
    }

private:
    int column() const { return line_start_col_ + static_cast<int>(pos_ - line_begin_); }

    void push(TokenKind kind, std::string text, int line, int col) {
        Token t;
        t.kind = kind;
        t.text = std::move(text);
        t.line = line;
        t.column = col;
        tokens_.push_back(std::move(t));
    }

    void consume_newline() {
        tok_line_ = line_;
        tok_col_ = column();
        if (src_[pos_] == '\r' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '\n') ++pos_;
        ++pos_;
        ++line_;
        line_begin_ = pos_;
        line_start_col_ = 1;
    }

    // True when the next physical line starts with a keyword that cannot
    // continue a bracketed expression.
    bool opens_statement() const {
        static const std::set<std::string_view> keywords = {
            "def", "class", "import", "return", "pass", "raise", "try", "except", "finally", "while",
            "with", "del", "global", "nonlocal", "assert", "break", "continue"};
        std::size_t p = pos_;
        while (p < src_.size() && (src_[p] == ' ' || src_[p] == '\t')) ++p;
        std::size_t e = p;
        while (e < src_.size() && is_ident_char(static_cast<unsigned char>(src_[e]))) ++e;
        if (e == p || (e < src_.size() && src_[e] == '=')) return false;
        return keywords.count(src_.substr(p, e - p)) > 0;
    }

    // Returns false when the line was blank or comment-only and has been consumed.
    bool handle_indentation() {
        int width = 0;
        std::size_t p = pos_;
        while (p < src_.size() && (src_[p] == ' ' || src_[p] == '\t' || src_[p] == '\f')) {
            if (src_[p] == '\t')
                width = (width / 8 + 1) * 8;
            else if (src_[p] == ' ')
                ++width;
            ++p;
        }
        if (p >= src_.size()) {
            pos_ = p;
            return false;
        }
        char c = src_[p];
        if (c == '#' || c == '\n' || c == '\r') {
            pos_ = p;
            while (pos_ < src_.size() && src_[pos_] != '\n' && src_[pos_] != '\r') ++pos_;
            if (pos_ < src_.size()) consume_newline();
            return false;
        }
        if (c == '\\' && p + 1 < src_.size() && (src_[p + 1] == '\n' || src_[p + 1] == '\r')) {
            pos_ = p + 1;
            consume_newline();
            return false;
        }
        pos_ = p;
        at_line_start_ = false;
        int col = column();
        if (width > indents_.back()) {
            indents_.push_back(width);
            push(TokenKind::Indent, "", line_, col);
        } else {
            while (width < indents_.back()) {
                indents_.pop_back();
                push(TokenKind::Dedent, "", line_, col);
            }
            if (width != indents_.back()) {
                diags_.warn("python", "inconsistent dedent", SourceLocation{path_, line_, col});
                indents_.push_back(width);
                push(TokenKind::Indent, "", line_, col);
            }
        }
        return true;
    }

    void error_token(const char* message) {
        int col = column();
        diags_.warn("python", message, SourceLocation{path_, line_, col});
        push(TokenKind::Error, std::string(1, src_[pos_]), line_, col);
        ++pos_;
    }

    void lex_token() {
        const int line = line_;
        const int col = column();
        const auto c = static_cast<unsigned char>(src_[pos_]);

        if (is_ident_start(c)) {
            std::size_t p = pos_;
            while (p < src_.size() && is_ident_char(static_cast<unsigned char>(src_[p]))) ++p;
            std::string_view word = src_.substr(pos_, p - pos_);
            if (p < src_.size() && (src_[p] == '\'' || src_[p] == '"') && is_string_prefix(word)) {
                lex_string(p - pos_);
                return;
            }
            pos_ = p;
            push(TokenKind::Name, std::string(word), line, col);
            return;
        }
        if (is_digit(static_cast<char>(c)) ||
            (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
            lex_number();
            return;
        }
        if (c == '\'' || c == '"') {
            lex_string(0);
            return;
        }
        for (auto op : kMultiOps) {
            if (src_.substr(pos_, op.size()) == op) {
                pos_ += op.size();
                push(TokenKind::Op, std::string(op), line, col);
                return;
            }
        }
        static constexpr std::string_view singles = "()[]{},:;.@=+-*/%<>&|^~";
        if (singles.find(static_cast<char>(c)) != std::string_view::npos) {
            if (c == '(' || c == '[' || c == '{') ++depth_;
            if ((c == ')' || c == ']' || c == '}') && depth_ > 0) --depth_;
            ++pos_;
            push(TokenKind::Op, std::string(1, static_cast<char>(c)), line, col);
            return;
        }
        error_token("unexpected character");
    }

    void lex_number() {
        const int line = line_;
        const int col = column();
        std::size_t p = pos_;
        auto digits = [&](auto pred) {
            while (p < src_.size() && (pred(src_[p]) || src_[p] == '_')) ++p;
        };
        if (src_[p] == '0' && p + 1 < src_.size() &&
            std::string_view("xXoObB").find(src_[p + 1]) != std::string_view::npos) {
            p += 2;
            digits([](char ch) { return std::isxdigit(static_cast<unsigned char>(ch)) != 0; });
        } else {
            digits(is_digit);
            if (p < src_.size() && src_[p] == '.') {
                ++p;
                digits(is_digit);
            }
            if (p < src_.size() && (src_[p] == 'e' || src_[p] == 'E')) {
                std::size_t q = p + 1;
                if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) ++q;
                if (q < src_.size() && is_digit(src_[q])) {
                    p = q;
                    digits(is_digit);
                }
            }
            if (p < src_.size() && (src_[p] == 'j' || src_[p] == 'J')) ++p;
        }
        std::string text(src_.substr(pos_, p - pos_));
        pos_ = p;
        push(TokenKind::Number, std::move(text), line, col);
    }

    void lex_string(std::size_t prefix_len) {
        const int line = line_;
        const int col = column();
        const std::size_t start = pos_;
        Token t;
        t.kind = TokenKind::String;
        t.line = line;
        t.column = col;
        t.prefix = text::to_lower_ascii(src_.substr(pos_, prefix_len));
        pos_ += prefix_len;
        const char quote = src_[pos_];
        const bool triple = src_.substr(pos_, 3) == std::string(3, quote);
        pos_ += triple ? 3 : 1;
        t.body_line = line_;
        t.body_column = column();
        const std::size_t body_start = pos_;
        const bool raw = t.prefix.find('r') != std::string::npos;
        std::size_t body_end = std::string_view::npos;

        while (pos_ < src_.size()) {
            char ch = src_[pos_];
            if (ch == '\\') {
                if (pos_ + 1 < src_.size()) {
                    char next = src_[pos_ + 1];
                    if (next == '\n' || next == '\r') {
                        ++pos_;
                        consume_newline();
                        continue;
                    }
                    pos_ += 2;
                    continue;
                }
                ++pos_;
                continue;
            }
            if (ch == '\n' || ch == '\r') {
                if (!triple) break;
                consume_newline();
                continue;
            }
            if (ch == quote) {
                if (!triple) {
                    body_end = pos_;
                    ++pos_;
                    break;
                }
                if (src_.substr(pos_, 3) == std::string(3, quote)) {
                    body_end = pos_;
                    pos_ += 3;
                    break;
                }
            }
            ++pos_;
        }
        (void)raw;
        if (body_end == std::string_view::npos) {
            body_end = pos_;
            t.terminated = false;
            diags_.warn("python", "unterminated string literal", SourceLocation{path_, line, col});
        }
        t.body = std::string(src_.substr(body_start, body_end - body_start));
        t.text = std::string(src_.substr(start, pos_ - start));
        tokens_.push_back(std::move(t));
    }

    std::string_view src_;
    const std::string& path_;
    Diagnostics& diags_;
    std::size_t pos_ = 0;
    std::size_t line_begin_ = 0;
    int line_;
    int line_start_col_;
    bool layout_;
    int depth_ = 0;
    bool at_line_start_ = true;
    bool line_empty_ = true;
    int tok_line_ = 1;
    int tok_col_ = 1;
    std::vector<int> indents_{0};
    std::vector<Token> tokens_;
};

void append_utf8(std::string& out, std::uint32_t cp) {
    out += text::utf8_encode(std::u32string(1, static_cast<char32_t>(cp)));
}

}  // namespace

std::vector<Token> tokenize(std::string_view source, const std::string& path, Diagnostics& diags,
                            int base_line, int base_column, bool emit_layout) {
    return Lexer(source, path, diags, base_line, base_column, emit_layout).run();
}

std::string decode_escapes(std::string_view body, bool is_bytes) {
    std::string out;
    out.reserve(body.size());
    for (std::size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (c == '\r') {
            if (i + 1 < body.size() && body[i + 1] == '\n') continue;
            out.push_back('\n');
            continue;
        }
        if (c != '\\' || i + 1 >= body.size()) {
            out.push_back(c);
            continue;
        }
        char e = body[++i];
        switch (e) {
            case '\n': break;
            case '\r':
                if (i + 1 < body.size() && body[i + 1] == '\n') ++i;
                break;
            case '\\': out.push_back('\\'); break;
            case '\'': out.push_back('\''); break;
            case '"': out.push_back('"'); break;
            case 'a': out.push_back('\a'); break;
            case 'b': out.push_back('\b'); break;
            case 'f': out.push_back('\f'); break;
            case 'n': out.push_back('\n'); break;
            case 'r': out.push_back('\r'); break;
            case 't': out.push_back('\t'); break;
            case 'v': out.push_back('\v'); break;
            case 'x': {
                std::uint32_t v = 0;
                std::size_t n = 0;
                while (n < 2 && i + 1 < body.size() &&
                       std::isxdigit(static_cast<unsigned char>(body[i + 1]))) {
                    v = v * 16 + static_cast<std::uint32_t>(std::stoi(std::string(1, body[++i]), nullptr, 16));
                    ++n;
                }
                if (is_bytes)
                    out.push_back(static_cast<char>(v));
                else
                    append_utf8(out, v);
                break;
            }
            case 'u':
            case 'U': {
                if (is_bytes) {
                    out.push_back('\\');
                    out.push_back(e);
                    break;
                }
                std::size_t want = e == 'u' ? 4 : 8;
                std::uint32_t v = 0;
                std::size_t n = 0;
                while (n < want && i + 1 < body.size() &&
                       std::isxdigit(static_cast<unsigned char>(body[i + 1]))) {
                    v = v * 16 + static_cast<std::uint32_t>(std::stoi(std::string(1, body[++i]), nullptr, 16));
                    ++n;
                }
                append_utf8(out, v);
                break;
            }
            default:
                if (e >= '0' && e <= '7') {
                    std::uint32_t v = static_cast<std::uint32_t>(e - '0');
                    for (int n = 0; n < 2 && i + 1 < body.size() && body[i + 1] >= '0' && body[i + 1] <= '7'; ++n)
                        v = v * 8 + static_cast<std::uint32_t>(body[++i] - '0');
                    if (is_bytes)
                        out.push_back(static_cast<char>(v & 0xFF));
                    else
                        append_utf8(out, v);
                } else {
                    out.push_back('\\');
                    out.push_back(e);
                }
        }
    }
    return out;
}

}  // namespace secrisk::py
