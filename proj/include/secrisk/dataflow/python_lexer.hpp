#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "secrisk/common/diagnostics.hpp"

namespace secrisk::py {

enum class TokenKind { Name, Number, String, Op, Newline, Indent, Dedent, End, Error };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;  // raw source text of the token
    int line = 1;
    int column = 1;

    // String tokens only.
    std::string prefix;  // lower-cased prefix letters
    std::string body;    // raw text between the quotes
    int body_line = 1;
    int body_column = 1;
    bool terminated = true;
};

/// Tokenizes Python source. Never throws; lexical problems are reported to
/// `diags` and the scanner resynchronizes at the next line. `base_line` and
/// `base_column` offset positions when lexing an embedded fragment.
std::vector<Token> tokenize(std::string_view source, const std::string& path, Diagnostics& diags,
                            int base_line = 1, int base_column = 1, bool emit_layout = true);

/// Decodes backslash escapes of a non-raw literal body.
std::string decode_escapes(std::string_view body, bool is_bytes);

}  // namespace secrisk::py
