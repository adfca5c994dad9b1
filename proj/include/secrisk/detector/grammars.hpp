#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "secrisk/detector/types.hpp"

namespace secrisk {

enum class GrammarGroup { UrlStyle, KeyValueStyle, JdbcStyle };

const char* to_string(GrammarGroup g);

/// One connection-string format.
///
/// `pattern` is a Perl-syntax regular expression with named groups among
/// scheme, user, password, host, port, db. A group name with a suffix after
/// an underscore (`password_braced`) is an alternative spelling of the same
/// field. `render_template` rebuilds a matching string from fields: `{name}`
/// substitutes a field, `[...]` is dropped when any field inside it is
/// empty, and a backslash escapes the next character.
struct ConnectionStringGrammar {
    std::string name;
    GrammarGroup group = GrammarGroup::UrlStyle;
    std::string pattern;
    DbType db_type_hint = DbType::Unknown;
    std::string render_template;
};

/// Built-in grammars, in the order they are tried.
const std::vector<ConnectionStringGrammar>& default_grammars();

/// Fields captured from one match. Offsets are byte positions in the
/// scanned text; `password` is absent when the format carries no secret.
struct ConnectionMatch {
    const ConnectionStringGrammar* grammar = nullptr;
    std::size_t begin = 0;
    std::size_t end = 0;
    std::map<std::string, std::string> fields;  // only non-empty captures
    std::size_t host_offset = 0;
    std::size_t password_offset = 0;
    DbType db_type = DbType::Unknown;

    std::optional<std::string> field(const std::string& name) const;
};

/// Compiled grammar list; construction throws secrisk::Error when a pattern
/// does not compile or lacks the password and host groups.
class GrammarMatcher {
public:
    explicit GrammarMatcher(std::vector<ConnectionStringGrammar> grammars = default_grammars());
    ~GrammarMatcher();
    GrammarMatcher(GrammarMatcher&&) noexcept;
    GrammarMatcher& operator=(GrammarMatcher&&) noexcept;

    const std::vector<ConnectionStringGrammar>& grammars() const;

    /// Non-overlapping matches ordered by position; at each position the
    /// longest match wins, then the earlier grammar.
    std::vector<ConnectionMatch> match(std::string_view text) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::string render(const ConnectionStringGrammar& grammar, const std::map<std::string, std::string>& fields);

/// Pairs for every match that carries both a password and a host.
std::vector<SecretAssetPair> match_connection_strings(std::string_view file_text, const std::string& path,
                                                      const GrammarMatcher& matcher);
std::vector<SecretAssetPair> match_connection_strings(std::string_view file_text, const std::string& path,
                                                      const std::vector<ConnectionStringGrammar>& grammars);

/// 1-based line and column of a byte offset.
SourceLocation location_of(std::string_view text, std::size_t offset, const std::string& path);

}  // namespace secrisk
