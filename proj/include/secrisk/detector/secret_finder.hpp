#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "secrisk/common/source_location.hpp"

namespace secrisk {

/// A secret reported by the discovery front end (built-in or external).
struct SecretCandidate {
    std::string secret;
    SourceLocation location;
    std::string variable;

    bool operator==(const SecretCandidate&) const = default;
};

struct SecretFinderOptions {
    double min_entropy = 3.5;
    std::size_t min_length = 6;
};

/// A literal assignment `name = value` found on one line. Covers Python and
/// shell assignments, keyword arguments, dict/JSON/YAML entries, and
/// unquoted `KEY=value` lines of config files.
struct Assignment {
    std::string name;
    std::string value;
    int line = 1;
    int name_column = 1;
    int value_column = 1;
};

/// Literal assignments on one line, left to right. `allow_unquoted` also
/// accepts bare values (config formats).
std::vector<Assignment> find_assignments(std::string_view line, int line_number, bool allow_unquoted);

/// True for file names whose assignments may carry unquoted values.
bool is_config_file(std::string_view path);

/// Built-in detector: literal assignments whose variable names a secret.
/// Password-like names (pass, pwd) accept any non-empty value; other secret
/// names (secret, token, key, credential) need the entropy and length bound.
std::vector<SecretCandidate> find_secrets(std::string_view file_text, const std::string& path,
                                          const SecretFinderOptions& options = {});

bool is_password_name(std::string_view name);
bool is_secret_name(std::string_view name);

}  // namespace secrisk
