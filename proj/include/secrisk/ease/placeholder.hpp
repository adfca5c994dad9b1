#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "secrisk/common/diagnostics.hpp"
#include "secrisk/ease/providers.hpp"

namespace secrisk {

enum class PlaceholderVerdict { Placeholder, Real, Undecided };

/// Rule pass. Placeholder: template markers, all-same-character addresses
/// such as x.x.x.x or 0.0.0.0, a label or hyphen part from the placeholder
/// word list, or only test/testing labels before the top label. Real: valid
/// IP literals and localhost names. Everything else is Undecided.
PlaceholderVerdict rule_placeholder(std::string_view host);

/// Rules first; an Undecided DNS name goes to the oracle when one is
/// given. Oracle failures fall back to the rule result (not a placeholder)
/// and are recorded.
bool detect_placeholder(std::string_view host, std::string_view context, const PlaceholderOracle* oracle,
                        Diagnostics& diags);

struct ChatPrompt {
    std::string system;
    std::string user;
    double temperature = 0.2;
};

/// Few-shot prompt with one dummy and one real host, each shown inside a
/// code snippet, followed by the host to judge and its surrounding lines.
/// The expected answer is YES or NO.
ChatPrompt placeholder_prompt(std::string_view host, std::string_view context);

/// YES/NO parsing of a model answer, tolerant of case, punctuation and
/// surrounding prose; nullopt when neither or both appear.
std::optional<bool> parse_yes_no(std::string_view answer);

}  // namespace secrisk
