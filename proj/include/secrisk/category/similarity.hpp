#pragma once

#include <string_view>

namespace secrisk {

/// Jaro similarity over bytes.
double jaro(std::string_view a, std::string_view b);

/// Jaro-Winkler with prefix scale 0.1 over at most four characters, applied
/// only when the Jaro score exceeds 0.7.
double jaro_winkler(std::string_view a, std::string_view b);

/// Ratcliff-Obershelp ratio 2*M/T, where M counts characters in the
/// recursively found longest common blocks. Elements of `b` occurring more
/// than len(b)/100 + 1 times are ignored as block seeds once len(b) >= 200.
double ratcliff_obershelp(std::string_view a, std::string_view b);

}  // namespace secrisk
