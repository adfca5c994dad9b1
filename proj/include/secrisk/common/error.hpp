#pragma once

#include <stdexcept>
#include <string>

namespace secrisk {

/// Fatal configuration or I/O failure. Everything recoverable goes through
/// Diagnostics instead.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace secrisk
