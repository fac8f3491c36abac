#pragma once

#include <stdexcept>
#include <string>

namespace percept {

// File / record / schema problems. The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Endpoint / transport problems (auth, network, malformed body). Exit code 3.
class ProviderError : public std::runtime_error {
public:
    explicit ProviderError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace percept
