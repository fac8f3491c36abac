#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace percept {

// Shortest round-trip decimal form of a double. Integral values get a
// trailing ".0" so that "440 Hz" renders as "440.0 Hz" and emitted CSV
// numbers re-parse to the identical bit pattern.
std::string format_double(double value);

std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);

// Lowercase folding for ASCII A-Z plus the Cyrillic block used by the
// Russian color terms (А-Я, Ё). Other bytes pass through unchanged.
std::string fold_case(std::string_view text);

std::string trim(std::string_view text);

// 64-bit FNV-1a, used for response-cache keys.
std::uint64_t fnv1a64(std::string_view data);
std::string to_hex(std::uint64_t value);

}  // namespace percept
