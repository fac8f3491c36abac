#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace percept {

// Minimal CSV support: comma separator, double-quote quoting with "" escapes,
// LF or CRLF line endings. Enough for the file formats this project emits and
// consumes; not a general spreadsheet parser.

// Parses one logical record. Reads additional physical lines when a quoted
// field spans a newline. Returns false at end of input.
bool read_csv_row(std::istream& in, std::vector<std::string>& fields);

// Reads a whole file; throws DataError if the file cannot be opened.
std::vector<std::vector<std::string>> read_csv_file(const std::string& path);

std::string csv_escape(std::string_view field);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace percept
