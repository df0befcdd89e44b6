#pragma once

#include <string>
#include <vector>

namespace taskvec::pipeline {

// Pipe-delimited rows in the dialect the generator is instructed to emit:
// a field containing '|', '"' or a newline is wrapped in double quotes, and
// embedded quotes are doubled. Quoted fields may span lines.

// Escape one field for rendering.
std::string escape_field(const std::string& field);

// Join escaped fields with '|'.
std::string render_row(const std::vector<std::string>& fields);

std::string render_rows(const std::vector<std::vector<std::string>>& rows);

// Parse a whole document into rows, honoring quoting. A quote is only an
// opener at field start; a closing quote must be followed by '|', a row end,
// or another quote (escape), anything else is a parse error naming the row.
std::vector<std::vector<std::string>> parse_rows(const std::string& text);

// Split one line on every pipe with no quote handling. Used where the
// producing prompt forbids quotes, so stray quotes stay literal.
std::vector<std::string> split_plain(const std::string& line);

}  // namespace taskvec::pipeline
