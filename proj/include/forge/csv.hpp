#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace forge::csv {

using Row = std::vector<std::string>;

// RFC-4180 style records: comma delimiter, double-quote quoting with ""
// escapes, fields may span lines when quoted. Accepts "\n" or "\r\n" record
// terminators. Empty lines carry no record. Throws CsvSyntaxError.
std::vector<Row> parse(std::string_view text, std::size_t first_line = 1);

// Quotes a field only when needed. A row holding a single empty field is
// written as "" so that it never becomes an empty line.
void write_row(std::string& out, std::span<const std::string> row);

std::string write(std::span<const Row> rows);

}  // namespace forge::csv
