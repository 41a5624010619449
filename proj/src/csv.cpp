#include "forge/csv.hpp"

#include "forge/error.hpp"

namespace forge::csv {

std::vector<Row> parse(std::string_view text, std::size_t first_line) {
  std::vector<Row> rows;
  Row row;
  std::string field;
  std::size_t line = first_line;
  std::size_t i = 0;
  bool row_started = false;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
  };
  auto end_row = [&] {
    if (row_started) {
      end_field();
      rows.push_back(std::move(row));
      row.clear();
    }
    row_started = false;
  };

  while (i < text.size()) {
    char c = text[i];
    if (c == '"' && field.empty() &&
        (!row_started || (i > 0 && text[i - 1] == ','))) {
      row_started = true;
      std::size_t open_line = line;
      ++i;
      while (true) {
        if (i >= text.size()) {
          throw CsvSyntaxError("line " + std::to_string(open_line) +
                               ": unterminated quoted field");
        }
        char q = text[i];
        if (q == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            field += '"';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        if (q == '\n') ++line;
        field += q;
        ++i;
      }
      if (i < text.size() && text[i] != ',' && text[i] != '\n' &&
          !(text[i] == '\r' && i + 1 < text.size() && text[i + 1] == '\n')) {
        throw CsvSyntaxError("line " + std::to_string(line) +
                             ": unexpected character after closing quote");
      }
      continue;
    }
    if (c == ',') {
      row_started = true;
      end_field();
      ++i;
    } else if (c == '\n') {
      end_row();
      ++line;
      ++i;
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      end_row();
      ++line;
      i += 2;
    } else {
      if (c == '"') {
        throw CsvSyntaxError("line " + std::to_string(line) +
                             ": quote inside unquoted field");
      }
      row_started = true;
      field += c;
      ++i;
    }
  }
  end_row();
  return rows;
}

namespace {

bool needs_quotes(std::string_view field) {
  return field.find_first_of(",\"\r\n") != std::string_view::npos;
}

}  // namespace

void write_row(std::string& out, std::span<const std::string> row) {
  if (row.size() == 1 && row.front().empty()) {
    out += "\"\"\n";
    return;
  }
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i > 0) out += ',';
    const std::string& f = row[i];
    if (!needs_quotes(f)) {
      out += f;
      continue;
    }
    out += '"';
    for (char c : f) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
  }
  out += '\n';
}

std::string write(std::span<const Row> rows) {
  std::string out;
  for (const auto& r : rows) write_row(out, r);
  return out;
}

}  // namespace forge::csv
