#include "forge/error.hpp"

namespace forge {

SyntaxError::SyntaxError(std::size_t line, std::size_t column,
                         std::string token, const std::string& message)
    : Error("SyntaxError", "line " + std::to_string(line) + ", column " +
                               std::to_string(column) + ": " + message +
                               " near '" + token + "'"),
      line_(line),
      column_(column),
      token_(std::move(token)) {}

RowWidthError::RowWidthError(std::size_t row, std::size_t expected,
                             std::size_t actual)
    : Error("RowWidthError", "row " + std::to_string(row) + " has " +
                                 std::to_string(actual) + " cells, expected " +
                                 std::to_string(expected)),
      row_(row),
      expected_(expected),
      actual_(actual) {}

namespace {

std::string describe(const std::vector<DanglingReference>& refs) {
  std::string out;
  for (const auto& r : refs) {
    if (!out.empty()) out += "; ";
    out += r.document + "." + r.column + " row " + std::to_string(r.row) +
           " -> '" + r.missing_id + "'";
  }
  return out;
}

}  // namespace

DanglingReferenceError::DanglingReferenceError(
    std::vector<DanglingReference> references)
    : Error("DanglingReferenceError", describe(references)),
      references_(std::move(references)) {}

NonNumericCellError::NonNumericCellError(std::size_t row, std::string column,
                                         const std::string& cell)
    : Error("NonNumericCellError", "row " + std::to_string(row) + ", column " +
                                       column + ": '" + cell +
                                       "' is not numeric"),
      row_(row),
      column_(std::move(column)) {}

}  // namespace forge
