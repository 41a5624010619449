#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace forge {

// Base of every error raised by the pipeline. name() is the stable error
// identifier reported by the CLI and the HTTP service.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& detail)
      : std::runtime_error(detail), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define FORGE_DEFINE_ERROR(Type)                                   \
  class Type : public Error {                                      \
   public:                                                         \
    explicit Type(const std::string& detail) : Error(#Type, detail) {} \
  }

// rdf-core
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, std::string token,
              const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& token() const noexcept { return token_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string token_;
};
FORGE_DEFINE_ERROR(UnknownPrefixError);
FORGE_DEFINE_ERROR(InvalidTermError);

// vocab
FORGE_DEFINE_ERROR(CyclicHierarchyError);
FORGE_DEFINE_ERROR(UnknownClassError);
FORGE_DEFINE_ERROR(MalformedIndicatorError);

// ccsv
FORGE_DEFINE_ERROR(MissingSeparatorError);
FORGE_DEFINE_ERROR(BindingError);
FORGE_DEFINE_ERROR(CsvSyntaxError);
FORGE_DEFINE_ERROR(DuplicateDocumentError);
FORGE_DEFINE_ERROR(ProvenanceShapeError);

class RowWidthError : public Error {
 public:
  RowWidthError(std::size_t row, std::size_t expected, std::size_t actual);

  std::size_t row() const noexcept { return row_; }
  std::size_t expected() const noexcept { return expected_; }
  std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t row_;
  std::size_t expected_;
  std::size_t actual_;
};

struct DanglingReference {
  std::string document;
  std::string column;
  std::size_t row = 0;
  std::string missing_id;
};

class DanglingReferenceError : public Error {
 public:
  explicit DanglingReferenceError(std::vector<DanglingReference> references);

  const std::vector<DanglingReference>& references() const noexcept {
    return references_;
  }

 private:
  std::vector<DanglingReference> references_;
};

// ingest
FORGE_DEFINE_ERROR(IncompleteCharacterizationError);
FORGE_DEFINE_ERROR(InvalidCharacterizationError);
FORGE_DEFINE_ERROR(HeaderMismatchError);
FORGE_DEFINE_ERROR(UnknownPropertyError);
FORGE_DEFINE_ERROR(DuplicateIdentifierError);
FORGE_DEFINE_ERROR(MappingError);

// kg-serializer
FORGE_DEFINE_ERROR(EmptyKgError);
FORGE_DEFINE_ERROR(MixedObjectTypesError);
FORGE_DEFINE_ERROR(UnidentifiableObjectError);

// dashboard-engine
FORGE_DEFINE_ERROR(UnresolvableBindingError);
FORGE_DEFINE_ERROR(UnknownColumnError);
FORGE_DEFINE_ERROR(InvalidFilterError);

class NonNumericCellError : public Error {
 public:
  NonNumericCellError(std::size_t row, std::string column,
                      const std::string& cell);

  std::size_t row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::string column_;
};

// api-service
FORGE_DEFINE_ERROR(ConfigError);
FORGE_DEFINE_ERROR(NotFoundError);
FORGE_DEFINE_ERROR(ConflictError);

#undef FORGE_DEFINE_ERROR

}  // namespace forge
