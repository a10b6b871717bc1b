#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace testability {

/// Base of every error raised by the library. `kind()` is a stable,
/// machine-readable tag ("ParseError", "BadCell", ...).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define TESTABILITY_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  };

// java-metrics-extractor
TESTABILITY_DEFINE_ERROR(DuplicateClass)
TESTABILITY_DEFINE_ERROR(CyclicHierarchy)

// classfile-reader
TESTABILITY_DEFINE_ERROR(MalformedClassFile)
TESTABILITY_DEFINE_ERROR(UnsupportedMajorVersion)

// dataset-pipeline
TESTABILITY_DEFINE_ERROR(MissingColumn)
TESTABILITY_DEFINE_ERROR(DuplicateRecord)
TESTABILITY_DEFINE_ERROR(TooFewValues)
TESTABILITY_DEFINE_ERROR(DegenerateSplit)
TESTABILITY_DEFINE_ERROR(ForbiddenFeature)
TESTABILITY_DEFINE_ERROR(UnknownMetric)

// rank-statistics
TESTABILITY_DEFINE_ERROR(DegenerateInput)
TESTABILITY_DEFINE_ERROR(LengthMismatch)

// classifiers
TESTABILITY_DEFINE_ERROR(SingleClassInput)
TESTABILITY_DEFINE_ERROR(DimensionMismatch)
TESTABILITY_DEFINE_ERROR(TooFewPerClass)
TESTABILITY_DEFINE_ERROR(ModelFormatError)

#undef TESTABILITY_DEFINE_ERROR

/// Malformed or unsupported Java source.
class ParseError : public Error {
 public:
  ParseError(std::string file, int line, int column, const std::string& what)
      : Error("ParseError", file + ":" + std::to_string(line) + ":" +
                                std::to_string(column) + ": " + what),
        file_(std::move(file)),
        line_(line),
        column_(column) {}

  const std::string& file() const noexcept { return file_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  std::string file_;
  int line_;
  int column_;
};

/// A metric cell that is not a finite number.
class BadCell : public Error {
 public:
  BadCell(std::size_t row, std::string column, std::string content)
      : Error("BadCell", "row " + std::to_string(row) + ", column " + column +
                             ": bad value '" + content + "'"),
        row_(row),
        column_(std::move(column)),
        content_(std::move(content)) {}

  std::size_t row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }
  const std::string& content() const noexcept { return content_; }

 private:
  std::size_t row_;
  std::string column_;
  std::string content_;
};

/// MLP training diverged.
class NonFiniteLoss : public Error {
 public:
  explicit NonFiniteLoss(int epoch)
      : Error("NonFiniteLoss",
              "loss became non-finite at epoch " + std::to_string(epoch)),
        epoch_(epoch) {}

  int epoch() const noexcept { return epoch_; }

 private:
  int epoch_;
};

}  // namespace testability
