#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace spinorbit {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All four amplitudes of a mode were zero.
class ZeroModeError : public Error {
 public:
  ZeroModeError() : Error("spin-orbit mode has zero norm") {}
};

/// An intensity record whose total intensity is zero.
class DegenerateRecordError : public Error {
 public:
  using Error::Error;
};

/// Input data that violates a schema or a physical constraint. Carries the
/// offending row and column when the data came from a file.
class MalformedDataError : public Error {
 public:
  explicit MalformedDataError(const std::string& what,
                              std::optional<std::size_t> row = std::nullopt,
                              std::optional<std::string> column = std::nullopt)
      : Error(decorate(what, row, column)), detail_(what), row_(row), column_(std::move(column)) {}

  /// Message without the row/column suffix.
  const std::string& detail() const { return detail_; }
  std::optional<std::size_t> row() const { return row_; }
  const std::optional<std::string>& column() const { return column_; }

 private:
  static std::string decorate(const std::string& what, std::optional<std::size_t> row,
                              const std::optional<std::string>& column) {
    std::string out = what;
    if (row) out += " (row " + std::to_string(*row);
    if (column) out += (row ? ", column " : " (column ") + *column;
    if (row || column) out += ")";
    return out;
  }

  std::string detail_;
  std::optional<std::size_t> row_;
  std::optional<std::string> column_;
};

/// An experiment table missing one of its four contexts.
class IncompleteTableError : public Error {
 public:
  using Error::Error;
};

/// The feasibility solver could not reach a trustworthy answer.
class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& what, double max_residual, double phase_one_objective)
      : Error(what + " (max residual " + std::to_string(max_residual) + ", phase-one objective " +
              std::to_string(phase_one_objective) + ")"),
        max_residual_(max_residual),
        phase_one_objective_(phase_one_objective) {}

  double max_residual() const { return max_residual_; }
  double phase_one_objective() const { return phase_one_objective_; }

 private:
  double max_residual_;
  double phase_one_objective_;
};

/// Bad command line, unknown preset, or invalid configuration value.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace spinorbit
