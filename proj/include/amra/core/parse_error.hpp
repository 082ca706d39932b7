#pragma once

#include <stdexcept>
#include <string>

namespace amra {

/// Parse failure positioned at a 1-based line and column (column 0 when the
/// whole line is at fault).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + (column > 0 ? ", column " + std::to_string(column) : "") +
                           ": " + what),
        line_(line),
        column_(column) {}

  [[nodiscard]] int line() const noexcept { return line_; }
  [[nodiscard]] int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace amra
