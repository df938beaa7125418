#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hcalc {

// Input fails a structural precondition (bad arity, shape, range).
class validation_error : public std::runtime_error {
public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// A move was requested whose preconditions do not hold.
class move_error : public std::runtime_error {
public:
  explicit move_error(const std::string& what) : std::runtime_error(what) {}
};

// A bounded procedure ran out of its step budget before finishing.
class budget_error : public std::runtime_error {
public:
  explicit budget_error(const std::string& what, std::size_t spent)
      : std::runtime_error(what), spent_(spent) {}
  std::size_t spent() const { return spent_; }

private:
  std::size_t spent_ = 0;
};

// A construction is outside the supported fragment.
class unsupported_error : public std::runtime_error {
public:
  explicit unsupported_error(const std::string& what) : std::runtime_error(what) {}
};

// Text input that cannot be parsed. Positions are 1-based.
class parse_error : public std::runtime_error {
public:
  parse_error(const std::string& what, std::size_t line, std::size_t col)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + what),
        line_(line), col_(col) {}
  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

private:
  std::size_t line_ = 0;
  std::size_t col_ = 0;
};

} // namespace hcalc
