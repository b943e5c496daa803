#ifndef TERMKIT_ERRORS_HPP
#define TERMKIT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace termkit {

// Malformed input data. line() is 1-based; 0 means "not line-oriented".
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what
                                : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Inconsistent or incomplete configuration (missing files, bad flag
// combinations, thresholds out of range).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke a documented contract (overlapping matches, empty
// sequences where non-empty ones are required).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace termkit

#endif
