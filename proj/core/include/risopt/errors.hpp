#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace risopt {

// Input violates a documented physical or numerical domain (out-of-range
// capacitance, non-positive frequency, geometry outside the design box, ...).
class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A denominator fell below the singularity guard and the result would be
// meaningless.  Carries no recovery hint on purpose: callers are expected to
// treat the operating point as unusable.
class singularity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// API misuse: mismatched array lengths, empty spans, calls that violate a
// stated precondition independent of the numeric values involved.
class contract_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed text input (dataset line, model file, coding sequence).  The
// position is a 1-based line number for files and a 0-based character index
// for in-memory strings; the message spells out which.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& message, std::size_t position)
      : std::runtime_error(message), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_ = 0;
};

}  // namespace risopt
