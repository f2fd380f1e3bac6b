#ifndef BANACHLAB_ERRORS_HPP
#define BANACHLAB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace banachlab {

// Precondition on a numeric argument violated (p < 1, x < 1 for a gauge, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed or inconsistent argument (unsorted grid, overlapping blocks, bad literal).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A descriptor that the requested operation cannot evaluate.
class UnsupportedSpaceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SizeCapError : public std::runtime_error {
 public:
  SizeCapError(std::size_t size, std::size_t cap)
      : std::runtime_error("support size " + std::to_string(size) + " exceeds cap " +
                           std::to_string(cap) + "; rerun with cap >= " + std::to_string(size)),
        size_(size),
        cap_(cap) {}

  std::size_t size() const noexcept { return size_; }
  std::size_t cap() const noexcept { return cap_; }
  std::size_t suggested_cap() const noexcept { return size_; }

 private:
  std::size_t size_;
  std::size_t cap_;
};

// Iterative evaluation stopped before the bracket closed; carries the best bounds found.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double lower, double upper)
      : std::runtime_error(what), lower_(lower), upper_(upper) {}

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

}  // namespace banachlab

#endif  // BANACHLAB_ERRORS_HPP
