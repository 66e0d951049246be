#ifndef PCARETAIN_ERRORS_HPP
#define PCARETAIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pcaretain {

// Bad user input: malformed files, out-of-range parameters, shape mismatches.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Numerically degenerate input: zero total variance, indefinite matrices, ...
class DegeneracyError : public std::runtime_error {
 public:
  explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pcaretain

#endif
