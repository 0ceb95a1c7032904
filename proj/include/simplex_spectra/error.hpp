#pragma once

#include <stdexcept>
#include <string>

namespace simplex_spectra {

// Bad parameters: d, n, p out of range, malformed words, unknown distribution...
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A size or work budget would be exceeded (dense cap, walk budget, overflow).
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace simplex_spectra
