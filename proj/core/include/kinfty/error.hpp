#pragma once

#include <stdexcept>
#include <string>

namespace kinfty {

/// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad text, unknown names, violated preconditions on data.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input whose evaluation cannot proceed (unbound variable,
/// missing supremum, inconsistent join, truncation overflow).
class SemanticError : public Error {
 public:
  using Error::Error;
};

/// A computation needed a tower level above the configured truncation N.
class TruncationOverflow : public SemanticError {
 public:
  TruncationOverflow(int needed_level, int max_level)
      : SemanticError("tower level " + std::to_string(needed_level) +
                      " required but truncation is N=" +
                      std::to_string(max_level) + "; raise N"),
        needed_level_(needed_level),
        max_level_(max_level) {}

  int needed_level() const noexcept { return needed_level_; }
  int max_level() const noexcept { return max_level_; }

 private:
  int needed_level_;
  int max_level_;
};

}  // namespace kinfty
