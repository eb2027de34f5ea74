#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gmeef {

// Parameter outside its documented domain (alpha <= 0, lambda > 1, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EmptyInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Codebook counts or memberships that do not describe the window they are
// paired with.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The GGD score |e|^(alpha-1) diverges at e = 0 when alpha < 1.
class SingularScoreError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NumericFailure : public std::runtime_error {
 public:
  NumericFailure(const std::string& what, std::size_t iteration)
      : std::runtime_error(what + " at iteration " + std::to_string(iteration)),
        iteration_(iteration) {}

  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

// Kernel-recursive update whose Schur complement r_L is too small to invert.
// The model is left untouched when this is thrown.
class IllConditionedUpdate : public std::runtime_error {
 public:
  IllConditionedUpdate(const std::string& what, double r)
      : std::runtime_error(what), r_(r) {}

  double r() const noexcept { return r_; }

 private:
  double r_;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace gmeef
