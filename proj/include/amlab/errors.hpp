#ifndef AMLAB_ERRORS_HPP
#define AMLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace amlab {

// Caller broke a documented precondition (bad parameters, mismatched ambients).
class usage_error : public std::invalid_argument {
 public:
  explicit usage_error(std::string const& what) : std::invalid_argument(what) {}
};

// A certificate the library computes did not hold.
class invariant_violation : public std::logic_error {
 public:
  explicit invariant_violation(std::string const& what) : std::logic_error(what) {}
};

// A computation ran past its resource limit.
class budget_exceeded : public std::runtime_error {
 public:
  explicit budget_exceeded(std::string const& what) : std::runtime_error(what) {}
};

}  // namespace amlab

#endif  // AMLAB_ERRORS_HPP
