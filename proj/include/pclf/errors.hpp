#pragma once

#include <stdexcept>
#include <string>

namespace pclf {

/// Malformed input or a violated precondition (bad label, dimension mismatch, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A desk-scale cap (power-set size, product count, graph size) was exceeded.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// The LP solver or an iterative routine failed (iteration cap, internal inconsistency).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pclf
