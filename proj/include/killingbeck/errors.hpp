#pragma once

#include <stdexcept>
#include <string>

// Error taxonomy. Standard exceptions are used where their meaning fits
// (std::domain_error for trial energies outside the method's validity
// region, std::overflow_error for coefficient overflow, std::invalid_argument
// for precondition violations). The named subclasses below mark numeric
// failure modes a caller may want to handle distinctly. A missing root is
// not an error: scans return an empty list plus diagnostics.

namespace kb {

// series recurrence denominator (n+2)(n+2P+1) vanished for some n >= -1
struct degenerate_index_error : std::runtime_error {
  explicit degenerate_index_error(const std::string& msg) : std::runtime_error(msg) {}
};

// the quadratic tail coefficient is non-positive: no confining r^2 tail, so
// the shooting boundary conditions do not exist and the oracle refuses
struct invalid_asymptotics : std::runtime_error {
  explicit invalid_asymptotics(const std::string& msg) : std::runtime_error(msg) {}
};

// an integration step produced a non-finite value
struct integration_blowup : std::runtime_error {
  explicit integration_blowup(const std::string& msg) : std::runtime_error(msg) {}
};

// no residual variant reproduces the built-in reference tables
struct selection_failure : std::runtime_error {
  explicit selection_failure(const std::string& msg) : std::runtime_error(msg) {}
};

// every scan subinterval raised a domain error; nothing could be evaluated
struct domain_everywhere_invalid : std::runtime_error {
  explicit domain_everywhere_invalid(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace kb
