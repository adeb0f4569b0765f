#pragma once

#include <stdexcept>
#include <string>

namespace wonc {

// Eigensolver or root finder failed to converge within its iteration cap.
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// A request would exceed a hard enumeration bound (e.g. 2^K sign patterns).
struct resource_limit_error : std::runtime_error {
  explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wonc
