#pragma once

#include <stdexcept>
#include <string>

namespace mtsearch {

// Malformed problem description: bad target count, out-of-range or duplicate
// target indices, catalog too large to embed.
class SpecError : public std::invalid_argument {
 public:
  explicit SpecError(const std::string& what) : std::invalid_argument(what) {}
};

// Argument outside the mathematical domain of a closed form (rho not in
// (1/4, 1], q above the cap, prefix length out of range).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Request exceeds what the dense simulator or the recursive expansion accepts.
class SizeGateError : public std::length_error {
 public:
  explicit SizeGateError(const std::string& what) : std::length_error(what) {}
};

// Exact integer count does not fit in 64 bits.
class OverflowError : public std::overflow_error {
 public:
  explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

}  // namespace mtsearch
