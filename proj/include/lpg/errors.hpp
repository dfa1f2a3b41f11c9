#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace lpg {

// A configured size bound on an enumeration or search was exceeded. The
// caller reports this as inconclusive rather than as a failure.
class GuardExceeded : public std::runtime_error {
 public:
  GuardExceeded(const std::string& what, std::optional<std::uint64_t> exact_count = std::nullopt)
      : std::runtime_error(what), exact_count_(exact_count) {}
  std::optional<std::uint64_t> exact_count() const { return exact_count_; }

 private:
  std::optional<std::uint64_t> exact_count_;
};

// A statement that must hold by construction failed. Raised instead of
// returning a wrong answer.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The operation requires p != 2.
class ExcludedExponent : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace lpg
