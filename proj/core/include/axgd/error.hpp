#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace axgd {

// Precondition violated by the caller (bad dimension, parameter out of range).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation left the finite reals, or hit a point where the mirror map
// is undefined (entropy boundary).
class NumericDomainError : public std::runtime_error {
 public:
  explicit NumericDomainError(const std::string& what,
                              std::optional<long> iteration = std::nullopt)
      : std::runtime_error(iteration ? what + " (iteration " +
                                           std::to_string(*iteration) + ")"
                                     : what),
        iteration_(iteration) {}

  std::optional<long> iteration() const { return iteration_; }

 private:
  std::optional<long> iteration_;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Carries every violation found while validating a configuration document.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations)
      : std::runtime_error(Join(violations)),
        violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string Join(const std::vector<std::string>& v) {
    std::string out = "invalid configuration:";
    for (const auto& s : v) out += "\n  " + s;
    return out;
  }
  std::vector<std::string> violations_;
};

}  // namespace axgd
