#pragma once

#include <stdexcept>
#include <string>

namespace latdiff {

/// Raised when an input violates a documented precondition.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration error naming the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& constraint)
      : Error(key + ": " + constraint), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace latdiff
