#pragma once

#include <stdexcept>
#include <string>

namespace cohesive {

// Base for every error raised by the library. Callers that only care about
// "something in the cohesive stack failed" catch this.
class CohesiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NegativeOpening : public CohesiveError {
 public:
  using CohesiveError::CohesiveError;
};

class LambdaOutOfRange : public CohesiveError {
 public:
  using CohesiveError::CohesiveError;
};

class NoRoot : public CohesiveError {
 public:
  using CohesiveError::CohesiveError;
};

class DegenerateHistory : public CohesiveError {
 public:
  using CohesiveError::CohesiveError;
};

class InvalidParameter : public CohesiveError {
 public:
  using CohesiveError::CohesiveError;
};

class IncompatibleLaws : public CohesiveError {
 public:
  using CohesiveError::CohesiveError;
};

class SingularOperator : public CohesiveError {
 public:
  using CohesiveError::CohesiveError;
};

class BoundaryMismatch : public CohesiveError {
 public:
  using CohesiveError::CohesiveError;
};

class NonConvergence : public CohesiveError {
 public:
  using CohesiveError::CohesiveError;
};

class FixedPointStall : public CohesiveError {
 public:
  using CohesiveError::CohesiveError;
};

// Malformed configuration file; carries the offending key and line.
class ConfigError : public CohesiveError {
 public:
  ConfigError(const std::string& message, std::string key = {}, int line = 0)
      : CohesiveError(line > 0 ? "line " + std::to_string(line) + ": " + message
                               : message),
        key_(std::move(key)),
        line_(line) {}

  const std::string& key() const { return key_; }
  int line() const { return line_; }

  // Same error, message prefixed with the file it came from.
  ConfigError in_file(const std::string& path) const {
    return ConfigError(path + ": " + what(), key_, line_, 0);
  }

 private:
  ConfigError(const std::string& full, std::string key, int line, int)
      : CohesiveError(full), key_(std::move(key)), line_(line) {}

  std::string key_;
  int line_;
};

}  // namespace cohesive
