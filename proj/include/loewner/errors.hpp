#pragma once

#include <stdexcept>
#include <string>

namespace loewner {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Raised when a spectrum (or scalar argument) leaves a function's domain.
class DomainViolation : public Error {
 public:
  DomainViolation(const std::string& what, double offending)
      : Error(what), offending_(offending) {}
  double offending() const noexcept { return offending_; }

 private:
  double offending_;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class DegenerateInterval : public Error {
 public:
  using Error::Error;
};

class UnknownKind : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ExhaustedRetries : public Error {
 public:
  using Error::Error;
};

class HypothesisViolation : public Error {
 public:
  HypothesisViolation(std::string condition, const std::string& detail)
      : Error(condition + ": " + detail), condition_(std::move(condition)) {}
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownRelaxation : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& detail)
      : Error(field + ": " + detail), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace loewner
