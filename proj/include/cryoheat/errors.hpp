#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cryoheat {

// Base of every error raised by the library. Callers that only need a
// message can catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TemperatureOutOfRange : public Error {
 public:
  TemperatureOutOfRange(const std::string& model, double temperature_K);
  double temperature_K() const { return temperature_K_; }

 private:
  double temperature_K_;
};

class IntegrationFailure : public Error {
 public:
  using Error::Error;
};

class InvalidModel : public Error {
 public:
  using Error::Error;
};

class UnknownMaterial : public Error {
 public:
  explicit UnknownMaterial(const std::string& name)
      : Error("unknown material '" + name + "'") {}
};

class EmptyAfterFilter : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

class UnknownStage : public Error {
 public:
  explicit UnknownStage(const std::string& name)
      : Error("unknown fridge stage '" + name + "'") {}
};

class InvalidAttenuation : public Error {
 public:
  using Error::Error;
};

class NoTargetCurrent : public Error {
 public:
  using Error::Error;
};

class CapacityExceeded : public Error {
 public:
  CapacityExceeded(std::size_t required, std::size_t available);
  std::size_t required() const { return required_; }
  std::size_t available() const { return available_; }

 private:
  std::size_t required_;
  std::size_t available_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Text input that could not be parsed; line is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace cryoheat
