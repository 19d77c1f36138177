#pragma once

#include <stdexcept>
#include <string>

namespace lcnet {

/// Two objects that must live in the same discretized space do not.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Failure to read a network or report document. `kind()` separates the
/// diagnostics so callers can branch on them.
class DocumentError : public std::runtime_error {
 public:
  enum class Kind { Malformed, UnknownActivation, ShapeInconsistent };

  DocumentError(Kind kind, std::string field, const std::string& what)
      : std::runtime_error(what), kind_(kind), field_(std::move(field)) {}

  Kind kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }

 private:
  Kind kind_;
  std::string field_;
};

/// Invalid experiment configuration. `field()` names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace lcnet
