#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace cottonlab {

/// Input errors come from malformed files or expressions; numeric errors
/// come from evaluating geometry on valid input.
enum class ErrorKind { Input, Numeric };

/// Base of every error raised by the library. `name()` is the stable
/// identifier reported by the CLI (e.g. "SyntaxError", "CottonNotZero").
class Error : public std::runtime_error {
 public:
  Error(std::string name, ErrorKind kind, const std::string& message)
      : std::runtime_error(message), name_(std::move(name)), kind_(kind) {}

  const std::string& name() const noexcept { return name_; }
  ErrorKind kind() const noexcept { return kind_; }

 private:
  std::string name_;
  ErrorKind kind_;
};

std::string format_point(const std::array<double, 3>& p);
/// Shortest-ish scientific rendering for messages (%.6g).
std::string format_number(double v);

class SyntaxError : public Error {
 public:
  /// `key` names the input the text came from (e.g. a spec-file key).
  SyntaxError(std::size_t offset, const std::string& message, const std::string& key = "")
      : Error("SyntaxError", ErrorKind::Input,
              (key.empty() ? "" : key + ": ") + "at byte " + std::to_string(offset) + ": " + message),
        offset_(offset),
        reason_(message),
        key_(key) {}
  std::size_t offset() const noexcept { return offset_; }
  const std::string& reason() const noexcept { return reason_; }
  const std::string& key() const noexcept { return key_; }

 private:
  std::size_t offset_;
  std::string reason_;
  std::string key_;
};

class UnknownSymbol : public Error {
 public:
  UnknownSymbol(std::size_t offset, const std::string& symbol, const std::string& key = "")
      : Error("UnknownSymbol", ErrorKind::Input,
              (key.empty() ? "" : key + ": ") + "unknown symbol '" + symbol + "' at byte " +
                  std::to_string(offset)),
        offset_(offset),
        symbol_(symbol),
        key_(key) {}
  std::size_t offset() const noexcept { return offset_; }
  const std::string& symbol() const noexcept { return symbol_; }
  const std::string& key() const noexcept { return key_; }

 private:
  std::size_t offset_;
  std::string symbol_;
  std::string key_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("IoError", ErrorKind::Input, message) {}
};

class SchemaError : public Error {
 public:
  SchemaError(const std::string& key, const std::string& message)
      : Error("SchemaError", ErrorKind::Input, key + ": " + message), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message)
      : Error("DomainError", ErrorKind::Numeric, message) {}
};

class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(const std::string& where)
      : Error("NotPositiveDefinite", ErrorKind::Numeric, "metric not positive definite " + where) {}
};

class DegreeError : public Error {
 public:
  DegreeError(int k, int l)
      : Error("DegreeError", ErrorKind::Numeric,
              "wedge of degrees " + std::to_string(k) + " and " + std::to_string(l) +
                  " exceeds the dimension") {}
};

class DegenerateSeed : public Error {
 public:
  explicit DegenerateSeed(double det)
      : Error("DegenerateSeed", ErrorKind::Numeric,
              "seed frame determinant " + format_number(det) + " below 1e-12") {}
};

class FrameNotOrthonormal : public Error {
 public:
  FrameNotOrthonormal(double defect, const std::array<double, 3>& p)
      : Error("FrameNotOrthonormal", ErrorKind::Numeric,
              "frame orthonormality defect " + format_number(defect) + " at " + format_point(p)) {}
};

class NotSpecialOrthogonal : public Error {
 public:
  NotSpecialOrthogonal(double defect, const std::array<double, 3>& p)
      : Error("NotSpecialOrthogonal", ErrorKind::Numeric,
              "gauge map is not in SO(3) (defect " + format_number(defect) + ") at " +
                  format_point(p)) {}
};

class JacobiViolation : public Error {
 public:
  explicit JacobiViolation(double defect)
      : Error("JacobiViolation", ErrorKind::Numeric,
              "structure constants violate the Jacobi identity (defect " + format_number(defect) +
                  ")") {}
};

class NonFiniteSample : public Error {
 public:
  explicit NonFiniteSample(const std::array<double, 3>& p)
      : Error("NonFiniteSample", ErrorKind::Numeric, "non-finite integrand at " + format_point(p)),
        point_(p) {}
  const std::array<double, 3>& point() const noexcept { return point_; }

 private:
  std::array<double, 3> point_;
};

class CottonNotZero : public Error {
 public:
  CottonNotZero(double norm, double tol)
      : Error("CottonNotZero", ErrorKind::Numeric,
              "Cotton form norm " + format_number(norm) + " exceeds tolerance " +
                  format_number(tol) + "; metric is not locally conformally flat"),
        norm_(norm) {}
  double norm() const noexcept { return norm_; }

 private:
  double norm_;
};

class StepTooLarge : public Error {
 public:
  StepTooLarge(double estimate, double tol)
      : Error("StepTooLarge", ErrorKind::Numeric,
              "RK4 local error estimate " + format_number(estimate) + " exceeds " +
                  format_number(tol)) {}
};

class BlowUp : public Error {
 public:
  BlowUp(double norm, const std::array<double, 3>& p)
      : Error("BlowUp", ErrorKind::Numeric,
              "|X| = " + format_number(norm) + " exceeds the blow-up bound at " + format_point(p)) {}
};

class NotClosed : public Error {
 public:
  NotClosed(double defect, const std::array<double, 3>& p)
      : Error("NotClosed", ErrorKind::Numeric,
              "1-form closedness defect " + format_number(defect) + " at " + format_point(p)),
        defect_(defect),
        point_(p) {}
  double defect() const noexcept { return defect_; }
  const std::array<double, 3>& point() const noexcept { return point_; }

 private:
  double defect_;
  std::array<double, 3> point_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& message)
      : Error("InvalidArgument", ErrorKind::Input, message) {}
};

}  // namespace cottonlab
