#pragma once

#include <stdexcept>
#include <string>

namespace mchart {

enum class ErrorKind {
  DimensionMismatch,
  RankDeficient,
  RankMismatch,
  OutOfChartDomain,
  SingularFactor,
  LineSearchFailed,
  Parse,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every error raised by the library; `kind()` lets callers branch
/// on the failure class without a dynamic_cast ladder.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define MCHART_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what)                          \
        : Error(ErrorKind::Name, #Name ": " + what) {}              \
  };

MCHART_DEFINE_ERROR(DimensionMismatch)
MCHART_DEFINE_ERROR(RankDeficient)
// Input is not of the requested rank (fails manifold membership).
MCHART_DEFINE_ERROR(RankMismatch)
// Point lies on the manifold but outside the chart neighbourhood.
MCHART_DEFINE_ERROR(OutOfChartDomain)
MCHART_DEFINE_ERROR(SingularFactor)
MCHART_DEFINE_ERROR(LineSearchFailed)

#undef MCHART_DEFINE_ERROR

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what)
      : Error(ErrorKind::Parse, "ParseError: " + what) {}
};

}  // namespace mchart
