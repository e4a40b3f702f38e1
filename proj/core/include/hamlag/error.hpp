#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hamlag {

enum class ErrorKind {
  DomainError,
  DegenerateAngles,
  Infeasible,
  DegenerateProfile,
  NonrealProfile,
  SingularPhase,
  InconsistentBranch,
  QuadratureError,
  FrameError,
  ModeError,
  NoClosure,
  EmptySearch,
  RootFindFailure,
  OracleInstability,
  ConfigError,
};

/// Stable name of an error kind, as printed by the command-line tool.
std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return to_string(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace hamlag
