#include "hamlag/error.hpp"

namespace hamlag {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DegenerateAngles: return "DegenerateAngles";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::DegenerateProfile: return "DegenerateProfile";
    case ErrorKind::NonrealProfile: return "NonrealProfile";
    case ErrorKind::SingularPhase: return "SingularPhase";
    case ErrorKind::InconsistentBranch: return "InconsistentBranch";
    case ErrorKind::QuadratureError: return "QuadratureError";
    case ErrorKind::FrameError: return "FrameError";
    case ErrorKind::ModeError: return "ModeError";
    case ErrorKind::NoClosure: return "NoClosure";
    case ErrorKind::EmptySearch: return "EmptySearch";
    case ErrorKind::RootFindFailure: return "RootFindFailure";
    case ErrorKind::OracleInstability: return "OracleInstability";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace hamlag
