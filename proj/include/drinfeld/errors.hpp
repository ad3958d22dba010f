#pragma once

#include <stdexcept>
#include <string>

namespace drinfeld {

// Error taxonomy shared by the whole pipeline. Each kind maps to a CLI exit
// class: input/validation problems -> 1, rank certification -> 2,
// precision/convergence -> 3, uniformizer residual -> 4.
enum class ErrKind {
  DivisionByZero,
  FieldMismatch,
  PrecisionExhausted,
  ZeroValuation,
  NotAUnit,
  BadReduction,
  NotADrinfeldModule,
  NonConvergence,
  ZeroClass,
  RankInconsistent,
  ResidualTooLarge,
  ParseError,
  Internal,
};

inline const char* err_kind_name(ErrKind k) {
  switch (k) {
    case ErrKind::DivisionByZero: return "DivisionByZero";
    case ErrKind::FieldMismatch: return "FieldMismatch";
    case ErrKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrKind::ZeroValuation: return "ZeroValuation";
    case ErrKind::NotAUnit: return "NotAUnit";
    case ErrKind::BadReduction: return "BadReduction";
    case ErrKind::NotADrinfeldModule: return "NotADrinfeldModule";
    case ErrKind::NonConvergence: return "NonConvergence";
    case ErrKind::ZeroClass: return "ZeroClass";
    case ErrKind::RankInconsistent: return "RankInconsistent";
    case ErrKind::ResidualTooLarge: return "ResidualTooLarge";
    case ErrKind::ParseError: return "ParseError";
    case ErrKind::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrKind kind, const std::string& msg)
      : std::runtime_error(std::string(err_kind_name(kind)) + ": " + msg),
        kind_(kind) {}
  ErrKind kind() const { return kind_; }

 private:
  ErrKind kind_;
};

[[noreturn]] inline void fail(ErrKind k, const std::string& msg) {
  throw Error(k, msg);
}

}  // namespace drinfeld
