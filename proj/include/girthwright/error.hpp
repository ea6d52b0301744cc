#pragma once

#include <stdexcept>
#include <string>

namespace girthwright {

enum class ErrorKind {
  EmbeddingInvalid,
  UnknownVertex,
  NotAPath,
  NotACycle,
  NotSeparating,
  NotASubgraph,
  PreconditionViolated,
  ListExhausted,
  HypothesisViolated,
  AssignmentInvalid,
  PhiImproper,
  EngineIncomplete,
  NoReductionApplies,
  BudgetExceeded,
  InvalidInput,
};

const char* to_string(ErrorKind k);

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& msg)
      : std::runtime_error(std::string(to_string(k)) + ": " + msg), kind(k) {}
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) {
  throw Error(k, msg);
}

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::EmbeddingInvalid: return "EmbeddingInvalid";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::NotAPath: return "NotAPath";
    case ErrorKind::NotACycle: return "NotACycle";
    case ErrorKind::NotSeparating: return "NotSeparating";
    case ErrorKind::NotASubgraph: return "NotASubgraph";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::ListExhausted: return "ListExhausted";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::AssignmentInvalid: return "AssignmentInvalid";
    case ErrorKind::PhiImproper: return "PhiImproper";
    case ErrorKind::EngineIncomplete: return "EngineIncomplete";
    case ErrorKind::NoReductionApplies: return "NoReductionApplies";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Error";
}

}  // namespace girthwright
