#pragma once

#include <stdexcept>
#include <string>

namespace corner {

enum class Errc {
  UnknownVariable,
  UnknownOp,
  UnknownSort,
  UnknownTerm,
  ArityMismatch,
  SortMismatch,
  ContextMismatch,
  UnboundVariable,
  SplitError,
  ProtocolMismatch,
  ProtocolChainError,
  BinderPositionError,
  JudgmentMismatch,
  InvalidRedex,
  NotEffectful,
  EmptyContext,
  Unsatisfiable,
  BoundaryMismatch,
  IllFormedComposite,
  ParseError,
  Overflow,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::UnknownVariable: return "UnknownVariable";
    case Errc::UnknownOp: return "UnknownOp";
    case Errc::UnknownSort: return "UnknownSort";
    case Errc::UnknownTerm: return "UnknownTerm";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::SortMismatch: return "SortMismatch";
    case Errc::ContextMismatch: return "ContextMismatch";
    case Errc::UnboundVariable: return "UnboundVariable";
    case Errc::SplitError: return "SplitError";
    case Errc::ProtocolMismatch: return "ProtocolMismatch";
    case Errc::ProtocolChainError: return "ProtocolChainError";
    case Errc::BinderPositionError: return "BinderPositionError";
    case Errc::JudgmentMismatch: return "JudgmentMismatch";
    case Errc::InvalidRedex: return "InvalidRedex";
    case Errc::NotEffectful: return "NotEffectful";
    case Errc::EmptyContext: return "EmptyContext";
    case Errc::Unsatisfiable: return "Unsatisfiable";
    case Errc::BoundaryMismatch: return "BoundaryMismatch";
    case Errc::IllFormedComposite: return "IllFormedComposite";
    case Errc::ParseError: return "ParseError";
    case Errc::Overflow: return "Overflow";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace corner
