#pragma once
#include <stdexcept>
#include <string>

namespace grafter {

enum class Errc {
  SyntaxError,
  UnknownGenerator,
  UnknownFootpath,
  ArityMismatch,
  VerticalMismatch,
  ContextArityMismatch,
  InvalidPlant,
  KTooLarge,
  EmptyAlphabet,
  IoError,
  FormatError,
  AlphabetMismatch,
  NotParallel,
  IllTyped,
  UnassignedGenerator,
  UnassignedComponent,
  MissingAddition,
  DuplicateName,
  Internal,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownGenerator: return "UnknownGenerator";
    case Errc::UnknownFootpath: return "UnknownFootpath";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::VerticalMismatch: return "VerticalMismatch";
    case Errc::ContextArityMismatch: return "ContextArityMismatch";
    case Errc::InvalidPlant: return "InvalidPlant";
    case Errc::KTooLarge: return "KTooLarge";
    case Errc::EmptyAlphabet: return "EmptyAlphabet";
    case Errc::IoError: return "IoError";
    case Errc::FormatError: return "FormatError";
    case Errc::AlphabetMismatch: return "AlphabetMismatch";
    case Errc::NotParallel: return "NotParallel";
    case Errc::IllTyped: return "IllTyped";
    case Errc::UnassignedGenerator: return "UnassignedGenerator";
    case Errc::UnassignedComponent: return "UnassignedComponent";
    case Errc::MissingAddition: return "MissingAddition";
    case Errc::DuplicateName: return "DuplicateName";
    case Errc::Internal: return "Internal";
  }
  return "?";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

}  // namespace grafter
