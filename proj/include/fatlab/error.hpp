#pragma once

#include <stdexcept>
#include <string>

namespace fatlab {

enum class ErrorKind {
  NotInvertible,
  NonSquare,
  NoSolution,
  ShapeMismatch,
  MalformedTable,
  BadParams,
  NotInvertibleInput,
  NotCanonicalForm,
  NotChainMap,
  NotWellDefined,
  HypothesisViolated,
  StructureNotVerified,
  NerveCapExceeded,
  DegreeTooLow,
  DegreeMismatch,
  NotComposable,
  BaseMismatch,
  NotMultiplicative,
  NotUnital,
  FiberNotCertified,
  Parse,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fatlab
