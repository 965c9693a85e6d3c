#pragma once

#include <stdexcept>
#include <string>

namespace aalpha {

enum class Errc {
  RationalInput,
  PrecisionExhausted,
  HalfIntegerAmbiguity,
  DigitsExhausted,
  DepthExhausted,
  NonPositiveInput,
  DomainViolation,
  LevelMismatch,
  ResolutionTooCoarse,
  DivergentBrjuno,
  DivergentUpperSeed,
  WrongLevel,
  EmptyProfile,
  ConfigError,
  CacheCorrupt,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, long index = -1)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code),
        index_(index) {}

  Errc code() const { return code_; }
  // Last certified index for PrecisionExhausted, violating level for others.
  long index() const { return index_; }

 private:
  Errc code_;
  long index_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what, long index = -1) {
  throw Error(code, what, index);
}

}  // namespace aalpha
