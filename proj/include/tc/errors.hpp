#pragma once

#include <stdexcept>
#include <string>

namespace tc {

// Base class for all library errors. Subclasses exist so callers can
// dispatch on the failure kind; the message carries the specifics.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// input / format errors
struct ParseError : Error {
  using Error::Error;
};
struct UnknownGenerator : Error {
  using Error::Error;
};
struct InconsistentPresentation : Error {
  using Error::Error;
};
struct NotNilpotent : Error {
  using Error::Error;
};

// map errors
struct RelationViolated : Error {
  using Error::Error;
};
struct NotBijective : Error {
  using Error::Error;
};
struct NotAutomorphism : Error {
  using Error::Error;
};
struct KernelNotPreserved : Error {
  using Error::Error;
};

// structural preconditions
struct NotCentral : Error {
  using Error::Error;
};
struct NotAdmissible : Error {
  using Error::Error;
};
struct NotTailCompatible : Error {
  using Error::Error;
};
struct IndexInfinite : Error {
  using Error::Error;
};
struct EmptyDownstairs : Error {
  using Error::Error;
};
struct TorsionPresent : Error {
  using Error::Error;
};

// internal sanity violations that must never pass silently
struct MuNotWellDefined : Error {
  using Error::Error;
};

// size guards
struct TooLarge : Error {
  using Error::Error;
};

// truncated series
struct RankClassMismatch : Error {
  using Error::Error;
};
struct NotAUnit : Error {
  using Error::Error;
};
struct NotInGroup : Error {
  using Error::Error;
};

}  // namespace tc
