#pragma once

#include <stdexcept>
#include <string>

namespace diffspec {

enum class Errc {
  kNotPrime,
  kEvenCharacteristic,
  kOverflow,
  kZeroInverse,
  kLogOfZero,
  kZeroInput,
  kTableBoundExceeded,
  kMuOutOfRange,
  kRegimeViolation,
  kSearchBoundExceeded,
  kBadArgument,
  kCacheCorrupt,
  kInternal,
};

const char* errc_name(Errc c);

/// Domain error carrying a machine-checkable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace diffspec
