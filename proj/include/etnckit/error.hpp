#pragma once

#include <stdexcept>
#include <string>

namespace etnckit {

enum class ErrorKind {
  Structural,    // mismatched groups/rings, malformed shapes
  Input,         // bad user-supplied data
  Precondition,  // operation called outside its domain
  Unsupported,   // valid request the operation does not handle
  Precision,     // p-adic precision shortfall
  Parse,         // config/family file syntax
  Internal       // an identity that must hold failed: a bug
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) throw Error(kind, what);
}

}  // namespace etnckit
