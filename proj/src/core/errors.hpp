#pragma once

#include <stdexcept>
#include <string>

namespace tame {

// coarse error classes, mirrored one-to-one by the C API status codes
enum class Errc {
  invalid_argument,  // bad group/weight/modulus/config data
  unsupported,       // operation not available for this configuration
  overflow,          // exact integer arithmetic left the 64-bit range
  divergent,         // series evaluated at or below its abscissa
  internal,          // broken invariant inside the library
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
  throw Error(code, msg);
}

inline void check_arg(bool ok, const std::string& msg) {
  if (!ok) fail(Errc::invalid_argument, msg);
}

}  // namespace tame
