#pragma once

#include <stdexcept>
#include <string>

namespace pird {

enum class ErrorKind {
  format,      // malformed input files
  argument,    // invalid parameters or preconditions
  numerical,   // singular systems, unstable models, bad spectra
  capability,  // requests beyond what the library supports
  estimation,  // ill-conditioned fits
};

/// Exit code used by the command line tool for each error kind.
int exit_code(ErrorKind kind);

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

}  // namespace pird
