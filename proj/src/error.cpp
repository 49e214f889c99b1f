#include "pird/error.hpp"

namespace pird {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::format: return 2;
    case ErrorKind::argument: return 3;
    case ErrorKind::numerical: return 4;
    case ErrorKind::capability: return 5;
    case ErrorKind::estimation: return 6;
  }
  return 1;
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::format: return "format error";
    case ErrorKind::argument: return "argument error";
    case ErrorKind::numerical: return "numerical error";
    case ErrorKind::capability: return "capability error";
    case ErrorKind::estimation: return "estimation error";
  }
  return "error";
}

}  // namespace pird
