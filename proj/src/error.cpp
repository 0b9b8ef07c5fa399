#include "dsg/error.hpp"

namespace dsg {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
      return "parse error";
    case ErrorKind::kPrecondition:
      return "precondition violated";
    case ErrorKind::kIo:
      return "i/o error";
    case ErrorKind::kEmptyTrace:
      return "empty trace";
  }
  return "error";
}

}  // namespace dsg
