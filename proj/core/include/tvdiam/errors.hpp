#pragma once

#include <stdexcept>
#include <string>

namespace tvdiam {

// Base class for every error raised by the library. Subclasses are declared
// next to the module that raises them; catching tvdiam::Error is enough for
// front ends that only need the message.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Request that is structurally impossible to answer (unknown variable,
// overlapping target/given sets, and the like).
class InvalidQuery : public Error {
 public:
  explicit InvalidQuery(const std::string& what) : Error(what) {}
};

}  // namespace tvdiam
