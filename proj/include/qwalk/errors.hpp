#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

// A caller-supplied parameter lies outside the domain where the model is defined.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Refusal to run a computation whose cost grows past a fixed guard (dense superoperators).
class SizeError : public ParameterError {
 public:
  explicit SizeError(const std::string& what) : ParameterError(what) {}
};

// A conserved quantity drifted during numerical integration.
class InvariantError : public std::runtime_error {
 public:
  explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qwalk
