// This file is part of causaloop.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <stdexcept>
#include <string>

namespace causaloop {

/*! Error categories surfaced by the library.

  Analysis verdicts (process vs. antinomic) are never errors; these codes
  cover contract violations, refused enumerations, and the one condition
  that must never occur on a correct build (`theorem_violation`).
*/
enum class errc {
  out_of_range,
  cyclic,
  invalid_structure,
  shape_mismatch,
  cap_exceeded,
  not_constant_over_own_output,
  not_a_nonconstancy_witness,
  theorem_violation,
  arity,
  length_mismatch,
  parse,
  validation,
};

inline const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::out_of_range: return "OUT_OF_RANGE";
    case errc::cyclic: return "CYCLIC";
    case errc::invalid_structure: return "INVALID_STRUCTURE";
    case errc::shape_mismatch: return "SHAPE_MISMATCH";
    case errc::cap_exceeded: return "CAP_EXCEEDED";
    case errc::not_constant_over_own_output: return "NOT_CONSTANT_OVER_OWN_OUTPUT";
    case errc::not_a_nonconstancy_witness: return "NOT_A_NONCONSTANCY_WITNESS";
    case errc::theorem_violation: return "THEOREM_VIOLATION";
    case errc::arity: return "ARITY";
    case errc::length_mismatch: return "LENGTH_MISMATCH";
    case errc::parse: return "PARSE";
    case errc::validation: return "VALIDATION";
  }
  return "UNKNOWN";
}

class error : public std::runtime_error {
public:
  error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  errc code() const noexcept { return code_; }

private:
  errc code_;
};

} // namespace causaloop
