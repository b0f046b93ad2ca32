#pragma once

#include <stdexcept>
#include <string>

namespace tracegen {

enum class Errc {
  duplicate_letter,
  unknown_letter,
  alphabet_too_large,
  empty_alphabet,
  invalid_argument,
  root_not_found,
  p_out_of_range,
  not_irreducible,
  gap_violation,
  guardrail_exceeded,
  empty_support,
  parse_error,
};

inline const char* to_string(Errc code) {
  switch (code) {
    case Errc::duplicate_letter: return "duplicate-letter";
    case Errc::unknown_letter: return "unknown-letter";
    case Errc::alphabet_too_large: return "alphabet-too-large";
    case Errc::empty_alphabet: return "empty-alphabet";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::root_not_found: return "root-not-found";
    case Errc::p_out_of_range: return "p-out-of-range";
    case Errc::not_irreducible: return "not-irreducible";
    case Errc::gap_violation: return "gap-violation";
    case Errc::guardrail_exceeded: return "guardrail-exceeded";
    case Errc::empty_support: return "empty-support";
    case Errc::parse_error: return "parse-error";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tracegen
