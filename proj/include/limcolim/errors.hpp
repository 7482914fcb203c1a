#pragma once

#include <stdexcept>
#include <string>

namespace limcolim {

enum class errc {
  associativity_violation,
  identity_violation,
  composition_gap,
  index_out_of_range,
  functoriality_violation,
  invalid_bifunctor,
  bad_params,
  size_cap_exceeded,
  not_a_group,
  not_a_subgroup,
  not_normal,
  cocone_exists,
  conical_shape,
  not_connected,
  no_witness,
  internal_disagreement,
  internal_error,
  parse_error,
  usage_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::associativity_violation: return "AssociativityViolation";
    case errc::identity_violation: return "IdentityViolation";
    case errc::composition_gap: return "CompositionGap";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::functoriality_violation: return "FunctorialityViolation";
    case errc::invalid_bifunctor: return "InvalidBiFunctor";
    case errc::bad_params: return "BadParams";
    case errc::size_cap_exceeded: return "SizeCapExceeded";
    case errc::not_a_group: return "NotAGroup";
    case errc::not_a_subgroup: return "NotASubgroup";
    case errc::not_normal: return "NotNormal";
    case errc::cocone_exists: return "CoconeExists";
    case errc::conical_shape: return "ConicalShape";
    case errc::not_connected: return "NotConnected";
    case errc::no_witness: return "NoWitness";
    case errc::internal_disagreement: return "InternalDisagreement";
    case errc::internal_error: return "InternalError";
    case errc::parse_error: return "ParseError";
    case errc::usage_error: return "UsageError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

inline void expect(bool cond, errc code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

// Invariant the engine itself guarantees; tripping one is a bug, not bad input.
inline void internal_check(bool cond, const std::string& msg) {
  if (!cond) fail(errc::internal_error, msg);
}

}  // namespace limcolim
