#pragma once

#include <stdexcept>
#include <string>

namespace k3fib {

enum class errc {
  zero_vector,
  not_isotropic,
  not_primitive,
  degenerate_lattice,
  indefinite_lattice,
  group_too_large,
  not_integral,
  not_even,
  bad_prime,
  invalid_params,
  inconsistent_grouping,
  graph_too_large,
  parse_error,
  internal,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::zero_vector: return "ZeroVector";
    case errc::not_isotropic: return "NotIsotropic";
    case errc::not_primitive: return "NotPrimitive";
    case errc::degenerate_lattice: return "DegenerateLattice";
    case errc::indefinite_lattice: return "IndefiniteLattice";
    case errc::group_too_large: return "GroupTooLarge";
    case errc::not_integral: return "NotIntegral";
    case errc::not_even: return "NotEven";
    case errc::bad_prime: return "BadPrime";
    case errc::invalid_params: return "InvalidParams";
    case errc::inconsistent_grouping: return "InconsistentGrouping";
    case errc::graph_too_large: return "GraphTooLarge";
    case errc::parse_error: return "ParseError";
    case errc::internal: return "InternalError";
  }
  return "UnknownError";
}

class k3_error : public std::runtime_error {
 public:
  k3_error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw k3_error(code, what); }

}  // namespace k3fib
