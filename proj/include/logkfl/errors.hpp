// Typed error conditions. Every failure the library can signal deliberately is one of
// these; the CLI maps the code to its exit status (resource limits and non-stabilized
// colimits are reported differently from plain bad input).
#pragma once

#include <stdexcept>
#include <string>

namespace logkfl {

enum class errc {
  validation,        // malformed or out-of-domain input
  non_free_group,
  not_a_complex,
  size_bound,        // computation would exceed the configured size bound
  not_surjective,
  not_stabilized,    // ladder too short to certify the colimit
  unsupported_tensor,
  non_invertible_twist,
  bad_tower,
  unsupported_base,
  unsupported_module,
  malformed_rows,
  non_finite_residue_field,
};

class error : public std::runtime_error {
 public:
  error(errc c, const std::string& what) : std::runtime_error(what), code_(c) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

// Resource-style conditions (exit 3 at the CLI) vs validation-style (exit 2).
inline bool is_resource_error(errc c) {
  return c == errc::size_bound || c == errc::not_stabilized;
}

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

}  // namespace logkfl
