#pragma once

#include <stdexcept>
#include <string>

namespace gridohm {

enum class Errc {
  ok = 0,
  invalid_argument,
  parse_error,
  self_loop,
  unknown_site,
  non_positive_resistance,
  disconnected_lattice,
  unknown_lattice,
  singular_point,
  no_convergence,  // reported via ResistanceResult::converged, never thrown by the engine
  io_error,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace gridohm
