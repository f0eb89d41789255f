#ifndef LONGWAVE_ERROR_HPP
#define LONGWAVE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace longwave {

// Violated physical precondition (CFL bound, |v| >= c, degenerate fixture, ...).
// The CLI maps this to exit status 1.
struct physics_error : std::runtime_error {
  explicit physics_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem / stream failure. The CLI maps this to exit status 2.
struct io_error : std::runtime_error {
  explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace longwave

#endif
