#ifndef PNSPACE_ERRORS_HPP
#define PNSPACE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pnspace {

enum class errc {
  invalid_domain,
  axis_out_of_range,
  parse_error,
  eval_error,
  unsupported_order,
  no_convergence,
  infeasible,
  hypothesis_violated,
  condition_violated,
  conjugacy_violated,
  not_admissible,
  fit_ambiguous,
  invalid_argument,
  io_error,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

private:
  errc code_;
};

//! Parse failure carrying the byte offset and the token set expected there.
class ParseError : public Error {
public:
  ParseError(std::size_t offset, std::string expected, const std::string& what)
      : Error(errc::parse_error, what),
        offset_(offset),
        expected_(std::move(expected)) {}
  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

private:
  std::size_t offset_;
  std::string expected_;
};

} // namespace pnspace

#endif
