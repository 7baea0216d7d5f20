#pragma once

#include <stdexcept>
#include <string>

namespace skewkit {

enum class ErrorCode
{
  domain,           // argument outside its mathematical domain
  invalid_argument, // bad parameter, configuration or parse input
  degenerate_scale, // zero interquantile range / zero MAD (ties)
  quantile_density, // kernel quantile density estimate not positive
  contract,         // caller asked for something that was not precomputed
  unsupported,      // measure has no standard error (b3)
  computation,      // numeric failure (negative variance, no convergence)
  data              // unreadable input data
};

const char* to_string(ErrorCode code);

//! Single exception type for the library; the code drives CLI exit status.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string& what)
    : std::runtime_error(what)
    , code_(code)
  {}

  ErrorCode code() const noexcept { return code_; }

  //! Same error with `context` prepended to the message.
  Error with_context(const std::string& context) const
  {
    return Error(code_, context + ": " + what());
  }

private:
  ErrorCode code_;
};

} // namespace skewkit
