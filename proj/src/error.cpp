#include "skewkit/error.hpp"

namespace skewkit {

const char* to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::degenerate_scale: return "degenerate_scale";
    case ErrorCode::quantile_density: return "quantile_density";
    case ErrorCode::contract: return "contract";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::computation: return "computation";
    case ErrorCode::data: return "data";
  }
  return "unknown";
}

} // namespace skewkit
