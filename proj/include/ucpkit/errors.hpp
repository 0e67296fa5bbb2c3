#pragma once

#include <stdexcept>
#include <string>

namespace ucp {

/// Base class for all toolkit errors.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Domain operation errors.
struct model_mismatch : error { using error::error; };
struct not_orthogonal : error { using error::error; };
struct rank_out_of_range : error { using error::error; };
struct conditioning_on_null : error { using error::error; };
struct degenerate_spanning_family : error { using error::error; };
struct events_equal_error : error { using error::error; };
struct norm_exceeds_one : error { using error::error; };

// Construction / invariant errors. `detail` carries the violated invariant,
// `name` the offending object when known (scenario loading).
struct invariant_violation : error {
  std::string name;
  explicit invariant_violation(const std::string& detail, std::string obj = {})
      : error(obj.empty() ? detail : obj + ": " + detail), name(std::move(obj)) {}
};

// Verifier / CLI errors.
struct unknown_check_id : error { using error::error; };
struct parse_error : error { using error::error; };
struct unknown_reference : error { using error::error; };

}  // namespace ucp
