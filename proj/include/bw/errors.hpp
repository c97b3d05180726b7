#pragma once

#include <stdexcept>
#include <string>

namespace bw {

// Error codes map onto process exit codes in the CLI:
//   validation-class errors -> 2, unrepresentable -> 3, verification failures -> 4.
enum class errc {
  validation,
  stage_out_of_range,
  index_unrepresentable,
  seed_unevaluable,
  invalid_seed,
  window_too_small,
  resolution_too_coarse,
  depth_too_large,
  step_too_large,
  curves_too_close,
  io_error,
  verification_failed,
  internal,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace bw
