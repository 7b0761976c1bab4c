#pragma once

#include <stdexcept>
#include <string>

namespace distsel {

// Error taxonomy shared by the whole library. Each failure carries a stable
// code so the CLI can emit machine-readable error summaries.
enum class errc {
  malformed_row,
  negative_precip,
  duplicate_month,
  degenerate_sample,
  empty_sample,
  sample_too_small,
  invalid_params,
  convergence_failure,
  too_few_bins,
  io_failure,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::malformed_row: return "malformed_row";
    case errc::negative_precip: return "negative_precip";
    case errc::duplicate_month: return "duplicate_month";
    case errc::degenerate_sample: return "degenerate_sample";
    case errc::empty_sample: return "empty_sample";
    case errc::sample_too_small: return "sample_too_small";
    case errc::invalid_params: return "invalid_params";
    case errc::convergence_failure: return "convergence_failure";
    case errc::too_few_bins: return "too_few_bins";
    case errc::io_failure: return "io_failure";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace distsel
