#pragma once

#include <stdexcept>
#include <string>

namespace tw {

/// Error categories used across the library. Pipeline stages catch by code
/// so that one failing stage degrades instead of aborting the camera loop.
enum class Errc {
    malformed_frame,
    out_of_range,
    duplicate_timestamp,
    dimension_mismatch,
    unknown_roi,
    malformed_mask,
    insufficient_contrast,
    empty_region,
    all_regions_empty,
    insufficient_history,
    gap_in_training_window,
    singular_system,
    bad_seed,
    no_prediction,
    non_monotonic_timestamp,
    io_failure,
    sink_unavailable,
    serialization_failure,
    malformed_row,
    duplicate_date,
    missing_roi_value,
    non_finite_state,
    incomplete_day,
    degenerate_fit,
    bad_config,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace tw
