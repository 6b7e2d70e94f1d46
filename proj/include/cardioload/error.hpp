#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cardioload {

enum class ErrorCode {
    invalid_profile,
    invalid_config,
    invalid_sample,
    invalid_argument,
    malformed_document,
    malformed_header,
    malformed_row,
    malformed_timestamp,
    end_before_start,
    overlapping_sessions,
    out_of_order_timestamps,
    mixed_dates,
    day_outside_week,
    misaligned_week,
    non_contiguous_week,
    invalid_state,
    io_error,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace cardioload
