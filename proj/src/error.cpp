#include "cardioload/error.hpp"

namespace cardioload {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::invalid_profile: return "InvalidProfile";
    case ErrorCode::invalid_config: return "InvalidConfig";
    case ErrorCode::invalid_sample: return "InvalidSample";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::malformed_document: return "MalformedDocument";
    case ErrorCode::malformed_header: return "MalformedHeader";
    case ErrorCode::malformed_row: return "MalformedRow";
    case ErrorCode::malformed_timestamp: return "MalformedTimestamp";
    case ErrorCode::end_before_start: return "EndBeforeStart";
    case ErrorCode::overlapping_sessions: return "OverlappingSessions";
    case ErrorCode::out_of_order_timestamps: return "OutOfOrderTimestamps";
    case ErrorCode::mixed_dates: return "MixedDates";
    case ErrorCode::day_outside_week: return "DayOutsideWeek";
    case ErrorCode::misaligned_week: return "MisalignedWeek";
    case ErrorCode::non_contiguous_week: return "NonContiguousWeek";
    case ErrorCode::invalid_state: return "InvalidState";
    case ErrorCode::io_error: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
{
}

} // namespace cardioload
