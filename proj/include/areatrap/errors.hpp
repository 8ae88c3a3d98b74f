#pragma once

#include <stdexcept>
#include <string>

namespace areatrap {

enum class ErrorCode {
    invalid_parameter,
    invalid_order,
    degenerate_chord,
    degenerate_anchor,
    invalid_region,
    invalid_endpoint,
    invalid_input,
    infeasible,
    size_cap_exceeded,
    parse_error,
    validation_error,
    io_error,
    insufficient_data,
    empty_plot,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string msg)
        : std::runtime_error(std::move(msg)), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Carries the feasibility frontier so callers can report how far the
// instance is from the requested area threshold.
class InfeasibleError : public Error {
public:
    InfeasibleError(std::string msg, double max_trappable_area)
        : Error(ErrorCode::infeasible, std::move(msg)),
          max_trappable_area_(max_trappable_area) {}

    double max_trappable_area() const noexcept { return max_trappable_area_; }

private:
    double max_trappable_area_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

} // namespace areatrap
