#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ringdesign {

enum class ErrorCode {
    invalid_argument,
    non_positive_frequency,
    ratio_out_of_range,
    no_solution_found,
    singular_point,
    phase_out_of_range,
    degenerate_phase,
    singular_length,
    negative_impedance,
    singular_synthesis,
    evaluation_singular,
    singular_assembly,
    topology_mismatch,
    invalid_network,
    role_map_invalid,
    port_invalid,
    parse_error,
};

/// Stable machine-readable name, e.g. "NoSolutionFound". Used in JSON error bodies.
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace ringdesign
