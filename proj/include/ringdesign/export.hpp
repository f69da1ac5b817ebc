#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "ringdesign/network.hpp"

namespace ringdesign {

/// Touchstone 1.1 in real/imaginary form, frequency in Hz. Two-port data is
/// written S11 S21 S12 S22; larger networks one matrix row per line. Failed
/// sweep points are skipped. With `z_ref`, data is re-referenced to it first.
void write_touchstone(std::ostream& os, const SweepResult& sw,
                      std::optional<double> z_ref = std::nullopt);
std::string touchstone_extension(const SweepResult& sw);  // ".s2p", ".s3p", ...

/// CSV with header frequency_hz,<channel>,... in MetricChannels order; NaN for gaps.
void write_metrics_csv(std::ostream& os, const MetricChannels& mc);

}  // namespace ringdesign
