#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pqc/descriptors.hpp"

namespace pqc {

/// Number of frame-potential slots in the tabular export.
inline constexpr int kExportMoments = 4;

/// Column order of the descriptor CSV; JSON objects use the same keys.
const std::vector<std::string>& report_columns();

void write_reports_csv(std::ostream& out, std::span<const DescriptorReport> reports);
void write_reports_json(std::ostream& out, std::span<const DescriptorReport> reports);

/// Fixed-precision rendering shared by every tabular output.
std::string format_real(double v);

}  // namespace pqc
