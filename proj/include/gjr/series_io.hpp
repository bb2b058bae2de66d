#pragma once

#include "gjr/model.hpp"

#include <filesystem>
#include <iosfwd>

namespace gjr {

/// CSV with header `y` or `y,sigma2_true`, one observation per line, values
/// written with 17 significant digits.
void write_series_csv(std::ostream& out, const ReturnSeries& series);
void write_series_csv(const std::filesystem::path& path, const ReturnSeries& series);

/// Throws ParseError carrying the 1-based line number of the first bad row.
[[nodiscard]] ReturnSeries read_series_csv(std::istream& in);
[[nodiscard]] ReturnSeries read_series_csv(const std::filesystem::path& path);

}  // namespace gjr
