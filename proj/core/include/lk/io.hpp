#ifndef LK_IO_HPP
#define LK_IO_HPP

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include "lk/solver.hpp"

namespace lk {

/// Shortest round-trip decimal of a double ("%.17g"); identical bytes across
/// runs, which is what the CSV determinism contract rests on.
std::string format_double(double v);

/// CSV block for one table: "method,t,re_C,im_C,re_c1,im_c1,...". The header
/// is emitted once for the widest table by write_coefficients_csv.
std::string coefficients_csv(const std::vector<CoefficientTable>& tables);

void write_text_file(const std::filesystem::path& path, const std::string& content);

/// Minimal standalone SVG: one polyline per curve, fixed padded viewport.
std::string polyline_svg(const std::vector<std::vector<std::complex<double>>>& curves,
                         int pixel_size = 640);

} // namespace lk

#endif
