#include "lk/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lk {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string coefficients_csv(const std::vector<CoefficientTable>& tables) {
  std::size_t max_order = 0;
  for (const auto& t : tables)
    max_order = std::max(max_order, t.order());

  std::ostringstream os;
  os << "method,t,re_C,im_C";
  for (std::size_t n = 1; n <= max_order; ++n)
    os << ",re_c" << n << ",im_c" << n;
  os << "\n";

  for (const auto& table : tables) {
    for (std::size_t j = 0; j < table.grid.size(); ++j) {
      os << to_string(table.method) << ',' << format_double(table.grid[j]) << ','
         << format_double(table.prefactor[j].real()) << ','
         << format_double(table.prefactor[j].imag());
      for (std::size_t n = 1; n <= max_order; ++n) {
        if (n <= table.order())
          os << ',' << format_double(table.coeff[n - 1][j].real()) << ','
             << format_double(table.coeff[n - 1][j].imag());
        else
          os << ",,";
      }
      os << "\n";
    }
  }
  return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
  if (!out)
    throw std::runtime_error("write failed: " + path.string());
}

std::string polyline_svg(const std::vector<std::vector<std::complex<double>>>& curves,
                         int pixel_size) {
  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
  double lo_y = lo_x, hi_y = -lo_x;
  for (const auto& c : curves)
    for (const auto& p : c) {
      lo_x = std::min(lo_x, p.real());
      hi_x = std::max(hi_x, p.real());
      lo_y = std::min(lo_y, p.imag());
      hi_y = std::max(hi_y, p.imag());
    }
  if (!(lo_x < hi_x) || !(lo_y < hi_y)) {
    lo_x -= 1.0;
    hi_x += 1.0;
    lo_y -= 1.0;
    hi_y += 1.0;
  }
  const double pad = 0.05 * std::max(hi_x - lo_x, hi_y - lo_y);
  lo_x -= pad;
  hi_x += pad;
  lo_y -= pad;
  hi_y += pad;
  const double span = std::max(hi_x - lo_x, hi_y - lo_y);
  const double scale = pixel_size / span;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << pixel_size
     << "\" height=\"" << pixel_size << "\" viewBox=\"0 0 " << pixel_size << ' '
     << pixel_size << "\">\n";
  for (const auto& curve : curves) {
    os << "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < curve.size(); ++i) {
      if (i)
        os << ' ';
      const double px = (curve[i].real() - lo_x) * scale;
      const double py = pixel_size - (curve[i].imag() - lo_y) * scale; // y up
      os << format_double(px) << ',' << format_double(py);
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

} // namespace lk
