#include "cilab/table.hpp"

#include <cmath>
#include <cstdio>

#include "cilab/errors.hpp"

namespace cilab {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s(buf);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string format_complex(cplx v) {
  std::string im = format_real(v.imag());
  if (im[0] != '-') im = "+" + im;
  return format_real(v.real()) + im + "i";
}

std::string format_vector(std::span<const cplx> v) {
  bool real = true;
  for (const cplx& c : v) real = real && c.imag() == 0.0;
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    if (real) {
      char buf[40];
      double r = v[i].real() == 0.0 ? 0.0 : v[i].real();
      std::snprintf(buf, sizeof buf, "%.12g", r);
      out += buf;
    } else {
      out += format_complex(v[i]);
    }
  }
  return out;
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw UsageError("table: row width differs from the header");
  rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) out += (c ? "," : "") + columns[c];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ",";
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) out += format_real(v);
            else if constexpr (std::is_same_v<T, cplx>) out += format_complex(v);
            else if constexpr (std::is_same_v<T, std::int64_t>) out += std::to_string(v);
            else out += v;
          },
          row[c]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace cilab
