#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cilab/types.hpp"

namespace cilab {

using Cell = std::variant<double, cplx, std::int64_t, std::string>;

/// Column-named rows rendered as CSV: `,` separator, header row, complex cells as re+imi.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::string to_csv() const;
};

/// %.12g, with ".0" appended to integral values so reals stay recognizable ("5.0").
std::string format_real(double v);
/// re+imi; the imaginary part is always written.
std::string format_complex(cplx v);
/// Comma-joined entries; imaginary parts are dropped when every entry is real.
std::string format_vector(std::span<const cplx> v);

}  // namespace cilab
