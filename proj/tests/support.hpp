#pragma once

#include "triplekit/factor.hpp"

namespace tksup {

inline triplekit::cmat matrix_unit(int rows, int cols, int i, int j,
                                   triplekit::cplx value = triplekit::cplx(1.0, 0.0)) {
  triplekit::cmat m = triplekit::cmat::Zero(rows, cols);
  m(i, j) = value;
  return m;
}

// E_ij as an element of a rectangular factor.
inline triplekit::Element type1_unit(const triplekit::FactorDescriptor& f, int i, int j) {
  return triplekit::make_element(f, matrix_unit(f.rows(), f.cols(), i, j));
}

}  // namespace tksup
