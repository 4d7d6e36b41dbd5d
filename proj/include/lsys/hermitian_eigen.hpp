#pragma once

#include <cstddef>
#include <vector>

#include "lsys/numeric.hpp"

namespace lsys {

/// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const noexcept { return n_; }
  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  /// max |a_rc - conj(a_cr)|
  double hermitian_defect() const;

 private:
  std::size_t n_ = 0;
  std::vector<cplx> data_;
};

/// Eigenvalues (ascending) of a Hermitian matrix by cyclic Jacobi rotations on
/// the real symmetric embedding [[Re, -Im], [Im, Re]].  Intended for small n.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

}  // namespace lsys
