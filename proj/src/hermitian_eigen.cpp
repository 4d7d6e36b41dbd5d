#include "lsys/hermitian_eigen.hpp"

#include <algorithm>
#include <cmath>

namespace lsys {

double ComplexMatrix::hermitian_defect() const {
  double defect = 0.0;
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = r; c < n_; ++c)
      defect = std::max(defect, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return defect;
}

namespace {

// Cyclic Jacobi on a dense real symmetric matrix; returns its diagonal.
std::vector<double> jacobi_symmetric(std::vector<double> a, std::size_t n) {
  auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * n + c]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      diag += at(r, r) * at(r, r);
      for (std::size_t c = r + 1; c < n; ++c) off += at(r, c) * at(r, c);
    }
    if (off <= 1e-30 * diag || off == 0.0) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = at(q, p) = 0.0;
      }
    }
  }
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = at(i, i);
  return d;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  const std::size_t n = m.size();
  const std::size_t n2 = 2 * n;
  std::vector<double> emb(n2 * n2);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      // Average with the mirrored entry so the embedding is exactly symmetric.
      const cplx v = 0.5 * (m(r, c) + std::conj(m(c, r)));
      emb[r * n2 + c] = v.real();
      emb[(r + n) * n2 + (c + n)] = v.real();
      emb[r * n2 + (c + n)] = -v.imag();
      emb[(r + n) * n2 + c] = v.imag();
    }
  }
  std::vector<double> d = jacobi_symmetric(std::move(emb), n2);
  std::sort(d.begin(), d.end());
  // Each eigenvalue of the Hermitian matrix appears twice in the embedding.
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (d[2 * i] + d[2 * i + 1]);
  return out;
}

}  // namespace lsys
