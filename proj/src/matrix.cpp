#include "lpg/exact/matrix.hpp"

#include <sstream>

namespace lpg::exact {

CMatrix adjoint(const CMatrix& m) {
  CMatrix t(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c).conj();
  return t;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (!b(k, l).is_zero()) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

CMatrix block_diagonal(const std::vector<CMatrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  CMatrix out(n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) out(off + r, off + c) = b(r, c);
    off += b.rows();
  }
  return out;
}

std::string to_string(const CMatrix& m) {
  std::ostringstream os;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << " | ";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ", ";
      os << m(r, c).to_string();
    }
  }
  return os.str();
}

}  // namespace lpg::exact
