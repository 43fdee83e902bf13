#include "pdsx/ck_matrix.hpp"

#include "pdsx/error.hpp"

namespace pdsx {

CKMatrix::CKMatrix(const std::vector<std::vector<int>>& rows) : n_(static_cast<int>(rows.size())) {
  if (rows.empty()) throw Error(ErrorKind::InvalidInput, "empty matrix");
  a_.reserve(rows.size() * rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw Error(ErrorKind::InvalidInput, "matrix is not square");
    bool nonzero = false;
    for (int v : rows[i]) {
      if (v != 0 && v != 1) throw Error(ErrorKind::InvalidInput, "entries must be 0 or 1");
      nonzero = nonzero || v == 1;
      a_.push_back(static_cast<std::uint8_t>(v));
    }
    if (!nonzero) {
      throw Error(ErrorKind::InvalidInput,
                  "row " + std::to_string(i + 1) + " is zero; the matrix must have no zero rows");
    }
  }
}

int CKMatrix::row_sum(int i) const {
  int s = 0;
  for (int j = 1; j <= n_; ++j) s += (*this)(i, j) ? 1 : 0;
  return s;
}

std::vector<std::vector<int>> CKMatrix::rows() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n_));
  for (int i = 1; i <= n_; ++i)
    for (int j = 1; j <= n_; ++j) out[static_cast<std::size_t>(i - 1)].push_back((*this)(i, j) ? 1 : 0);
  return out;
}

bool CKMatrix::is_permutation() const {
  for (int i = 1; i <= n_; ++i) {
    if (row_sum(i) != 1) return false;
    int col = 0;
    for (int r = 1; r <= n_; ++r) col += (*this)(r, i) ? 1 : 0;
    if (col != 1) return false;
  }
  return true;
}

}  // namespace pdsx
