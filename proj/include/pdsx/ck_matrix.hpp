#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pdsx {

// n x n {0,1} matrix with no zero rows. Indices are 1-based to match the
// generator numbering of F_n.
class CKMatrix {
 public:
  CKMatrix() = default;
  // Throws ErrorKind::InvalidInput on non-square input, entries other than
  // 0/1, or a zero row.
  explicit CKMatrix(const std::vector<std::vector<int>>& rows);

  int n() const { return n_; }
  bool operator()(int i, int j) const { return a_[static_cast<std::size_t>((i - 1) * n_ + (j - 1))] != 0; }
  int row_sum(int i) const;

  std::vector<std::vector<int>> rows() const;
  bool is_permutation() const;

  friend bool operator==(const CKMatrix&, const CKMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint8_t> a_;
};

}  // namespace pdsx
