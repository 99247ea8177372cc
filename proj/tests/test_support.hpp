#pragma once

#include "modrep/correspondence.hpp"
#include "oracle.hpp"

namespace modrep::testsupport {

inline Vec vec_of_ints(const FieldDesc& f, std::initializer_list<std::int64_t> vals) {
  Vec v;
  for (auto x : vals) v.push_back(Scalar::from_int(f, x));
  return v;
}

inline Matrix matrix_of_ints(const FieldDesc& f,
                             std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::vector<Vec> r;
  for (const auto& row : rows) r.push_back(vec_of_ints(f, row));
  return Matrix::from_rows(f, r);
}

inline Subspace space_of_ints(const FieldDesc& f, std::size_t ambient,
                              std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::vector<Vec> r;
  for (const auto& row : rows) r.push_back(vec_of_ints(f, row));
  return Subspace::from_spanning(f, ambient, r);
}

inline oracle::Mat to_oracle(const Matrix& m) {
  oracle::Mat out(m.rows(), oracle::Row(m.cols(), 0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m.at(i, j).residue();
  return out;
}

inline std::vector<oracle::Mat> to_oracle_actions(const ModuleRep& m) {
  std::vector<oracle::Mat> out;
  for (const auto& a : m.actions()) out.push_back(to_oracle(a));
  return out;
}

inline Subspace from_oracle_space(const FieldDesc& f, std::size_t ambient,
                                  const oracle::Space& s) {
  std::vector<Vec> rows;
  for (const auto& r : s.basis) {
    Vec v;
    for (long x : r) v.push_back(Scalar::from_int(f, x));
    rows.push_back(std::move(v));
  }
  return Subspace::from_spanning(f, ambient, rows);
}

}  // namespace modrep::testsupport
