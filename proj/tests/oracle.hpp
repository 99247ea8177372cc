// Self-contained brute-force reference implementation used to cross-check the
// library. Everything here works on plain int64 residues with its own tiny
// row-reduction, spinning and enumeration code; it deliberately shares no
// arithmetic with the library under test.
#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using Row = std::vector<long>;
using Mat = std::vector<Row>;  // list of rows

inline long mod_inv(long a, long p) {
  long t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    long q = r / nr;
    long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  return ((t % p) + p) % p;
}

// Reduced row echelon form; returns pivot columns. Canonical basis of the row
// space, zero rows dropped.
inline std::vector<std::size_t> rref(Mat& m, long p) {
  std::vector<std::size_t> pivots;
  std::size_t rows = m.size();
  if (rows == 0) return pivots;
  std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (m[i][c] % p != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    long inv = mod_inv(((m[r][c] % p) + p) % p, p);
    for (auto& x : m[r]) x = ((x * inv) % p + p) % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      long f = ((m[i][c] % p) + p) % p;
      if (f == 0) continue;
      for (std::size_t j = 0; j < cols; ++j)
        m[i][j] = (((m[i][j] - f * m[r][j]) % p) + p) % p;
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

inline Row apply(const Mat& a, const Row& v, long p) {
  Row out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    long acc = 0;
    for (std::size_t j = 0; j < v.size(); ++j) acc = (acc + a[i][j] * v[j]) % p;
    out[i] = acc;
  }
  return out;
}

// Canonical subspace = RREF rows; usable as a set key.
struct Space {
  Mat basis;
  bool operator<(const Space& o) const { return basis < o.basis; }
  bool operator==(const Space& o) const { return basis == o.basis; }
  std::size_t dim() const { return basis.size(); }
};

inline Space make_space(Mat rows, long p) {
  rref(rows, p);
  return {rows};
}

inline bool contains(const Space& s, Row v, long p, std::size_t n) {
  // reduce v against the RREF basis
  for (const auto& row : s.basis) {
    std::size_t lead = 0;
    while (lead < n && row[lead] == 0) ++lead;
    long f = v[lead] % p;
    if (f == 0) continue;
    for (std::size_t j = 0; j < n; ++j) v[j] = (((v[j] - f * row[j]) % p) + p) % p;
  }
  for (long x : v)
    if (x % p != 0) return false;
  return true;
}

// Smallest action-invariant subspace containing v.
inline Space spin(const std::vector<Mat>& actions, const Row& v, long p) {
  Mat basis;
  std::vector<Row> work{v};
  auto add = [&](const Row& w) {
    Mat trial = basis;
    trial.push_back(w);
    rref(trial, p);
    if (trial.size() > basis.size()) {
      basis = trial;
      return true;
    }
    return false;
  };
  if (add(v)) {
    std::size_t head = 0;
    while (head < work.size()) {
      Row cur = work[head++];
      for (const auto& a : actions) {
        Row w = apply(a, cur, p);
        if (add(w)) work.push_back(w);
      }
    }
  }
  return {basis};
}

inline Space join(const Space& a, const Space& b, long p) {
  Mat rows = a.basis;
  for (const auto& r : b.basis) rows.push_back(r);
  return make_space(rows, p);
}

inline bool space_leq(const Space& a, const Space& b, long p) {
  if (a.dim() > b.dim()) return false;
  std::size_t n = b.basis.empty() ? (a.basis.empty() ? 0 : a.basis[0].size())
                                  : b.basis[0].size();
  for (const auto& r : a.basis)
    if (!contains(b, r, p, n)) return false;
  return true;
}

// All submodules of F_p^n under the given action: every submodule is a join of
// cyclic ones, so spin every nonzero vector and close under joins.
inline std::set<Space> all_submodules(const std::vector<Mat>& actions, std::size_t n, long p) {
  std::set<Space> out;
  out.insert(Space{});  // zero
  std::vector<long> digits(n, 0);
  while (true) {
    std::size_t i = 0;
    while (i < n && ++digits[i] >= p) digits[i++] = 0;
    if (i == n) break;
    Row v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = digits[j];
    out.insert(spin(actions, v, p));
  }
  std::vector<Space> list(out.begin(), out.end());
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = i + 1; j < list.size(); ++j) {
      Space s = join(list[i], list[j], p);
      if (out.insert(s).second) list.push_back(std::move(s));
    }
  return out;
}

// Minimal nonzero elements of the submodule lattice.
inline std::vector<Space> minimal_submodules(const std::set<Space>& subs, long p) {
  std::vector<Space> out;
  for (const auto& s : subs) {
    if (s.dim() == 0) continue;
    bool minimal = true;
    for (const auto& t : subs) {
      if (t.dim() == 0 || t.dim() >= s.dim()) continue;
      if (space_leq(t, s, p)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(s);
  }
  return out;
}

// Maximal proper submodules of the full space.
inline std::vector<Space> maximal_submodules(const std::set<Space>& subs, std::size_t n,
                                             long p) {
  std::vector<Space> out;
  for (const auto& s : subs) {
    if (s.dim() == n) continue;
    bool maximal = true;
    for (const auto& t : subs) {
      if (t.dim() == n || t.dim() <= s.dim()) continue;
      if (space_leq(s, t, p)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(s);
  }
  return out;
}

// Intersection via the kernel-free route: intersect pairwise by brute
// membership (spaces are tiny here).
inline Space intersect(const Space& a, const Space& b, std::size_t n, long p) {
  // enumerate a's row space only when small; spaces in oracle use are <= 4096
  // points by construction.
  Mat rows;
  std::vector<long> digits(a.dim(), 0);
  if (a.dim() == 0) return a;
  while (true) {
    std::size_t i = 0;
    while (i < a.dim() && ++digits[i] >= p) digits[i++] = 0;
    if (i == a.dim()) break;
    Row v(n, 0);
    for (std::size_t k = 0; k < a.dim(); ++k) {
      if (digits[k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        v[j] = (v[j] + digits[k] * a.basis[k][j]) % p;
    }
    if (contains(b, v, p, n)) rows.push_back(v);
  }
  return make_space(rows, p);
}

// Restrict the action matrices to a submodule, in the basis of the space.
inline std::vector<Mat> restrict_action(const std::vector<Mat>& actions, const Space& s,
                                        long p) {
  std::size_t r = s.dim();
  if (r == 0) return std::vector<Mat>(actions.size());
  std::size_t n = s.basis[0].size();
  std::vector<std::size_t> pivots;
  for (const auto& row : s.basis) {
    std::size_t lead = 0;
    while (lead < n && row[lead] == 0) ++lead;
    pivots.push_back(lead);
  }
  std::vector<Mat> out;
  for (const auto& a : actions) {
    Mat m(r, Row(r, 0));
    for (std::size_t j = 0; j < r; ++j) {
      Row w = apply(a, s.basis[j], p);
      // coordinates of w are its values at the pivot columns
      for (std::size_t i = 0; i < r; ++i) m[i][j] = w[pivots[i]];
    }
    out.push_back(std::move(m));
  }
  return out;
}

// Quotient action on complement coordinates of the subspace's pivots.
inline std::vector<Mat> quotient_action(const std::vector<Mat>& actions, const Space& s,
                                        std::size_t n, long p) {
  std::vector<std::size_t> pivots;
  for (const auto& row : s.basis) {
    std::size_t lead = 0;
    while (lead < n && row[lead] == 0) ++lead;
    pivots.push_back(lead);
  }
  std::vector<std::size_t> comp;
  for (std::size_t j = 0; j < n; ++j)
    if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) comp.push_back(j);
  std::size_t q = comp.size();
  auto project = [&](Row x) {
    for (std::size_t r = 0; r < s.basis.size(); ++r) {
      long f = x[pivots[r]] % p;
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        x[j] = (((x[j] - f * s.basis[r][j]) % p) + p) % p;
    }
    Row out(q);
    for (std::size_t c = 0; c < q; ++c) out[c] = x[comp[c]];
    return out;
  };
  std::vector<Mat> out;
  for (const auto& a : actions) {
    Mat m(q, Row(q, 0));
    for (std::size_t c = 0; c < q; ++c) {
      Row lifted(n, 0);
      lifted[comp[c]] = 1;
      Row img = project(apply(a, lifted, p));
      for (std::size_t r = 0; r < q; ++r) m[r][c] = img[r];
    }
    out.push_back(std::move(m));
  }
  return out;
}

// Composition factors along a maximal chain of the submodule lattice,
// returned as restricted action lists.
inline std::vector<std::vector<Mat>> composition_factors(const std::vector<Mat>& actions,
                                                         std::size_t n, long p) {
  std::vector<std::vector<Mat>> factors;
  std::vector<Mat> cur = actions;
  std::size_t cur_dim = n;
  while (cur_dim > 0) {
    // a minimum-dimension cyclic submodule is simple
    Space w;
    std::vector<long> digits(cur_dim, 0);
    while (w.dim() != 1) {
      std::size_t i = 0;
      while (i < cur_dim && ++digits[i] >= p) digits[i++] = 0;
      if (i == cur_dim) break;
      Row v(cur_dim);
      for (std::size_t j = 0; j < cur_dim; ++j) v[j] = digits[j];
      Space s = spin(cur, v, p);
      if (w.dim() == 0 || s.dim() < w.dim()) w = s;
    }
    factors.push_back(restrict_action(cur, w, p));
    cur = quotient_action(cur, w, cur_dim, p);
    cur_dim -= w.dim();
  }
  return factors;
}

// Brute isomorphism test between two modules given by action lists: solve the
// intertwiner space by enumerating coefficient combinations of a basis found
// by elementary row reduction of the intertwining system.
inline std::vector<Mat> intertwiners(const std::vector<Mat>& a, const std::vector<Mat>& b,
                                     std::size_t na, std::size_t nb, long p) {
  // unknowns X (nb x na), equations X A_i = B_i X
  std::size_t unknowns = na * nb;
  Mat sys;
  for (std::size_t g = 0; g < a.size(); ++g) {
    for (std::size_t r = 0; r < nb; ++r) {
      for (std::size_t c = 0; c < na; ++c) {
        Row eq(unknowns, 0);
        for (std::size_t k = 0; k < na; ++k)
          eq[r * na + k] = (eq[r * na + k] + a[g][k][c]) % p;
        for (std::size_t k = 0; k < nb; ++k)
          eq[k * na + c] = (((eq[k * na + c] - b[g][r][k]) % p) + p) % p;
        sys.push_back(std::move(eq));
      }
    }
  }
  std::vector<std::size_t> pivots = rref(sys, p);
  std::vector<bool> is_pivot(unknowns, false);
  for (auto q : pivots) is_pivot[q] = true;
  std::vector<Mat> basis;
  for (std::size_t c = 0; c < unknowns; ++c) {
    if (is_pivot[c]) continue;
    Row v(unknowns, 0);
    v[c] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = ((-sys[i][c]) % p + p) % p;
    Mat x(nb, Row(na, 0));
    for (std::size_t r = 0; r < nb; ++r)
      for (std::size_t cc = 0; cc < na; ++cc) x[r][cc] = v[r * na + cc];
    basis.push_back(std::move(x));
  }
  return basis;
}

inline bool invertible(Mat m, long p) {
  if (m.empty()) return true;
  std::size_t n = m.size();
  return rref(m, p).size() == n;
}

// Modules isomorphic iff some combination of the intertwiner basis is
// invertible; enumerate all p^h combinations (h is tiny in oracle use).
inline bool iso_brute(const std::vector<Mat>& a, const std::vector<Mat>& b, std::size_t na,
                      std::size_t nb, long p) {
  if (na != nb) return false;
  if (na == 0) return true;
  std::vector<Mat> basis = intertwiners(a, b, na, nb, p);
  if (basis.empty()) return false;
  std::vector<long> digits(basis.size(), 0);
  while (true) {
    std::size_t i = 0;
    while (i < basis.size() && ++digits[i] >= p) digits[i++] = 0;
    if (i == basis.size()) return false;
    Mat x(nb, Row(na, 0));
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (digits[k] == 0) continue;
      for (std::size_t r = 0; r < nb; ++r)
        for (std::size_t c = 0; c < na; ++c)
          x[r][c] = (x[r][c] + digits[k] * basis[k][r][c]) % p;
    }
    if (invertible(x, p)) return true;
  }
}

// A direct-sum decomposition into indecomposables, by exhaustion over the
// submodule lattice: peel off a minimal-dimension complemented summand.
inline std::vector<Space> indecomposable_summands(const std::set<Space>& subs,
                                                  std::size_t n, long p) {
  std::vector<Space> out;
  Space cur;  // start from the full space
  for (const auto& s : subs)
    if (s.dim() == n) cur = s;
  while (cur.dim() > 0) {
    Space best_u, best_v;
    bool found = false;
    for (const auto& u : subs) {
      if (u.dim() == 0 || u.dim() == cur.dim() || !space_leq(u, cur, p)) continue;
      if (found && u.dim() >= best_u.dim()) continue;
      for (const auto& v : subs) {
        if (v.dim() + u.dim() != cur.dim() || !space_leq(v, cur, p)) continue;
        // complementary iff the dimensions add and the join fills cur
        if (join(u, v, p).dim() != cur.dim()) continue;
        best_u = u;
        best_v = v;
        found = true;
        break;
      }
    }
    if (!found) {
      out.push_back(cur);  // cur itself is indecomposable
      break;
    }
    out.push_back(best_u);
    cur = best_v;
  }
  return out;
}

}  // namespace oracle
