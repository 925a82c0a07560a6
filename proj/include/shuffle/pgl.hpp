#pragma once

// Exact fixed-point ratios.
//
// Two facts are packaged here, both checked exactly with rational arithmetic:
//
//   * a pile permutation rho_tau fixes the same fraction of the kn cards as
//     tau fixes of the k piles (each fixed pile contributes its n cards);
//
//   * for the projective linear groups over the field with three elements,
//     acting on the points of projective space, the fixed-point ratio of an
//     element with matrix representative g is
//
//         (3^a + 3^b - 2) / (3^d - 1),
//
//     where a and b are the dimensions of the kernels of g - I and g + I.
//     Both representatives g and -g of the same projective element give the
//     same value, since negating g swaps a and b.
//
// The F_3 linear algebra is self-contained: matrices are stored row-major
// with entries in {0,1,2}, projective points are the nonzero column vectors
// scaled so their first nonzero entry is 1, and ranks come from Gaussian
// elimination mod 3.  Exhaustive checks stream over all of GL(d,3); d = 4
// (about 24 million invertible matrices) is the practical ceiling.

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shuffle/perm.hpp"

namespace shuffle {

// Fraction of the k piles fixed by tau; equals the fraction of all kn cards
// fixed by the lifted shuffle rho_tau, for every n.
inline Fraction pile_fixed_ratio(const Perm& tau) {
  return Fraction(static_cast<long long>(tau.num_fixed_points()),
                  static_cast<long long>(tau.degree()));
}

// ---------------------------------------------------------------------------
// Linear algebra over F_3.

struct F3Matrix {
  int d = 0;
  std::vector<int> a;  // row-major, d*d entries in {0,1,2}

  explicit F3Matrix(int dim = 0)
      : d(dim), a(static_cast<std::size_t>(dim) * dim, 0) {}

  int at(int i, int j) const { return a[static_cast<std::size_t>(i) * d + j]; }
  int& at(int i, int j) { return a[static_cast<std::size_t>(i) * d + j]; }

  static F3Matrix identity(int dim) {
    F3Matrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
  }

  bool operator==(const F3Matrix& o) const { return d == o.d && a == o.a; }
};

inline F3Matrix f3_mul(const F3Matrix& x, const F3Matrix& y) {
  if (x.d != y.d) throw std::invalid_argument("f3_mul: dimension mismatch");
  F3Matrix z(x.d);
  for (int i = 0; i < x.d; ++i) {
    for (int j = 0; j < x.d; ++j) {
      int acc = 0;
      for (int l = 0; l < x.d; ++l) acc += x.at(i, l) * y.at(l, j);
      z.at(i, j) = acc % 3;
    }
  }
  return z;
}

// Rank over F_3 by Gaussian elimination (1 and 2 are their own inverses).
inline int f3_rank(F3Matrix m) {
  int rank = 0;
  for (int col = 0; col < m.d && rank < m.d; ++col) {
    int pivot = -1;
    for (int row = rank; row < m.d; ++row) {
      if (m.at(row, col) != 0) {
        pivot = row;
        break;
      }
    }
    if (pivot < 0) continue;
    for (int j = 0; j < m.d; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
    int inv = m.at(rank, col);  // 1 or 2, self-inverse mod 3
    for (int j = 0; j < m.d; ++j) m.at(rank, j) = m.at(rank, j) * inv % 3;
    for (int row = 0; row < m.d; ++row) {
      if (row == rank || m.at(row, col) == 0) continue;
      int f = m.at(row, col);
      for (int j = 0; j < m.d; ++j) {
        m.at(row, j) = (m.at(row, j) + (3 - f) * m.at(rank, j)) % 3;
      }
    }
    ++rank;
  }
  return rank;
}

inline bool f3_invertible(const F3Matrix& m) { return f3_rank(m) == m.d; }

// dim ker(g - c*I) over F_3, for c in {1, 2} (2 plays the role of -1).
inline int f3_kernel_dim(const F3Matrix& g, int c) {
  F3Matrix m = g;
  for (int i = 0; i < m.d; ++i) m.at(i, i) = (m.at(i, i) + 3 - c) % 3;
  return m.d - f3_rank(m);
}

inline long long pow3(int e) {
  long long r = 1;
  while (e-- > 0) r *= 3;
  return r;
}

// |GL(d,3)| = prod_i (3^d - 3^i); the projective group is half that size.
inline long long gl_order_f3(int d) {
  long long order = 1;
  for (int i = 0; i < d; ++i) order *= pow3(d) - pow3(i);
  return order;
}

inline long long pgl_order_f3(int d) { return gl_order_f3(d) / 2; }

// Streaming enumeration of GL(d,3) by base-3 matrix code; d <= 4 keeps the
// candidate count at 3^16.
inline void for_each_gl_f3(int d, const std::function<void(const F3Matrix&)>& fn) {
  if (d < 1 || d > 4) {
    throw std::invalid_argument("for_each_gl_f3: supported for 1 <= d <= 4");
  }
  long long total = 1;
  for (int i = 0; i < d * d; ++i) total *= 3;
  F3Matrix m(d);
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    for (int i = 0; i < d * d; ++i) {
      m.a[static_cast<std::size_t>(i)] = static_cast<int>(c % 3);
      c /= 3;
    }
    if (f3_invertible(m)) fn(m);
  }
}

// Materialized variant for tests; kept to d <= 3 (11232 matrices at most).
inline std::vector<F3Matrix> enumerate_gl_f3(int d) {
  if (d > 3) {
    throw std::invalid_argument("enumerate_gl_f3: supported for 1 <= d <= 3");
  }
  std::vector<F3Matrix> out;
  for_each_gl_f3(d, [&out](const F3Matrix& m) { out.push_back(m); });
  return out;
}

// ---------------------------------------------------------------------------
// The projective point set and the induced permutation action.

// Canonical representatives: nonzero vectors whose first nonzero entry is 1,
// (3^d - 1)/2 of them, plus a code table for constant-time lookup.
struct ProjectiveSpaceF3 {
  int d = 0;
  std::vector<std::vector<int>> points;
  std::vector<Point> index_of_code;  // base-3 vector code -> point index

  explicit ProjectiveSpaceF3(int dim) : d(dim) {
    long long total = pow3(dim);
    index_of_code.assign(static_cast<std::size_t>(total),
                         static_cast<Point>(-1));
    for (long long code = 1; code < total; ++code) {
      std::vector<int> v(static_cast<std::size_t>(dim));
      long long c = code;
      for (int i = dim - 1; i >= 0; --i) {
        v[static_cast<std::size_t>(i)] = static_cast<int>(c % 3);
        c /= 3;
      }
      int lead = 0;
      for (int x : v) {
        if (x != 0) {
          lead = x;
          break;
        }
      }
      if (lead == 1) {
        index_of_code[static_cast<std::size_t>(code)] =
            static_cast<Point>(points.size());
        points.push_back(std::move(v));
      }
    }
  }

  std::size_t size() const { return points.size(); }
};

namespace detail {

inline long long f3_vec_code(const std::vector<int>& v) {
  long long code = 0;
  for (int x : v) code = code * 3 + x;
  return code;
}

}  // namespace detail

// Permutation induced by g on the projective points (matrix times column
// vector, then rescale to the canonical representative).
inline Perm pgl_action_f3(const F3Matrix& g, const ProjectiveSpaceF3& space) {
  if (g.d != space.d) {
    throw std::invalid_argument("pgl_action_f3: dimension mismatch");
  }
  std::vector<Point> images(space.size());
  std::vector<int> w(static_cast<std::size_t>(g.d));
  for (std::size_t i = 0; i < space.size(); ++i) {
    const std::vector<int>& v = space.points[i];
    int lead = 0;
    for (int r = 0; r < g.d; ++r) {
      int acc = 0;
      for (int c = 0; c < g.d; ++c) {
        acc += g.at(r, c) * v[static_cast<std::size_t>(c)];
      }
      acc %= 3;
      w[static_cast<std::size_t>(r)] = acc;
      if (lead == 0 && acc != 0) lead = acc;
    }
    if (lead == 0) throw std::logic_error("pgl_action_f3: singular matrix");
    if (lead == 2) {
      for (int& x : w) x = x * 2 % 3;
    }
    Point img = space.index_of_code[static_cast<std::size_t>(
        detail::f3_vec_code(w))];
    if (img == static_cast<Point>(-1)) {
      throw std::logic_error("pgl_action_f3: image not a canonical point");
    }
    images[i] = img;
  }
  return Perm::from_images(images);
}

// Predicted fixed-point ratio of g on projective points.
inline Fraction predicted_projective_fixed_ratio(const F3Matrix& g) {
  int a = f3_kernel_dim(g, 1);
  int b = f3_kernel_dim(g, 2);
  return Fraction(pow3(a) + pow3(b) - 2, pow3(g.d) - 1);
}

struct ProjectiveRatioReport {
  int d = 0;
  long long matrices_checked = 0;  // all of GL(d,3)
  long long distinct_actions = 0;  // equals |PGL(d,3)| when tracked, else -1
  long long mismatches = 0;
  std::map<std::pair<int, int>, long long> kernel_pair_counts;  // (a,b) hist
  bool ok = false;
};

// Check the closed form against the actual action for every element of
// GL(d,3); each projective element is covered by both its representatives.
// Distinct induced permutations are counted for d <= 3 (for d = 4 the table
// would not fit in memory; the per-element check still runs).
inline ProjectiveRatioReport check_projective_ratios(int d) {
  if (d < 2 || d > 4) {
    throw std::invalid_argument(
        "check_projective_ratios: supported for 2 <= d <= 4");
  }
  ProjectiveRatioReport rep;
  rep.d = d;
  ProjectiveSpaceF3 space(d);
  const bool track_actions = d <= 3;
  std::map<std::vector<Point>, int> seen;
  for_each_gl_f3(d, [&](const F3Matrix& g) {
    Perm act = pgl_action_f3(g, space);
    ++rep.matrices_checked;
    int a = f3_kernel_dim(g, 1);
    int b = f3_kernel_dim(g, 2);
    rep.kernel_pair_counts[{a, b}] += 1;
    Fraction predicted(pow3(a) + pow3(b) - 2, pow3(d) - 1);
    if (act.fixed_point_ratio() != predicted) ++rep.mismatches;
    if (track_actions) seen[act.images()] += 1;
  });
  rep.distinct_actions =
      track_actions ? static_cast<long long>(seen.size()) : -1;
  rep.ok = rep.mismatches == 0 && rep.matrices_checked == gl_order_f3(d) &&
           (!track_actions || rep.distinct_actions == pgl_order_f3(d));
  return rep;
}

}  // namespace shuffle
