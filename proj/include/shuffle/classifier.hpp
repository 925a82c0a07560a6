#pragma once

// Closed-form classification of the shuffle groups.
//
// For k >= 3 the group generated by the k-pile shuffles on k*n cards is, in
// this order of precedence:
//
//   (a) k*n = k^m:                    S_k wr C_m (product action),
//                                     order (k!)^m * m
//   (b) k = 4, k*n = 2^m, m odd:      AGL(m, 2), order 2^m * prod(2^m - 2^i)
//   (c) n == 2 mod 4 and k == 0,1 mod 4, or n == 0 mod 4 (n not a power
//       of k): the alternating group A_{kn}
//   (d) otherwise:                    the symmetric group S_{kn}
//
// The precedence matters: (4, 2) and (4, 8) satisfy the congruences of (c)
// but belong to (b).
//
// For k = 2 the group is one of (exceptions first):
//
//   n = 6:            C_2^6  : PGL(2,5),  order 7680
//   n = 12:           C_2^11 : M_12,      order 194641920
//   n = 2^m:          C_2 wr C_{m+1} (product action), order 2^(m+1) * (m+1)
//   n == 0 mod 4:     C_2^(n-1) : A_n,    order 2^(n-1) * n!/2
//   n == 1 mod 4:     C_2^n : A_n,        order 2^n * n!/2
//   n == 2 mod 4:     C_2 wr S_n (imprimitive), order 2^n * n!
//   n == 3 mod 4:     C_2^(n-1) : S_n (Weyl group of type D_n),
//                     order 2^(n-1) * n!
//
// n = 1 (a two-card deck, where the shuffle is trivial) is routed to the
// primitive wreath case with m = 0 and flagged as an extrapolation; the
// resulting order 2 is confirmed by the engine.
//
// Independently of the case split, the group lies in the alternating group
// A_{kn} exactly when (n == 2 mod 4 and k == 0,1 mod 4) or n == 0 mod 4;
// this is equivalent to all generators being even and is exposed as
// parity_subgroup_test().

#include <stdexcept>
#include <string>

#include "shuffle/codec.hpp"
#include "shuffle/engine.hpp"

namespace shuffle {

enum class GroupCase {
  WreathPrimitive,  // S_k wr C_m, k >= 3
  AffineAGL,        // AGL(m, 2), k = 4
  Alternating,      // A_{kn}
  Symmetric,        // S_{kn}
  K2A,              // C_2^(n-1) : A_n
  K2B,              // C_2^n : A_n
  K2WreathImprim,   // C_2 wr S_n
  K2WeylD,          // C_2^(n-1) : S_n
  K2PrimWreath,     // C_2 wr C_{m+1}
  K2PGL25,          // C_2^6 : PGL(2,5)
  K2M12,            // C_2^11 : M_12
};

inline const char* case_tag(GroupCase c) {
  switch (c) {
    case GroupCase::WreathPrimitive: return "WREATH_PRIMITIVE";
    case GroupCase::AffineAGL: return "AFFINE_AGL";
    case GroupCase::Alternating: return "ALTERNATING";
    case GroupCase::Symmetric: return "SYMMETRIC";
    case GroupCase::K2A: return "K2_A";
    case GroupCase::K2B: return "K2_B";
    case GroupCase::K2WreathImprim: return "K2_WREATH_IMPRIM";
    case GroupCase::K2WeylD: return "K2_WEYL_D";
    case GroupCase::K2PrimWreath: return "K2_PRIM_WREATH";
    case GroupCase::K2PGL25: return "K2_PGL25";
    case GroupCase::K2M12: return "K2_M12";
  }
  throw std::logic_error("case_tag: unreachable");
}

struct GroupDescriptor {
  int k = 0;
  long long n = 0;
  int s = 0;
  long long t = 0;
  GroupCase group_case = GroupCase::Symmetric;
  bool has_m = false;
  int m = 0;                  // wreath/affine parameter when has_m
  BigInt predicted_order;
  bool two_transitive = false;
  bool in_alternating = false;
  bool extrapolated = false;  // degenerate tiny deck outside the stated cases
};

namespace detail {

// Returns e >= 0 with n == base^e, or -1 if n is not a power of base.
inline int exact_log(long long base, long long n) {
  int e = 0;
  long long v = 1;
  while (v < n) {
    v *= base;
    ++e;
    if (v > n) return -1;
  }
  return v == n ? e : -1;
}

inline BigInt agl_order(int m) {
  // |AGL(m,2)| = 2^m * |GL(m,2)| = 2^m * prod_{i<m} (2^m - 2^i).
  BigInt r = BigInt(1) << m;
  BigInt top = BigInt(1) << m;
  for (int i = 0; i < m; ++i) r *= top - (BigInt(1) << i);
  return r;
}

inline BigInt pow2(long long e) { return BigInt(1) << e; }

}  // namespace detail

// Whether the shuffle group on k*n cards lies inside A_{kn}.  This closed
// form is equivalent to every generator being an even permutation.
inline bool parity_subgroup_test(int k, long long n) {
  if (k < 2 || n < 1) throw std::invalid_argument("parity_subgroup_test: bad deck");
  return (n % 4 == 2 && (k % 4 == 0 || k % 4 == 1)) || n % 4 == 0;
}

inline GroupDescriptor predict(int k, long long n) {
  ShuffleParams p = derive_params(k, n);
  GroupDescriptor d;
  d.k = k;
  d.n = n;
  d.s = p.s;
  d.t = p.t;
  d.in_alternating = parity_subgroup_test(k, n);

  if (k == 2) {
    int m2 = detail::exact_log(2, n);
    if (n == 6) {
      d.group_case = GroupCase::K2PGL25;
      d.predicted_order = 7680;
    } else if (n == 12) {
      d.group_case = GroupCase::K2M12;
      d.predicted_order = 194641920;
    } else if (m2 >= 0) {
      d.group_case = GroupCase::K2PrimWreath;
      d.has_m = true;
      d.m = m2;
      d.predicted_order = detail::pow2(m2 + 1) * (m2 + 1);
      d.extrapolated = (n == 1);
    } else if (n % 4 == 0) {
      d.group_case = GroupCase::K2A;
      d.predicted_order = detail::pow2(n - 1) * alternating_order(n);
    } else if (n % 4 == 1) {
      d.group_case = GroupCase::K2B;
      d.predicted_order = detail::pow2(n) * alternating_order(n);
    } else if (n % 4 == 2) {
      d.group_case = GroupCase::K2WreathImprim;
      d.predicted_order = detail::pow2(n) * factorial(n);
    } else {
      d.group_case = GroupCase::K2WeylD;
      d.predicted_order = detail::pow2(n - 1) * factorial(n);
    }
    d.two_transitive = (n == 1);
    return d;
  }

  long long kn = p.degree();
  int mk = detail::exact_log(k, n);
  int m2 = detail::exact_log(2, kn);
  if (mk >= 0) {
    d.group_case = GroupCase::WreathPrimitive;
    d.has_m = true;
    d.m = mk + 1;  // k*n = k^(mk+1)
    BigInt kf = factorial(k);
    d.predicted_order = 1;
    for (int i = 0; i < d.m; ++i) d.predicted_order *= kf;
    d.predicted_order *= d.m;
    d.two_transitive = (d.m == 1);
  } else if (k == 4 && m2 >= 0) {
    d.group_case = GroupCase::AffineAGL;
    d.has_m = true;
    d.m = m2;
    if (d.m % 2 == 0) {
      // Even exponents mean n is a power of 4, already handled above.
      throw std::logic_error("predict: affine case with even exponent");
    }
    d.predicted_order = detail::agl_order(d.m);
    d.two_transitive = true;
  } else if (d.in_alternating) {
    d.group_case = GroupCase::Alternating;
    d.predicted_order = alternating_order(kn);
    d.two_transitive = true;
  } else {
    d.group_case = GroupCase::Symmetric;
    d.predicted_order = factorial(kn);
    d.two_transitive = true;
  }
  return d;
}

// Consistency of the prediction against engine-computed facts.
struct VerificationRecord {
  GroupDescriptor descriptor;
  BigInt engine_order;
  bool engine_two_transitive = false;
  bool order_matches = false;
  bool two_transitive_matches = false;
  bool pass = false;
};

inline VerificationRecord verify_against_engine(int k, long long n,
                                                const BigInt& engine_order,
                                                bool engine_two_transitive) {
  VerificationRecord r;
  r.descriptor = predict(k, n);
  r.engine_order = engine_order;
  r.engine_two_transitive = engine_two_transitive;
  r.order_matches = (engine_order == r.descriptor.predicted_order);
  r.two_transitive_matches =
      (engine_two_transitive == r.descriptor.two_transitive);
  r.pass = r.order_matches && r.two_transitive_matches;
  return r;
}

}  // namespace shuffle
