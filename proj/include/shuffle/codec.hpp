#pragma once

// Deck parameters and card coordinates for k-pile shuffles.
//
// A deck of k*n cards is laid out as k piles of n cards; the card in position
// i + j*n (0-based, i in [n], j in [k]) is the i-th card of pile j.  Two
// families of permutations act on the deck:
//
//   sigma:  (i + j*n) -> i*k + j     the standard shuffle: pick up the top
//                                    card of each pile in order, repeat
//   rho_tau:(i + j*n) -> i + tau(j)*n  permute whole piles by tau in Sym([k])
//
// Writing n = k^s * t with k not dividing t, every position x in [k*n] has a
// unique expansion
//
//   x = (k^s*x_s + ... + k*x_1 + x_0) * t + X,   digits x_i in [k], X in [t]
//
// denoted (x_s, ..., x_1, x_0; X) with the most significant digit first.  In
// these coordinates sigma and rho_tau act by simple digit arithmetic, which
// this header implements alongside the plain permutation forms.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "shuffle/perm.hpp"

namespace shuffle {

struct ShuffleParams {
  int k = 0;            // number of piles, k >= 2
  long long n = 0;      // cards per pile, n >= 1
  int s = 0;            // multiplicity of k in n
  long long t = 0;      // cofactor: n = k^s * t with k not dividing t
  long long degree() const { return static_cast<long long>(k) * n; }
};

// Factors n as k^s * t and validates the deck shape.
inline ShuffleParams derive_params(int k, long long n) {
  if (k < 2) throw std::invalid_argument("derive_params: requires k >= 2");
  if (n < 1) throw std::invalid_argument("derive_params: requires n >= 1");
  ShuffleParams p;
  p.k = k;
  p.n = n;
  p.s = 0;
  p.t = n;
  while (p.t % k == 0) {
    p.t /= k;
    ++p.s;
  }
  return p;
}

// Position of card x written as (x_s, ..., x_1, x_0; X); digits are stored
// most significant first, so digits.front() is x_s and digits.back() is x_0.
struct Coord {
  std::vector<int> digits;
  long long rem = 0;  // X in [t]

  // Digit x_i (i = 0 is least significant).
  int digit(int i) const { return digits[digits.size() - 1 - i]; }
  int& digit(int i) { return digits[digits.size() - 1 - i]; }

  friend bool operator==(const Coord& a, const Coord& b) {
    return a.digits == b.digits && a.rem == b.rem;
  }
  friend bool operator!=(const Coord& a, const Coord& b) { return !(a == b); }
};

inline Coord encode(const ShuffleParams& p, long long x) {
  if (x < 0 || x >= p.degree()) {
    throw std::out_of_range("encode: position out of range");
  }
  Coord c;
  c.rem = x % p.t;
  long long q = x / p.t;
  c.digits.assign(p.s + 1, 0);
  for (int i = 0; i <= p.s; ++i) {
    c.digit(i) = static_cast<int>(q % p.k);
    q /= p.k;
  }
  return c;
}

inline long long decode(const ShuffleParams& p, const Coord& c) {
  if (static_cast<int>(c.digits.size()) != p.s + 1) {
    throw std::invalid_argument("decode: wrong number of digits");
  }
  if (c.rem < 0 || c.rem >= p.t) {
    throw std::out_of_range("decode: remainder out of range");
  }
  long long q = 0;
  for (int d : c.digits) {
    if (d < 0 || d >= p.k) throw std::out_of_range("decode: digit out of range");
    q = q * p.k + d;
  }
  return q * p.t + c.rem;
}

// "(x_s,...,x_0;X)", e.g. "(2,1;0)".
inline std::string format_coord(const Coord& c) {
  std::string out = "(";
  for (std::size_t i = 0; i < c.digits.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c.digits[i]);
  }
  out += ';';
  out += std::to_string(c.rem);
  out += ')';
  return out;
}

inline Coord parse_coord(const std::string& text) {
  Coord c;
  std::size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && text[i] == ' ') ++i; };
  skip_ws();
  if (i >= text.size() || text[i] != '(') {
    throw std::invalid_argument("parse_coord: expected '('");
  }
  ++i;
  bool in_rem = false;
  for (;;) {
    skip_ws();
    std::size_t len = 0;
    long long val = std::stoll(text.substr(i), &len);
    if (len == 0) throw std::invalid_argument("parse_coord: expected number");
    i += len;
    if (in_rem) {
      c.rem = val;
      skip_ws();
      if (i >= text.size() || text[i] != ')') {
        throw std::invalid_argument("parse_coord: expected ')'");
      }
      return c;
    }
    c.digits.push_back(static_cast<int>(val));
    skip_ws();
    if (i < text.size() && text[i] == ',') {
      ++i;
    } else if (i < text.size() && text[i] == ';') {
      ++i;
      in_rem = true;
    } else {
      throw std::invalid_argument("parse_coord: expected ',' or ';'");
    }
  }
}

// ---------------------------------------------------------------------------
// Point-wise actions.

inline long long sigma_point(const ShuffleParams& p, long long x) {
  long long i = x % p.n, j = x / p.n;
  return i * p.k + j;
}

inline long long sigma_inv_point(const ShuffleParams& p, long long y) {
  long long i = y / p.k, j = y % p.k;
  return i + j * p.n;
}

inline long long rho_point(const ShuffleParams& p, const Perm& tau,
                           long long x) {
  long long i = x % p.n, j = x / p.n;
  return i + static_cast<long long>(tau[static_cast<Point>(j)]) * p.n;
}

// ---------------------------------------------------------------------------
// Whole permutations.

inline Perm sigma_perm(const ShuffleParams& p) {
  std::vector<Point> img(p.degree());
  for (long long j = 0; j < p.k; ++j) {
    for (long long i = 0; i < p.n; ++i) {
      img[i + j * p.n] = static_cast<Point>(i * p.k + j);
    }
  }
  return Perm::from_images(std::move(img));
}

// The pile permutation induced by tau in Sym([k]).
inline Perm rho_perm(const ShuffleParams& p, const Perm& tau) {
  if (static_cast<int>(tau.degree()) != p.k) {
    throw std::invalid_argument("rho_perm: tau must permute [k]");
  }
  std::vector<Point> img(p.degree());
  for (long long j = 0; j < p.k; ++j) {
    long long jt = tau[static_cast<Point>(j)];
    for (long long i = 0; i < p.n; ++i) {
      img[i + j * p.n] = static_cast<Point>(i + jt * p.n);
    }
  }
  return Perm::from_images(std::move(img));
}

// ---------------------------------------------------------------------------
// Coordinate forms of the same actions.  These are all straight digit
// arithmetic; the tests check them against the permutations above.

// sigma:  (x_s,...,x_0;X) -> (x_{s-1},...,x_0,q;r)  with q*t + r = k*X + x_s.
inline Coord sigma_coord(const ShuffleParams& p, const Coord& c) {
  long long top = static_cast<long long>(p.k) * c.rem + c.digit(p.s);
  Coord out;
  out.digits.assign(c.digits.begin() + 1, c.digits.end());
  out.digits.push_back(static_cast<int>(top / p.t));
  out.rem = top % p.t;
  return out;
}

// sigma^-1:  (x_s,...,x_0;X) -> (q,x_s,...,x_1;r)  with r*k + q = x_0*t + X,
// i.e. q = (x_0*t + X) mod k and r = (x_0*t + X) div k.
inline Coord sigma_inverse_coord(const ShuffleParams& p, const Coord& c) {
  long long low = c.digit(0) * p.t + c.rem;
  Coord out;
  out.digits.assign(1, static_cast<int>(low % p.k));
  out.digits.insert(out.digits.end(), c.digits.begin(), c.digits.end() - 1);
  out.rem = low / p.k;
  return out;
}

// Image of c under sigma^i as a plain position, for 0 <= i <= s+1, computed in
// closed form:
//
//   c^(sigma^i) = (sum_{j=i}^{s} k^j x_{j-i}) * t
//                 + k^i * X + sum_{j=0}^{i-1} k^(i-1-j) * x_{s-j}
inline long long sigma_power_point(const ShuffleParams& p, const Coord& c,
                                   int i) {
  if (i < 0 || i > p.s + 1) {
    throw std::out_of_range("sigma_power_point: exponent must be in [0, s+1]");
  }
  long long tuple = 0;
  for (int j = p.s; j >= i; --j) {
    tuple = tuple * p.k + c.digit(j - i);
  }
  for (int j = i; j > 0; --j) tuple *= p.k;  // shift by k^i
  long long spill = 0;
  for (int j = 0; j < i; ++j) {
    spill = spill * p.k + c.digit(p.s - j);
  }
  long long ki = 1;
  for (int j = 0; j < i; ++j) ki *= p.k;
  return tuple * p.t + ki * c.rem + spill;
}

// rho_tau on coordinates just maps the top digit through tau:
//   (x_s,...,x_0;X) -> (tau(x_s),x_{s-1},...,x_0;X)
inline Coord rho_top_coord(const ShuffleParams& p, const Coord& c,
                           const Perm& tau) {
  if (static_cast<int>(tau.degree()) != p.k) {
    throw std::invalid_argument("rho_top_coord: tau must permute [k]");
  }
  Coord out = c;
  out.digit(p.s) = static_cast<int>(tau[static_cast<Point>(c.digit(p.s))]);
  return out;
}

// ---------------------------------------------------------------------------
// Generating sets.

enum class GenSet {
  Min,   // sigma, rho_(0 1), rho_(0 1 ... k-1)
  Full,  // sigma and rho_tau for every tau in Sym([k])
};

// Embeds a permutation of [k-1] into Sym([k]) fixing the last pile k-1.
inline Perm embed_fixing_last(int k, const Perm& tau) {
  if (static_cast<int>(tau.degree()) != k - 1) {
    throw std::invalid_argument("embed_fixing_last: tau must permute [k-1]");
  }
  std::vector<Point> img(k);
  for (int j = 0; j + 1 < k; ++j) img[j] = tau[j];
  img[k - 1] = static_cast<Point>(k - 1);
  return Perm::from_images(std::move(img));
}

// Generators of the shuffle group on k*n cards.  The group generated is the
// same for both choices; Full is exponentially larger and only useful for
// cross-checks at small k.
inline std::vector<Perm> shuffle_generators(const ShuffleParams& p,
                                            GenSet choice = GenSet::Min) {
  std::vector<Perm> gens;
  gens.push_back(sigma_perm(p));
  if (choice == GenSet::Min) {
    gens.push_back(rho_perm(p, Perm::transposition(p.k, 0, 1)));
    if (p.k > 2) gens.push_back(rho_perm(p, Perm::forward_cycle(p.k)));
  } else {
    // All tau in Sym([k]) in lexicographic image order, identity excluded.
    std::vector<Point> img(p.k);
    for (int j = 0; j < p.k; ++j) img[j] = static_cast<Point>(j);
    while (std::next_permutation(img.begin(), img.end())) {
      gens.push_back(rho_perm(p, Perm::from_images(img)));
    }
  }
  return gens;
}

// Generators of the subgroup generated by sigma and the pile permutations
// that fix the last pile; every element fixes the bottom card k*n - 1.
inline std::vector<Perm> stabilizer_generators(const ShuffleParams& p) {
  if (p.k < 3) {
    throw std::invalid_argument("stabilizer_generators: requires k >= 3");
  }
  std::vector<Perm> gens;
  gens.push_back(sigma_perm(p));
  gens.push_back(
      rho_perm(p, embed_fixing_last(p.k, Perm::transposition(p.k - 1, 0, 1))));
  if (p.k > 3) {
    gens.push_back(
        rho_perm(p, embed_fixing_last(p.k, Perm::forward_cycle(p.k - 1))));
  }
  return gens;
}

}  // namespace shuffle
