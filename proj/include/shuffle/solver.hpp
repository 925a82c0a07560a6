#pragma once

// Constructive transitivity certificates for the bottom-card stabilizer.
//
// Let n = k^s * t with k >= 3, s >= 1, t > 1 (k does not divide t).  The
// subgroup generated by sigma and the pile permutations fixing the last pile
// fixes the bottom card kn-1; this header shows it is transitive on the other
// kn-1 cards by constructing, for every card x, an explicit word over that
// subgroup moving x to 0.  Transitivity of the stabilizer makes the full
// shuffle group 2-transitive.
//
// The construction is a descent on T(x), the number of digits of x equal to
// k-1 in the (x_s,...,x_0;X) coordinates of codec.hpp:
//
//   T = 0:        zero every digit (CLEAR), then walk the remainder down to 0
//                 one arithmetic step at a time (DESCEND);
//   T = s+1:      sigma^(s+1) maps x strictly downward (COLLAPSE);
//   1 <= T <= s:  rotate digits into the pattern (...,k-1,0;X) (NORMALIZE),
//                 then remove one maxed digit, branching on t mod k (PEEL_A
//                 when t mod k != k-1, PEEL_B when t mod k == k-1).
//
// Every step is validated against its claimed digit pattern as it is applied;
// a violation, or exceeding the step budget 16*(s+2)*k*t, throws
// InternalContradiction (it would indicate a bug, not bad input).  Traces for
// all cards bundle into a certificate that an independent checker replays by
// pure word evaluation, confirming each trace token fixes the bottom card.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shuffle/codec.hpp"
#include "shuffle/word.hpp"

namespace shuffle {

struct InternalContradiction : std::runtime_error {
  explicit InternalContradiction(const std::string& what)
      : std::runtime_error("internal contradiction: " + what) {}
};

// Number of digits of x equal to k-1.
inline int count_maxed_digits(const ShuffleParams& p, long long x) {
  Coord c = encode(p, x);
  int cnt = 0;
  for (int d : c.digits) {
    if (d == p.k - 1) ++cnt;
  }
  return cnt;
}

// The solver's applicability conditions; throws invalid_argument otherwise.
inline void require_solvable(const ShuffleParams& p) {
  if (p.k < 3) {
    throw std::invalid_argument(
        "solver: requires k >= 3 (with k = 2 the bottom-card stabilizer is "
        "not transitive on the rest)");
  }
  if (p.s < 1) {
    throw std::invalid_argument(
        "solver: requires k to divide n (s >= 1); this deck has s = 0");
  }
  if (p.t < 2) {
    throw std::invalid_argument(
        "solver: requires n not a power of k (t > 1); such decks preserve a "
        "block structure and the group is not 2-transitive");
  }
}

// x has the shape (x_s,...,x_2,k-1,0;X) expected by the peel steps.
inline bool is_normalized(const ShuffleParams& p, long long x) {
  Coord c = encode(p, x);
  return c.digit(0) == 0 && c.digit(1) == p.k - 1;
}

namespace detail {

inline void append_word(Word& w, const Word& frag) {
  w.insert(w.end(), frag.begin(), frag.end());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Word builders.  Each returns the fragment for one step of the descent and
// throws InternalContradiction if its entry conditions do not hold.

// T(x) = 0: toggle every nonzero digit x_i to 0 with sigma^(s-i) rho_(0,x_i)
// sigma^-(s-i), landing on the bare remainder X < t.
inline Word word_clear_digits(const ShuffleParams& p, long long x) {
  Coord c = encode(p, x);
  Word w;
  for (int i = 0; i <= p.s; ++i) {
    int d = c.digit(i);
    if (d == p.k - 1) {
      throw InternalContradiction("clear: digit is already maxed");
    }
    if (d == 0) continue;
    append_sigma_pow(w, p.s - i);
    w.push_back(tok_rho_swap(p.k, 0, d));
    append_sigma_pow(w, -(p.s - i));
  }
  return w;
}

// One descent step for 0 < v < t (all digits zero).  Writes the branch name
// to *note.  The four branches send v to v/k, v - (v mod k), v - 1 and
// (v+1)/k respectively, so the result stays in [0, t) and strictly below v.
inline Word word_step_down(const ShuffleParams& p, long long v,
                           std::string* note) {
  if (v <= 0 || v >= p.t) {
    throw InternalContradiction("step_down: value not in (0, t)");
  }
  const int k = p.k;
  int c = static_cast<int>(v % k);
  Word w;
  if (c == 0) {
    w.push_back(tok_sigma_inv());
    if (note) *note = "divide";
  } else if (c != k - 1) {
    w.push_back(tok_beta_swap(k, 0, c));
    if (note) *note = "subtract";
  } else if (p.t % k != 1) {
    int cc = static_cast<int>((p.t + v) % k);
    if (cc == 0 || cc == k - 1) {
      throw InternalContradiction("step_down: carry digit out of range");
    }
    w.push_back(tok_alpha(p.s));
    w.push_back(tok_beta_swap(k, cc, cc - 1));
    w.push_back(tok_alpha(p.s));
    if (note) *note = "decrement";
  } else {
    w.push_back(tok_alpha(p.s));
    w.push_back(tok_beta_swap(k, 0, 1));
    w.push_back(tok_alpha(p.s));
    w.push_back(tok_sigma_inv());
    if (note) *note = "carry";
  }
  return w;
}

// 1 <= T(x) <= s: rotate digits until the two lowest are (k-1, 0), or until
// no digit is maxed at all.  Rotations never increase T.
inline Word word_normalize(const ShuffleParams& p, long long x) {
  const int k = p.k;
  const int maxed = count_maxed_digits(p, x);
  if (maxed < 1 || maxed > p.s) {
    throw InternalContradiction("normalize: T out of range");
  }
  Word w;
  long long cur = x;
  Coord c = encode(p, cur);

  // Shift the run of maxed low digits out of the way.
  int l = 0;
  while (l <= p.s && c.digit(l) == k - 1) ++l;
  if (l > p.s) throw InternalContradiction("normalize: every digit maxed");
  if (l > 0) {
    Word frag;
    append_sigma_pow(frag, -l);
    cur = apply_word(p, frag, cur);
    detail::append_word(w, frag);
    c = encode(p, cur);
  }
  if (count_maxed_digits(p, cur) == 0) return w;  // descent continues at T=0
  if (c.digit(0) == k - 1) {
    throw InternalContradiction("normalize: low digit maxed after shift");
  }
  // The shift can absorb some maxed digits (each incoming top digit is free
  // to be anything below k-1); the rotations below preserve what is left.
  const int live = count_maxed_digits(p, cur);

  // Rotate until the first maxed digit sits in position 1.  Each rotation
  // must push a non-maxed digit on top, nudging the low digit first when the
  // incoming one would be k-1 (both maxed would force k to divide t).
  int j = 0;
  while (c.digit(j + 1) != k - 1) {
    ++j;
    if (j + 1 > p.s) throw InternalContradiction("normalize: no maxed digit");
  }
  for (int i = 0; i < j; ++i) {
    int d0 = c.digit(0);
    if (d0 == k - 1) {
      throw InternalContradiction("normalize: rotating a maxed digit");
    }
    Word frag;
    long long low = static_cast<long long>(d0) * p.t + c.rem;
    if (low % k != k - 1) {
      frag.push_back(tok_sigma_inv());
    } else {
      int a = d0 >= 1 ? d0 - 1 : 1;
      if (((static_cast<long long>(a) * p.t + c.rem) % k) == k - 1) {
        throw InternalContradiction("normalize: k divides t");
      }
      append_sigma_pow(frag, p.s);
      frag.push_back(tok_rho_swap(k, d0, a));
      append_sigma_pow(frag, -(p.s + 1));
    }
    long long nxt = apply_word(p, frag, cur);
    if (count_maxed_digits(p, nxt) != live) {
      throw InternalContradiction("normalize: rotation changed T");
    }
    detail::append_word(w, frag);
    cur = nxt;
    c = encode(p, cur);
  }
  if (c.digit(1) != k - 1) {
    throw InternalContradiction("normalize: pattern not reached");
  }

  // Zero the low digit; it is not maxed, so T is unchanged.
  int low_digit = c.digit(0);
  if (low_digit == k - 1) {
    throw InternalContradiction("normalize: low digit maxed at finish");
  }
  if (low_digit != 0) {
    Word frag;
    append_sigma_pow(frag, p.s);
    frag.push_back(tok_rho_swap(k, 0, low_digit));
    append_sigma_pow(frag, -p.s);
    long long nxt = apply_word(p, frag, cur);
    detail::append_word(w, frag);
    cur = nxt;
    c = encode(p, cur);
  }
  if (c.digit(0) != 0 || c.digit(1) != k - 1 ||
      count_maxed_digits(p, cur) > maxed) {
    throw InternalContradiction("normalize: postcondition failed");
  }
  return w;
}

// T(x) = s+1 (every digit maxed), x < kn-1: sigma^(s+1) sends x to
// k^(s+1)*(X+1) - 1, which is strictly smaller.
inline Word word_collapse(const ShuffleParams& p, long long x) {
  Coord c = encode(p, x);
  if (count_maxed_digits(p, x) != p.s + 1) {
    throw InternalContradiction("collapse: not every digit maxed");
  }
  if (x >= p.degree() - 1) {
    throw InternalContradiction("collapse: bottom card is fixed");
  }
  Word w;
  append_sigma_pow(w, p.s + 1);
  long long ks1 = (p.n / p.t) * p.k;  // k^(s+1)
  long long expect = ks1 * (c.rem + 1) - 1;
  if (apply_word(p, w, x) != expect || expect >= x) {
    throw InternalContradiction("collapse: wrong image");
  }
  return w;
}

// Normalized x = (x_s,...,x_2,k-1,0;X) with t mod k != k-1: remove one maxed
// digit.  First adjust the remainder to a multiple of k, then branch on which
// of two digit-rotations avoids pushing a maxed digit back on top; two
// fallback words cover the case where both rotations are blocked, and a
// remainder of exactly 0 takes a preliminary hop to remainder t-1 and retries.
inline Word word_peel_a(const ShuffleParams& p, long long x) {
  const int k = p.k;
  const long long t = p.t;
  if (t % k == k - 1) throw InternalContradiction("peel_a: wrong t class");
  Word w;
  long long cur = x;
  for (int attempt = 0; attempt < 2; ++attempt) {
    Coord c = encode(p, cur);
    if (c.digit(0) != 0 || c.digit(1) != k - 1) {
      throw InternalContradiction("peel_a: not normalized");
    }
    int cm = static_cast<int>(c.rem % k);

    // Send the remainder X to Z = X + 1 - ((X+1) mod k), a multiple of k,
    // without touching the digits.
    Word frag;
    if (cm == k - 1) {
      int tc = static_cast<int>(t % k);
      int txc = static_cast<int>((t + c.rem) % k);
      if (tc == 0 || tc == k - 1 || txc != tc - 1) {
        throw InternalContradiction("peel_a: carry swap out of range");
      }
      frag.push_back(tok_alpha(p.s));
      frag.push_back(tok_beta_swap(k, tc, txc));
      frag.push_back(tok_alpha(p.s));
    } else if (cm != 0) {
      frag.push_back(tok_beta_swap(k, 0, cm));
    }
    long long z = apply_word(p, frag, cur);
    Coord zc = encode(p, z);
    if (zc.rem % k != 0) {
      throw InternalContradiction("peel_a: remainder not a multiple of k");
    }
    for (int i = 0; i <= p.s; ++i) {
      if (zc.digit(i) != c.digit(i)) {
        throw InternalContradiction("peel_a: digits moved");
      }
    }
    detail::append_word(w, frag);
    cur = z;
    long long Z = zc.rem;
    long long q = Z / k;

    Word tail;
    if (((k - 1) * t + q) % k != k - 1) {
      // Plain double rotation: the incoming digits are k-1 then something
      // smaller, absorbing the maxed digit in position 1.
      tail.push_back(tok_sigma_inv());
      tail.push_back(tok_sigma_inv());
    } else {
      long long W = (k - 1) * t + (Z + t - t % k) / k;
      if (W % k != k - 1) {
        // Toggle the low digit to 1 first; the second rotation then clears.
        tail.push_back(tok_alpha(p.s));
        tail.push_back(tok_sigma_inv());
        tail.push_back(tok_sigma_inv());
      } else if (q == 1) {
        if (k < 4) {
          throw InternalContradiction("peel_a: blocked branch at k = 3");
        }
        tail.push_back(tok_alpha(p.s));
        tail.push_back(tok_beta_swap(k, 0, 2));
        tail.push_back(tok_alpha(p.s));
        tail.push_back(tok_sigma_inv());
        tail.push_back(tok_sigma_inv());
      } else if (q >= 2) {
        int tc = static_cast<int>(t % k);
        if (tc == 0) throw InternalContradiction("peel_a: k divides t");
        tail.push_back(tok_alpha(p.s));
        tail.push_back(tok_beta_swap(k, tc, tc - 1));
        tail.push_back(tok_alpha(p.s));
        tail.push_back(tok_sigma_inv());
        tail.push_back(tok_beta_swap(k, k - 2, k - 3));
        tail.push_back(tok_sigma());
        tail.push_back(tok_alpha(p.s));
        tail.push_back(tok_sigma_inv());
        tail.push_back(tok_sigma_inv());
      } else {
        // Z = 0 with both rotations blocked: hop to remainder t-1, retry.
        if (attempt == 1) {
          throw InternalContradiction("peel_a: retry looped");
        }
        Word pre;
        pre.push_back(tok_alpha(p.s));
        pre.push_back(tok_beta_swap(k, 0, 1));
        long long nxt = apply_word(p, pre, cur);
        if (encode(p, nxt).rem != t - 1) {
          throw InternalContradiction("peel_a: retry hop failed");
        }
        detail::append_word(w, pre);
        cur = nxt;
        continue;
      }
    }
    detail::append_word(w, tail);
    return w;
  }
  throw InternalContradiction("peel_a: unreachable");
}

// Normalized x = (x_s,...,x_2,k-1,0;X) with t mod k == k-1: remove one maxed
// digit.  Two candidate rotations u, v of x (differing in the new remainder)
// are prepared; whichever avoids pushing a maxed digit back on top is rotated
// once more, with a fallback word when both are blocked.
inline Word word_peel_b(const ShuffleParams& p, long long x) {
  const int k = p.k;
  const long long t = p.t;
  if (t % k != k - 1) throw InternalContradiction("peel_b: wrong t class");
  Coord c = encode(p, x);
  if (c.digit(0) != 0 || c.digit(1) != k - 1) {
    throw InternalContradiction("peel_b: not normalized");
  }
  long long X = c.rem;
  int cm = static_cast<int>(X % k);

  Word wu;
  if (cm == k - 1) {
    wu.push_back(tok_alpha(p.s));
    wu.push_back(tok_beta_swap(k, k - 2, k - 3));
    wu.push_back(tok_alpha(p.s));
    wu.push_back(tok_beta_swap(k, 0, k - 2));
    wu.push_back(tok_sigma_inv());
  } else {
    if (cm != 0) wu.push_back(tok_beta_swap(k, 0, cm));
    wu.push_back(tok_sigma_inv());
  }
  Word wv;
  int txc = static_cast<int>((t + X) % k);
  if (txc == k - 1) {
    wv.push_back(tok_beta_swap(k, 0, 1));
    wv.push_back(tok_alpha(p.s));
    wv.push_back(tok_sigma_inv());
  } else {
    wv.push_back(tok_alpha(p.s));
    if (txc != 0) wv.push_back(tok_beta_swap(k, 0, txc));
    wv.push_back(tok_sigma_inv());
  }
  long long U = (X - cm) / k;
  long long V = (t + X + 1 - cm) / k;
  if ((t + X + 1 - cm) % k != 0) {
    throw InternalContradiction("peel_b: V not an integer");
  }

  // Both rotations land on the digits (0,x_s,...,x_2,k-1); check that.
  std::vector<int> expect_digits;
  expect_digits.push_back(0);
  for (int i = 0; i < p.s; ++i) expect_digits.push_back(c.digits[i]);
  auto check_rotation = [&](const Word& frag, long long rem,
                            const char* name) {
    long long y = apply_word(p, frag, x);
    Coord yc = encode(p, y);
    if (yc.rem != rem || yc.digits != expect_digits) {
      throw InternalContradiction(std::string("peel_b: rotation to ") + name +
                                  " failed");
    }
    return y;
  };
  check_rotation(wu, U, "u");
  check_rotation(wv, V, "v");

  if (((k - 1) * t + U) % k != k - 1) {
    wu.push_back(tok_sigma_inv());
    return wu;
  }
  if (((k - 1) * t + V) % k != k - 1) {
    wv.push_back(tok_sigma_inv());
    return wv;
  }
  // Both blocked: push the maxed digit up once, clear it there, and rotate
  // back down.
  Word w = wu;
  w.push_back(tok_sigma());
  w.push_back(tok_alpha(p.s));
  w.push_back(tok_sigma_inv());
  w.push_back(tok_beta_swap(k, k - 2, k - 3));
  w.push_back(tok_sigma());
  w.push_back(tok_alpha(p.s));
  w.push_back(tok_sigma_inv());
  w.push_back(tok_sigma_inv());
  return w;
}

// ---------------------------------------------------------------------------
// Driver.

struct SolveStep {
  std::string tag;        // CLEAR, DESCEND, NORMALIZE, COLLAPSE, PEEL_A/B
  std::string note;       // branch detail, where useful
  Word word;              // fragment applied at this step
  long long point_after = 0;
  int maxed_after = 0;    // T after the step
};

struct SolveTrace {
  long long start = 0;
  std::vector<SolveStep> steps;

  Word full_word() const {
    Word w;
    for (const SolveStep& st : steps) detail::append_word(w, st.word);
    return w;
  }
};

// Step budget: generous linear bound on the descent length.
inline long long solve_step_budget(const ShuffleParams& p) {
  return 16LL * (p.s + 2) * p.k * p.t;
}

// Build a word over {sigma, pile permutations fixing the last pile} sending
// x to 0.  Requires 0 <= x < kn-1 (the bottom card itself stays fixed).
inline SolveTrace solve_to_zero(const ShuffleParams& p, long long x) {
  require_solvable(p);
  if (x < 0 || x >= p.degree() - 1) {
    throw std::invalid_argument(
        "solve_to_zero: point must lie in [0, kn-2]; the bottom card is "
        "fixed by every generator used");
  }
  SolveTrace tr;
  tr.start = x;
  const long long budget = solve_step_budget(p);
  long long cur = x;
  long long steps = 0;
  while (cur != 0) {
    if (++steps > budget) {
      throw InternalContradiction("solver exceeded its step budget");
    }
    int maxed = count_maxed_digits(p, cur);
    SolveStep st;
    if (maxed == 0) {
      Coord c = encode(p, cur);
      bool flat = true;
      for (int d : c.digits) flat = flat && d == 0;
      if (!flat) {
        st.tag = "CLEAR";
        st.word = word_clear_digits(p, cur);
        long long nxt = apply_word(p, st.word, cur);
        if (nxt != c.rem) {
          throw InternalContradiction("clear: did not land on the remainder");
        }
      } else {
        st.tag = "DESCEND";
        st.word = word_step_down(p, cur, &st.note);
        long long nxt = apply_word(p, st.word, cur);
        if (nxt < 0 || nxt >= cur || nxt >= p.t) {
          throw InternalContradiction("step_down: did not descend");
        }
      }
    } else if (maxed == p.s + 1) {
      st.tag = "COLLAPSE";
      st.word = word_collapse(p, cur);
    } else if (!is_normalized(p, cur)) {
      st.tag = "NORMALIZE";
      st.word = word_normalize(p, cur);
      long long nxt = apply_word(p, st.word, cur);
      int m = count_maxed_digits(p, nxt);
      if (m > maxed || (m != 0 && !is_normalized(p, nxt))) {
        throw InternalContradiction("normalize: bad shape");
      }
    } else {
      if (p.t % p.k == p.k - 1) {
        st.tag = "PEEL_B";
        st.word = word_peel_b(p, cur);
      } else {
        st.tag = "PEEL_A";
        st.word = word_peel_a(p, cur);
      }
      long long nxt = apply_word(p, st.word, cur);
      if (count_maxed_digits(p, nxt) != maxed - 1) {
        throw InternalContradiction("peel: T did not drop by one");
      }
    }
    long long nxt = apply_word(p, st.word, cur);
    st.point_after = nxt;
    st.maxed_after = count_maxed_digits(p, nxt);
    tr.steps.push_back(std::move(st));
    cur = nxt;
  }
  return tr;
}

// ---------------------------------------------------------------------------
// Certificates.

struct Certificate {
  int k = 0;
  long long n = 0;
  int s = 0;
  long long t = 0;
  std::vector<SolveTrace> traces;  // traces[x] moves x to 0, x in [0, kn-2]
  Word witness;                    // moves the bottom card kn-1 to 0 in G
};

inline Certificate build_certificate(int k, long long n) {
  ShuffleParams p = derive_params(k, n);
  require_solvable(p);
  Certificate cert;
  cert.k = p.k;
  cert.n = p.n;
  cert.s = p.s;
  cert.t = p.t;
  const long long deg = p.degree();
  cert.traces.reserve(static_cast<std::size_t>(deg - 1));
  for (long long x = 0; x + 1 < deg; ++x) {
    cert.traces.push_back(solve_to_zero(p, x));
  }
  // Swapping piles 0 and k-1 sends the bottom card to n-1; continue with
  // that card's trace.
  cert.witness.push_back(tok_rho_swap(p.k, 0, p.k - 1));
  Word rest = cert.traces[static_cast<std::size_t>(n - 1)].full_word();
  detail::append_word(cert.witness, rest);
  if (apply_word(p, cert.witness, deg - 1) != 0) {
    throw InternalContradiction("witness word does not reach 0");
  }
  return cert;
}

struct CertificateCheck {
  bool ok = false;
  std::string error;  // empty when ok
  long long traces_checked = 0;
  long long tokens_checked = 0;
};

// Independent replay of a certificate: every trace token must fix the bottom
// card and the trace must land on 0; the witness (allowed to move the bottom
// card) must send it to 0.  Together these verify 2-transitivity without
// re-running the solver.
inline CertificateCheck check_certificate(const Certificate& cert) {
  CertificateCheck out;
  auto fail = [&out](std::string msg) {
    out.ok = false;
    out.error = std::move(msg);
    return out;
  };
  ShuffleParams p;
  try {
    p = derive_params(cert.k, cert.n);
    require_solvable(p);
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  if (p.s != cert.s || p.t != cert.t) {
    return fail("parameter mismatch: stored s,t do not match k and n");
  }
  const long long deg = p.degree();
  const long long anchor = deg - 1;
  if (static_cast<long long>(cert.traces.size()) != deg - 1) {
    return fail("trace count differs from kn-1");
  }
  for (long long x = 0; x < deg - 1; ++x) {
    const SolveTrace& tr = cert.traces[static_cast<std::size_t>(x)];
    if (tr.start != x) {
      return fail("trace " + std::to_string(x) + ": wrong start point");
    }
    long long cur = x;
    for (const SolveStep& st : tr.steps) {
      for (const Token& tk : st.word) {
        try {
          validate_token(p, tk);
        } catch (const std::exception& e) {
          return fail("trace " + std::to_string(x) + ": " + e.what());
        }
        if (apply_token(p, tk, anchor) != anchor) {
          return fail("trace " + std::to_string(x) +
                      ": token moves the bottom card");
        }
        cur = apply_token(p, tk, cur);
        ++out.tokens_checked;
      }
      if (cur != st.point_after) {
        return fail("trace " + std::to_string(x) +
                    ": step lands on an unexpected point");
      }
    }
    if (cur != 0) {
      return fail("trace " + std::to_string(x) + ": does not reach 0");
    }
    ++out.traces_checked;
  }
  long long cur = anchor;
  for (const Token& tk : cert.witness) {
    try {
      validate_token(p, tk);
    } catch (const std::exception& e) {
      return fail(std::string("witness: ") + e.what());
    }
    cur = apply_token(p, tk, cur);
    ++out.tokens_checked;
  }
  if (cur != 0) {
    return fail("witness does not move the bottom card to 0");
  }
  out.ok = true;
  return out;
}

}  // namespace shuffle
