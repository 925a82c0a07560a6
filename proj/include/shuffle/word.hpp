#pragma once

// Words in the shuffle generators.
//
// A Word is a sequence of tokens applied left to right.  Primitive tokens are
// sigma, sigma^-1 and the pile permutations rho_tau.  Two derived tokens keep
// words short and readable:
//
//   alpha_i  = sigma^i rho_(0 1) sigma^-i        0 <= i <= s
//   beta_tau = sigma^-1 rho_tau' sigma           tau in Sym([k-1]), tau'
//                                                its embedding fixing k-1
//
// alpha_i toggles digit x_{s-i} between 0 and 1; beta_tau adds
// tau(r) - r to the position, where r = (x_0*t + X) mod k.  Derived tokens
// are expanded only when a word is evaluated.
//
// Text forms: "sigma", "sigma^-1", "rho(a,b)" (transposition), "rho[...]"
// (image list), "alpha_i", "beta(a,b)", "beta[...]".  "(0,0)" denotes the
// identity.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "shuffle/codec.hpp"
#include "shuffle/perm.hpp"

namespace shuffle {

struct Token {
  enum class Kind { Sigma, SigmaInv, Rho, Alpha, Beta };

  Kind kind;
  int index = 0;             // Alpha: the subscript i
  std::vector<int> tau;      // Rho: images over [k]; Beta: images over [k-1]

  friend bool operator==(const Token& a, const Token& b) {
    return a.kind == b.kind && a.index == b.index && a.tau == b.tau;
  }
};

using Word = std::vector<Token>;

inline Token tok_sigma() { return Token{Token::Kind::Sigma, 0, {}}; }
inline Token tok_sigma_inv() { return Token{Token::Kind::SigmaInv, 0, {}}; }

inline Token tok_rho(std::vector<int> tau) {
  return Token{Token::Kind::Rho, 0, std::move(tau)};
}

// rho with tau the transposition (a b) of [k]; a == b gives the identity.
inline Token tok_rho_swap(int k, int a, int b) {
  if (a < 0 || b < 0 || a >= k || b >= k) {
    throw std::invalid_argument("tok_rho_swap: point out of range");
  }
  std::vector<int> tau(k);
  for (int j = 0; j < k; ++j) tau[j] = j;
  std::swap(tau[a], tau[b]);
  return tok_rho(std::move(tau));
}

inline Token tok_alpha(int i) { return Token{Token::Kind::Alpha, i, {}}; }

inline Token tok_beta(std::vector<int> tau) {
  return Token{Token::Kind::Beta, 0, std::move(tau)};
}

// beta with tau the transposition (a b) of [k-1]; a == b gives the identity.
inline Token tok_beta_swap(int k, int a, int b) {
  if (a < 0 || b < 0 || a >= k - 1 || b >= k - 1) {
    throw std::invalid_argument("tok_beta_swap: point must lie in [k-1]");
  }
  std::vector<int> tau(k - 1);
  for (int j = 0; j < k - 1; ++j) tau[j] = j;
  std::swap(tau[a], tau[b]);
  return tok_beta(std::move(tau));
}

namespace detail {

inline Perm perm_of_images(const std::vector<int>& tau) {
  std::vector<Point> img(tau.begin(), tau.end());
  return Perm::from_images(std::move(img));
}

// Renders an image list either as "(a,b)" if it is a transposition, "(0,0)"
// if it is the identity, or as "[i0,i1,...]" otherwise.
inline std::string tau_str(const std::vector<int>& tau) {
  int a = -1, b = -1;
  bool swap_only = true;
  for (int j = 0; j < static_cast<int>(tau.size()); ++j) {
    if (tau[j] == j) continue;
    if (a < 0) {
      a = j;
      b = tau[j];
    } else if (j != b || tau[j] != a) {
      swap_only = false;
      break;
    }
  }
  if (swap_only && a < 0) return "(0,0)";
  if (swap_only && b == tau[a] && a == tau[b] && a < b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  }
  std::string out = "[";
  for (std::size_t j = 0; j < tau.size(); ++j) {
    if (j) out += ',';
    out += std::to_string(tau[j]);
  }
  out += ']';
  return out;
}

inline std::vector<int> parse_tau(const std::string& body, int domain,
                                  const char* what) {
  std::vector<int> tau(domain);
  for (int j = 0; j < domain; ++j) tau[j] = j;
  if (body.empty()) throw std::invalid_argument(std::string(what) + ": empty");
  if (body.front() == '(') {
    if (body.back() != ')') {
      throw std::invalid_argument(std::string(what) + ": expected ')'");
    }
    std::string inner = body.substr(1, body.size() - 2);
    std::size_t comma = inner.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument(std::string(what) + ": expected '(a,b)'");
    }
    int a = std::stoi(inner.substr(0, comma));
    int b = std::stoi(inner.substr(comma + 1));
    if (a < 0 || b < 0 || a >= domain || b >= domain) {
      throw std::invalid_argument(std::string(what) + ": point out of range");
    }
    std::swap(tau[a], tau[b]);
    return tau;
  }
  if (body.front() == '[' && body.back() == ']') {
    tau.clear();
    std::size_t i = 1;
    while (i < body.size() - 1) {
      std::size_t len = 0;
      tau.push_back(std::stoi(body.substr(i), &len));
      i += len;
      if (i < body.size() - 1 && body[i] == ',') ++i;
    }
    if (static_cast<int>(tau.size()) != domain) {
      throw std::invalid_argument(std::string(what) + ": wrong image count");
    }
    std::vector<bool> seen(domain, false);
    for (int v : tau) {
      if (v < 0 || v >= domain || seen[v]) {
        throw std::invalid_argument(std::string(what) + ": not a bijection");
      }
      seen[v] = true;
    }
    return tau;
  }
  throw std::invalid_argument(std::string(what) + ": bad permutation syntax");
}

}  // namespace detail

inline std::string token_str(const Token& tk) {
  switch (tk.kind) {
    case Token::Kind::Sigma:
      return "sigma";
    case Token::Kind::SigmaInv:
      return "sigma^-1";
    case Token::Kind::Rho:
      return "rho" + detail::tau_str(tk.tau);
    case Token::Kind::Alpha:
      return "alpha_" + std::to_string(tk.index);
    case Token::Kind::Beta:
      return "beta" + detail::tau_str(tk.tau);
  }
  throw std::logic_error("token_str: unreachable");
}

inline std::string word_str(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += token_str(w[i]);
  }
  return out;
}

// Parses a single token; k is needed to size rho/beta image lists given in
// transposition form.
inline Token parse_token(const std::string& text, int k) {
  if (text == "sigma") return tok_sigma();
  if (text == "sigma^-1") return tok_sigma_inv();
  if (text.rfind("rho", 0) == 0) {
    return tok_rho(detail::parse_tau(text.substr(3), k, "rho"));
  }
  if (text.rfind("alpha_", 0) == 0) {
    return tok_alpha(std::stoi(text.substr(6)));
  }
  if (text.rfind("beta", 0) == 0) {
    return tok_beta(detail::parse_tau(text.substr(4), k - 1, "beta"));
  }
  throw std::invalid_argument("parse_token: unknown token '" + text + "'");
}

// ---------------------------------------------------------------------------
// Validation and evaluation.

inline void validate_token(const ShuffleParams& p, const Token& tk) {
  switch (tk.kind) {
    case Token::Kind::Sigma:
    case Token::Kind::SigmaInv:
      return;
    case Token::Kind::Rho:
      if (static_cast<int>(tk.tau.size()) != p.k) {
        throw std::invalid_argument("rho token: tau must permute [k]");
      }
      return;
    case Token::Kind::Alpha:
      if (tk.index < 0 || tk.index > p.s) {
        throw std::invalid_argument("alpha token: index must be in [0, s]");
      }
      return;
    case Token::Kind::Beta:
      if (static_cast<int>(tk.tau.size()) != p.k - 1) {
        throw std::invalid_argument("beta token: tau must permute [k-1]");
      }
      return;
  }
}

// Expands derived tokens into primitive ones.
inline void expand_token(const ShuffleParams& p, const Token& tk, Word& out) {
  validate_token(p, tk);
  switch (tk.kind) {
    case Token::Kind::Sigma:
    case Token::Kind::SigmaInv:
    case Token::Kind::Rho:
      out.push_back(tk);
      return;
    case Token::Kind::Alpha: {
      for (int j = 0; j < tk.index; ++j) out.push_back(tok_sigma());
      out.push_back(tok_rho_swap(p.k, 0, 1));
      for (int j = 0; j < tk.index; ++j) out.push_back(tok_sigma_inv());
      return;
    }
    case Token::Kind::Beta: {
      std::vector<int> full(tk.tau.begin(), tk.tau.end());
      full.push_back(p.k - 1);
      out.push_back(tok_sigma_inv());
      out.push_back(tok_rho(std::move(full)));
      out.push_back(tok_sigma());
      return;
    }
  }
}

inline Word expand_word(const ShuffleParams& p, const Word& w) {
  Word out;
  for (const Token& tk : w) expand_token(p, tk, out);
  return out;
}

inline long long apply_token(const ShuffleParams& p, const Token& tk,
                             long long x) {
  switch (tk.kind) {
    case Token::Kind::Sigma:
      return sigma_point(p, x);
    case Token::Kind::SigmaInv:
      return sigma_inv_point(p, x);
    case Token::Kind::Rho: {
      long long j = x / p.n;
      return x % p.n + static_cast<long long>(tk.tau[j]) * p.n;
    }
    case Token::Kind::Alpha:
    case Token::Kind::Beta: {
      Word prim;
      expand_token(p, tk, prim);
      long long y = x;
      for (const Token& q : prim) y = apply_token(p, q, y);
      return y;
    }
  }
  throw std::logic_error("apply_token: unreachable");
}

inline long long apply_word(const ShuffleParams& p, const Word& w,
                            long long x) {
  long long y = x;
  for (const Token& tk : w) y = apply_token(p, tk, y);
  return y;
}

// The permutation of [k*n] a single token performs.
inline Perm token_perm(const ShuffleParams& p, const Token& tk) {
  validate_token(p, tk);
  switch (tk.kind) {
    case Token::Kind::Sigma:
      return sigma_perm(p);
    case Token::Kind::SigmaInv:
      return sigma_perm(p).inverse();
    case Token::Kind::Rho:
      return rho_perm(p, detail::perm_of_images(tk.tau));
    default: {
      Word prim;
      expand_token(p, tk, prim);
      Perm acc(p.degree());
      for (const Token& q : prim) acc = acc * token_perm(p, q);
      return acc;
    }
  }
}

inline Perm word_perm(const ShuffleParams& p, const Word& w) {
  Perm acc(p.degree());
  for (const Token& tk : w) acc = acc * token_perm(p, tk);
  return acc;
}

// Appends sigma^e (e may be negative) as |e| primitive tokens.
inline void append_sigma_pow(Word& w, int e) {
  for (int j = 0; j < e; ++j) w.push_back(tok_sigma());
  for (int j = 0; j > e; --j) w.push_back(tok_sigma_inv());
}

}  // namespace shuffle
