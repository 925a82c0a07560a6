#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "shuffle/codec.hpp"
#include "shuffle/word.hpp"

using shuffle::derive_params;
using shuffle::Perm;
using shuffle::ShuffleParams;
using shuffle::Token;
using shuffle::Word;

TEST_CASE("token text round trip") {
  int k = 4;
  for (const char* text : {"sigma", "sigma^-1", "rho(0,2)", "rho(1,3)",
                           "alpha_0", "alpha_2", "beta(0,1)", "beta(1,2)"}) {
    Token tk = shuffle::parse_token(text, k);
    REQUIRE(shuffle::token_str(tk) == text);
  }
  // General image-list form for non-transposition pile maps.
  Token cyc = shuffle::tok_rho({1, 2, 0});
  REQUIRE(shuffle::token_str(cyc) == "rho[1,2,0]");
  REQUIRE(shuffle::parse_token("rho[1,2,0]", 3).tau == std::vector<int>{1, 2, 0});
}

TEST_CASE("parse_token rejects malformed text") {
  REQUIRE_THROWS_AS(shuffle::parse_token("gamma_1", 3),
                    std::invalid_argument);
  // A degenerate swap is the documented identity, not an error.
  REQUIRE(shuffle::parse_token("rho(0,0)", 3).tau ==
          std::vector<int>{0, 1, 2});
  REQUIRE_THROWS_AS(shuffle::parse_token("rho[0,0,1]", 3),
                    std::invalid_argument);  // not a bijection
  REQUIRE_THROWS_AS(shuffle::parse_token("rho(0,5)", 3),
                    std::invalid_argument);  // out of range
  REQUIRE_THROWS_AS(shuffle::parse_token("alpha_x", 3),
                    std::invalid_argument);
}

TEST_CASE("beta tokens may not touch the last pile") {
  REQUIRE_THROWS_AS(shuffle::tok_beta_swap(4, 0, 3), std::invalid_argument);
  REQUIRE_NOTHROW(shuffle::tok_beta_swap(4, 0, 2));
}

TEST_CASE("validate_token checks sizes against the deck") {
  ShuffleParams p = derive_params(3, 12);  // s = 1
  REQUIRE_NOTHROW(shuffle::validate_token(p, shuffle::tok_alpha(1)));
  REQUIRE_THROWS_AS(shuffle::validate_token(p, shuffle::tok_alpha(2)),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(shuffle::validate_token(p, shuffle::tok_rho({1, 0})),
                    std::invalid_argument);  // tau must act on 3 piles
  REQUIRE_THROWS_AS(shuffle::validate_token(p, shuffle::tok_beta({1, 0, 2})),
                    std::invalid_argument);  // beta tau acts on k-1 piles
  REQUIRE_NOTHROW(shuffle::validate_token(p, shuffle::tok_beta({1, 0})));
}

TEST_CASE("sigma tokens match the permutation") {
  ShuffleParams p = derive_params(4, 8);
  Perm sig = shuffle::sigma_perm(p);
  REQUIRE(shuffle::token_perm(p, shuffle::tok_sigma()) == sig);
  REQUIRE(shuffle::token_perm(p, shuffle::tok_sigma_inv()) == sig.inverse());
}

TEST_CASE("alpha expands to a sigma-conjugated swap") {
  for (auto [k, n] :
       std::vector<std::pair<int, long long>>{{3, 12}, {3, 54}, {4, 8}}) {
    ShuffleParams p = derive_params(k, n);
    Perm sig = shuffle::sigma_perm(p);
    Perm rho01 = shuffle::rho_perm(p, Perm::transposition(k, 0, 1));
    Perm conj = rho01;
    for (int i = 0; i <= p.s; ++i) {
      if (i > 0) conj = sig * conj * sig.inverse();
      REQUIRE(shuffle::token_perm(p, shuffle::tok_alpha(i)) == conj);
    }
  }
}

TEST_CASE("beta expands to a conjugate fixing the bottom card") {
  for (auto [k, n] :
       std::vector<std::pair<int, long long>>{{3, 12}, {4, 8}, {5, 10}}) {
    ShuffleParams p = derive_params(k, n);
    for (int a = 0; a + 1 < k - 1; ++a) {
      Token tk = shuffle::tok_beta_swap(k, a, a + 1);
      Perm b = shuffle::token_perm(p, tk);
      // sigma^-1 rho_tau' sigma with tau' fixing the last pile.
      Perm sig = shuffle::sigma_perm(p);
      Perm tau_full = shuffle::embed_fixing_last(
          k, Perm::transposition(k - 1, a, a + 1));
      REQUIRE(b == sig.inverse() * shuffle::rho_perm(p, tau_full) * sig);
      REQUIRE(b[static_cast<shuffle::Point>(p.degree() - 1)] ==
              static_cast<shuffle::Point>(p.degree() - 1));
    }
  }
}

TEST_CASE("beta adjusts the remainder by a digit relabeling") {
  // The action on a card with all digits zero and remainder X replaces the
  // residue X mod k by its image under the swap.
  ShuffleParams p = derive_params(3, 12);  // t = 4
  Token beta01 = shuffle::tok_beta_swap(3, 0, 1);
  // X = 3: residue 0 -> 1, so X becomes 4... except 4 = t, so check within
  // range: X = 0 -> 1, X = 1 -> 0, X = 2 -> 2 (residue 2 fixed by (0 1)).
  REQUIRE(shuffle::apply_token(p, beta01, 0) == 1);
  REQUIRE(shuffle::apply_token(p, beta01, 1) == 0);
  REQUIRE(shuffle::apply_token(p, beta01, 2) == 2);
}

TEST_CASE("apply_token agrees with token_perm everywhere") {
  std::mt19937 rng(99);
  for (auto [k, n] :
       std::vector<std::pair<int, long long>>{{3, 12}, {4, 8}, {3, 54}}) {
    ShuffleParams p = derive_params(k, n);
    std::vector<Token> pool = {
        shuffle::tok_sigma(),          shuffle::tok_sigma_inv(),
        shuffle::tok_rho_swap(k, 0, k - 1), shuffle::tok_alpha(p.s),
        shuffle::tok_alpha(0),         shuffle::tok_beta_swap(k, 0, 1)};
    for (const Token& tk : pool) {
      Perm g = shuffle::token_perm(p, tk);
      for (long long x = 0; x < p.degree(); ++x) {
        REQUIRE(shuffle::apply_token(p, tk, x) ==
                static_cast<long long>(g[x]));
      }
    }
    // Random words: pointwise application equals the composed permutation.
    for (int trial = 0; trial < 10; ++trial) {
      Word w;
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      for (int l = 0; l < 8; ++l) w.push_back(pool[pick(rng)]);
      Perm g = shuffle::word_perm(p, w);
      for (long long x = 0; x < p.degree(); ++x) {
        REQUIRE(shuffle::apply_word(p, w, x) == static_cast<long long>(g[x]));
      }
    }
  }
}

TEST_CASE("expand_word eliminates macros") {
  ShuffleParams p = derive_params(3, 12);
  Word w = {shuffle::tok_alpha(1), shuffle::tok_beta_swap(3, 0, 1),
            shuffle::tok_sigma()};
  Word flat = shuffle::expand_word(p, w);
  for (const Token& tk : flat) {
    REQUIRE((tk.kind == Token::Kind::Sigma ||
             tk.kind == Token::Kind::SigmaInv ||
             tk.kind == Token::Kind::Rho));
  }
  REQUIRE(shuffle::word_perm(p, flat) == shuffle::word_perm(p, w));
}

TEST_CASE("append_sigma_pow emits signed powers") {
  Word w;
  shuffle::append_sigma_pow(w, 3);
  shuffle::append_sigma_pow(w, -2);
  REQUIRE(w.size() == 5);
  ShuffleParams p = derive_params(3, 6);
  Perm sig = shuffle::sigma_perm(p);
  REQUIRE(shuffle::word_perm(p, w) == sig);  // net power 1
  Word none;
  shuffle::append_sigma_pow(none, 0);
  REQUIRE(none.empty());
}

TEST_CASE("word_str joins tokens with spaces") {
  Word w = {shuffle::tok_sigma(), shuffle::tok_beta_swap(4, 1, 2),
            shuffle::tok_sigma_inv()};
  REQUIRE(shuffle::word_str(w) == "sigma beta(1,2) sigma^-1");
}
