#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "shuffle/certificate_json.hpp"
#include "shuffle/codec.hpp"
#include "shuffle/engine.hpp"
#include "shuffle/solver.hpp"

using shuffle::Certificate;
using shuffle::derive_params;
using shuffle::ShuffleParams;
using shuffle::SolveTrace;
using shuffle::Word;

namespace {

// Deck shapes exercising both peeling regimes and several digit depths.
const std::vector<std::pair<int, long long>> kSolverDecks = {
    {3, 6},  {3, 12}, {3, 15}, {3, 21}, {3, 24},
    {3, 54}, {4, 8},  {4, 12}, {5, 10}, {5, 50}};

}  // namespace

TEST_CASE("solver accepts only decks with spare digit room") {
  REQUIRE_NOTHROW(shuffle::require_solvable(derive_params(3, 6)));
  // Two piles: the pile-fixing moves are too poor to steer single cards.
  REQUIRE_THROWS_AS(shuffle::require_solvable(derive_params(2, 12)),
                    std::invalid_argument);
  // No digit at all (n coprime to k).
  REQUIRE_THROWS_AS(shuffle::require_solvable(derive_params(3, 5)),
                    std::invalid_argument);
  // Pure power of k (t = 1).
  REQUIRE_THROWS_AS(shuffle::require_solvable(derive_params(3, 9)),
                    std::invalid_argument);
}

TEST_CASE("counting maxed digits") {
  ShuffleParams p = derive_params(3, 6);  // s = 1, t = 2
  REQUIRE(shuffle::count_maxed_digits(p, 0) == 0);
  REQUIRE(shuffle::count_maxed_digits(p, 16) == 2);  // digits (2,2), rem 0
  REQUIRE(shuffle::count_maxed_digits(p, 17) == 2);
  REQUIRE(shuffle::count_maxed_digits(p, 4) == 1);   // 4 = (3*0+2)*2 + 0
}

TEST_CASE("descent branches and their arithmetic") {
  ShuffleParams p = derive_params(3, 24);  // t = 8
  auto run = [&](const ShuffleParams& q, long long v) {
    std::string note;
    Word w = shuffle::word_step_down(q, v, &note);
    return std::make_pair(note, shuffle::apply_word(q, w, v));
  };

  REQUIRE(run(p, 3) == std::make_pair(std::string("divide"), 1LL));
  REQUIRE(run(p, 6) == std::make_pair(std::string("divide"), 2LL));
  REQUIRE(run(p, 4) == std::make_pair(std::string("subtract"), 3LL));
  REQUIRE(run(p, 7) == std::make_pair(std::string("subtract"), 6LL));
  REQUIRE(run(p, 2) == std::make_pair(std::string("decrement"), 1LL));
  REQUIRE(run(p, 5) == std::make_pair(std::string("decrement"), 4LL));

  ShuffleParams q = derive_params(3, 21);  // t = 7, 7 mod 3 = 1
  REQUIRE(run(q, 2) == std::make_pair(std::string("carry"), 1LL));
  REQUIRE(run(q, 5) == std::make_pair(std::string("carry"), 2LL));

  // Every branch lands strictly lower and inside [0, t).
  for (const auto& [k, n] : kSolverDecks) {
    ShuffleParams pr = derive_params(k, n);
    for (long long v = 1; v < pr.t; ++v) {
      std::string note;
      Word w = shuffle::word_step_down(pr, v, &note);
      long long r = shuffle::apply_word(pr, w, v);
      INFO("k=" << k << " n=" << n << " v=" << v << " note=" << note);
      REQUIRE(r >= 0);
      REQUIRE(r < v);
      if (note == "divide") REQUIRE(r == v / k);
      if (note == "subtract") REQUIRE(r == v - v % k);
      if (note == "decrement") REQUIRE(r == v - 1);
      if (note == "carry") REQUIRE(r == (v + 1) / k);
    }
  }

  REQUIRE_THROWS_AS(shuffle::word_step_down(p, 0, nullptr),
                    shuffle::InternalContradiction);
  REQUIRE_THROWS_AS(shuffle::word_step_down(p, p.t, nullptr),
                    shuffle::InternalContradiction);
}

TEST_CASE("solve_to_zero rejects the fixed bottom card") {
  ShuffleParams p = derive_params(3, 6);
  REQUIRE_THROWS_AS(shuffle::solve_to_zero(p, 17), std::invalid_argument);
  REQUIRE_THROWS_AS(shuffle::solve_to_zero(p, -1), std::invalid_argument);
  REQUIRE_THROWS_AS(shuffle::solve_to_zero(derive_params(3, 9), 1),
                    std::invalid_argument);
}

TEST_CASE("solving zero is a no-op") {
  SolveTrace tr = shuffle::solve_to_zero(derive_params(3, 6), 0);
  REQUIRE(tr.start == 0);
  REQUIRE(tr.steps.empty());
  REQUIRE(tr.full_word().empty());
}

TEST_CASE("every card reaches the top without touching the bottom card") {
  for (const auto& [k, n] : kSolverDecks) {
    ShuffleParams p = derive_params(k, n);
    const long long deg = p.degree();
    const long long anchor = deg - 1;
    const long long budget = shuffle::solve_step_budget(p);
    std::set<std::string> tags;
    for (long long x = 0; x < deg - 1; ++x) {
      SolveTrace tr = shuffle::solve_to_zero(p, x);
      INFO("k=" << k << " n=" << n << " x=" << x);
      REQUIRE(tr.start == x);
      REQUIRE(static_cast<long long>(tr.steps.size()) <= budget);
      long long cur = x;
      for (const auto& st : tr.steps) {
        tags.insert(st.tag);
        for (const auto& tk : st.word) {
          REQUIRE(shuffle::apply_token(p, tk, anchor) == anchor);
          cur = shuffle::apply_token(p, tk, cur);
        }
        REQUIRE(cur == st.point_after);
        REQUIRE(shuffle::count_maxed_digits(p, cur) == st.maxed_after);
      }
      REQUIRE(cur == 0);
    }
    // The battery must exercise the full move repertoire for this deck.
    REQUIRE(tags.count("CLEAR") == 1);
    REQUIRE(tags.count("DESCEND") == 1);
    REQUIRE(tags.count("NORMALIZE") == 1);
    REQUIRE(tags.count("COLLAPSE") == 1);
    if (p.t % p.k == p.k - 1) {
      REQUIRE(tags.count("PEEL_B") == 1);
      REQUIRE(tags.count("PEEL_A") == 0);
    } else {
      REQUIRE(tags.count("PEEL_A") == 1);
      REQUIRE(tags.count("PEEL_B") == 0);
    }
  }
}

TEST_CASE("solver words are honest permutation words") {
  for (auto [k, n] : std::vector<std::pair<int, long long>>{{3, 6}, {4, 8}}) {
    ShuffleParams p = derive_params(k, n);
    for (long long x = 0; x < p.degree() - 1; ++x) {
      Word w = shuffle::solve_to_zero(p, x).full_word();
      shuffle::Perm g = shuffle::word_perm(p, w);
      REQUIRE(g[x] == 0);
      REQUIRE(g[static_cast<shuffle::Point>(p.degree() - 1)] ==
              static_cast<shuffle::Point>(p.degree() - 1));
    }
  }
}

TEST_CASE("full collapse lands just below the next block") {
  ShuffleParams p = derive_params(3, 6);
  SolveTrace tr = shuffle::solve_to_zero(p, 16);  // digits (2,2), rem 0
  REQUIRE_FALSE(tr.steps.empty());
  REQUIRE(tr.steps[0].tag == "COLLAPSE");
  REQUIRE(tr.steps[0].point_after == 8);
}

TEST_CASE("the bottom-fixing moves reach every other card") {
  // Independent of the solver: a plain orbit computation with the same
  // generator family must cover exactly the non-bottom cards.
  for (auto [k, n] :
       std::vector<std::pair<int, long long>>{{3, 6}, {3, 12}, {4, 8}, {5, 10}}) {
    ShuffleParams p = derive_params(k, n);
    auto gens = shuffle::stabilizer_generators(p);
    auto deg = static_cast<std::size_t>(p.degree());
    auto orb = shuffle::orbit_of(gens, 0, deg);
    REQUIRE(orb.points.size() == deg - 1);
    REQUIRE_FALSE(orb.contains(static_cast<shuffle::Point>(deg - 1)));
  }
}

TEST_CASE("certificate construction and replay") {
  Certificate cert = shuffle::build_certificate(3, 6);
  REQUIRE(cert.k == 3);
  REQUIRE(cert.n == 6);
  REQUIRE(cert.s == 1);
  REQUIRE(cert.t == 2);
  REQUIRE(cert.traces.size() == 17);
  REQUIRE_FALSE(cert.witness.empty());

  auto chk = shuffle::check_certificate(cert);
  REQUIRE(chk.ok);
  REQUIRE(chk.error.empty());
  REQUIRE(chk.traces_checked == 17);
  REQUIRE(chk.tokens_checked > 0);

  auto big = shuffle::build_certificate(4, 12);
  REQUIRE(big.traces.size() == 47);
  REQUIRE(shuffle::check_certificate(big).ok);
}

TEST_CASE("certificate replay rejects tampering") {
  const Certificate good = shuffle::build_certificate(3, 6);
  REQUIRE(shuffle::check_certificate(good).ok);

  SECTION("wrong start point") {
    Certificate c = good;
    c.traces[5].start = 4;
    REQUIRE_FALSE(shuffle::check_certificate(c).ok);
  }
  SECTION("missing trace") {
    Certificate c = good;
    c.traces.pop_back();
    auto chk = shuffle::check_certificate(c);
    REQUIRE_FALSE(chk.ok);
    REQUIRE(chk.error.find("trace count") != std::string::npos);
  }
  SECTION("edited word no longer lands where recorded") {
    Certificate c = good;
    REQUIRE_FALSE(c.traces[7].steps.empty());
    c.traces[7].steps[0].word.push_back(shuffle::tok_sigma());
    REQUIRE_FALSE(shuffle::check_certificate(c).ok);
  }
  SECTION("token touching the bottom card") {
    Certificate c = good;
    c.traces[3].steps.clear();
    shuffle::SolveStep st;
    st.tag = "CLEAR";
    st.word = {shuffle::tok_rho_swap(3, 0, 2)};
    st.point_after = shuffle::apply_word(derive_params(3, 6), st.word, 3);
    c.traces[3].steps.push_back(st);
    auto chk = shuffle::check_certificate(c);
    REQUIRE_FALSE(chk.ok);
    REQUIRE(chk.error.find("bottom card") != std::string::npos);
  }
  SECTION("recorded landing point out of sync") {
    Certificate c = good;
    REQUIRE_FALSE(c.traces[9].steps.empty());
    c.traces[9].steps.back().point_after += 1;
    REQUIRE_FALSE(shuffle::check_certificate(c).ok);
  }
  SECTION("witness truncated") {
    Certificate c = good;
    c.witness.pop_back();
    auto chk = shuffle::check_certificate(c);
    REQUIRE_FALSE(chk.ok);
    REQUIRE(chk.error.find("witness") != std::string::npos);
  }
  SECTION("stored parameters disagree with the deck") {
    Certificate c = good;
    c.s = 2;
    REQUIRE_FALSE(shuffle::check_certificate(c).ok);
  }
  SECTION("invalid token for the pile count") {
    Certificate c = good;
    REQUIRE_FALSE(c.traces[2].steps.empty());
    c.traces[2].steps[0].word.push_back(shuffle::tok_alpha(5));
    REQUIRE_FALSE(shuffle::check_certificate(c).ok);
  }
}

TEST_CASE("certificate survives a JSON round trip") {
  Certificate cert = shuffle::build_certificate(3, 6);
  nlohmann::json j = shuffle::certificate_to_json(cert);
  REQUIRE(j.at("schema").get<int>() == 1);
  REQUIRE(j.at("k").get<int>() == 3);
  REQUIRE(j.at("traces").size() == 17);

  Certificate back = shuffle::certificate_from_json(j);
  REQUIRE(back.traces.size() == cert.traces.size());
  REQUIRE(shuffle::check_certificate(back).ok);
  // Serialization is stable: a second round trip produces identical JSON.
  REQUIRE(shuffle::certificate_to_json(back) == j);
}

TEST_CASE("certificate JSON parsing rejects malformed input") {
  nlohmann::json j = shuffle::certificate_to_json(shuffle::build_certificate(3, 6));

  nlohmann::json wrong_schema = j;
  wrong_schema["schema"] = 2;
  REQUIRE_THROWS_AS(shuffle::certificate_from_json(wrong_schema),
                    std::invalid_argument);

  nlohmann::json missing = j;
  missing.erase("witness");
  REQUIRE_THROWS_AS(shuffle::certificate_from_json(missing),
                    std::invalid_argument);

  nlohmann::json bad_token = j;
  bad_token["traces"][0]["steps"] = nlohmann::json::array();
  bad_token["witness"]["word"][0] = "gamma_3";
  REQUIRE_THROWS_AS(shuffle::certificate_from_json(bad_token),
                    std::invalid_argument);
}

TEST_CASE("word JSON round trip") {
  Word w = {shuffle::tok_sigma(), shuffle::tok_sigma_inv(),
            shuffle::tok_rho_swap(4, 0, 3), shuffle::tok_alpha(2),
            shuffle::tok_beta_swap(4, 1, 2)};
  nlohmann::json arr = shuffle::detail::word_to_json(w);
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == 5);
  Word back = shuffle::detail::word_from_json(arr, 4);
  REQUIRE(shuffle::word_str(back) == shuffle::word_str(w));
}
