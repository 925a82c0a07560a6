#pragma once

// JSON round-trip for transitivity certificates.
//
// Words are stored as arrays of token strings ("sigma", "sigma^-1",
// "rho(0,2)", "alpha_1", "beta(0,1)", ...), the same grammar token_str /
// parse_token use, so a certificate can be checked by any reader that can
// evaluate those five generator forms.

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "shuffle/solver.hpp"
#include "shuffle/word.hpp"

namespace shuffle {

namespace detail {

inline nlohmann::json word_to_json(const Word& w) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Token& tk : w) arr.push_back(token_str(tk));
  return arr;
}

inline Word word_from_json(const nlohmann::json& arr, int k) {
  if (!arr.is_array()) {
    throw std::invalid_argument("certificate: word is not an array");
  }
  Word w;
  w.reserve(arr.size());
  for (const auto& item : arr) {
    if (!item.is_string()) {
      throw std::invalid_argument("certificate: word token is not a string");
    }
    w.push_back(parse_token(item.get<std::string>(), k));
  }
  return w;
}

}  // namespace detail

inline nlohmann::json certificate_to_json(const Certificate& cert) {
  nlohmann::json j;
  j["schema"] = 1;
  j["k"] = cert.k;
  j["n"] = cert.n;
  j["s"] = cert.s;
  j["t"] = cert.t;
  j["degree"] = cert.k * cert.n;
  nlohmann::json traces = nlohmann::json::array();
  long long tokens = 0;
  for (const SolveTrace& tr : cert.traces) {
    nlohmann::json steps = nlohmann::json::array();
    for (const SolveStep& st : tr.steps) {
      nlohmann::json step;
      step["tag"] = st.tag;
      if (!st.note.empty()) step["note"] = st.note;
      step["word"] = detail::word_to_json(st.word);
      step["point_after"] = st.point_after;
      step["maxed_after"] = st.maxed_after;
      tokens += static_cast<long long>(st.word.size());
      steps.push_back(std::move(step));
    }
    traces.push_back({{"start", tr.start}, {"steps", std::move(steps)}});
  }
  j["traces"] = std::move(traces);
  j["witness"] = {{"start", cert.k * cert.n - 1},
                  {"word", detail::word_to_json(cert.witness)}};
  j["summary"] = {{"traces", cert.traces.size()}, {"tokens", tokens}};
  return j;
}

namespace detail {

inline Certificate certificate_from_json_impl(const nlohmann::json& j) {
  if (j.value("schema", 0) != 1) {
    throw std::invalid_argument("certificate: unsupported schema");
  }
  Certificate cert;
  cert.k = j.at("k").get<int>();
  cert.n = j.at("n").get<long long>();
  cert.s = j.at("s").get<int>();
  cert.t = j.at("t").get<long long>();
  if (cert.k < 2 || cert.n < 1) {
    throw std::invalid_argument("certificate: bad parameters");
  }
  const auto& traces = j.at("traces");
  if (!traces.is_array()) {
    throw std::invalid_argument("certificate: traces is not an array");
  }
  for (const auto& trj : traces) {
    SolveTrace tr;
    tr.start = trj.at("start").get<long long>();
    const auto& steps = trj.at("steps");
    if (!steps.is_array()) {
      throw std::invalid_argument("certificate: steps is not an array");
    }
    for (const auto& stj : steps) {
      SolveStep st;
      st.tag = stj.at("tag").get<std::string>();
      st.note = stj.value("note", "");
      st.word = detail::word_from_json(stj.at("word"), cert.k);
      st.point_after = stj.at("point_after").get<long long>();
      st.maxed_after = stj.value("maxed_after", 0);
      tr.steps.push_back(std::move(st));
    }
    cert.traces.push_back(std::move(tr));
  }
  cert.witness = word_from_json(j.at("witness").at("word"), cert.k);
  return cert;
}

}  // namespace detail

inline Certificate certificate_from_json(const nlohmann::json& j) {
  // Missing keys and wrong value types surface as the JSON library's own
  // exceptions; fold them into the same taxonomy as the semantic checks.
  try {
    return detail::certificate_from_json_impl(j);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("certificate: ") + e.what());
  }
}

}  // namespace shuffle
