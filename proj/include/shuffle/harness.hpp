#pragma once

// Grid verification harness.
//
// Runs the permutation-group engine over a rectangle of deck parameters
// (k, n), compares each computed order and 2-transitivity flag against the
// closed-form prediction of classifier.hpp, and serializes the outcome as
// JSON or CSV.  Engine results can be cached on disk keyed by (k, n,
// generating set); a cached cell reproduces byte-identical output apart from
// the timing block.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "shuffle/classifier.hpp"
#include "shuffle/codec.hpp"
#include "shuffle/engine.hpp"

namespace shuffle {

struct CellResult {
  int k = 0;
  long long n = 0;
  int s = 0;
  long long t = 0;
  long long degree = 0;
  std::string case_tag;
  bool has_m = false;
  int m = 0;
  std::string predicted_order;  // decimal string (orders overflow ints fast)
  bool predicted_two_transitive = false;
  bool in_alternating = false;
  bool extrapolated = false;
  std::string engine_order;
  bool engine_two_transitive = false;
  bool shortcut = false;  // engine certified a giant without a full chain
  bool order_match = false;
  bool two_transitive_match = false;
  bool pass = false;
  long long elapsed_ms = 0;
  bool cache_hit = false;
};

struct GridReport {
  std::string generators;  // "min" or "full"
  std::vector<CellResult> cells;
  long long passes = 0;
  long long failures = 0;
  bool all_pass = false;
};

inline const char* gen_set_name(GenSet g) {
  return g == GenSet::Min ? "min" : "full";
}

// Cache directory resolution: the environment variable wins over the flag,
// an empty result disables caching.
inline std::string resolve_cache_dir(const std::string& flag_value) {
  if (const char* env = std::getenv("SHUFFLE_CACHE_DIR")) {
    if (*env != '\0') return env;
  }
  return flag_value;
}

namespace detail {

struct EngineOutcome {
  std::string order;
  bool two_transitive = false;
  bool shortcut = false;
};

inline std::string cache_file_name(int k, long long n, GenSet gens) {
  std::ostringstream os;
  os << "k" << k << "_n" << n << "_" << gen_set_name(gens) << ".json";
  return os.str();
}

inline bool load_cached_outcome(const std::string& dir, int k, long long n,
                                GenSet gens, EngineOutcome* out) {
  if (dir.empty()) return false;
  std::filesystem::path path =
      std::filesystem::path(dir) / cache_file_name(k, n, gens);
  std::ifstream in(path);
  if (!in) return false;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.value("schema", 0) != 1) return false;
    if (j.value("k", -1) != k || j.value("n", -1LL) != n) return false;
    if (j.value("generators", "") != gen_set_name(gens)) return false;
    out->order = j.at("order").get<std::string>();
    out->two_transitive = j.at("two_transitive").get<bool>();
    out->shortcut = j.at("shortcut").get<bool>();
    return true;
  } catch (const nlohmann::json::exception&) {
    return false;  // corrupt cache entries are recomputed
  }
}

inline void store_cached_outcome(const std::string& dir, int k, long long n,
                                 GenSet gens, const EngineOutcome& out) {
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return;  // caching is best-effort
  std::filesystem::path path =
      std::filesystem::path(dir) / cache_file_name(k, n, gens);
  nlohmann::json j;
  j["schema"] = 1;
  j["k"] = k;
  j["n"] = n;
  j["generators"] = gen_set_name(gens);
  j["order"] = out.order;
  j["two_transitive"] = out.two_transitive;
  j["shortcut"] = out.shortcut;
  std::ofstream os(path);
  os << j.dump(2) << "\n";
}

}  // namespace detail

// Verify one deck: engine order and 2-transitivity against the prediction.
inline CellResult run_cell(int k, long long n, GenSet gens,
                           const std::string& cache_dir) {
  auto t0 = std::chrono::steady_clock::now();
  ShuffleParams p = derive_params(k, n);
  GroupDescriptor d = predict(k, n);
  CellResult r;
  r.k = k;
  r.n = n;
  r.s = p.s;
  r.t = p.t;
  r.degree = p.degree();
  r.case_tag = case_tag(d.group_case);
  r.has_m = d.has_m;
  r.m = d.m;
  r.predicted_order = d.predicted_order.str();
  r.predicted_two_transitive = d.two_transitive;
  r.in_alternating = d.in_alternating;
  r.extrapolated = d.extrapolated;

  detail::EngineOutcome eng;
  if (detail::load_cached_outcome(cache_dir, k, n, gens, &eng)) {
    r.cache_hit = true;
  } else {
    std::vector<Perm> gv = shuffle_generators(p, gens);
    GiantCheck gc = check_giant(gv, static_cast<std::size_t>(p.degree()));
    eng.order = gc.order.str();
    eng.two_transitive = gc.two_transitive;
    eng.shortcut = gc.shortcut;
    detail::store_cached_outcome(cache_dir, k, n, gens, eng);
  }
  r.engine_order = eng.order;
  r.engine_two_transitive = eng.two_transitive;
  r.shortcut = eng.shortcut;
  r.order_match = r.engine_order == r.predicted_order;
  r.two_transitive_match =
      r.engine_two_transitive == r.predicted_two_transitive;
  r.pass = r.order_match && r.two_transitive_match;
  auto t1 = std::chrono::steady_clock::now();
  r.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  return r;
}

struct GridSpec {
  int k_min = 2;
  int k_max = 2;
  long long n_min = 1;
  long long n_max = 1;
  long long max_degree = 300;
  GenSet gens = GenSet::Min;
};

inline std::vector<std::pair<int, long long>> enumerate_cells(
    const GridSpec& spec) {
  std::vector<std::pair<int, long long>> cells;
  for (int k = spec.k_min; k <= spec.k_max; ++k) {
    for (long long n = spec.n_min; n <= spec.n_max; ++n) {
      if (static_cast<long long>(k) * n <= spec.max_degree) {
        cells.emplace_back(k, n);
      }
    }
  }
  return cells;
}

// Run every cell of the grid, optionally across several worker threads.
// Results are stored by cell index, so output order is deterministic.
inline GridReport run_grid(const GridSpec& spec, const std::string& cache_dir,
                           int jobs = 1) {
  auto cells = enumerate_cells(spec);
  GridReport rep;
  rep.generators = gen_set_name(spec.gens);
  rep.cells.resize(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;
  auto work = [&]() {
    for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
      try {
        rep.cells[i] =
            run_cell(cells[i].first, cells[i].second, spec.gens, cache_dir);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  if (jobs <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  for (const CellResult& c : rep.cells) {
    if (c.pass) {
      ++rep.passes;
    } else {
      ++rep.failures;
    }
  }
  rep.all_pass = rep.failures == 0 && !rep.cells.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// Serialization.

inline nlohmann::json cell_to_json(const CellResult& r) {
  nlohmann::json j;
  j["k"] = r.k;
  j["n"] = r.n;
  j["s"] = r.s;
  j["t"] = r.t;
  j["degree"] = r.degree;
  j["case"] = r.case_tag;
  if (r.has_m) j["m"] = r.m;
  j["predicted_order"] = r.predicted_order;
  j["predicted_two_transitive"] = r.predicted_two_transitive;
  j["in_alternating"] = r.in_alternating;
  if (r.extrapolated) j["extrapolated"] = true;
  j["engine_order"] = r.engine_order;
  j["engine_two_transitive"] = r.engine_two_transitive;
  j["shortcut"] = r.shortcut;
  j["order_match"] = r.order_match;
  j["two_transitive_match"] = r.two_transitive_match;
  j["pass"] = r.pass;
  j["timing"] = {{"elapsed_ms", r.elapsed_ms}, {"cache_hit", r.cache_hit}};
  return j;
}

inline nlohmann::json grid_to_json(const GridReport& rep) {
  nlohmann::json j;
  j["schema"] = 1;
  j["generators"] = rep.generators;
  nlohmann::json cells = nlohmann::json::array();
  for (const CellResult& c : rep.cells) cells.push_back(cell_to_json(c));
  j["cells"] = std::move(cells);
  j["summary"] = {{"cells", rep.cells.size()},
                  {"passes", rep.passes},
                  {"failures", rep.failures},
                  {"all_pass", rep.all_pass}};
  return j;
}

inline std::string grid_to_csv(const GridReport& rep) {
  std::ostringstream os;
  os << "k,n,s,t,degree,case,predicted_order,engine_order,"
        "two_transitive,pass,elapsed_ms,cache_hit\n";
  for (const CellResult& c : rep.cells) {
    os << c.k << ',' << c.n << ',' << c.s << ',' << c.t << ',' << c.degree
       << ',' << c.case_tag << ',' << c.predicted_order << ','
       << c.engine_order << ',' << (c.engine_two_transitive ? 1 : 0) << ','
       << (c.pass ? 1 : 0) << ',' << c.elapsed_ms << ','
       << (c.cache_hit ? 1 : 0) << '\n';
  }
  return os.str();
}

inline std::string grid_to_text(const GridReport& rep) {
  std::ostringstream os;
  for (const CellResult& c : rep.cells) {
    os << "k=" << c.k << " n=" << c.n << " degree=" << c.degree << " "
       << c.case_tag << " order=" << c.engine_order
       << (c.engine_two_transitive ? " 2-transitive" : "")
       << (c.pass ? "  [ok]" : "  [MISMATCH predicted " + c.predicted_order +
                                   "]")
       << "\n";
  }
  os << rep.passes << " ok, " << rep.failures << " mismatched\n";
  return os.str();
}

}  // namespace shuffle
