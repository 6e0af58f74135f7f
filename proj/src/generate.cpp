#include "weaverhard/generate.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "weaverhard/errors.hpp"

namespace wh::gen {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

setsplit::SetSplitInstance random_setsplit(const SetSplitGenOptions& opts) {
  if (opts.n_vars < 4) throw ArgumentError("random_setsplit needs at least 4 variables");
  if (opts.n_sets < 0) throw ArgumentError("n_sets must be non-negative");
  std::mt19937_64 rng(opts.seed);
  setsplit::SetSplitInstance inst;
  inst.n_vars = opts.n_vars;

  std::vector<int> hidden(static_cast<std::size_t>(opts.n_vars) + 1);
  for (int& v : hidden) v = (rng() & 1U) ? 1 : -1;
  std::vector<int> occ(static_cast<std::size_t>(opts.n_vars) + 1, 0);
  std::set<std::pair<int, int>> used_pairs;

  for (int j = 0; j < opts.n_sets; ++j) {
    bool placed = false;
    for (int t = 0; t < opts.attempts_per_set && !placed; ++t) {
      setsplit::Set4 s{};
      std::set<int> members;
      while (members.size() < 4) members.insert(uniform(rng, 1, opts.n_vars));
      std::copy(members.begin(), members.end(), s.begin());
      std::shuffle(s.begin(), s.end(), rng);
      if (opts.planted) {
        int sum = 0;
        for (int v : s) sum += hidden[static_cast<std::size_t>(v)];
        if (sum != 0) continue;
      }
      if (opts.max_occurrence > 0 &&
          std::any_of(s.begin(), s.end(), [&](int v) { return occ[static_cast<std::size_t>(v)] >= opts.max_occurrence; }))
        continue;
      std::vector<std::pair<int, int>> pairs;
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) pairs.emplace_back(std::min(s[a], s[b]), std::max(s[a], s[b]));
      if (opts.pairwise_one &&
          std::any_of(pairs.begin(), pairs.end(), [&](const auto& p) { return used_pairs.count(p) > 0; }))
        continue;
      for (int v : s) ++occ[static_cast<std::size_t>(v)];
      used_pairs.insert(pairs.begin(), pairs.end());
      inst.sets.push_back(s);
      placed = true;
    }
  }
  return inst;
}

satreduce::CnfFormula random_e3(const E3GenOptions& opts) {
  if (opts.n_vars < 3) throw ArgumentError("random_e3 needs at least 3 variables");
  std::mt19937_64 rng(opts.seed);
  satreduce::CnfFormula f;
  f.n_vars = opts.n_vars;
  std::vector<int> hidden(static_cast<std::size_t>(opts.n_vars) + 1);
  for (int& v : hidden) v = (rng() & 1U) ? 1 : -1;
  std::vector<int> occ(static_cast<std::size_t>(opts.n_vars) + 1, 0);

  for (int j = 0; j < opts.n_clauses; ++j) {
    std::vector<int> pool;
    for (int v = 1; v <= opts.n_vars; ++v)
      if (opts.max_occurrence <= 0 || occ[static_cast<std::size_t>(v)] < opts.max_occurrence) pool.push_back(v);
    if (pool.size() < 3) break;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<int> clause;
    for (int t = 0; t < 3; ++t) clause.push_back((rng() & 1U) ? pool[t] : -pool[t]);
    if (opts.planted) {
      const bool sat = std::any_of(clause.begin(), clause.end(), [&](int lit) {
        return (lit > 0 ? 1 : -1) * hidden[static_cast<std::size_t>(std::abs(lit))] == 1;
      });
      if (!sat) {
        const int t = uniform(rng, 0, 2);
        clause[t] = -clause[t];
      }
    }
    for (int lit : clause) ++occ[static_cast<std::size_t>(std::abs(lit))];
    f.clauses.push_back(std::move(clause));
  }
  satreduce::classify_e3(f);
  return f;
}

std::vector<std::vector<int>> all_sign_patterns(int a, int b, int c) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < 8; ++mask)
    out.push_back({(mask & 1) ? -a : a, (mask & 2) ? -b : b, (mask & 4) ? -c : c});
  return out;
}

setsplit::SetSplitInstance forced_triple_instance() {
  setsplit::SetSplitInstance inst;
  inst.sets.push_back({1, 2, 3, 4});
  const auto g1 = setsplit::equality_gadget(1, 2, 5);
  const auto g2 = setsplit::equality_gadget(2, 3, g1.next_fresh());
  for (const auto& s : g1.sets) inst.sets.push_back(s);
  for (const auto& s : g2.sets) inst.sets.push_back(s);
  inst.n_vars = g2.next_fresh() - 1;
  return inst;
}

SmallUnsatSearch search_small_unsat_322(int max_vectors, int budget, std::uint64_t seed) {
  SmallUnsatSearch out;
  out.max_vectors = max_vectors;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < budget; ++t) {
    SetSplitGenOptions o;
    o.n_vars = uniform(rng, 4, 12);
    o.n_sets = uniform(rng, 1, 9);
    o.seed = rng();
    auto inst = random_setsplit(o);
    ++out.tried;
    const int vectors = 12 * inst.n_vars - 12 * static_cast<int>(inst.sets.size());
    if (vectors > max_vectors) continue;
    if (!setsplit::brute_force_satisfiable(inst)) {
      out.found = std::move(inst);
      return out;
    }
  }
  return out;
}

}  // namespace wh::gen
