#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "oracles.hpp"
#include "weaverhard/generate.hpp"

using namespace wh;

TEST_CASE("set-splitting generator respects its options") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    gen::SetSplitGenOptions o;
    o.n_vars = 16;
    o.n_sets = 8;
    o.seed = seed;
    o.planted = seed % 2 == 0;
    const auto inst = gen::random_setsplit(o);
    CHECK(inst.n_vars == 16);
    CHECK(inst.sets.size() <= 8);
    CHECK_NOTHROW(inst.validate());
    CHECK(setsplit::check_322(inst).ok);
    if (o.planted) CHECK(oracle::enumerate_setsplit(inst).satisfiable);
    // Same options, same instance.
    CHECK(gen::random_setsplit(o).sets == inst.sets);
  }
  gen::SetSplitGenOptions loose;
  loose.n_vars = 6;
  loose.n_sets = 20;
  loose.max_occurrence = 0;
  loose.pairwise_one = false;
  CHECK(gen::random_setsplit(loose).sets.size() == 20);
}

TEST_CASE("E3 generator") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    gen::E3GenOptions o;
    o.n_vars = 8;
    o.n_clauses = 20;
    o.seed = seed;
    o.planted = seed % 2 == 1;
    const auto f = gen::random_e3(o);
    CHECK(f.e3_valid);
    CHECK(f.clauses.size() == 20);
    if (o.planted) CHECK(oracle::enumerate_cnf(f));
    CHECK(gen::random_e3(o).clauses == f.clauses);
  }
  gen::E3GenOptions bounded;
  bounded.n_vars = 12;
  bounded.n_clauses = 8;
  bounded.max_occurrence = 2;
  const auto f = gen::random_e3(bounded);
  std::vector<int> occ(13, 0);
  for (const auto& c : f.clauses)
    for (int l : c) ++occ[static_cast<std::size_t>(std::abs(l))];
  for (int c : occ) CHECK(c <= 2);
}

TEST_CASE("all sign patterns") {
  const auto p = gen::all_sign_patterns(2, 5, 7);
  CHECK(p.size() == 8);
  std::set<std::vector<int>> distinct(p.begin(), p.end());
  CHECK(distinct.size() == 8);
  satreduce::CnfFormula f;
  f.n_vars = 7;
  f.clauses = p;
  CHECK_FALSE(oracle::enumerate_cnf(f));
}

TEST_CASE("no small unsatisfiable (3,2-2) instance turns up") {
  const auto s = gen::search_small_unsat_322(26, 500, 3);
  CHECK_FALSE(s.found);
  CHECK(s.tried > 0);
}
