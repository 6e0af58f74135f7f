#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "oracles.hpp"
#include "weaverhard/errors.hpp"
#include "weaverhard/generate.hpp"
#include "weaverhard/setsplit.hpp"

using namespace wh;
using namespace wh::setsplit;

namespace {

Assignment from_mask(int n, std::uint64_t mask) {
  Assignment x = Assignment::constant(n, 1);
  for (int v = 1; v <= n; ++v) x(v) = ((mask >> (v - 1)) & 1) ? -1 : 1;
  return x;
}

// Random instance with no structural promises: sets of 4 distinct variables.
SetSplitInstance random_instance(std::mt19937_64& rng, int n, int m) {
  SetSplitInstance inst{n, {}};
  std::vector<int> vars(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) vars[static_cast<std::size_t>(v - 1)] = v;
  for (int j = 0; j < m; ++j) {
    std::shuffle(vars.begin(), vars.end(), rng);
    inst.sets.push_back({vars[0], vars[1], vars[2], vars[3]});
  }
  return inst;
}

}  // namespace

TEST_CASE("unsatisfied_count on single sets and the gadget witness") {
  const SetSplitInstance one{4, {{1, 2, 3, 4}}};
  CHECK(unsatisfied_count(one, Assignment{{1, 1, -1, -1}}) == 0);
  CHECK(unsatisfied_count(one, Assignment{{1, 1, 1, -1}}) == 1);

  const auto g = equality_gadget(1, 2, 3);
  SetSplitInstance gadget{15, {g.sets.begin(), g.sets.end()}};
  Assignment x{{1, 1, -1, 1, -1, -1, -1, 1, -1, 1, -1, 1, -1, 1, 1}};
  CHECK(unsatisfied_count(gadget, x) == 0);
  CHECK_THROWS_AS(unsatisfied_count(gadget, Assignment{{1, 1}}), ArgumentError);
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS((SetSplitInstance{4, {{1, 2, 3, 3}}}.validate()), ArgumentError);
  CHECK_THROWS_AS((SetSplitInstance{4, {{1, 2, 3, 5}}}.validate()), ArgumentError);
  CHECK_THROWS_AS((SetSplitInstance{4, {{0, 2, 3, 4}}}.validate()), ArgumentError);
  CHECK_NOTHROW((SetSplitInstance{5, {{1, 2, 3, 4}}}.validate()));
  CHECK_THROWS_AS((Assignment{{1, 0, -1}}.validate()), ArgumentError);
}

TEST_CASE("brute force on the small examples") {
  const auto one = brute_force_satisfiable(SetSplitInstance{4, {{1, 2, 3, 4}}});
  REQUIRE(one);
  CHECK((*one)(1) + (*one)(2) + (*one)(3) + (*one)(4) == 0);
  CHECK(one->values == std::vector<int>{1, 1, -1, -1});

  const auto two = brute_force_satisfiable(SetSplitInstance{5, {{1, 2, 3, 4}, {1, 2, 3, 5}}});
  REQUIRE(two);
  CHECK((*two)(4) == (*two)(5));

  const auto g = equality_gadget(1, 2, 3);
  SetSplitInstance gadget{15, {g.sets.begin(), g.sets.end()}};
  SearchOptions pins;
  pins.pins = {{1, 1}, {2, -1}};
  CHECK_FALSE(brute_force_satisfiable(gadget, pins));
  pins.pins = {{1, -1}, {2, -1}};
  const auto eq = brute_force_satisfiable(gadget, pins);
  REQUIRE(eq);
  CHECK((*eq)(1) == -1);

  CHECK_THROWS_AS(brute_force_satisfiable(SetSplitInstance{31, {}}), CapExceeded);
}

TEST_CASE("brute force returns the lexicographically smallest solution") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    const int n = std::uniform_int_distribution<int>(4, 12)(rng);
    const int m = std::uniform_int_distribution<int>(1, 5)(rng);
    const auto inst = random_instance(rng, n, m);
    // Oracle: first satisfying assignment in (+1 before -1, variable 1 first) order.
    std::optional<Assignment> want;
    for (std::uint64_t mask = 0; mask < (1ULL << n) && !want; ++mask) {
      // bit (n - v) set means x(v) = -1, so counting up walks lexicographic order
      Assignment x = Assignment::constant(n, 1);
      for (int v = 1; v <= n; ++v) x(v) = ((mask >> (n - v)) & 1) ? -1 : 1;
      if (unsatisfied_count(inst, x) == 0) want = x;
    }
    const auto got = brute_force_satisfiable(inst);
    REQUIRE(got.has_value() == want.has_value());
    if (got) CHECK(got->values == want->values);
  }
}

TEST_CASE("min_unsatisfied agrees with plain enumeration") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 150; ++t) {
    const int n = std::uniform_int_distribution<int>(4, 14)(rng);
    const int m = std::uniform_int_distribution<int>(1, 9)(rng);
    const auto inst = random_instance(rng, n, m);
    const auto want = oracle::enumerate_setsplit(inst);
    const auto got = min_unsatisfied(inst);
    CHECK(got.count == want.min_unsat);
    CHECK(unsatisfied_count(inst, got.argmin) == got.count);
  }
}

TEST_CASE("sign flip preserves the unsatisfied count") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 300; ++t) {
    const int n = std::uniform_int_distribution<int>(4, 20)(rng);
    const auto inst = random_instance(rng, n, std::uniform_int_distribution<int>(1, 10)(rng));
    const auto x = from_mask(n, rng());
    CHECK(unsatisfied_count(inst, x) == unsatisfied_count(inst, x.negated()));
  }
}

TEST_CASE("equality gadget layout and witness") {
  const auto g = equality_gadget(1, 2, 3);
  CHECK(g.c == 3);
  for (int t = 0; t < 12; ++t) CHECK(g.y[t] == 4 + t);
  const std::vector<Set4> want = {{1, 4, 5, 6}, {2, 7, 8, 9}, {3, 10, 11, 12}, {3, 13, 14, 15},
                                  {4, 7, 10, 13}, {5, 8, 11, 14}, {6, 9, 12, 15}};
  CHECK(std::vector<Set4>(g.sets.begin(), g.sets.end()) == want);
  CHECK(g.next_fresh() == 16);

  const auto w = gadget_witness(g, 1);
  std::map<int, int> val(w.begin(), w.end());
  CHECK(val.size() == 15);
  CHECK(val[1] == 1);
  CHECK(val[2] == 1);
  CHECK(val[3] == -1);
  const std::vector<int> ys = {1, -1, -1, -1, 1, -1, 1, -1, 1, -1, 1, 1};
  for (int t = 0; t < 12; ++t) CHECK(val[4 + t] == ys[static_cast<std::size_t>(t)]);
  const auto neg = gadget_witness(g, -1);
  for (const auto& [v, s] : neg) CHECK(s == -val[v]);

  CHECK_THROWS_AS(equality_gadget(1, 1, 3), ArgumentError);
  CHECK_THROWS_AS(equality_gadget(1, 5, 5), ArgumentError);
  CHECK_THROWS_AS(gadget_witness(g, 0), ArgumentError);
}

TEST_CASE("equality gadget structure and soundness, exhaustively") {
  const auto g = equality_gadget(7, 9, 20);
  SetSplitInstance gadget{32, {g.sets.begin(), g.sets.end()}};
  const auto chk = check_322(gadget);
  CHECK(chk.ok);
  const auto occ = gadget.occurrences();
  CHECK(occ[6] == 1);
  CHECK(occ[8] == 1);
  CHECK(occ[19] == 2);
  for (int y : g.y) CHECK(occ[static_cast<std::size_t>(y - 1)] == 2);

  // Gadget variables only: 15 of them.
  std::vector<int> vars = {g.a, g.b, g.c};
  vars.insert(vars.end(), g.y.begin(), g.y.end());
  int solutions = 0;
  for (int mask = 0; mask < (1 << 15); ++mask) {
    Assignment x = Assignment::constant(32, 1);
    for (int t = 0; t < 15; ++t) x(vars[static_cast<std::size_t>(t)]) = ((mask >> t) & 1) ? -1 : 1;
    if (unsatisfied_count(gadget, x) != 0) continue;
    ++solutions;
    CHECK(x(g.a) == x(g.b));
  }
  CHECK(solutions > 0);
  for (int value : {1, -1}) {
    Assignment x = Assignment::constant(32, 1);
    for (const auto& [v, s] : gadget_witness(g, value)) x(v) = s;
    CHECK(unsatisfied_count(gadget, x) == 0);
  }
}

TEST_CASE("to_three_occurrence examples") {
  const SetSplitInstance twice{7, {{1, 2, 3, 4}, {1, 5, 6, 7}}};
  const auto t = to_three_occurrence(twice);
  CHECK(t.instance.sets.size() == 9);
  CHECK(t.copy_map.vars[0].copies.size() == 2);
  CHECK(t.copy_map.vars[0].gadgets.size() == 1);
  CHECK(t.instance.sets[0][0] == 1);
  CHECK(t.instance.sets[1][0] == t.copy_map.vars[0].copies[1]);
  CHECK(check_322(t.instance).ok);

  const SetSplitInstance once{8, {{1, 2, 3, 4}, {5, 6, 7, 8}}};
  const auto u = to_three_occurrence(once);
  CHECK(u.instance.n_vars == 8);
  CHECK(u.instance.sets == once.sets);
  for (int v = 1; v <= 8; ++v) CHECK(u.copy_map.vars[static_cast<std::size_t>(v - 1)].copies == std::vector<int>{v});

  // Unused variables are kept and never padded.
  const auto w = to_three_occurrence(SetSplitInstance{6, {{1, 2, 3, 4}}});
  CHECK(w.instance.n_vars == 6);
  CHECK(w.copy_map.vars[5].gadgets.empty());
}

TEST_CASE("to_three_occurrence preserves satisfiability") {
  std::mt19937_64 rng(31);
  int sat = 0, unsat = 0;
  for (int t = 0; t < 80; ++t) {
    const int n = std::uniform_int_distribution<int>(4, 9)(rng);
    const int m = std::uniform_int_distribution<int>(1, 6)(rng);
    const auto inst = random_instance(rng, n, m);
    const auto src = oracle::enumerate_setsplit(inst);
    const auto out = to_three_occurrence(inst);
    const auto chk = check_322(out.instance);
    CHECK(chk.ok);
    CHECK(out.instance.max_occurrence() <= 3);
    std::vector<int> model;
    const auto r = oracle::cdcl_setsplit(out.instance, &model);
    REQUIRE(r != oracle::Result::unknown);
    CHECK((r == oracle::Result::sat) == src.satisfiable);
    if (src.satisfiable) {
      ++sat;
      const auto x = *brute_force_satisfiable(inst);
      const auto lifted = lift_assignment(out, x);
      CHECK(unsatisfied_count(out.instance, lifted) == 0);
      CHECK(project_assignment(out, lifted).values == x.values);
      CHECK(unsatisfied_count(inst, project_assignment(out, Assignment{model})) == 0);
    } else {
      ++unsat;
    }
  }
  CHECK(sat > 0);
  CHECK(unsat > 0);
}

TEST_CASE("check_322 reports witnesses") {
  const auto a = check_322(SetSplitInstance{6, {{1, 2, 3, 4}, {1, 2, 5, 6}}});
  CHECK_FALSE(a.ok);
  CHECK(a.occurrence_ok);
  CHECK_FALSE(a.intersection_ok);
  REQUIRE(a.intersection_witness);
  CHECK(a.intersection_witness->set_a == 1);
  CHECK(a.intersection_witness->set_b == 2);
  CHECK(a.intersection_witness->vars == std::vector<int>{1, 2});

  const auto b = check_322(SetSplitInstance{4, {{1, 2, 3, 4}, {1, 2, 3, 4}, {1, 2, 3, 4}, {1, 2, 3, 4}}});
  CHECK_FALSE(b.occurrence_ok);
  CHECK_FALSE(b.intersection_ok);
  CHECK(b.occurrence_witness == 1);
  CHECK(b.max_occurrence == 4);
}

TEST_CASE("forced triple instance is unsatisfiable with exactly one unsplit set") {
  const auto inst = gen::forced_triple_instance();
  CHECK(inst.n_vars == 30);
  CHECK(inst.sets.size() == 15);
  CHECK(check_322(inst).ok);
  CHECK(oracle::cdcl_setsplit(inst) == oracle::Result::unsat);
  const auto mu = min_unsatisfied(inst);
  CHECK(mu.count == 1);
  CHECK(unsatisfied_count(inst, mu.argmin) == 1);
}
