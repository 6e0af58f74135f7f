#pragma once

#include <cstdint>
#include <optional>

#include "weaverhard/satreduce.hpp"
#include "weaverhard/setsplit.hpp"

// Seeded instance generators. Identical options give identical output.
namespace wh::gen {

struct SetSplitGenOptions {
  int n_vars = 12;
  int n_sets = 6;
  int max_occurrence = 3;      // 0 disables the bound
  bool pairwise_one = true;    // keep pairwise set intersections <= 1
  bool planted = false;        // every set is split by a hidden assignment
  std::uint64_t seed = 1;
  int attempts_per_set = 200;  // rejected draws before giving up on a set
};

// Produces up to n_sets sets; fewer when the constraints leave no room.
setsplit::SetSplitInstance random_setsplit(const SetSplitGenOptions& opts);

struct E3GenOptions {
  int n_vars = 10;
  int n_clauses = 12;
  bool planted = false;     // a hidden assignment satisfies every clause
  int max_occurrence = 0;   // per variable; 0 disables the bound
  std::uint64_t seed = 1;
};

satreduce::CnfFormula random_e3(const E3GenOptions& opts);

// All 8 sign patterns on variables a, b, c (unsatisfiable), as E3 clauses.
std::vector<std::vector<int>> all_sign_patterns(int a, int b, int c);

// The smallest unsatisfiable (3,2-2) instance used throughout the tests:
// {a, b, u, v} with equality gadgets a = b and b = u. 30 variables, 15 sets,
// exactly one set is left unsplit by the best assignment.
setsplit::SetSplitInstance forced_triple_instance();

struct SmallUnsatSearch {
  std::optional<setsplit::SetSplitInstance> found;
  int tried = 0;
  int max_vectors = 0;
};

// Seeded search for an unsatisfiable (3,2-2) instance whose quarter
// reduction has at most max_vectors vectors (12 n - 12 m <= max_vectors).
SmallUnsatSearch search_small_unsat_322(int max_vectors, int budget, std::uint64_t seed);

}  // namespace wh::gen
