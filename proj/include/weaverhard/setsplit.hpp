#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace wh::setsplit {

// A set of the 2-2 Set Splitting problem: four distinct 1-based variable indices.
using Set4 = std::array<int, 4>;

struct SetSplitInstance {
  int n_vars = 0;
  std::vector<Set4> sets;

  // Throws ArgumentError on out-of-range or repeated members.
  void validate() const;
  // occurrences()[v - 1] = number of sets containing variable v.
  std::vector<int> occurrences() const;
  int max_occurrence() const;
  // containing()[v - 1] = 0-based indices of the sets containing v, ascending.
  std::vector<std::vector<int>> containing() const;
};

struct Assignment {
  std::vector<int> values;

  static Assignment constant(int n, int value);
  int size() const { return static_cast<int>(values.size()); }
  int operator()(int var) const { return values[static_cast<std::size_t>(var - 1)]; }
  int& operator()(int var) { return values[static_cast<std::size_t>(var - 1)]; }
  Assignment negated() const;
  // Throws ArgumentError unless every entry is exactly +1 or -1.
  void validate() const;
};

int unsatisfied_count(const SetSplitInstance& inst, const Assignment& x);

struct Pin {
  int var;
  int value;
};

struct SearchOptions {
  int cap = 30;
  // With pins the global sign-flip symmetry no longer holds, so variable 1 is
  // not fixed to +1.
  std::vector<Pin> pins;
};

// Lexicographically smallest satisfying assignment (ordering +1 before -1,
// variable 1 most significant), with x(1) = +1 when there are no pins.
std::optional<Assignment> brute_force_satisfiable(const SetSplitInstance& inst,
                                                  const SearchOptions& opts = {});

struct MinUnsatisfied {
  int count = 0;
  Assignment argmin;
  long long nodes = 0;
};

// Exact minimum number of unsplit sets over all assignments (branch and bound).
// gamma of the instance is count / sets.size().
MinUnsatisfied min_unsatisfied(const SetSplitInstance& inst, int cap = 30);

// The seven sets forcing a = b:
//   {a,y1,y2,y3} {b,y4,y5,y6} {c,y7,y8,y9} {c,y10,y11,y12}
//   {y1,y4,y7,y10} {y2,y5,y8,y11} {y3,y6,y9,y12}
struct GadgetAllocation {
  int a = 0;
  int b = 0;
  int c = 0;
  std::array<int, 12> y{};
  std::array<Set4, 7> sets{};

  static constexpr int kFreshCount = 13;
  int next_fresh() const { return c + kFreshCount; }
};

GadgetAllocation equality_gadget(int a, int b, int fresh_start);

// (variable, value) pairs covering a, b, c and the twelve y's.
using PartialAssignment = std::vector<std::pair<int, int>>;

PartialAssignment gadget_witness(const GadgetAllocation& g, int value);

struct CopyRecord {
  // copies[0] is the original index; further copies are fresh.
  std::vector<int> copies;
  // gadgets[j] ties copies[j] to copies[j + 1].
  std::vector<GadgetAllocation> gadgets;
};

struct CopyMap {
  std::vector<CopyRecord> vars;  // indexed by original variable - 1
};

struct ThreeOccurrence {
  SetSplitInstance instance;
  CopyMap copy_map;
  int substituted_sets = 0;  // the first substituted_sets sets are the substituted ones
};

// Replaces every variable occurring k >= 2 times by k copies chained by k - 1
// equality gadgets. The result has max occurrence <= 3 and pairwise set
// intersections <= 1.
ThreeOccurrence to_three_occurrence(const SetSplitInstance& inst);

// Extends a source assignment to the normalized instance (copies equal the
// source value, gadgets filled with their witness).
Assignment lift_assignment(const ThreeOccurrence& t, const Assignment& source);
// Reads every original variable off its first copy.
Assignment project_assignment(const ThreeOccurrence& t, const Assignment& out);

struct IntersectionWitness {
  int set_a = 0;  // 1-based
  int set_b = 0;  // 1-based
  std::vector<int> vars;
};

struct Check322Report {
  bool ok = true;
  bool occurrence_ok = true;
  bool intersection_ok = true;
  int max_occurrence = 0;
  int max_intersection = 0;
  std::optional<int> occurrence_witness;  // smallest variable occurring > 3 times
  std::optional<IntersectionWitness> intersection_witness;  // smallest offending pair
};

Check322Report check_322(const SetSplitInstance& inst);

}  // namespace wh::setsplit
