#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weaverhard/setsplit.hpp"

// E3-SAT -> NAE-4 -> NAE-3 -> negation-free NAE-3 -> 2-2 Set Splitting.
// Literals are signed 1-based variable indices; a variable set to +1 is true.
// Every stage keeps the source variables 1..n at their indices and allocates
// fresh variables after them.
namespace wh::satreduce {

using setsplit::Assignment;

struct CnfFormula {
  int n_vars = 0;
  std::vector<std::vector<int>> clauses;
  // Exactly 3 literals over 3 distinct variables in every clause.
  bool e3_valid = true;
  std::vector<std::string> e3_errors;  // one entry per offending clause

  bool satisfied_by(const Assignment& x) const;
};

// Throws ParseError with a line number on a malformed header or literal.
// Clauses that are not E3 are kept and reported through e3_valid / e3_errors.
CnfFormula parse_dimacs(std::string_view text);
std::string to_dimacs(const CnfFormula& f);
// Recomputes e3_valid / e3_errors.
void classify_e3(CnfFormula& f);

struct NaeFormula {
  int n_vars = 0;
  std::vector<std::vector<int>> clauses;

  // A clause is satisfied when its literal values are not all equal.
  int unsatisfied_count(const Assignment& x) const;
  bool satisfied_by(const Assignment& x) const { return unsatisfied_count(x) == 0; }
  bool all_positive() const;
  bool has_arity(int k) const;  // every clause has k literals over k distinct variables
};

// (x, y, a), (x, y, b), (x, y, c), (a, b, c): satisfiable iff x != y.
struct NegationGadget {
  int x = 0;
  int y = 0;
  int a = 0;
  int b = 0;
  int c = 0;
  std::vector<std::vector<int>> clauses;
};

NegationGadget negation_gadget(int x, int y, int fresh_start);

struct ExpanderGraph {
  int n_vertices = 0;
  int offset = 0;  // second skip offset s; the first is 1
  std::vector<std::pair<int, int>> edges;  // 0-based, i < j
  int degree = 4;
  double lambda2 = 0.0;          // second largest adjacency eigenvalue
  double second_modulus = 0.0;   // largest |eigenvalue| other than the trivial 4
};

// Circulant on n >= 5 vertices with offsets {1, s}, s = max(2, round(sqrt n))
// moved upward until s, n - s are not +-1 mod n and 2s != 0 mod n.
ExpanderGraph expander_graph(int n);
// All adjacency eigenvalues, closed form for circulants, ascending.
std::vector<double> expander_spectrum(const ExpanderGraph& g);

struct Nae4Result {
  NaeFormula formula;
  bool copies_per_clause = false;
  std::vector<int> z;  // z[j] for clause j (surplus copies follow when copies_per_clause)
  std::vector<int> w;  // one per expander edge
  std::optional<ExpanderGraph> graph;
  std::vector<NegationGadget> gadgets;
};

// Throws ArgumentError unless f is E3-valid. In copies mode the output mixes
// arity-4 clause images with the arity-3 gadget clauses.
Nae4Result e3sat_to_nae4(const CnfFormula& f, bool copies_per_clause);
// Source assignment -> NAE assignment: z false, w true, gadget atoms (+, +, -).
Assignment lift_nae4(const Nae4Result& r, const Assignment& x);

struct SplitRecord {
  int clause = 0;  // index in the input formula
  int y = 0;
};

struct Nae3Result {
  NaeFormula formula;
  std::vector<SplitRecord> splits;
};

// (t1, t2, t3, t4) -> (t1, t2, y), (-y, t3, t4); arity-3 clauses pass through.
Nae3Result nae4_to_nae3(const NaeFormula& f);
Assignment lift_nae3(const Nae3Result& r, const NaeFormula& source, const Assignment& x);

struct NegationFreeResult {
  NaeFormula formula;
  std::vector<int> partner;  // partner[v - 1] = partner of v, 0 if none
  std::vector<NegationGadget> gadgets;
};

NegationFreeResult eliminate_negations(const NaeFormula& f);
Assignment lift_negation_free(const NegationFreeResult& r, const Assignment& x);

struct SetSplitResult {
  setsplit::SetSplitInstance instance;
  std::vector<int> balance;  // balance[j] = s_j
};

SetSplitResult nae3_to_setsplit(const NaeFormula& f);
Assignment lift_setsplit(const SetSplitResult& r, const NaeFormula& source, const Assignment& x);

struct StageStats {
  std::string stage;
  int n_vars = 0;
  int items = 0;  // clauses or sets
  int max_occurrence = 0;
};

struct PipelineResult {
  CnfFormula source;
  Nae4Result nae4;
  Nae3Result nae3;
  NegationFreeResult positive;
  SetSplitResult split;
  setsplit::ThreeOccurrence normalized;
  std::vector<StageStats> stats;

  const setsplit::SetSplitInstance& instance() const { return normalized.instance; }
};

PipelineResult full_pipeline(const CnfFormula& f);
// Maps a satisfying assignment of the source forward through every stage.
Assignment lift_pipeline(const PipelineResult& r, const Assignment& x);
// Reads the source variables off an assignment of the final instance.
Assignment project_pipeline(const PipelineResult& r, const Assignment& out);

int max_variable_occurrence(const NaeFormula& f);

// Depth-first search in variable order, +1 before -1; refuses above cap.
// The first satisfying assignment in that order is returned.
std::optional<Assignment> brute_force_cnf(const CnfFormula& f, int cap = 30);
std::optional<Assignment> brute_force_nae(const NaeFormula& f, int cap = 30);

}  // namespace wh::satreduce
