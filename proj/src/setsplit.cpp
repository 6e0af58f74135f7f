#include "weaverhard/setsplit.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>

#include "weaverhard/errors.hpp"

namespace wh::setsplit {

void SetSplitInstance::validate() const {
  if (n_vars < 0) throw ArgumentError("n_vars must be non-negative");
  for (std::size_t j = 0; j < sets.size(); ++j) {
    const auto& s = sets[j];
    for (int a = 0; a < 4; ++a) {
      if (s[a] < 1 || s[a] > n_vars)
        throw ArgumentError("set " + std::to_string(j + 1) + ": variable " +
                            std::to_string(s[a]) + " out of range [1, " +
                            std::to_string(n_vars) + "]");
      for (int b = 0; b < a; ++b)
        if (s[a] == s[b])
          throw ArgumentError("set " + std::to_string(j + 1) + ": repeated variable " +
                              std::to_string(s[a]));
    }
  }
}

std::vector<int> SetSplitInstance::occurrences() const {
  std::vector<int> occ(static_cast<std::size_t>(n_vars), 0);
  for (const auto& s : sets)
    for (int v : s) ++occ[static_cast<std::size_t>(v - 1)];
  return occ;
}

int SetSplitInstance::max_occurrence() const {
  const auto occ = occurrences();
  return occ.empty() ? 0 : *std::max_element(occ.begin(), occ.end());
}

std::vector<std::vector<int>> SetSplitInstance::containing() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n_vars));
  for (std::size_t j = 0; j < sets.size(); ++j)
    for (int v : sets[j]) out[static_cast<std::size_t>(v - 1)].push_back(static_cast<int>(j));
  return out;
}

Assignment Assignment::constant(int n, int value) {
  return Assignment{std::vector<int>(static_cast<std::size_t>(n), value)};
}

Assignment Assignment::negated() const {
  Assignment out = *this;
  for (int& v : out.values) v = -v;
  return out;
}

void Assignment::validate() const {
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] != 1 && values[i] != -1)
      throw ArgumentError("assignment entry " + std::to_string(i + 1) + " is not +1/-1");
}

int unsatisfied_count(const SetSplitInstance& inst, const Assignment& x) {
  if (x.size() != inst.n_vars)
    throw ArgumentError("assignment length " + std::to_string(x.size()) + " != n_vars " +
                        std::to_string(inst.n_vars));
  int bad = 0;
  for (const auto& s : inst.sets) {
    int sum = 0;
    for (int v : s) sum += x(v);
    if (sum != 0) ++bad;
  }
  return bad;
}

namespace {

// Depth-first search over variables in index order, trying +1 before -1.
// Tracks per-set partial sums so a set is known to be unsplittable as soon as
// |partial sum| exceeds the number of its unassigned members.
class SplitSearch {
public:
  explicit SplitSearch(const SetSplitInstance& inst)
      : inst_(inst),
        containing_(inst.containing()),
        sum_(inst.sets.size(), 0),
        open_(inst.sets.size(), 4),
        x_(static_cast<std::size_t>(inst.n_vars), 0) {}

  void restrict(int var, int value) { allowed_[var] = value; }

  std::optional<Assignment> first_satisfying() {
    if (dfs_sat(1)) return Assignment{x_};
    return std::nullopt;
  }

  MinUnsatisfied minimize() {
    best_ = static_cast<int>(inst_.sets.size()) + 1;
    dfs_min(1, 0);
    MinUnsatisfied r;
    r.count = best_;
    r.argmin = Assignment{best_x_};
    r.nodes = nodes_;
    return r;
  }

private:
  bool dead(int j) const { return std::abs(sum_[j]) > open_[j]; }

  // Returns the number of sets that became dead by this assignment.
  int assign(int var, int value) {
    x_[static_cast<std::size_t>(var - 1)] = value;
    int newly_dead = 0;
    for (int j : containing_[static_cast<std::size_t>(var - 1)]) {
      const bool was = dead(j);
      sum_[j] += value;
      --open_[j];
      if (!was && dead(j)) ++newly_dead;
    }
    return newly_dead;
  }

  void unassign(int var, int value) {
    for (int j : containing_[static_cast<std::size_t>(var - 1)]) {
      sum_[j] -= value;
      ++open_[j];
    }
    x_[static_cast<std::size_t>(var - 1)] = 0;
  }

  int values_for(int var, int out[2]) const {
    auto it = allowed_.find(var);
    if (it != allowed_.end()) {
      out[0] = it->second;
      return 1;
    }
    out[0] = 1;
    out[1] = -1;
    return 2;
  }

  bool dfs_sat(int var) {
    ++nodes_;
    if (var > inst_.n_vars) return true;
    int vals[2];
    const int nv = values_for(var, vals);
    for (int t = 0; t < nv; ++t) {
      const int d = assign(var, vals[t]);
      if (d == 0 && dfs_sat(var + 1)) return true;
      unassign(var, vals[t]);
    }
    return false;
  }

  void dfs_min(int var, int cost) {
    ++nodes_;
    if (cost >= best_) return;
    if (var > inst_.n_vars) {
      best_ = cost;
      best_x_ = x_;
      return;
    }
    int vals[2];
    const int nv = values_for(var, vals);
    for (int t = 0; t < nv; ++t) {
      const int d = assign(var, vals[t]);
      dfs_min(var + 1, cost + d);
      unassign(var, vals[t]);
    }
  }

  const SetSplitInstance& inst_;
  std::vector<std::vector<int>> containing_;
  std::vector<int> sum_;
  std::vector<int> open_;
  std::vector<int> x_;
  std::map<int, int> allowed_;
  int best_ = 0;
  std::vector<int> best_x_;
  long long nodes_ = 0;
};

void check_cap(const SetSplitInstance& inst, int cap) {
  if (inst.n_vars > cap) throw CapExceeded("set splitting brute force", inst.n_vars, cap);
}

}  // namespace

std::optional<Assignment> brute_force_satisfiable(const SetSplitInstance& inst,
                                                  const SearchOptions& opts) {
  inst.validate();
  check_cap(inst, opts.cap);
  SplitSearch search(inst);
  for (const auto& p : opts.pins) {
    if (p.var < 1 || p.var > inst.n_vars) throw ArgumentError("pin variable out of range");
    if (p.value != 1 && p.value != -1) throw ArgumentError("pin value must be +1/-1");
    search.restrict(p.var, p.value);
  }
  if (opts.pins.empty() && inst.n_vars >= 1) search.restrict(1, 1);
  return search.first_satisfying();
}

MinUnsatisfied min_unsatisfied(const SetSplitInstance& inst, int cap) {
  inst.validate();
  check_cap(inst, cap);
  SplitSearch search(inst);
  if (inst.n_vars >= 1) search.restrict(1, 1);
  return search.minimize();
}

GadgetAllocation equality_gadget(int a, int b, int fresh_start) {
  if (a == b) throw ArgumentError("equality gadget needs two distinct variables");
  if (a < 1 || b < 1) throw ArgumentError("equality gadget variables must be positive");
  if (fresh_start <= std::max(a, b))
    throw ArgumentError("fresh_start must exceed the gadget's endpoints");
  GadgetAllocation g;
  g.a = a;
  g.b = b;
  g.c = fresh_start;
  for (int t = 0; t < 12; ++t) g.y[t] = fresh_start + 1 + t;
  const auto& y = g.y;
  g.sets = {{{a, y[0], y[1], y[2]},
             {b, y[3], y[4], y[5]},
             {g.c, y[6], y[7], y[8]},
             {g.c, y[9], y[10], y[11]},
             {y[0], y[3], y[6], y[9]},
             {y[1], y[4], y[7], y[10]},
             {y[2], y[5], y[8], y[11]}}};
  return g;
}

PartialAssignment gadget_witness(const GadgetAllocation& g, int value) {
  if (value != 1 && value != -1) throw ArgumentError("gadget witness value must be +1/-1");
  // Found by exhaustive search over the 13 free variables with a = b = +1.
  static constexpr std::array<int, 12> kY = {+1, -1, -1, -1, +1, -1, +1, -1, +1, -1, +1, +1};
  static constexpr int kC = -1;
  PartialAssignment out;
  out.reserve(15);
  out.emplace_back(g.a, value);
  out.emplace_back(g.b, value);
  out.emplace_back(g.c, kC * value);
  for (int t = 0; t < 12; ++t) out.emplace_back(g.y[t], kY[t] * value);
  return out;
}

ThreeOccurrence to_three_occurrence(const SetSplitInstance& inst) {
  inst.validate();
  const auto occ = inst.occurrences();
  ThreeOccurrence out;
  out.copy_map.vars.resize(static_cast<std::size_t>(inst.n_vars));

  int next = inst.n_vars + 1;
  for (int v = 1; v <= inst.n_vars; ++v) {
    auto& rec = out.copy_map.vars[static_cast<std::size_t>(v - 1)];
    rec.copies.push_back(v);
    for (int j = 1; j < occ[static_cast<std::size_t>(v - 1)]; ++j) rec.copies.push_back(next++);
  }

  std::vector<int> used(static_cast<std::size_t>(inst.n_vars), 0);
  out.instance.sets.reserve(inst.sets.size());
  for (const auto& s : inst.sets) {
    Set4 sub{};
    for (int a = 0; a < 4; ++a) {
      auto& rec = out.copy_map.vars[static_cast<std::size_t>(s[a] - 1)];
      sub[a] = rec.copies[static_cast<std::size_t>(used[static_cast<std::size_t>(s[a] - 1)]++)];
    }
    out.instance.sets.push_back(sub);
  }
  out.substituted_sets = static_cast<int>(out.instance.sets.size());

  for (auto& rec : out.copy_map.vars) {
    for (std::size_t j = 0; j + 1 < rec.copies.size(); ++j) {
      auto g = equality_gadget(rec.copies[j], rec.copies[j + 1], next);
      next = g.next_fresh();
      for (const auto& s : g.sets) out.instance.sets.push_back(s);
      rec.gadgets.push_back(g);
    }
  }
  out.instance.n_vars = next - 1;
  return out;
}

Assignment lift_assignment(const ThreeOccurrence& t, const Assignment& source) {
  if (source.size() != static_cast<int>(t.copy_map.vars.size()))
    throw ArgumentError("source assignment length does not match the copy map");
  Assignment out = Assignment::constant(t.instance.n_vars, 1);
  for (std::size_t i = 0; i < t.copy_map.vars.size(); ++i) {
    const int value = source.values[i];
    const auto& rec = t.copy_map.vars[i];
    for (int c : rec.copies) out(c) = value;
    for (const auto& g : rec.gadgets)
      for (const auto& [var, val] : gadget_witness(g, value)) out(var) = val;
  }
  return out;
}

Assignment project_assignment(const ThreeOccurrence& t, const Assignment& out) {
  if (out.size() != t.instance.n_vars)
    throw ArgumentError("assignment length does not match the normalized instance");
  Assignment src;
  src.values.reserve(t.copy_map.vars.size());
  for (const auto& rec : t.copy_map.vars) src.values.push_back(out(rec.copies.front()));
  return src;
}

Check322Report check_322(const SetSplitInstance& inst) {
  inst.validate();
  Check322Report r;
  const auto occ = inst.occurrences();
  for (int v = 1; v <= inst.n_vars; ++v) {
    const int k = occ[static_cast<std::size_t>(v - 1)];
    r.max_occurrence = std::max(r.max_occurrence, k);
    if (k > 3 && !r.occurrence_witness) r.occurrence_witness = v;
  }
  r.occurrence_ok = r.max_occurrence <= 3;

  // Shared variables for every pair of sets that intersect at all.
  std::map<std::pair<int, int>, std::vector<int>> shared;
  const auto cont = inst.containing();
  for (int v = 1; v <= inst.n_vars; ++v) {
    const auto& list = cont[static_cast<std::size_t>(v - 1)];
    for (std::size_t p = 0; p < list.size(); ++p)
      for (std::size_t q = p + 1; q < list.size(); ++q) {
        if (list[p] == list[q]) continue;
        shared[{list[p], list[q]}].push_back(v);
      }
  }
  for (const auto& [pair, vars] : shared) {
    const int sz = static_cast<int>(vars.size());
    r.max_intersection = std::max(r.max_intersection, sz);
    if (sz > 1 && !r.intersection_witness)
      r.intersection_witness = IntersectionWitness{pair.first + 1, pair.second + 1, vars};
  }
  r.intersection_ok = r.max_intersection <= 1;
  r.ok = r.occurrence_ok && r.intersection_ok;
  return r;
}

}  // namespace wh::setsplit
