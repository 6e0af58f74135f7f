#include "weaverhard/satreduce.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "weaverhard/errors.hpp"

namespace wh::satreduce {

namespace {

int value_of(const Assignment& x, int lit) { return lit > 0 ? x(lit) : -x(-lit); }

void check_length(const Assignment& x, int n) {
  if (x.size() != n)
    throw ArgumentError("assignment has " + std::to_string(x.size()) + " values, expected " +
                        std::to_string(n));
}

std::optional<long long> to_int(std::string_view tok) {
  long long v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) return std::nullopt;
  return v;
}

}  // namespace

bool CnfFormula::satisfied_by(const Assignment& x) const {
  check_length(x, n_vars);
  for (const auto& c : clauses) {
    bool sat = false;
    for (int lit : c) sat = sat || value_of(x, lit) == 1;
    if (!sat) return false;
  }
  return true;
}

void classify_e3(CnfFormula& f) {
  f.e3_valid = true;
  f.e3_errors.clear();
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    const auto& c = f.clauses[j];
    std::set<int> vars;
    for (int lit : c) vars.insert(std::abs(lit));
    std::string why;
    if (c.size() != 3)
      why = "has " + std::to_string(c.size()) + " literals";
    else if (vars.size() != 3)
      why = "repeats a variable";
    if (!why.empty()) {
      f.e3_valid = false;
      f.e3_errors.push_back("clause " + std::to_string(j + 1) + " " + why);
    }
  }
}

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula f;
  bool header = false;
  long long declared = 0;
  std::vector<int> current;
  int line_no = 0;
  int last_line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) toks.push_back(line.substr(i, j - i));
      i = j;
    }
    if (toks.empty() || toks[0][0] == 'c') continue;
    if (toks[0] == "%") break;  // SATLIB trailer
    if (toks[0] == "p") {
      if (header) throw ParseError("second problem line", line_no);
      if (toks.size() != 4 || toks[1] != "cnf") throw ParseError("expected 'p cnf <vars> <clauses>'", line_no);
      const auto nv = to_int(toks[2]);
      const auto nc = to_int(toks[3]);
      if (!nv || !nc || *nv < 0 || *nc < 0 || *nv > (1 << 30))
        throw ParseError("bad counts in problem line", line_no);
      f.n_vars = static_cast<int>(*nv);
      declared = *nc;
      header = true;
      continue;
    }
    if (!header) throw ParseError("clause before problem line", line_no);
    for (auto tok : toks) {
      const auto v = to_int(tok);
      if (!v) throw ParseError("bad literal '" + std::string(tok) + "'", line_no);
      if (*v == 0) {
        f.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (std::llabs(*v) > f.n_vars)
        throw ParseError("literal " + std::string(tok) + " exceeds declared variable count " +
                         std::to_string(f.n_vars), line_no);
      current.push_back(static_cast<int>(*v));
    }
    last_line = line_no;
  }
  if (!header) throw ParseError("missing problem line", std::max(line_no, 1));
  if (!current.empty()) throw ParseError("last clause not terminated by 0", last_line);
  if (static_cast<long long>(f.clauses.size()) != declared)
    throw ParseError("problem line declares " + std::to_string(declared) + " clauses, found " +
                     std::to_string(f.clauses.size()), std::max(last_line, 1));
  classify_e3(f);
  return f;
}

std::string to_dimacs(const CnfFormula& f) {
  std::ostringstream os;
  os << "p cnf " << f.n_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (int lit : c) os << lit << ' ';
    os << "0\n";
  }
  return os.str();
}

int NaeFormula::unsatisfied_count(const Assignment& x) const {
  check_length(x, n_vars);
  int bad = 0;
  for (const auto& c : clauses) {
    bool pos = false, neg = false;
    for (int lit : c) (value_of(x, lit) == 1 ? pos : neg) = true;
    if (!(pos && neg)) ++bad;
  }
  return bad;
}

bool NaeFormula::all_positive() const {
  for (const auto& c : clauses)
    for (int lit : c)
      if (lit < 0) return false;
  return true;
}

bool NaeFormula::has_arity(int k) const {
  for (const auto& c : clauses) {
    if (static_cast<int>(c.size()) != k) return false;
    std::set<int> vars;
    for (int lit : c) vars.insert(std::abs(lit));
    if (static_cast<int>(vars.size()) != k) return false;
  }
  return true;
}

int max_variable_occurrence(const NaeFormula& f) {
  std::vector<int> occ(static_cast<std::size_t>(f.n_vars) + 1, 0);
  int best = 0;
  for (const auto& c : f.clauses)
    for (int lit : c) best = std::max(best, ++occ[static_cast<std::size_t>(std::abs(lit))]);
  return best;
}

NegationGadget negation_gadget(int x, int y, int fresh_start) {
  if (x == y) throw ArgumentError("negation gadget needs two distinct variables");
  if (x < 1 || y < 1) throw ArgumentError("variable indices are 1-based");
  if (fresh_start <= std::max(x, y)) throw ArgumentError("fresh_start must exceed both variables");
  NegationGadget g{x, y, fresh_start, fresh_start + 1, fresh_start + 2, {}};
  g.clauses = {{x, y, g.a}, {x, y, g.b}, {x, y, g.c}, {g.a, g.b, g.c}};
  return g;
}

namespace {

void lift_gadget(const NegationGadget& g, Assignment& out) {
  out(g.a) = 1;
  out(g.b) = 1;
  out(g.c) = -1;
}

}  // namespace

ExpanderGraph expander_graph(int n) {
  if (n < 5) throw ArgumentError("expander_graph needs at least 5 vertices, got " + std::to_string(n));
  auto usable = [n](int s) {
    const int r = s % n;
    return r != 0 && r != 1 && r != n - 1 && (2 * r) % n != 0;
  };
  int s = std::max(2, static_cast<int>(std::lround(std::sqrt(static_cast<double>(n)))));
  int tries = 0;
  while (!usable(s) && tries < n) {
    ++s;
    ++tries;
  }
  if (!usable(s)) s = 2;

  ExpanderGraph g;
  g.n_vertices = n;
  g.offset = s % n;
  std::set<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v)
    for (int off : {1, g.offset}) {
      const int u = (v + off) % n;
      edges.insert({std::min(u, v), std::max(u, v)});
    }
  g.edges.assign(edges.begin(), edges.end());
  const auto eig = expander_spectrum(g);
  g.lambda2 = eig.size() >= 2 ? eig[eig.size() - 2] : 0.0;
  for (std::size_t t = 0; t + 1 < eig.size(); ++t) g.second_modulus = std::max(g.second_modulus, std::abs(eig[t]));
  return g;
}

std::vector<double> expander_spectrum(const ExpanderGraph& g) {
  // Circulant with symmetric offsets: lambda_t = 2 cos(2 pi t / n) + 2 cos(2 pi t s / n).
  // The trivial eigenvalue (t = 0) sorts last.
  const int n = g.n_vertices;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    const double th = 2.0 * std::numbers::pi * t / n;
    out.push_back(2.0 * std::cos(th) + 2.0 * std::cos(th * g.offset));
  }
  const double trivial = out[0];
  out.erase(out.begin());
  std::sort(out.begin(), out.end());
  out.push_back(trivial);
  return out;
}

Nae4Result e3sat_to_nae4(const CnfFormula& f, bool copies_per_clause) {
  CnfFormula checked = f;
  classify_e3(checked);
  if (!checked.e3_valid) throw ArgumentError("input is not E3: " + checked.e3_errors.front());

  Nae4Result r;
  r.copies_per_clause = copies_per_clause;
  const int m = static_cast<int>(f.clauses.size());
  int next = f.n_vars + 1;
  if (!copies_per_clause) {
    if (m > 0) r.z.push_back(next++);
    for (const auto& c : f.clauses) {
      auto cl = c;
      cl.push_back(r.z[0]);
      r.formula.clauses.push_back(std::move(cl));
    }
    r.formula.n_vars = next - 1;
    return r;
  }

  const int copies = m >= 2 ? std::max(m, 5) : m;
  for (int j = 0; j < copies; ++j) r.z.push_back(next++);
  for (int j = 0; j < m; ++j) {
    auto cl = f.clauses[static_cast<std::size_t>(j)];
    cl.push_back(r.z[static_cast<std::size_t>(j)]);
    r.formula.clauses.push_back(std::move(cl));
  }
  if (copies >= 5) {
    r.graph = expander_graph(copies);
    for (const auto& [i, j] : r.graph->edges) {
      const int w = next++;
      r.w.push_back(w);
      for (const auto& [p, q] : {std::pair{r.z[static_cast<std::size_t>(i)], w},
                                 std::pair{w, r.z[static_cast<std::size_t>(j)]}}) {
        auto g = negation_gadget(p, q, next);
        next += 3;
        for (const auto& cl : g.clauses) r.formula.clauses.push_back(cl);
        r.gadgets.push_back(std::move(g));
      }
    }
  }
  r.formula.n_vars = next - 1;
  return r;
}

Assignment lift_nae4(const Nae4Result& r, const Assignment& x) {
  Assignment out = Assignment::constant(r.formula.n_vars, 1);
  for (int v = 1; v <= x.size(); ++v) out(v) = x(v);
  for (int z : r.z) out(z) = -1;
  for (int w : r.w) out(w) = 1;
  for (const auto& g : r.gadgets) lift_gadget(g, out);
  return out;
}

Nae3Result nae4_to_nae3(const NaeFormula& f) {
  Nae3Result r;
  int next = f.n_vars + 1;
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    const auto& c = f.clauses[j];
    if (c.size() == 3) {
      r.formula.clauses.push_back(c);
      continue;
    }
    if (c.size() != 4) throw ArgumentError("nae4_to_nae3: clause " + std::to_string(j + 1) + " has arity " +
                                           std::to_string(c.size()));
    const int y = next++;
    r.formula.clauses.push_back({c[0], c[1], y});
    r.formula.clauses.push_back({-y, c[2], c[3]});
    r.splits.push_back({static_cast<int>(j), y});
  }
  r.formula.n_vars = next - 1;
  return r;
}

Assignment lift_nae3(const Nae3Result& r, const NaeFormula& source, const Assignment& x) {
  check_length(x, source.n_vars);
  Assignment out = Assignment::constant(r.formula.n_vars, 1);
  for (int v = 1; v <= x.size(); ++v) out(v) = x(v);
  for (const auto& sp : r.splits) {
    const auto& c = source.clauses[static_cast<std::size_t>(sp.clause)];
    const int t1 = value_of(x, c[0]), t2 = value_of(x, c[1]);
    const int t3 = value_of(x, c[2]), t4 = value_of(x, c[3]);
    if (t1 == t2)
      out(sp.y) = -t1;
    else if (t3 == t4)
      out(sp.y) = t3;
    else
      out(sp.y) = 1;
  }
  return out;
}

NegationFreeResult eliminate_negations(const NaeFormula& f) {
  NegationFreeResult r;
  r.partner.assign(static_cast<std::size_t>(f.n_vars), 0);
  std::vector<char> negated(static_cast<std::size_t>(f.n_vars) + 1, 0);
  for (const auto& c : f.clauses)
    for (int lit : c)
      if (lit < 0) negated[static_cast<std::size_t>(-lit)] = 1;
  int next = f.n_vars + 1;
  for (int v = 1; v <= f.n_vars; ++v)
    if (negated[static_cast<std::size_t>(v)]) r.partner[static_cast<std::size_t>(v - 1)] = next++;
  for (const auto& c : f.clauses) {
    auto cl = c;
    for (int& lit : cl)
      if (lit < 0) lit = r.partner[static_cast<std::size_t>(-lit - 1)];
    r.formula.clauses.push_back(std::move(cl));
  }
  for (int v = 1; v <= f.n_vars; ++v) {
    const int p = r.partner[static_cast<std::size_t>(v - 1)];
    if (p == 0) continue;
    auto g = negation_gadget(v, p, next);
    next += 3;
    for (const auto& cl : g.clauses) r.formula.clauses.push_back(cl);
    r.gadgets.push_back(std::move(g));
  }
  r.formula.n_vars = next - 1;
  return r;
}

Assignment lift_negation_free(const NegationFreeResult& r, const Assignment& x) {
  check_length(x, static_cast<int>(r.partner.size()));
  Assignment out = Assignment::constant(r.formula.n_vars, 1);
  for (int v = 1; v <= x.size(); ++v) {
    out(v) = x(v);
    if (const int p = r.partner[static_cast<std::size_t>(v - 1)]) out(p) = -x(v);
  }
  for (const auto& g : r.gadgets) lift_gadget(g, out);
  return out;
}

SetSplitResult nae3_to_setsplit(const NaeFormula& f) {
  if (!f.all_positive()) throw ArgumentError("nae3_to_setsplit needs an all-positive formula");
  if (!f.has_arity(3)) throw ArgumentError("nae3_to_setsplit needs 3 distinct variables per clause");
  SetSplitResult r;
  const int m = static_cast<int>(f.clauses.size());
  r.instance.n_vars = f.n_vars + m;
  for (int j = 0; j < m; ++j) {
    const auto& c = f.clauses[static_cast<std::size_t>(j)];
    const int s = f.n_vars + j + 1;
    r.balance.push_back(s);
    r.instance.sets.push_back({c[0], c[1], c[2], s});
  }
  return r;
}

Assignment lift_setsplit(const SetSplitResult& r, const NaeFormula& source, const Assignment& x) {
  check_length(x, source.n_vars);
  Assignment out = Assignment::constant(r.instance.n_vars, 1);
  for (int v = 1; v <= x.size(); ++v) out(v) = x(v);
  for (std::size_t j = 0; j < source.clauses.size(); ++j) {
    int sum = 0;
    for (int lit : source.clauses[j]) sum += x(lit);
    out(r.balance[j]) = sum > 0 ? -1 : 1;
  }
  return out;
}

PipelineResult full_pipeline(const CnfFormula& f) {
  PipelineResult r;
  r.source = f;
  classify_e3(r.source);
  if (!r.source.e3_valid) throw ArgumentError("full_pipeline: input is not E3: " + r.source.e3_errors.front());
  {
    NaeFormula as_nae{f.n_vars, f.clauses};
    r.stats.push_back({"e3sat", f.n_vars, static_cast<int>(f.clauses.size()), max_variable_occurrence(as_nae)});
  }
  r.nae4 = e3sat_to_nae4(r.source, true);
  r.stats.push_back({"nae4", r.nae4.formula.n_vars, static_cast<int>(r.nae4.formula.clauses.size()),
                     max_variable_occurrence(r.nae4.formula)});
  r.nae3 = nae4_to_nae3(r.nae4.formula);
  r.stats.push_back({"nae3", r.nae3.formula.n_vars, static_cast<int>(r.nae3.formula.clauses.size()),
                     max_variable_occurrence(r.nae3.formula)});
  r.positive = eliminate_negations(r.nae3.formula);
  r.stats.push_back({"positive", r.positive.formula.n_vars,
                     static_cast<int>(r.positive.formula.clauses.size()),
                     max_variable_occurrence(r.positive.formula)});
  r.split = nae3_to_setsplit(r.positive.formula);
  r.stats.push_back({"setsplit", r.split.instance.n_vars, static_cast<int>(r.split.instance.sets.size()),
                     r.split.instance.max_occurrence()});
  r.normalized = setsplit::to_three_occurrence(r.split.instance);
  r.stats.push_back({"three_occurrence", r.normalized.instance.n_vars,
                     static_cast<int>(r.normalized.instance.sets.size()),
                     r.normalized.instance.max_occurrence()});
  return r;
}

Assignment lift_pipeline(const PipelineResult& r, const Assignment& x) {
  check_length(x, r.source.n_vars);
  const auto a4 = lift_nae4(r.nae4, x);
  const auto a3 = lift_nae3(r.nae3, r.nae4.formula, a4);
  const auto ap = lift_negation_free(r.positive, a3);
  const auto as = lift_setsplit(r.split, r.positive.formula, ap);
  return setsplit::lift_assignment(r.normalized, as);
}

Assignment project_pipeline(const PipelineResult& r, const Assignment& out) {
  const auto split = setsplit::project_assignment(r.normalized, out);
  Assignment x;
  x.values.assign(split.values.begin(), split.values.begin() + r.source.n_vars);
  return x;
}

namespace {

// Shared DFS for CNF (nae = false) and NAE clauses. A clause is dead once all
// its literals are assigned and it is violated; checked on the last literal.
class ClauseSearch {
public:
  ClauseSearch(int n, const std::vector<std::vector<int>>& clauses, bool nae)
      : clauses_(clauses), nae_(nae), x_(static_cast<std::size_t>(n), 0),
        closing_(static_cast<std::size_t>(n) + 1) {
    for (std::size_t j = 0; j < clauses.size(); ++j) {
      int last = 0;
      for (int lit : clauses[j]) last = std::max(last, std::abs(lit));
      if (last == 0) empty_clause_ = true;
      else closing_[static_cast<std::size_t>(last)].push_back(j);
    }
  }

  std::optional<Assignment> run() {
    if (empty_clause_) return std::nullopt;
    if (dfs(1)) return Assignment{x_};
    return std::nullopt;
  }

private:
  bool violated(const std::vector<int>& c) const {
    bool pos = false, neg = false;
    for (int lit : c) {
      const int v = lit > 0 ? x_[static_cast<std::size_t>(lit - 1)] : -x_[static_cast<std::size_t>(-lit - 1)];
      (v == 1 ? pos : neg) = true;
    }
    return nae_ ? !(pos && neg) : !pos;
  }

  bool dfs(int var) {
    if (var > static_cast<int>(x_.size())) return true;
    for (int val : {1, -1}) {
      x_[static_cast<std::size_t>(var - 1)] = val;
      bool ok = true;
      for (std::size_t j : closing_[static_cast<std::size_t>(var)])
        if (violated(clauses_[j])) {
          ok = false;
          break;
        }
      if (ok && dfs(var + 1)) return true;
    }
    x_[static_cast<std::size_t>(var - 1)] = 0;
    return false;
  }

  const std::vector<std::vector<int>>& clauses_;
  bool nae_;
  std::vector<int> x_;
  std::vector<std::vector<std::size_t>> closing_;
  bool empty_clause_ = false;
};

}  // namespace

std::optional<Assignment> brute_force_cnf(const CnfFormula& f, int cap) {
  if (f.n_vars > cap) throw CapExceeded("CNF brute force", f.n_vars, cap);
  return ClauseSearch(f.n_vars, f.clauses, false).run();
}

std::optional<Assignment> brute_force_nae(const NaeFormula& f, int cap) {
  if (f.n_vars > cap) throw CapExceeded("NAE brute force", f.n_vars, cap);
  return ClauseSearch(f.n_vars, f.clauses, true).run();
}

}  // namespace wh::satreduce
