#include "weaverhard/reducegen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "weaverhard/errors.hpp"

namespace wh::reducegen {

ExactFrame q4_frame_exact() {
  auto r = [](int n) { return Rational(n, 5); };
  return {{r(1), r(4), r(-2), r(-2)},
          {r(4), r(1), r(2), r(2)},
          {r(-2), r(2), r(-1), r(4)},
          {r(-2), r(2), r(4), r(-1)}};
}

std::array<Eigen::Vector4d, 4> q4_frame() {
  std::array<Eigen::Vector4d, 4> out;
  const auto exact = q4_frame_exact();
  for (int h = 0; h < 4; ++h)
    for (int p = 0; p < 4; ++p) out[h](p) = exact[h][p].to_double();
  return out;
}

LemmaQ4Report verify_lemma_q4() {
  LemmaQ4Report rep;
  const auto q = q4_frame_exact();
  const auto qf = q4_frame();
  const Rational quarter(1, 4);
  bool first = true;
  for (int zm = 1; zm < 15; ++zm) {
    for (int wm = 0; wm < 8; ++wm) {
      for (int j = 0; j < 4; ++j) {
        Rational s;
        double sf = 0.0;
        std::array<int, 4> z{};
        std::array<int, 3> w{};
        for (int i = 0; i < 4; ++i) {
          z[i] = ((zm >> i) & 1) ? -1 : 1;
          s += quarter * Rational(z[i]) * q[i][j] * q[i][j];
          sf += 0.25 * z[i] * qf[i](j) * qf[i](j);
        }
        for (int h = 0; h < 3; ++h) {
          w[h] = ((wm >> h) & 1) ? -1 : 1;
          s += quarter * Rational(w[h]);
          sf += 0.25 * w[h];
        }
        ++rep.cases;
        const Rational a = abs(s);
        if (first || a < rep.min_exact) {
          rep.min_exact = a;
          rep.min_z = z;
          rep.min_w = w;
          rep.min_j = j + 1;
        }
        rep.min_float = first ? std::abs(sf) : std::min(rep.min_float, std::abs(sf));
        first = false;
      }
    }
  }
  rep.ok = rep.min_exact >= Rational(1, 50);
  return rep;
}

Stage1Reduction reduce_stage1(const setsplit::SetSplitInstance& inst) {
  const auto chk = setsplit::check_322(inst);
  if (!chk.occurrence_ok)
    throw ArgumentError("not a (3,2-2) instance: variable " +
                        std::to_string(*chk.occurrence_witness) + " occurs in more than 3 sets");
  if (!chk.intersection_ok)
    throw ArgumentError("not a (3,2-2) instance: sets " +
                        std::to_string(chk.intersection_witness->set_a) + " and " +
                        std::to_string(chk.intersection_witness->set_b) +
                        " intersect in more than one variable");
  auto red = reduce_with_frame(inst, q4_frame_exact(), 3);
  red.instance.alpha = 0.25;
  return {std::move(red.instance), std::move(red.trace)};
}

weaver::Signing witness_signing_stage1(const Stage1Trace& trace, const setsplit::Assignment& x) {
  return witness_signing(trace, x);
}

SupportStats support_stats(const weaver::WeaverInstance& inst, const FrameTrace& trace) {
  SupportStats st;
  for (const auto& v : inst.vectors) st.max_nnz = std::max(st.max_nnz, static_cast<int>(v.nnz()));
  const auto by_coord = vectors_by_coordinate(inst);
  for (int c = 0; c < inst.dim; ++c) {
    const int cnt = static_cast<int>(by_coord[static_cast<std::size_t>(c)].size());
    st.max_vectors_per_coord = std::max(st.max_vectors_per_coord, cnt);
    if (trace.is_pad(c))
      st.max_vectors_per_pad_coord = std::max(st.max_vectors_per_pad_coord, cnt);
    else
      st.max_vectors_per_set_coord = std::max(st.max_vectors_per_set_coord, cnt);
  }
  return st;
}

namespace {

constexpr int kUnits = 100;      // diagonal values of the stage-1 instance are multiples of 1/100
constexpr int kThreshold = 2;    // 1/50 in those units

int to_units(double v) {
  const double scaled = v * kUnits;
  const double r = std::round(scaled);
  if (std::abs(scaled - r) > 1e-9)
    throw std::runtime_error("diagonal contribution is not a multiple of 1/100");
  return static_cast<int>(r);
}

double entry_at(const weaver::SparseVec& v, int coord) {
  const auto it = std::lower_bound(v.index.begin(), v.index.end(), coord);
  if (it == v.index.end() || *it != coord) return 0.0;
  return v.value[static_cast<std::size_t>(it - v.index.begin())];
}

// Minimum over all signings of the number of diagonals with |M_jj| >= 1/50.
// Each pad diagonal depends only on z(owner, .) and its own r-signs, so the
// r-signs are minimized per pad; the search then runs over z per variable.
class DiagSearch {
public:
  DiagSearch(const weaver::WeaverInstance& inst, const FrameTrace& tr) : tr_(tr) {
    const int f = tr.frame_size;
    const int nz = 1 << f;
    partial_.assign(static_cast<std::size_t>(tr.m), 0);
    remaining_.assign(static_cast<std::size_t>(tr.m), 0);
    certain_.assign(static_cast<std::size_t>(tr.m), 0);
    for (const auto& rec : tr.vars)
      for (int c : rec.set_coords) ++remaining_[static_cast<std::size_t>(c)];

    for (const auto& rec : tr.vars) {
      std::map<std::vector<int>, Choice> uniq;
      for (int zm = 0; zm < nz; ++zm) {
        Choice ch;
        for (int c : rec.set_coords) {
          int s = 0;
          for (int h = 0; h < f; ++h) {
            const double e = entry_at(inst.vectors[rec.first_q + h], c);
            s += (((zm >> h) & 1) ? -1 : 1) * to_units(e * e);
          }
          ch.contrib.push_back(s);
          max_contrib_ = std::max(max_contrib_, std::abs(s));
        }
        for (int p : rec.pad_coords) {
          int zs = 0;
          for (int h = 0; h < f; ++h) {
            const double e = entry_at(inst.vectors[rec.first_q + h], p);
            zs += (((zm >> h) & 1) ? -1 : 1) * to_units(e * e);
          }
          const auto& pad = tr.pad(p);
          bool can_hide = false;
          for (int wm = 0; wm < (1 << tr.r_per_pad); ++wm) {
            int s = zs;
            for (int h = 0; h < tr.r_per_pad; ++h) {
              const double e = entry_at(inst.vectors[pad.first_r + h], p);
              s += (((wm >> h) & 1) ? -1 : 1) * to_units(e * e);
            }
            if (std::abs(s) < kThreshold) can_hide = true;
          }
          if (!can_hide) ++ch.pad_cost;
        }
        std::vector<int> key = ch.contrib;
        key.push_back(ch.pad_cost);
        uniq.emplace(key, ch);
      }
      std::vector<Choice> list;
      for (auto& [k, ch] : uniq) list.push_back(ch);
      std::stable_sort(list.begin(), list.end(),
                       [](const Choice& a, const Choice& b) { return a.pad_cost < b.pad_cost; });
      choices_.push_back(std::move(list));
    }
  }

  int minimize(int upper_bound) {
    best_ = upper_bound;
    dfs(0, 0);
    return best_;
  }

  long long nodes() const { return nodes_; }

private:
  struct Choice {
    std::vector<int> contrib;  // aligned with set_coords
    int pad_cost = 0;
  };

  bool is_certain(std::size_t j) const {
    return std::abs(partial_[j]) - remaining_[j] * max_contrib_ >= kThreshold;
  }

  void dfs(std::size_t v, int cost) {
    ++nodes_;
    if (cost >= best_) return;
    if (v == choices_.size()) {
      best_ = cost;
      return;
    }
    const auto& rec = tr_.vars[v];
    for (const auto& ch : choices_[v]) {
      int c2 = cost + ch.pad_cost;
      std::vector<std::pair<std::size_t, char>> undo;
      for (std::size_t t = 0; t < rec.set_coords.size(); ++t) {
        const auto j = static_cast<std::size_t>(rec.set_coords[t]);
        partial_[j] += ch.contrib[t];
        --remaining_[j];
        undo.emplace_back(j, certain_[j]);
        if (!certain_[j] && is_certain(j)) {
          certain_[j] = 1;
          ++c2;
        }
      }
      dfs(v + 1, c2);
      for (std::size_t t = rec.set_coords.size(); t-- > 0;) {
        const auto j = static_cast<std::size_t>(rec.set_coords[t]);
        partial_[j] -= ch.contrib[t];
        ++remaining_[j];
        certain_[j] = undo[t].second;
      }
    }
  }

  const FrameTrace& tr_;
  std::vector<std::vector<Choice>> choices_;
  std::vector<int> partial_;
  std::vector<int> remaining_;
  std::vector<char> certain_;
  int max_contrib_ = 0;
  int best_ = 0;
  long long nodes_ = 0;
};

}  // namespace

DiagFractionReport verify_diag_fraction(const setsplit::SetSplitInstance& source,
                                        const Stage1Reduction& red,
                                        const DiagFractionOptions& opts) {
  const auto& inst = red.instance;
  const auto& tr = red.trace;
  DiagFractionReport rep;
  rep.m = tr.m;
  rep.dim = tr.dim;

  const auto mu = setsplit::min_unsatisfied(source, opts.brute_force_cap);
  rep.min_unsat = mu.count;
  rep.gamma = rep.m == 0 ? 0.0 : static_cast<double>(mu.count) / rep.m;

  // Nonconstant z(i, .) against every sign choice of the pad's own r-vectors.
  const auto by_coord = vectors_by_coordinate(inst);
  rep.pad_mechanism_ok = true;
  rep.pad_mechanism_min = std::numeric_limits<double>::infinity();
  const int f = tr.frame_size;
  for (const auto& rec : tr.vars) {
    for (int p : rec.pad_coords) {
      const auto& pad = tr.pad(p);
      for (int k : by_coord[static_cast<std::size_t>(p)]) {
        const bool own_q = k >= rec.first_q && k < rec.first_q + f;
        const bool own_r = k >= pad.first_r && k < pad.first_r + tr.r_per_pad;
        if (!own_q && !own_r) rep.pad_mechanism_ok = false;
      }
      for (int zm = 1; zm + 1 < (1 << f); ++zm)
        for (int wm = 0; wm < (1 << tr.r_per_pad); ++wm) {
          double d = 0.0;
          for (int h = 0; h < f; ++h) {
            const double e = entry_at(inst.vectors[rec.first_q + h], p);
            d += (((zm >> h) & 1) ? -1.0 : 1.0) * e * e;
          }
          for (int h = 0; h < tr.r_per_pad; ++h) {
            const double e = entry_at(inst.vectors[pad.first_r + h], p);
            d += (((wm >> h) & 1) ? -1.0 : 1.0) * e * e;
          }
          rep.pad_mechanism_min = std::min(rep.pad_mechanism_min, std::abs(d));
        }
    }
  }
  if (rep.pad_mechanism_min == std::numeric_limits<double>::infinity()) rep.pad_mechanism_min = 0.0;
  rep.pad_mechanism_ok = rep.pad_mechanism_ok && rep.pad_mechanism_min >= 1.0 / 50 - 1e-12;

  // Constant z from the best assignment, with pad signs (x, -x, -x), leaves
  // exactly the unsplit sets: an upper bound for the search.
  DiagSearch search(inst, tr);
  rep.min_count = search.minimize(mu.count + 1);
  rep.search_nodes = search.nodes();
  rep.min_fraction = rep.dim == 0 ? 0.0 : static_cast<double>(rep.min_count) / rep.dim;
  rep.proof_bound_ok = 3 * rep.min_count >= rep.min_unsat;  // count >= (gamma/3) m
  rep.statement_bound_ok = rep.min_fraction >= rep.gamma / 12.0 - 1e-15;

  if (opts.samples > 0) {
    std::mt19937_64 rng(opts.seed);
    for (int t = 0; t < opts.samples; ++t) {
      weaver::Signing s;
      s.signs.resize(static_cast<std::size_t>(inst.size()));
      for (int& v : s.signs) v = (rng() & 1U) ? 1 : -1;
      const auto m = weaver::signed_sum_sparse(inst, s);
      int cnt = 0;
      for (int c = 0; c < m.outerSize(); ++c)
        for (weaver::SparseMatrix::InnerIterator it(m, c); it; ++it)
          if (it.row() == it.col() && std::abs(it.value()) >= 1.0 / 50 - 1e-12) ++cnt;
      rep.sampled_min_count = rep.sampled_min_count < 0 ? cnt : std::min(rep.sampled_min_count, cnt);
    }
  }
  return rep;
}

Eigen::MatrixXd incidence_matrix(int k) {
  if (k < 2) throw ArgumentError("k must be at least 2");
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(k, pairs_of(k));
  int col = 0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j, ++col) {
      b(i, col) = 1.0;
      b(j, col) = -1.0;
    }
  return b;
}

namespace {

int exact_sqrt(int k) {
  int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(k))));
  while (s * s > k) --s;
  while ((s + 1) * (s + 1) <= k) ++s;
  return s * s == k ? s : -1;
}

}  // namespace

std::vector<std::vector<Rational>> build_pi_exact(int k) {
  if (k < 2) throw ArgumentError("k must be at least 2");
  const int s = exact_sqrt(k);
  if (s < 0) throw ArgumentError("rational Pi needs k to be a perfect square, got " + std::to_string(k));
  // [-1/s | I - J s/(k(s+1))]
  const Rational shift(s, static_cast<std::int64_t>(k) * (s + 1));
  std::vector<std::vector<Rational>> pi(static_cast<std::size_t>(k - 1), std::vector<Rational>(k));
  for (int r = 0; r < k - 1; ++r) {
    pi[r][0] = Rational(-1, s);
    for (int c = 1; c < k; ++c) pi[r][c] = (r == c - 1 ? Rational(1) : Rational(0)) - shift;
  }
  return pi;
}

std::vector<std::vector<Rational>> build_g_exact(int k) {
  const auto pi = build_pi_exact(k);
  const int s = exact_sqrt(k);
  const int p = pairs_of(k);
  std::vector<std::vector<Rational>> g(static_cast<std::size_t>(k - 1), std::vector<Rational>(p));
  for (int r = 0; r < k - 1; ++r) {
    int col = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j, ++col) g[r][col] = (pi[r][i] - pi[r][j]) * Rational(1, s);
  }
  return g;
}

Eigen::MatrixXd build_pi(int k, bool rational_pi) {
  if (k < 2) throw ArgumentError("k must be at least 2");
  Eigen::MatrixXd pi(k - 1, k);
  if (rational_pi) {
    const auto ex = build_pi_exact(k);
    for (int r = 0; r < k - 1; ++r)
      for (int c = 0; c < k; ++c) pi(r, c) = ex[r][c].to_double();
    return pi;
  }
  // Modified Gram-Schmidt on e_r - e_{r+1}.
  for (int r = 0; r < k - 1; ++r) {
    Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(k);
    v(r) = 1.0;
    v(r + 1) = -1.0;
    for (int t = 0; t < r; ++t) v -= v.dot(pi.row(t)) * pi.row(t);
    pi.row(r) = v / v.norm();
  }
  return pi;
}

Eigen::MatrixXd build_g(int k, bool rational_pi) {
  if (rational_pi) {
    const auto ex = build_g_exact(k);
    Eigen::MatrixXd g(k - 1, pairs_of(k));
    for (int r = 0; r < k - 1; ++r)
      for (int c = 0; c < pairs_of(k); ++c) g(r, c) = ex[r][c].to_double();
    return g;
  }
  return build_pi(k, false) * incidence_matrix(k) / std::sqrt(static_cast<double>(k));
}

GLowerBoundReport verify_g_lower_bound(int k, int trials, std::uint64_t seed, bool rational_pi) {
  GLowerBoundReport rep;
  rep.k = k;
  rep.trials = trials;
  const Eigen::MatrixXd g = build_g(k, rational_pi);
  const Eigen::MatrixXd b = incidence_matrix(k);
  const int p = pairs_of(k);

  rep.gg_deviation = (g * g.transpose() - Eigen::MatrixXd::Identity(k - 1, k - 1)).cwiseAbs().maxCoeff();
  const double target = std::sqrt(2.0 / k);
  for (int c = 0; c < p; ++c)
    rep.column_norm_deviation = std::max(rep.column_norm_deviation, std::abs(g.col(c).norm() - target));
  const Eigen::MatrixXd kij = k * Eigen::MatrixXd::Identity(k, k) - Eigen::MatrixXd::Ones(k, k);
  rep.bb_deviation = (b * b.transpose() - kij).cwiseAbs().maxCoeff();

  const double coeff = (1.0 / k) * std::sqrt(2.0 / (k - 1));
  rep.min_slack = std::numeric_limits<double>::infinity();
  rep.min_frob_ratio = std::numeric_limits<double>::infinity();
  bool zero_ok = true;
  auto check = [&](const Eigen::VectorXd& d) {
    const Eigen::MatrixXd gdg = g * d.asDiagonal() * g.transpose();
    const double lhs = weaver::operator_norm(weaver::SymMatrix::from_dense(gdg));
    if (d.squaredNorm() == 0.0) {
      // Both sides vanish; keep it out of the slack minimum.
      zero_ok = zero_ok && lhs == 0.0;
      return;
    }
    const double slack = lhs - coeff * d.norm();
    if (slack < rep.min_slack) {
      rep.min_slack = slack;
      rep.witness.assign(d.data(), d.data() + d.size());
    }
    {
      const Eigen::MatrixXd bdb = b * d.asDiagonal() * b.transpose();
      rep.min_frob_ratio = std::min(rep.min_frob_ratio, bdb.squaredNorm() / d.squaredNorm());
    }
  };

  check(Eigen::VectorXd::Zero(p));
  check(Eigen::VectorXd::Ones(p));
  Eigen::VectorXd alt(p);
  for (int t = 0; t < p; ++t) alt(t) = (t % 2 == 0) ? 1.0 : -1.0;
  check(alt);
  for (int t = 0; t < p; ++t) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(p);
    e(t) = 1.0;
    check(e);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd d(p);
    for (int i = 0; i < p; ++i) d(i) = unif(rng);
    check(d);
  }
  rep.ok = zero_ok && rep.gg_deviation <= 1e-12 && rep.column_norm_deviation <= 1e-12 &&
           rep.bb_deviation <= 1e-12 && rep.min_slack >= -1e-9 && rep.min_frob_ratio >= 2.0 - 1e-9;
  return rep;
}

Stage2Reduction reduce_stage2(const weaver::WeaverInstance& stage1, int k, bool rational_pi) {
  if (k < 2) throw ArgumentError("k must be at least 2");
  stage1.validate_shape();
  Stage2Reduction out;
  Stage2Plan& plan = out.plan;
  plan.k = k;
  plan.pairs = pairs_of(k);
  plan.rational_pi = rational_pi;
  plan.m1 = stage1.dim;
  plan.stage1_vectors = stage1.size();
  const int need = 22 * plan.pairs;
  if (plan.m1 < need)
    throw ArgumentError("stage 2 with k = " + std::to_string(k) + " needs at least 22*C(k,2) = " +
                        std::to_string(need) + " coordinates, stage 1 has " + std::to_string(plan.m1));

  // Coordinates are adjacent when some vector is supported on both.
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(plan.m1));
  for (const auto& v : stage1.vectors)
    for (int a : v.index)
      for (int b : v.index)
        if (a != b) adj[static_cast<std::size_t>(a)].push_back(b);
  for (auto& nb : adj) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    plan.conflict_max_degree = std::max(plan.conflict_max_degree, static_cast<int>(nb.size()));
  }

  // Greedy coloring in ascending coordinate order, smallest free color.
  std::vector<int> color(static_cast<std::size_t>(plan.m1), -1);
  int ncolors = 0;
  std::vector<char> used;
  for (int c = 0; c < plan.m1; ++c) {
    used.assign(static_cast<std::size_t>(ncolors + 1), 0);
    for (int nb : adj[static_cast<std::size_t>(c)])
      if (color[static_cast<std::size_t>(nb)] >= 0) used[static_cast<std::size_t>(color[static_cast<std::size_t>(nb)])] = 1;
    int col = 0;
    while (used[static_cast<std::size_t>(col)]) ++col;
    color[static_cast<std::size_t>(c)] = col;
    ncolors = std::max(ncolors, col + 1);
  }
  if (ncolors > 22)
    throw std::runtime_error("greedy coloring used " + std::to_string(ncolors) +
                             " classes; the stage-1 conflict graph should need at most 22");

  plan.classes.assign(static_cast<std::size_t>(ncolors), {});
  for (int c = 0; c < plan.m1; ++c) plan.classes[static_cast<std::size_t>(color[static_cast<std::size_t>(c)])].push_back(c);
  int next = plan.m1;
  for (auto& cls : plan.classes) {
    const int ci = static_cast<int>(cls.size());
    const int ai = (plan.pairs - ci % plan.pairs) % plan.pairs;
    plan.class_sizes.push_back(ci);
    plan.class_pads.push_back(ai);
    for (int t = 0; t < ai; ++t) {
      cls.push_back(next);
      plan.pad_coords.push_back(next);
      ++next;
    }
    plan.a += ai;
  }
  plan.m2 = next;
  for (const auto& cls : plan.classes)
    for (std::size_t s = 0; s < cls.size(); s += static_cast<std::size_t>(plan.pairs))
      plan.groups.emplace_back(cls.begin() + static_cast<std::ptrdiff_t>(s),
                               cls.begin() + static_cast<std::ptrdiff_t>(s + plan.pairs));
  plan.l = static_cast<int>(plan.groups.size());
  plan.g = build_g(k, rational_pi);

  // U: stage-1 vectors embedded, plus four (1/2) e_j per new coordinate.
  out.padded.dim = plan.m2;
  out.padded.alpha = 0.25;
  out.padded.vectors = stage1.vectors;
  out.padded.tags = stage1.tags;
  for (int j : plan.pad_coords)
    for (int h = 1; h <= 4; ++h) {
      weaver::SparseVec v;
      v.push(j, 0.5);
      out.padded.vectors.push_back(std::move(v));
      out.padded.tags.push_back("pad:" + std::to_string(j + 1) + ":" + std::to_string(h));
    }

  std::vector<int> group_of(static_cast<std::size_t>(plan.m2)), pos_of(static_cast<std::size_t>(plan.m2));
  for (int gi = 0; gi < plan.l; ++gi)
    for (int t = 0; t < plan.pairs; ++t) {
      group_of[static_cast<std::size_t>(plan.groups[gi][t])] = gi;
      pos_of[static_cast<std::size_t>(plan.groups[gi][t])] = t;
    }

  out.instance.dim = (k - 1) * plan.l;
  out.instance.alpha = 1.0 / (2.0 * k);
  out.instance.tags = out.padded.tags;
  out.instance.vectors.reserve(out.padded.vectors.size());
  for (const auto& u : out.padded.vectors) {
    std::map<int, double> acc;
    for (std::size_t t = 0; t < u.nnz(); ++t) {
      const int gi = group_of[static_cast<std::size_t>(u.index[t])];
      const int col = pos_of[static_cast<std::size_t>(u.index[t])];
      for (int r = 0; r < k - 1; ++r) acc[gi * (k - 1) + r] += u.value[t] * plan.g(r, col);
    }
    weaver::SparseVec w;
    for (const auto& [row, val] : acc) w.push(row, val);
    out.instance.vectors.push_back(std::move(w));
  }
  return out;
}

weaver::SparseMatrix build_f(const Stage2Plan& plan) {
  std::vector<Eigen::Triplet<double>> trip;
  for (int gi = 0; gi < plan.l; ++gi)
    for (int r = 0; r < plan.k - 1; ++r)
      for (int t = 0; t < plan.pairs; ++t)
        if (plan.g(r, t) != 0.0) trip.emplace_back(gi * (plan.k - 1) + r, plan.groups[gi][t], plan.g(r, t));
  weaver::SparseMatrix f((plan.k - 1) * plan.l, plan.m2);
  f.setFromTriplets(trip.begin(), trip.end());
  return f;
}

weaver::Signing witness_signing_stage2(const Stage2Plan& plan, const weaver::Signing& stage1) {
  if (stage1.size() != plan.stage1_vectors)
    throw ArgumentError("stage-1 signing length does not match the plan");
  weaver::Signing out = stage1;
  for (std::size_t j = 0; j < plan.pad_coords.size(); ++j) {
    out.signs.push_back(1);
    out.signs.push_back(1);
    out.signs.push_back(-1);
    out.signs.push_back(-1);
  }
  return out;
}

namespace {

double max_abs(const weaver::SparseMatrix& m) {
  double best = 0.0;
  for (int c = 0; c < m.outerSize(); ++c)
    for (weaver::SparseMatrix::InnerIterator it(m, c); it; ++it) best = std::max(best, std::abs(it.value()));
  return best;
}

}  // namespace

Stage2Invariants verify_stage2_invariants(const Stage2Reduction& red, int samples, std::uint64_t seed) {
  const auto& plan = red.plan;
  Stage2Invariants inv;
  inv.samples = samples;
  inv.conflict_max_degree = plan.conflict_max_degree;
  inv.colors = static_cast<int>(plan.classes.size());

  std::vector<int> class_of(static_cast<std::size_t>(plan.m2), -1);
  for (std::size_t ci = 0; ci < plan.classes.size(); ++ci)
    for (int c : plan.classes[ci]) class_of[static_cast<std::size_t>(c)] = static_cast<int>(ci);
  inv.class_meets_once = true;
  for (const auto& u : red.padded.vectors) {
    std::set<int> seen;
    for (int c : u.index)
      if (!seen.insert(class_of[static_cast<std::size_t>(c)]).second) inv.class_meets_once = false;
  }
  inv.m2_ok = plan.m2 <= 2 * plan.m1;

  const auto f = build_f(plan);
  weaver::SparseMatrix eye((plan.k - 1) * plan.l, (plan.k - 1) * plan.l);
  eye.setIdentity();
  inv.fft_deviation = max_abs(weaver::SparseMatrix(f * weaver::SparseMatrix(f.transpose())) - eye);
  inv.identity_deviation = weaver::check_alpha_weaver(red.instance, 1.0).max_identity_deviation;

  std::vector<int> group_of(static_cast<std::size_t>(plan.m2));
  for (int gi = 0; gi < plan.l; ++gi)
    for (int c : plan.groups[gi]) group_of[static_cast<std::size_t>(c)] = gi;

  std::mt19937_64 rng(seed);
  for (int t = 0; t < samples; ++t) {
    weaver::Signing s;
    s.signs.resize(static_cast<std::size_t>(red.padded.size()));
    for (int& v : s.signs) v = (rng() & 1U) ? 1 : -1;
    const auto mu = weaver::signed_sum_sparse(red.padded, s);
    for (int c = 0; c < mu.outerSize(); ++c)
      for (weaver::SparseMatrix::InnerIterator it(mu, c); it; ++it)
        if (it.row() != it.col() && group_of[static_cast<std::size_t>(it.row())] == group_of[static_cast<std::size_t>(it.col())])
          inv.max_group_offdiag = std::max(inv.max_group_offdiag, std::abs(it.value()));
    const auto mw = weaver::signed_sum_sparse(red.instance, s);
    const weaver::SparseMatrix conj = f * mu * weaver::SparseMatrix(f.transpose());
    inv.conjugation_deviation = std::max(inv.conjugation_deviation, max_abs(weaver::SparseMatrix(mw - conj)));
  }

  inv.ok = inv.conflict_max_degree <= 21 && inv.colors <= 22 && inv.class_meets_once &&
           inv.max_group_offdiag == 0.0 && inv.m2_ok && inv.fft_deviation <= 1e-12 &&
           inv.conjugation_deviation <= 1e-9;
  return inv;
}

GapGeneralReport certify_gap_general(const setsplit::SetSplitInstance& source, int k,
                                     const GapGeneralOptions& opts) {
  GapGeneralReport rep;
  rep.k = k;
  const auto s1 = reduce_stage1(source);
  const auto s2 = reduce_stage2(s1.instance, k, opts.rational_pi);
  rep.vectors = s2.instance.size();
  rep.dim = s2.instance.dim;

  setsplit::SearchOptions so;
  so.cap = opts.brute_force_cap;
  const auto sat = setsplit::brute_force_satisfiable(source, so);
  rep.satisfiable = sat.has_value();
  if (sat) {
    rep.witness = *sat;
    const auto sign = witness_signing_stage2(s2.plan, witness_signing_stage1(s1.trace, *sat));
    rep.witness_norm_upper = weaver::frobenius_norm(weaver::signed_sum_sparse(s2.instance, sign));
    rep.ok = rep.witness_norm_upper <= 1e-9;
    rep.method = "witness";
    return rep;
  }

  DiagFractionOptions dopts;
  dopts.brute_force_cap = opts.brute_force_cap;
  const auto diag = verify_diag_fraction(source, s1, dopts);
  rep.gamma = diag.gamma;
  rep.phi = static_cast<double>(diag.min_count) / s1.instance.dim;
  rep.kappa = std::sqrt(rep.gamma / 6.0) / 100.0;
  rep.kappa_over_sqrt_k = rep.kappa / std::sqrt(static_cast<double>(k));
  rep.lower_bound = (1.0 / 50.0) * std::sqrt(rep.phi / (2.0 * k));

  if (rep.vectors <= opts.exact_cap) {
    rep.exact_w = weaver::exact_w(s2.instance, opts.exact_cap).best_value;
    rep.ok = *rep.exact_w >= rep.lower_bound - 1e-9;
    rep.method = "exact";
    return rep;
  }
  // The theoretical bound stands on the measured phi; the heuristic value is
  // only an upper bound and must not fall below it.
  rep.method = "bound";
  rep.ok = rep.phi > 0.0;
  if (opts.budget > 0 && s2.instance.dim <= weaver::kMaxDenseDim) {
    weaver::HeuristicOptions ho;
    ho.budget = opts.budget;
    ho.seed = opts.seed;
    rep.heuristic_upper = weaver::heuristic_w(s2.instance, ho).best_value;
    rep.ok = rep.ok && *rep.heuristic_upper >= rep.lower_bound - 1e-9;
  }
  return rep;
}

}  // namespace wh::reducegen
