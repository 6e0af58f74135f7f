#include "weaverhard/reduce4.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "weaverhard/errors.hpp"

namespace wh::reduce4 {

ExactFrame q3_frame_exact() {
  const Rational a(-1, 3), b(2, 3);
  return {{a, b, b}, {b, a, b}, {b, b, a}};
}

std::array<Eigen::Vector3d, 3> q3_frame() {
  std::array<Eigen::Vector3d, 3> out;
  const auto exact = q3_frame_exact();
  for (int h = 0; h < 3; ++h)
    for (int p = 0; p < 3; ++p) out[h](p) = exact[h][p].to_double();
  return out;
}

QuarterReduction reduce_quarter(const setsplit::SetSplitInstance& inst) {
  const auto chk = setsplit::check_322(inst);
  if (!chk.occurrence_ok)
    throw ArgumentError("not a (3,2-2) instance: variable " +
                        std::to_string(*chk.occurrence_witness) + " occurs in more than 3 sets");
  if (!chk.intersection_ok)
    throw ArgumentError("not a (3,2-2) instance: sets " +
                        std::to_string(chk.intersection_witness->set_a) + " and " +
                        std::to_string(chk.intersection_witness->set_b) +
                        " intersect in more than one variable");
  auto red = reduce_with_frame(inst, q3_frame_exact(), 3);
  red.instance.alpha = 0.25;
  return {std::move(red.instance), std::move(red.trace)};
}

weaver::Signing witness_signing_quarter(const QuarterTrace& trace, const setsplit::Assignment& x) {
  return witness_signing(trace, x);
}

Eigen::Matrix3d reflection_r1() {
  const auto q = q3_frame();
  return Eigen::Matrix3d::Identity() - 2.0 * q[0] * q[0].transpose();
}

Eigen::Matrix3d dual_certificate_y() {
  Eigen::Matrix3d y;
  y << 0, 2, 2, 2, 0, -7, 2, -7, 0;
  return y / 16.0;
}

namespace {

double norm3(const Eigen::Matrix3d& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es;
  es.computeDirect(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

LemmaQ1Report verify_lemma_q1(int samples, std::uint64_t seed) {
  LemmaQ1Report rep;
  rep.samples = samples;
  rep.min_norm = std::numeric_limits<double>::infinity();
  const auto q = q3_frame();
  const Eigen::Matrix3d r1 = reflection_r1();
  const Eigen::Matrix3d y = dual_certificate_y();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-5.0, 5.0);
  rep.reflections_ok = true;

  std::array<int, 3> perm{0, 1, 2};
  std::vector<Eigen::Matrix3d> r1_perms;
  do {
    Eigen::Matrix3d p = Eigen::Matrix3d::Zero();
    for (int i = 0; i < 3; ++i) p(i, perm[i]) = 1.0;
    r1_perms.push_back(p * r1 * p.transpose());
  } while (std::next_permutation(perm.begin(), perm.end()));

  for (int mask = 1; mask < 7; ++mask) {
    std::array<int, 3> z{};
    for (int i = 0; i < 3; ++i) z[i] = ((mask >> i) & 1) ? -1 : 1;
    Eigen::Matrix3d s = Eigen::Matrix3d::Zero();
    for (int i = 0; i < 3; ++i) s += z[i] * q[i] * q[i].transpose();

    bool is_reflection = false;
    for (const auto& rp : r1_perms)
      if ((s - rp).cwiseAbs().maxCoeff() < 1e-12 || (s + rp).cwiseAbs().maxCoeff() < 1e-12)
        is_reflection = true;
    rep.reflections_ok = rep.reflections_ok && is_reflection;

    for (int t = 0; t <= samples; ++t) {
      Eigen::Vector3d x = Eigen::Vector3d::Zero();
      if (t > 0) x << unif(rng), unif(rng), unif(rng);
      const double nrm = norm3(s + Eigen::Matrix3d(x.asDiagonal()));
      if (nrm < rep.min_norm) {
        rep.min_norm = nrm;
        rep.min_z = z;
        rep.min_x = x;
      }
    }
  }

  for (int t = 0; t <= samples; ++t) {
    Eigen::Vector3d x = Eigen::Vector3d::Zero();
    if (t > 0) x << unif(rng), unif(rng), unif(rng);
    const Eigen::Matrix3d a = r1 + Eigen::Matrix3d(x.asDiagonal());
    const double tr = (a.transpose() * y).trace();
    rep.max_trace_deviation = std::max(rep.max_trace_deviation, std::abs(tr - 1.0));
  }

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(y, Eigen::EigenvaluesOnly);
  rep.y_eigenvalues = es.eigenvalues();
  rep.y_abs_eigen_sum = rep.y_eigenvalues.cwiseAbs().sum();

  rep.ok = rep.min_norm >= 1.0 - 1e-9 && rep.max_trace_deviation <= 1e-9 &&
           std::abs(rep.y_abs_eigen_sum - 1.0) <= 1e-9 && rep.reflections_ok;
  return rep;
}

namespace {

// Distinct values of sum_t (+-c_t), merged within 1e-12.
std::vector<double> reachable_sums(const std::vector<double>& c) {
  std::vector<double> sums{0.0};
  for (double v : c) {
    std::vector<double> next;
    next.reserve(sums.size() * 2);
    for (double s : sums) {
      next.push_back(s + v);
      next.push_back(s - v);
    }
    std::sort(next.begin(), next.end());
    sums.clear();
    for (double s : next)
      if (sums.empty() || s - sums.back() > 1e-12) sums.push_back(s);
  }
  return sums;
}

}  // namespace

DichotomyReport certify_dichotomy(const setsplit::SetSplitInstance& source,
                                  const QuarterReduction& red,
                                  const setsplit::SearchOptions& search) {
  DichotomyReport rep;
  rep.constant_case_ok = !setsplit::brute_force_satisfiable(source, search).has_value();

  const auto& inst = red.instance;
  const auto& tr = red.trace;
  const auto by_coord = vectors_by_coordinate(inst);
  const int f = tr.frame_size;

  rep.locality_ok = true;
  rep.min_local_norm = std::numeric_limits<double>::infinity();
  for (const auto& rec : tr.vars) {
    // Other vectors meeting T_i, and how many of its coordinates each meets.
    std::vector<int> hits(static_cast<std::size_t>(inst.size()), 0);
    std::vector<std::vector<double>> others(static_cast<std::size_t>(f));
    for (int a = 0; a < f; ++a) {
      const int p = rec.support[a];
      for (int k : by_coord[static_cast<std::size_t>(p)]) {
        if (k >= rec.first_q && k < rec.first_q + f) continue;
        if (++hits[static_cast<std::size_t>(k)] > 1) rep.locality_ok = false;
        const auto& v = inst.vectors[k];
        const auto it = std::lower_bound(v.index.begin(), v.index.end(), p);
        const double e = v.value[static_cast<std::size_t>(it - v.index.begin())];
        others[a].push_back(e * e);
      }
    }
    std::vector<std::vector<double>> diag_options;
    for (const auto& c : others) diag_options.push_back(reachable_sums(c));

    // Frame block restricted to T_i: block[h](a) = entry of q_{i,h} at support[a].
    std::vector<Eigen::VectorXd> block(static_cast<std::size_t>(f), Eigen::VectorXd::Zero(f));
    for (int h = 0; h < f; ++h) {
      const auto& v = inst.vectors[rec.first_q + h];
      for (int a = 0; a < f; ++a) {
        const auto it = std::lower_bound(v.index.begin(), v.index.end(), rec.support[a]);
        if (it != v.index.end() && *it == rec.support[a])
          block[h](a) = v.value[static_cast<std::size_t>(it - v.index.begin())];
      }
    }

    for (int mask = 1; mask + 1 < (1 << f); ++mask) {
      Eigen::MatrixXd base = Eigen::MatrixXd::Zero(f, f);
      for (int h = 0; h < f; ++h) base += (((mask >> h) & 1) ? -1.0 : 1.0) * block[h] * block[h].transpose();
      std::vector<std::size_t> idx(static_cast<std::size_t>(f), 0);
      while (true) {
        Eigen::MatrixXd m = base;
        for (int a = 0; a < f; ++a) m(a, a) += diag_options[a][idx[a]];
        double nrm;
        if (f == 3) {
          nrm = norm3(Eigen::Matrix3d(m));
        } else {
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
          nrm = es.eigenvalues().cwiseAbs().maxCoeff();
        }
        ++rep.local_cases;
        if (nrm < rep.min_local_norm) {
          rep.min_local_norm = nrm;
          rep.min_local_var = rec.var;
        }
        int a = 0;
        while (a < f && ++idx[a] == diag_options[a].size()) idx[a++] = 0;
        if (a == f) break;
      }
    }
  }
  if (tr.vars.empty()) rep.min_local_norm = 0.0;
  rep.nonconstant_case_ok = rep.locality_ok && rep.min_local_norm >= 0.25 - 1e-9;
  rep.ok = rep.constant_case_ok && rep.nonconstant_case_ok;
  return rep;
}

GapQuarterReport certify_gap_quarter(const setsplit::SetSplitInstance& source,
                                     const CertifyOptions& opts) {
  GapQuarterReport rep;
  const auto red = reduce_quarter(source);
  rep.vectors = red.instance.size();
  rep.dim = red.instance.dim;

  setsplit::SearchOptions so;
  so.cap = opts.brute_force_cap;
  const auto sat = setsplit::brute_force_satisfiable(source, so);
  rep.satisfiable = sat.has_value();

  if (sat) {
    rep.witness = *sat;
    const auto sign = witness_signing_quarter(red.trace, *sat);
    rep.witness_norm_upper = weaver::frobenius_norm(weaver::signed_sum_sparse(red.instance, sign));
    rep.certified_lower = 0.0;
    rep.ok = rep.witness_norm_upper <= 1e-12;
    rep.method = "witness";
    return rep;
  }

  if (rep.vectors <= opts.exact_cap) {
    const auto ex = weaver::exact_w(red.instance, opts.exact_cap);
    rep.exact_w = ex.best_value;
    rep.certified_lower = ex.best_value;
    rep.ok = ex.best_value >= 0.25 - 1e-9;
    rep.method = "exact";
    return rep;
  }

  rep.dichotomy = certify_dichotomy(source, red, so);
  rep.certified_lower = rep.dichotomy->ok ? 0.25 : 0.0;
  rep.ok = rep.dichotomy->ok;
  rep.method = "dichotomy";
  if (opts.budget > 0 && red.instance.dim <= weaver::kMaxDenseDim) {
    weaver::HeuristicOptions ho;
    ho.budget = opts.budget;
    ho.seed = opts.seed;
    rep.heuristic_upper = weaver::heuristic_w(red.instance, ho).best_value;
  }
  return rep;
}

}  // namespace wh::reduce4
