#include "weaverhard/weaver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "weaverhard/errors.hpp"

namespace wh::weaver {

namespace {

constexpr double kTieTol = 1e-12;

void require_finite(const Eigen::MatrixXd& m) {
  if (!m.allFinite()) throw ArgumentError("matrix has non-finite entries");
}

void check_signing(const WeaverInstance& inst, const Signing& s) {
  if (s.size() != inst.size())
    throw ArgumentError("signing length " + std::to_string(s.size()) + " != vector count " +
                        std::to_string(inst.size()));
  s.validate();
}

}  // namespace

SparseVec SparseVec::from_dense(std::span<const double> dense) {
  SparseVec v;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0.0) v.push(static_cast<int>(i), dense[i]);
  return v;
}

std::vector<double> SparseVec::to_dense(int dim) const {
  std::vector<double> out(static_cast<std::size_t>(dim), 0.0);
  for (std::size_t t = 0; t < index.size(); ++t) out[static_cast<std::size_t>(index[t])] = value[t];
  return out;
}

double SparseVec::squared_norm() const {
  double s = 0.0;
  for (double v : value) s += v * v;
  return s;
}

void SparseVec::push(int i, double v) {
  if (v == 0.0) return;
  index.push_back(i);
  value.push_back(v);
}

void WeaverInstance::validate_shape() const {
  if (dim < 0) throw ArgumentError("dim must be non-negative");
  if (tags.size() != vectors.size())
    throw ArgumentError("tags length " + std::to_string(tags.size()) + " != vector count " +
                        std::to_string(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    const auto& v = vectors[k];
    if (v.index.size() != v.value.size())
      throw ArgumentError("vector " + std::to_string(k) + " is malformed");
    for (std::size_t t = 0; t < v.index.size(); ++t) {
      if (v.index[t] < 0 || v.index[t] >= dim || (t > 0 && v.index[t] <= v.index[t - 1]))
        throw ArgumentError("vector " + std::to_string(k) + " has a bad coordinate index");
      if (!std::isfinite(v.value[t]))
        throw ArgumentError("vector " + std::to_string(k) + " has a non-finite entry");
    }
  }
}

Signing Signing::negated() const {
  Signing out = *this;
  for (int& s : out.signs) s = -s;
  return out;
}

void Signing::validate() const {
  for (std::size_t i = 0; i < signs.size(); ++i)
    if (signs[i] != 1 && signs[i] != -1)
      throw ArgumentError("signing entry " + std::to_string(i) + " is not +1/-1");
}

SymMatrix SymMatrix::from_dense(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw ArgumentError("matrix is not square");
  SymMatrix out;
  out.m_ = 0.5 * (a + a.transpose());
  return out;
}

SymMatrix SymMatrix::identity(int dim) {
  SymMatrix out(dim);
  out.m_.setIdentity();
  return out;
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix out(static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) out.m_(i, i) = d[i];
  return out;
}

void SymMatrix::set(int r, int c, double v) {
  m_(r, c) = v;
  m_(c, r) = v;
}

void SymMatrix::add_outer(const SparseVec& v, double weight) {
  const std::size_t n = v.index.size();
  for (std::size_t a = 0; a < n; ++a) {
    const double wa = weight * v.value[a];
    m_(v.index[a], v.index[a]) += wa * v.value[a];
    for (std::size_t b = a + 1; b < n; ++b) {
      const double p = wa * v.value[b];
      m_(v.index[a], v.index[b]) += p;
      m_(v.index[b], v.index[a]) += p;
    }
  }
}

SymMatrix SymMatrix::principal(std::span<const int> idx) const {
  SymMatrix out(static_cast<int>(idx.size()));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) out.m_(a, b) = m_(idx[a], idx[b]);
  return out;
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw ArgumentError("dimension mismatch");
  SymMatrix out;
  out.m_ = a.m_ + b.m_;
  return out;
}

SymMatrix operator-(const SymMatrix& a) {
  SymMatrix out;
  out.m_ = -a.m_;
  return out;
}

SymMatrix operator*(double s, const SymMatrix& a) {
  SymMatrix out;
  out.m_ = s * a.m_;
  return out;
}

SymMatrix signed_sum(const WeaverInstance& inst, const Signing& s) {
  check_signing(inst, s);
  if (inst.dim > kMaxDenseDim) throw CapExceeded("dense signed sum", inst.dim, kMaxDenseDim);
  SymMatrix m(inst.dim);
  for (int k = 0; k < inst.size(); ++k) m.add_outer(inst.vectors[k], s.signs[k]);
  return m;
}

SparseMatrix signed_sum_sparse(const WeaverInstance& inst, const Signing& s) {
  check_signing(inst, s);
  std::vector<Eigen::Triplet<double>> trip;
  for (int k = 0; k < inst.size(); ++k) {
    const auto& v = inst.vectors[k];
    for (std::size_t a = 0; a < v.nnz(); ++a)
      for (std::size_t b = 0; b < v.nnz(); ++b)
        trip.emplace_back(v.index[a], v.index[b], s.signs[k] * v.value[a] * v.value[b]);
  }
  SparseMatrix m(inst.dim, inst.dim);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

Eigen::VectorXd eigenvalues(const SymMatrix& m) {
  require_finite(m.dense());
  if (m.dim() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.dense(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigen-decomposition did not converge");
  return es.eigenvalues();
}

double operator_norm(const SymMatrix& m) {
  const auto ev = eigenvalues(m);
  return ev.size() == 0 ? 0.0 : ev.cwiseAbs().maxCoeff();
}

double frobenius_norm(const SymMatrix& m) {
  require_finite(m.dense());
  return m.dense().norm();
}

double frobenius_norm(const SparseMatrix& m) {
  double s = 0.0;
  for (int c = 0; c < m.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) {
      if (!std::isfinite(it.value())) throw ArgumentError("matrix has non-finite entries");
      s += it.value() * it.value();
    }
  return std::sqrt(s);
}

double max_abs_diagonal(const SymMatrix& m) {
  return m.dim() == 0 ? 0.0 : m.dense().diagonal().cwiseAbs().maxCoeff();
}

double max_abs_diagonal(const SparseMatrix& m) {
  double best = 0.0;
  for (int c = 0; c < m.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(m, c); it; ++it)
      if (it.row() == it.col()) best = std::max(best, std::abs(it.value()));
  return best;
}

AlphaReport check_alpha_weaver(const WeaverInstance& inst, double tol) {
  inst.validate_shape();
  AlphaReport r;
  r.alpha = inst.alpha;
  r.tol = tol;
  for (int k = 0; k < inst.size(); ++k) {
    const double sq = inst.vectors[k].squared_norm();
    if (sq > r.max_sq_norm || r.max_sq_norm_vector < 0) {
      r.max_sq_norm = sq;
      r.max_sq_norm_vector = k;
    }
  }
  r.norms_ok = r.max_sq_norm <= inst.alpha + tol;

  SparseMatrix sum = signed_sum_sparse(inst, Signing::all_ones(inst.size()));
  std::vector<char> diag_seen(static_cast<std::size_t>(inst.dim), 0);
  auto consider = [&](int row, int col, double dev) {
    if (dev > r.max_identity_deviation || r.deviation_row < 0) {
      r.max_identity_deviation = dev;
      r.deviation_row = row;
      r.deviation_col = col;
    }
  };
  for (int c = 0; c < sum.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(sum, c); it; ++it) {
      const bool diag = it.row() == it.col();
      if (diag) diag_seen[static_cast<std::size_t>(it.row())] = 1;
      consider(static_cast<int>(it.row()), static_cast<int>(it.col()),
               std::abs(it.value() - (diag ? 1.0 : 0.0)));
    }
  for (int i = 0; i < inst.dim; ++i)
    if (!diag_seen[static_cast<std::size_t>(i)]) consider(i, i, 1.0);
  r.identity_ok = r.max_identity_deviation <= tol;
  r.ok = r.norms_ok && r.identity_ok;
  return r;
}

const char* to_string(Method m) { return m == Method::exact ? "exact" : "heuristic"; }

SolveResult exact_w(const WeaverInstance& inst, int cap) {
  inst.validate_shape();
  const int n = inst.size();
  if (n > cap) throw CapExceeded("exact W", n, cap);
  if (inst.dim > kMaxDenseDim) throw CapExceeded("exact W dimension", inst.dim, kMaxDenseDim);
  SolveResult res;
  res.method = Method::exact;
  if (n == 0) {
    res.best_value = 0.0;
    return res;
  }

  // Gray-code walk over the n - 1 free signs. Bit t of the code is the sign
  // of vector n - 1 - t, so the code read as an integer is the lexicographic
  // rank of the signing.
  const int free_bits = n - 1;
  const std::uint64_t total = std::uint64_t{1} << free_bits;
  Signing cur = Signing::all_ones(n);
  SymMatrix m = signed_sum(inst, cur);
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t best_code = 0;

  for (std::uint64_t i = 0; i < total; ++i) {
    const std::uint64_t code = i ^ (i >> 1);
    if (i > 0) {
      const int t = std::countr_zero(i);
      const int k = n - 1 - t;
      m.add_outer(inst.vectors[k], -2.0 * cur.signs[k]);
      cur.signs[k] = -cur.signs[k];
    }
    // ||M|| >= max |M_jj| lets most signings skip the eigen-solve.
    if (max_abs_diagonal(m) > best + kTieTol) continue;
    const double v = operator_norm(m);
    if (v < best - kTieTol) {
      best = v;
      best_code = code;
    } else if (v <= best + kTieTol && code < best_code) {
      best = std::min(best, v);
      best_code = code;
    }
  }
  res.explored = static_cast<std::int64_t>(total);
  res.best_signing = Signing::all_ones(n);
  for (int t = 0; t < free_bits; ++t)
    if ((best_code >> t) & 1U) res.best_signing.signs[static_cast<std::size_t>(n - 1 - t)] = -1;
  res.best_value = operator_norm(signed_sum(inst, res.best_signing));
  return res;
}

SolveResult heuristic_w(const WeaverInstance& inst, const HeuristicOptions& opts) {
  inst.validate_shape();
  const int n = inst.size();
  SolveResult res;
  res.method = Method::heuristic;
  res.best_value = std::numeric_limits<double>::infinity();
  if (n == 0) {
    res.best_value = 0.0;
    return res;
  }
  if (opts.start) check_signing(inst, *opts.start);

  std::mt19937_64 rng(opts.seed);
  std::int64_t evals = 0;
  for (int restart = 0; evals < std::max<std::int64_t>(opts.budget, 1); ++restart) {
    Signing cur;
    if (restart == 0 && opts.start) {
      cur = *opts.start;
    } else {
      cur.signs.resize(static_cast<std::size_t>(n));
      for (int& s : cur.signs) s = (rng() & 1U) ? 1 : -1;
    }
    SymMatrix m = signed_sum(inst, cur);
    double val = operator_norm(m);
    ++evals;
    while (val > kTieTol && evals < opts.budget) {
      int best_k = -1;
      double best_val = val;
      for (int k = 0; k < n && evals < opts.budget; ++k) {
        m.add_outer(inst.vectors[k], -2.0 * cur.signs[k]);
        const double v = operator_norm(m);
        ++evals;
        m.add_outer(inst.vectors[k], 2.0 * cur.signs[k]);
        if (v < best_val - kTieTol) {
          best_val = v;
          best_k = k;
        }
      }
      if (best_k < 0) break;
      m.add_outer(inst.vectors[best_k], -2.0 * cur.signs[best_k]);
      cur.signs[best_k] = -cur.signs[best_k];
      val = best_val;
    }
    if (val < res.best_value - kTieTol) {
      res.best_value = val;
      res.best_signing = cur;
    }
    if (res.best_value <= kTieTol) break;
  }
  res.explored = evals;
  res.best_value = operator_norm(signed_sum(inst, res.best_signing));
  return res;
}

DiagStats diag_stats(const SymMatrix& m, double delta) {
  DiagStats d;
  for (int j = 0; j < m.dim(); ++j)
    if (std::abs(m(j, j)) >= delta) ++d.count;
  d.fraction = m.dim() == 0 ? 0.0 : static_cast<double>(d.count) / m.dim();
  return d;
}

}  // namespace wh::weaver
