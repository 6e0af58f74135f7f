#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wh::weaver {

// Sparse real vector: strictly increasing indices, no explicit zeros.
struct SparseVec {
  std::vector<int> index;
  std::vector<double> value;

  static SparseVec from_dense(std::span<const double> dense);
  std::vector<double> to_dense(int dim) const;
  std::size_t nnz() const { return index.size(); }
  double squared_norm() const;
  // Appends (i, v); callers append in increasing index order.
  void push(int i, double v);
};

struct WeaverInstance {
  int dim = 0;
  double alpha = 0.0;
  std::vector<SparseVec> vectors;
  std::vector<std::string> tags;

  int size() const { return static_cast<int>(vectors.size()); }
  // Throws ArgumentError if tags/vectors lengths differ or an index is out of range.
  void validate_shape() const;
};

struct Signing {
  std::vector<int> signs;

  static Signing all_ones(int n) { return Signing{std::vector<int>(static_cast<std::size_t>(n), 1)}; }
  int size() const { return static_cast<int>(signs.size()); }
  Signing negated() const;
  void validate() const;
};

// Dense symmetric matrix. Every write goes to (r, c) and (c, r) with the same
// value, so the stored matrix is exactly symmetric.
class SymMatrix {
public:
  SymMatrix() = default;
  explicit SymMatrix(int dim) : m_(Eigen::MatrixXd::Zero(dim, dim)) {}
  // Symmetrizes (A + A^T) / 2.
  static SymMatrix from_dense(const Eigen::MatrixXd& a);
  static SymMatrix identity(int dim);
  static SymMatrix diagonal(std::span<const double> d);

  int dim() const { return static_cast<int>(m_.rows()); }
  double operator()(int r, int c) const { return m_(r, c); }
  void set(int r, int c, double v);
  void add_outer(const SparseVec& v, double weight);
  const Eigen::MatrixXd& dense() const { return m_; }
  SymMatrix principal(std::span<const int> idx) const;

  friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator-(const SymMatrix& a);
  friend SymMatrix operator*(double s, const SymMatrix& a);

private:
  Eigen::MatrixXd m_;
};

using SparseMatrix = Eigen::SparseMatrix<double>;

// Dense signed sum; refuses (CapExceeded) above max_dense_dim.
inline constexpr int kMaxDenseDim = 4096;
SymMatrix signed_sum(const WeaverInstance& inst, const Signing& s);
SparseMatrix signed_sum_sparse(const WeaverInstance& inst, const Signing& s);

Eigen::VectorXd eigenvalues(const SymMatrix& m);
double operator_norm(const SymMatrix& m);
double frobenius_norm(const SymMatrix& m);
double frobenius_norm(const SparseMatrix& m);
double max_abs_diagonal(const SymMatrix& m);
double max_abs_diagonal(const SparseMatrix& m);

struct AlphaReport {
  bool ok = false;
  bool norms_ok = false;
  bool identity_ok = false;
  double alpha = 0.0;
  double tol = 0.0;
  double max_sq_norm = 0.0;
  int max_sq_norm_vector = -1;
  double max_identity_deviation = 0.0;
  int deviation_row = -1;
  int deviation_col = -1;
};

AlphaReport check_alpha_weaver(const WeaverInstance& inst, double tol);

enum class Method { exact, heuristic };

struct SolveResult {
  double best_value = 0.0;
  Signing best_signing;
  Method method = Method::exact;
  std::int64_t explored = 0;
};

const char* to_string(Method m);

// Exhaustive minimum of ||M(V, x)|| over signings with x(1) = +1. Ties within
// 1e-12 go to the lexicographically smallest signing (+1 ordered before -1).
SolveResult exact_w(const WeaverInstance& inst, int cap = 26);

struct HeuristicOptions {
  std::int64_t budget = 2000;  // operator-norm evaluations
  std::uint64_t seed = 1;
  std::optional<Signing> start;  // first restart begins here when given
};

// Steepest single-flip descent with seeded random restarts. Upper bound on W.
SolveResult heuristic_w(const WeaverInstance& inst, const HeuristicOptions& opts);

struct DiagStats {
  int count = 0;
  double fraction = 0.0;
};

DiagStats diag_stats(const SymMatrix& m, double delta);

}  // namespace wh::weaver
