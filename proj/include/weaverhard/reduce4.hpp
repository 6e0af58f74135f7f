#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weaverhard/frame_reduction.hpp"
#include "weaverhard/setsplit.hpp"
#include "weaverhard/weaver.hpp"

// Reduction from (3,2-2) Set Splitting to 1/4-Weaver instances built on the
// three-vector frame q1 = (-1,2,2)/3, q2 = (2,-1,2)/3, q3 = (2,2,-1)/3.
namespace wh::reduce4 {

using QuarterTrace = FrameTrace;

ExactFrame q3_frame_exact();
std::array<Eigen::Vector3d, 3> q3_frame();

struct QuarterReduction {
  weaver::WeaverInstance instance;
  QuarterTrace trace;
};

// Requires check_322 to pass; throws ArgumentError naming the violated condition.
QuarterReduction reduce_quarter(const setsplit::SetSplitInstance& inst);

weaver::Signing witness_signing_quarter(const QuarterTrace& trace, const setsplit::Assignment& x);

// R1 = I - 2 q1 q1^T and the dual certificate Y.
Eigen::Matrix3d reflection_r1();
Eigen::Matrix3d dual_certificate_y();

struct LemmaQ1Report {
  bool ok = false;
  int samples = 0;
  double min_norm = 0.0;  // over all nonconstant z and sampled diagonals X
  std::array<int, 3> min_z{};
  Eigen::Vector3d min_x = Eigen::Vector3d::Zero();
  double max_trace_deviation = 0.0;  // |tr((R1 + X)^T Y) - 1|
  Eigen::Vector3d y_eigenvalues = Eigen::Vector3d::Zero();
  double y_abs_eigen_sum = 0.0;
  bool reflections_ok = false;  // every nonconstant z gives +-P R1 P^T
};

LemmaQ1Report verify_lemma_q1(int samples, std::uint64_t seed);

// Per-instance certificate that every signing of a reduced instance has norm
// >= 1/4, following the two cases:
//  (a) all z(i, .) constant: the signed sum restricted to set coordinates is
//      sum_i x(i) D_i, so some set diagonal is >= 1/2 unless x splits all sets;
//  (b) some z(i, .) nonconstant: the T_i principal submatrix has the frame's
//      off-diagonals, and every reachable diagonal is enumerated exactly.
struct DichotomyReport {
  bool ok = false;
  bool constant_case_ok = false;     // (a): the source has no satisfying assignment
  bool nonconstant_case_ok = false;  // (b)
  bool locality_ok = false;          // no other vector meets T_i twice
  double min_local_norm = 0.0;       // over all variables and reachable T_i submatrices
  int min_local_var = 0;
  std::int64_t local_cases = 0;
};

DichotomyReport certify_dichotomy(const setsplit::SetSplitInstance& source,
                                  const QuarterReduction& red,
                                  const setsplit::SearchOptions& search = {});

struct CertifyOptions {
  int brute_force_cap = 30;
  int exact_cap = 26;
  std::int64_t budget = 2000;
  std::uint64_t seed = 1;
};

struct GapQuarterReport {
  bool satisfiable = false;
  std::optional<setsplit::Assignment> witness;
  int vectors = 0;
  int dim = 0;
  double witness_norm_upper = 0.0;     // Frobenius bound on ||M|| at the witness signing
  std::optional<double> exact_w;
  std::optional<double> heuristic_upper;
  std::optional<DichotomyReport> dichotomy;
  double certified_lower = 0.0;        // 0 when the satisfiable branch applies
  bool ok = false;                     // the branch's claim is established
  std::string method;
};

GapQuarterReport certify_gap_quarter(const setsplit::SetSplitInstance& source,
                                     const CertifyOptions& opts = {});

}  // namespace wh::reduce4
