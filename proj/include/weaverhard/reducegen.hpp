#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weaverhard/frame_reduction.hpp"
#include "weaverhard/rational.hpp"
#include "weaverhard/setsplit.hpp"
#include "weaverhard/weaver.hpp"

// Two-stage reduction from (3,2-2) Set Splitting to 1/(2k)-Weaver instances.
//
// Stage 1 embeds every variable with the four-vector frame
//   q1 = (1,4,-2,-2)/5, q2 = (4,1,2,2)/5, q3 = (-2,2,-1,4)/5, q4 = (-2,2,4,-1)/5
// so that any nonconstant sign pattern on a variable leaves each of its pad
// diagonals at least 1/50 away from zero. Stage 2 colors the coordinates so
// every vector meets each class at most once, pads each class to a multiple
// of C(k,2), and maps each group of C(k,2) coordinates to k - 1 dimensions
// with G = Pi B / sqrt(k), where B is the signed incidence matrix of K_k.
namespace wh::reducegen {

using Stage1Trace = FrameTrace;

ExactFrame q4_frame_exact();
std::array<Eigen::Vector4d, 4> q4_frame();

struct LemmaQ4Report {
  bool ok = false;
  int cases = 0;
  Rational min_exact;  // minimum over the enumeration, exact
  double min_float = 0.0;
  std::array<int, 4> min_z{};
  std::array<int, 3> min_w{};
  int min_j = 0;  // 1-based coordinate
};

// All z in {+-1}^4 other than +-1, all w in {+-1}^3, all four coordinates.
LemmaQ4Report verify_lemma_q4();

struct Stage1Reduction {
  weaver::WeaverInstance instance;
  Stage1Trace trace;
};

Stage1Reduction reduce_stage1(const setsplit::SetSplitInstance& inst);
weaver::Signing witness_signing_stage1(const Stage1Trace& trace, const setsplit::Assignment& x);

struct SupportStats {
  int max_nnz = 0;                  // nonzeros per vector
  int max_vectors_per_coord = 0;    // over every coordinate
  int max_vectors_per_set_coord = 0;
  int max_vectors_per_pad_coord = 0;
};

SupportStats support_stats(const weaver::WeaverInstance& inst, const FrameTrace& trace);

// Signed diagonal contributions in exact integer units (1/100 for the stage-1
// frame) and the search behind the minimum diagonal count.
struct DiagFractionOptions {
  int brute_force_cap = 30;
  int samples = 0;  // extra random signings evaluated on the actual matrix
  std::uint64_t seed = 1;
};

struct DiagFractionReport {
  int m = 0;
  int dim = 0;
  int min_unsat = 0;  // gamma * m
  double gamma = 0.0;
  int min_count = 0;  // min over all signings of #{j : |M_jj| >= 1/50}
  double min_fraction = 0.0;
  long long search_nodes = 0;
  bool proof_bound_ok = false;      // min_count >= (gamma / 3) m
  bool statement_bound_ok = false;  // min_fraction >= gamma / 12
  bool pad_mechanism_ok = false;    // nonconstant z(i,.) => every B_i diagonal >= 1/50
  double pad_mechanism_min = 0.0;
  int sampled_min_count = -1;       // over the random signings, -1 when none
};

DiagFractionReport verify_diag_fraction(const setsplit::SetSplitInstance& source,
                                        const Stage1Reduction& red,
                                        const DiagFractionOptions& opts = {});

// Signed incidence matrix of K_k: column (i, j), i < j in lexicographic order, is e_i - e_j.
Eigen::MatrixXd incidence_matrix(int k);
// (k-1) x k with orthonormal rows spanning the complement of the all-ones vector.
Eigen::MatrixXd build_pi(int k, bool rational_pi = false);
Eigen::MatrixXd build_g(int k, bool rational_pi = false);
// Exact variants, k must be a perfect square.
std::vector<std::vector<Rational>> build_pi_exact(int k);
std::vector<std::vector<Rational>> build_g_exact(int k);

struct GLowerBoundReport {
  bool ok = false;
  int k = 0;
  int trials = 0;
  double gg_deviation = 0.0;           // max |G G^T - I|
  double column_norm_deviation = 0.0;  // max |‖G e_t‖ - sqrt(2/k)|
  double bb_deviation = 0.0;           // max |B B^T - (kI - J)|
  double min_slack = 0.0;              // min over nonzero D of ‖G D G^T‖ - (1/k) sqrt(2/(k-1)) ‖D‖_F
  double min_frob_ratio = 0.0;         // min ‖B D B^T‖_F^2 / ‖D‖_F^2 over nonzero D
  std::vector<double> witness;         // diagonal attaining min_slack
};

GLowerBoundReport verify_g_lower_bound(int k, int trials, std::uint64_t seed,
                                       bool rational_pi = false);

struct Stage2Plan {
  int k = 0;
  int pairs = 0;  // C(k,2)
  bool rational_pi = false;
  int m1 = 0;
  int m2 = 0;
  int a = 0;
  int l = 0;
  int conflict_max_degree = 0;
  std::vector<std::vector<int>> classes;  // C_i (after padding), ascending
  std::vector<int> class_sizes;           // c_i before padding
  std::vector<int> class_pads;            // a_i
  std::vector<std::vector<int>> groups;   // D_1..D_l, E_i = rows [i(k-1), (i+1)(k-1))
  std::vector<int> pad_coords;            // the a new coordinates, ascending
  int stage1_vectors = 0;
  Eigen::MatrixXd g;
};

struct Stage2Reduction {
  weaver::WeaverInstance instance;  // W = F U
  Stage2Plan plan;
  weaver::WeaverInstance padded;    // U
};

Stage2Reduction reduce_stage2(const weaver::WeaverInstance& stage1, int k, bool rational_pi = false);
weaver::SparseMatrix build_f(const Stage2Plan& plan);
weaver::Signing witness_signing_stage2(const Stage2Plan& plan, const weaver::Signing& stage1);

struct Stage2Invariants {
  bool ok = false;
  int conflict_max_degree = 0;
  int colors = 0;
  bool class_meets_once = false;     // every vector of U meets every class <= once
  double max_group_offdiag = 0.0;    // over sampled signings, D_i x D_i blocks of M(U, x)
  bool m2_ok = false;                // m2 <= 2 m1
  double fft_deviation = 0.0;        // max |F F^T - I|
  double identity_deviation = 0.0;   // max |M(W, 1) - I|
  double conjugation_deviation = 0.0;  // max |M(W, x) - F M(U, x) F^T| over samples
  int samples = 0;
};

Stage2Invariants verify_stage2_invariants(const Stage2Reduction& red, int samples, std::uint64_t seed);

struct GapGeneralOptions {
  int brute_force_cap = 30;
  int exact_cap = 26;
  std::int64_t budget = 500;
  std::uint64_t seed = 1;
  bool rational_pi = false;
};

struct GapGeneralReport {
  int k = 0;
  bool satisfiable = false;
  std::optional<setsplit::Assignment> witness;
  int vectors = 0;
  int dim = 0;
  double witness_norm_upper = 0.0;
  double gamma = 0.0;
  double phi = 0.0;
  double kappa = 0.0;            // (1/100) sqrt(gamma / 6)
  double kappa_over_sqrt_k = 0.0;
  double lower_bound = 0.0;      // (1/50) sqrt(phi / (2k)) from the measured phi
  std::optional<double> exact_w;
  std::optional<double> heuristic_upper;
  bool ok = false;
  std::string method;
};

GapGeneralReport certify_gap_general(const setsplit::SetSplitInstance& source, int k,
                                     const GapGeneralOptions& opts = {});

inline int pairs_of(int k) { return k * (k - 1) / 2; }

}  // namespace wh::reducegen
