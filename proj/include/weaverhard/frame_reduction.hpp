#pragma once

#include <vector>

#include "weaverhard/rational.hpp"
#include "weaverhard/setsplit.hpp"
#include "weaverhard/weaver.hpp"

namespace wh {

// An orthonormal frame: frame[h][p] is entry p of the h-th vector.
using ExactFrame = std::vector<std::vector<Rational>>;

// Where each variable of the source instance landed in the reduced instance.
// Coordinates are 0-based: the m set coordinates come first, then the pad
// coordinates in variable order.
struct VariableRecord {
  int var = 0;                  // 1-based source variable
  std::vector<int> set_coords;  // A_i
  std::vector<int> pad_coords;  // B_i
  std::vector<int> support;     // T_i = A_i followed by B_i
  int first_q = 0;              // q_{i,h} is vector first_q + h - 1
};

struct PadRecord {
  int coord = 0;
  int owner = 0;    // 1-based source variable
  int first_r = 0;  // r_{j,h} is vector first_r + h - 1
};

struct FrameTrace {
  int frame_size = 0;
  int r_per_pad = 0;
  int m = 0;
  int dim = 0;
  int q_count = 0;
  std::vector<VariableRecord> vars;
  std::vector<PadRecord> pads;  // pads[t].coord == m + t

  const PadRecord& pad(int coord) const { return pads[static_cast<std::size_t>(coord - m)]; }
  bool is_pad(int coord) const { return coord >= m; }
};

struct FrameReduction {
  weaver::WeaverInstance instance;
  FrameTrace trace;
  // The same vectors before conversion to floating point.
  std::vector<std::vector<std::pair<int, Rational>>> exact_vectors;
};

// Every variable gets |T_i| = frame size by padding, q_{i,h} = (1/2) frame_h
// laid out on T_i, and r_per_pad copies of (1/2) e_j per pad coordinate j.
// Vectors are ordered q's by variable then h, then r's by pad then h.
FrameReduction reduce_with_frame(const setsplit::SetSplitInstance& inst, const ExactFrame& frame,
                                 int r_per_pad);

// z(i,h) = x(i); w(j,1) = x(owner), w(j,h) = -x(owner) for h > 1.
weaver::Signing witness_signing(const FrameTrace& trace, const setsplit::Assignment& x);

// Vectors whose support contains each coordinate.
std::vector<std::vector<int>> vectors_by_coordinate(const weaver::WeaverInstance& inst);

}  // namespace wh
