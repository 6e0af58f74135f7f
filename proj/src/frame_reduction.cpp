#include "weaverhard/frame_reduction.hpp"

#include <algorithm>
#include <string>

#include "weaverhard/errors.hpp"

namespace wh {

FrameReduction reduce_with_frame(const setsplit::SetSplitInstance& inst, const ExactFrame& frame,
                                 int r_per_pad) {
  inst.validate();
  const int fsize = static_cast<int>(frame.size());
  for (const auto& q : frame)
    if (static_cast<int>(q.size()) != fsize) throw ArgumentError("frame must be square");

  const auto cont = inst.containing();
  FrameReduction out;
  FrameTrace& tr = out.trace;
  tr.frame_size = fsize;
  tr.r_per_pad = r_per_pad;
  tr.m = static_cast<int>(inst.sets.size());

  int next_coord = tr.m;
  for (int v = 1; v <= inst.n_vars; ++v) {
    VariableRecord rec;
    rec.var = v;
    rec.set_coords = cont[static_cast<std::size_t>(v - 1)];
    const int occ = static_cast<int>(rec.set_coords.size());
    if (occ > fsize)
      throw ArgumentError("variable " + std::to_string(v) + " occurs " + std::to_string(occ) +
                          " times; the frame only has room for " + std::to_string(fsize));
    for (int t = occ; t < fsize; ++t) rec.pad_coords.push_back(next_coord++);
    rec.support = rec.set_coords;
    rec.support.insert(rec.support.end(), rec.pad_coords.begin(), rec.pad_coords.end());
    tr.vars.push_back(std::move(rec));
  }
  tr.dim = next_coord;

  const Rational half(1, 2);
  auto& vecs = out.instance.vectors;
  auto& tags = out.instance.tags;
  for (auto& rec : tr.vars) {
    rec.first_q = static_cast<int>(vecs.size());
    for (int h = 0; h < fsize; ++h) {
      // T_i is not sorted (pads follow sets), so collect then sort by coordinate.
      std::vector<std::pair<int, Rational>> entries;
      for (int p = 0; p < fsize; ++p) entries.emplace_back(rec.support[p], half * frame[h][p]);
      std::sort(entries.begin(), entries.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      weaver::SparseVec sv;
      for (const auto& [c, val] : entries) sv.push(c, val.to_double());
      vecs.push_back(std::move(sv));
      out.exact_vectors.push_back(std::move(entries));
      tags.push_back("q:" + std::to_string(rec.var) + ":" + std::to_string(h + 1));
    }
  }
  tr.q_count = static_cast<int>(vecs.size());
  for (const auto& rec : tr.vars) {
    for (int c : rec.pad_coords) {
      PadRecord pad{c, rec.var, static_cast<int>(vecs.size())};
      for (int h = 0; h < r_per_pad; ++h) {
        weaver::SparseVec sv;
        sv.push(c, 0.5);
        vecs.push_back(std::move(sv));
        out.exact_vectors.push_back({{c, half}});
        tags.push_back("r:" + std::to_string(c + 1) + ":" + std::to_string(h + 1));
      }
      tr.pads.push_back(pad);
    }
  }
  out.instance.dim = tr.dim;
  return out;
}

weaver::Signing witness_signing(const FrameTrace& trace, const setsplit::Assignment& x) {
  if (x.size() != static_cast<int>(trace.vars.size()))
    throw ArgumentError("assignment length does not match the traced instance");
  x.validate();
  weaver::Signing s;
  s.signs.resize(static_cast<std::size_t>(trace.q_count) +
                 trace.pads.size() * static_cast<std::size_t>(trace.r_per_pad));
  for (const auto& rec : trace.vars)
    for (int h = 0; h < trace.frame_size; ++h) s.signs[static_cast<std::size_t>(rec.first_q + h)] = x(rec.var);
  for (const auto& pad : trace.pads)
    for (int h = 0; h < trace.r_per_pad; ++h)
      s.signs[static_cast<std::size_t>(pad.first_r + h)] = h == 0 ? x(pad.owner) : -x(pad.owner);
  return s;
}

std::vector<std::vector<int>> vectors_by_coordinate(const weaver::WeaverInstance& inst) {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(inst.dim));
  for (int k = 0; k < inst.size(); ++k)
    for (int c : inst.vectors[k].index) out[static_cast<std::size_t>(c)].push_back(k);
  return out;
}

}  // namespace wh
