#include "weaverhard/io.hpp"

#include <fstream>
#include <sstream>

#include "weaverhard/errors.hpp"

namespace wh::io {

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object()) throw ArgumentError("expected a JSON object");
  const auto it = j.find(name);
  if (it == j.end()) throw ArgumentError(std::string("missing field '") + name + "'");
  return *it;
}

std::vector<int> signs_from(const json& arr, const char* name) {
  if (!arr.is_array()) throw ArgumentError(std::string("field '") + name + "' must be an array");
  std::vector<int> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number_integer()) throw ArgumentError(std::string("field '") + name + "' must hold integers");
    const int s = v.get<int>();
    if (s != 1 && s != -1) throw ArgumentError(std::string("field '") + name + "' must hold +1/-1");
    out.push_back(s);
  }
  return out;
}

}  // namespace

bool needs_sparse(const weaver::WeaverInstance& inst) {
  return static_cast<long long>(inst.size()) * inst.dim > kDenseJsonLimit;
}

json to_json(const setsplit::SetSplitInstance& inst) {
  json sets = json::array();
  for (const auto& s : inst.sets) sets.push_back({s[0], s[1], s[2], s[3]});
  return {{"n_vars", inst.n_vars}, {"sets", sets}};
}

json to_json(const setsplit::Assignment& x) { return {{"values", x.values}}; }

json to_json(const weaver::WeaverInstance& inst, bool sparse) {
  json j{{"dim", inst.dim}, {"alpha", inst.alpha}, {"tags", inst.tags}};
  json vecs = json::array();
  if (sparse) {
    for (const auto& v : inst.vectors) vecs.push_back({{"index", v.index}, {"value", v.value}});
    j["sparse_vectors"] = std::move(vecs);
  } else {
    for (const auto& v : inst.vectors) vecs.push_back(v.to_dense(inst.dim));
    j["vectors"] = std::move(vecs);
  }
  return j;
}

json to_json(const weaver::Signing& s) { return {{"signs", s.signs}}; }

json to_json(const weaver::SolveResult& r) {
  return {{"best_value", r.best_value},
          {"best_signing", r.best_signing.signs},
          {"method", weaver::to_string(r.method)},
          {"explored", r.explored}};
}

json to_json(const weaver::AlphaReport& r) {
  return {{"ok", r.ok},
          {"norms_ok", r.norms_ok},
          {"identity_ok", r.identity_ok},
          {"alpha", r.alpha},
          {"tol", r.tol},
          {"max_sq_norm", r.max_sq_norm},
          {"max_sq_norm_vector", r.max_sq_norm_vector},
          {"max_identity_deviation", r.max_identity_deviation},
          {"deviation_entry", {r.deviation_row, r.deviation_col}}};
}

json to_json(const setsplit::Check322Report& r) {
  json j{{"ok", r.ok},
         {"occurrence_ok", r.occurrence_ok},
         {"intersection_ok", r.intersection_ok},
         {"max_occurrence", r.max_occurrence},
         {"max_intersection", r.max_intersection}};
  if (r.occurrence_witness) j["occurrence_witness"] = *r.occurrence_witness;
  if (r.intersection_witness)
    j["intersection_witness"] = {{"set_a", r.intersection_witness->set_a},
                                 {"set_b", r.intersection_witness->set_b},
                                 {"vars", r.intersection_witness->vars}};
  return j;
}

json to_json(const FrameTrace& t) {
  json vars = json::array();
  for (const auto& v : t.vars)
    vars.push_back({{"var", v.var}, {"set_coords", v.set_coords}, {"pad_coords", v.pad_coords},
                    {"first_q", v.first_q}});
  json pads = json::array();
  for (const auto& p : t.pads) pads.push_back({{"coord", p.coord}, {"owner", p.owner}, {"first_r", p.first_r}});
  return {{"frame_size", t.frame_size}, {"r_per_pad", t.r_per_pad}, {"m", t.m}, {"dim", t.dim},
          {"q_count", t.q_count}, {"indexing", "coordinates and vector positions are 0-based"},
          {"vars", vars}, {"pads", pads}};
}

json to_json(const reducegen::Stage2Plan& p) {
  json g = json::array();
  for (int r = 0; r < p.g.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < p.g.cols(); ++c) row.push_back(p.g(r, c));
    g.push_back(row);
  }
  return {{"k", p.k}, {"pairs", p.pairs}, {"rational_pi", p.rational_pi}, {"m1", p.m1}, {"m2", p.m2},
          {"a", p.a}, {"l", p.l}, {"conflict_max_degree", p.conflict_max_degree},
          {"classes", p.classes}, {"class_sizes", p.class_sizes}, {"class_pads", p.class_pads},
          {"groups", p.groups}, {"pad_coords", p.pad_coords}, {"stage1_vectors", p.stage1_vectors},
          {"indexing", "coordinates are 0-based"}, {"g", g}};
}

json to_json(const satreduce::PipelineResult& r) {
  json stats = json::array();
  for (const auto& s : r.stats)
    stats.push_back({{"stage", s.stage}, {"n_vars", s.n_vars}, {"items", s.items},
                     {"max_occurrence", s.max_occurrence}});
  json nae4{{"z", r.nae4.z}, {"w", r.nae4.w}};
  if (r.nae4.graph) {
    const auto& g = *r.nae4.graph;
    nae4["graph"] = {{"n_vertices", g.n_vertices}, {"offsets", {1, g.offset}}, {"edges", g.edges.size()},
                     {"lambda2", g.lambda2}, {"second_modulus", g.second_modulus}};
  }
  json gadgets = json::array();
  for (const auto& g : r.nae4.gadgets) gadgets.push_back({g.x, g.y, g.a, g.b, g.c});
  nae4["negation_gadgets"] = gadgets;

  json splits = json::array();
  for (const auto& s : r.nae3.splits) splits.push_back({{"clause", s.clause + 1}, {"y", s.y}});

  json partners = json::object();
  for (std::size_t v = 0; v < r.positive.partner.size(); ++v)
    if (r.positive.partner[v]) partners[std::to_string(v + 1)] = r.positive.partner[v];

  json copies = json::object();
  for (std::size_t v = 0; v < r.normalized.copy_map.vars.size(); ++v) {
    const auto& rec = r.normalized.copy_map.vars[v];
    if (rec.copies.size() < 2) continue;
    json gs = json::array();
    for (const auto& g : rec.gadgets) gs.push_back({{"a", g.a}, {"b", g.b}, {"c", g.c}});
    copies[std::to_string(v + 1)] = {{"copies", rec.copies}, {"gadgets", gs}};
  }
  return {{"stats", stats},
          {"nae4", nae4},
          {"nae3", {{"splits", splits}}},
          {"positive", {{"partners", partners}}},
          {"setsplit", {{"balance", r.split.balance}}},
          {"three_occurrence", {{"copies", copies}, {"substituted_sets", r.normalized.substituted_sets}}}};
}

setsplit::SetSplitInstance instance_from_json(const json& j) {
  setsplit::SetSplitInstance inst;
  const auto& n = field(j, "n_vars");
  if (!n.is_number_integer()) throw ArgumentError("field 'n_vars' must be an integer");
  inst.n_vars = n.get<int>();
  const auto& sets = field(j, "sets");
  if (!sets.is_array()) throw ArgumentError("field 'sets' must be an array");
  for (const auto& s : sets) {
    if (!s.is_array() || s.size() != 4) throw ArgumentError("every set must list exactly 4 variables");
    setsplit::Set4 t{};
    for (int a = 0; a < 4; ++a) {
      if (!s[a].is_number_integer()) throw ArgumentError("set members must be integers");
      t[a] = s[a].get<int>();
    }
    inst.sets.push_back(t);
  }
  inst.validate();
  return inst;
}

setsplit::Assignment assignment_from_json(const json& j) {
  return setsplit::Assignment{signs_from(field(j, "values"), "values")};
}

weaver::WeaverInstance weaver_from_json(const json& j) {
  weaver::WeaverInstance inst;
  const auto& dim = field(j, "dim");
  if (!dim.is_number_integer() || dim.get<int>() < 0) throw ArgumentError("field 'dim' must be a non-negative integer");
  inst.dim = dim.get<int>();
  const auto& alpha = field(j, "alpha");
  if (!alpha.is_number()) throw ArgumentError("field 'alpha' must be a number");
  inst.alpha = alpha.get<double>();
  if (j.contains("sparse_vectors")) {
    for (const auto& v : j["sparse_vectors"]) {
      const auto idx = field(v, "index").get<std::vector<int>>();
      const auto val = field(v, "value").get<std::vector<double>>();
      if (idx.size() != val.size()) throw ArgumentError("sparse vector index/value lengths differ");
      weaver::SparseVec sv;
      for (std::size_t t = 0; t < idx.size(); ++t) {
        if (t > 0 && idx[t] <= idx[t - 1]) throw ArgumentError("sparse vector indices must increase");
        if (val[t] != 0.0) sv.push(idx[t], val[t]);
      }
      inst.vectors.push_back(std::move(sv));
    }
  } else {
    const auto& vecs = field(j, "vectors");
    if (!vecs.is_array()) throw ArgumentError("field 'vectors' must be an array");
    for (const auto& v : vecs) {
      if (!v.is_array() || static_cast<int>(v.size()) != inst.dim)
        throw ArgumentError("every vector must have length dim = " + std::to_string(inst.dim));
      const auto dense = v.get<std::vector<double>>();
      inst.vectors.push_back(weaver::SparseVec::from_dense(dense));
    }
  }
  if (j.contains("tags")) {
    inst.tags = j["tags"].get<std::vector<std::string>>();
  } else {
    for (int t = 0; t < inst.size(); ++t) inst.tags.push_back("v:" + std::to_string(t + 1));
  }
  inst.validate_shape();
  return inst;
}

weaver::Signing signing_from_json(const json& j) { return weaver::Signing{signs_from(field(j, "signs"), "signs")}; }

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + p.string());
}

json read_json(const std::filesystem::path& p) {
  const auto text = read_text(p);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ArgumentError(p.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& p, const json& j) { write_text(p, j.dump(2) + "\n"); }

}  // namespace wh::io
