#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "weaverhard/frame_reduction.hpp"
#include "weaverhard/reducegen.hpp"
#include "weaverhard/satreduce.hpp"
#include "weaverhard/setsplit.hpp"
#include "weaverhard/weaver.hpp"

// JSON formats for every on-disk artifact.
//   instance:   {"n_vars": n, "sets": [[i,j,k,l], ...]}           1-based
//   assignment: {"values": [+-1, ...]}
//   weaver:     {"dim": d, "alpha": a, "vectors": [[...], ...], "tags": [...]}
//               or "sparse_vectors": [{"index": [...], "value": [...]}] with
//               0-based indices in place of "vectors".
//   signing:    {"signs": [+-1, ...]}
namespace wh::io {

using json = nlohmann::json;

// Dense vector lists above this many entries are written sparse instead.
inline constexpr long long kDenseJsonLimit = 1LL << 22;
bool needs_sparse(const weaver::WeaverInstance& inst);

json to_json(const setsplit::SetSplitInstance& inst);
json to_json(const setsplit::Assignment& x);
json to_json(const weaver::WeaverInstance& inst, bool sparse = false);
json to_json(const weaver::Signing& s);
json to_json(const weaver::SolveResult& r);
json to_json(const weaver::AlphaReport& r);
json to_json(const setsplit::Check322Report& r);
json to_json(const FrameTrace& t);
json to_json(const reducegen::Stage2Plan& p);
json to_json(const satreduce::PipelineResult& r);  // stage -> variable tables

// Parsers throw ArgumentError naming the missing or malformed field.
setsplit::SetSplitInstance instance_from_json(const json& j);
setsplit::Assignment assignment_from_json(const json& j);
weaver::WeaverInstance weaver_from_json(const json& j);
weaver::Signing signing_from_json(const json& j);

// File helpers; IO failures throw std::runtime_error with the path.
std::string read_text(const std::filesystem::path& p);
void write_text(const std::filesystem::path& p, const std::string& text);
json read_json(const std::filesystem::path& p);
void write_json(const std::filesystem::path& p, const json& j);

}  // namespace wh::io
