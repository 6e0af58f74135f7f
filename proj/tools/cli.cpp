#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>

#include "weaverhard/errors.hpp"
#include "weaverhard/generate.hpp"
#include "weaverhard/io.hpp"
#include "weaverhard/reduce4.hpp"
#include "weaverhard/reducegen.hpp"
#include "weaverhard/satreduce.hpp"
#include "weaverhard/setsplit.hpp"
#include "weaverhard/version.hpp"
#include "weaverhard/weaver.hpp"

namespace wh::cli {

namespace {

using io::json;
namespace fs = std::filesystem;

struct RunConfig {
  std::string command;
  std::string input;
  std::string output;
  int k = 2;
  std::string mode = "quarter";
  std::uint64_t seed = 1;
  std::int64_t budget = 2000;
  int cap = 30;
  int exact_cap = 26;
  double tol = 1e-9;
  std::string suite = "all";
  bool sparse_json = false;
  bool rational_pi = false;
  std::string trace;
  // gen
  std::string kind = "setsplit";
  int n = 12;
  int m = 6;
  int max_occ = 3;
  bool planted = false;

  json to_json() const {
    return {{"command", command}, {"input", input}, {"output", output}, {"k", k}, {"mode", mode},
            {"seed", seed}, {"budget", budget}, {"cap", cap}, {"exact_cap", exact_cap}, {"tol", tol},
            {"suite", suite}, {"sparse_json", sparse_json}, {"rational_pi", rational_pi}};
  }
};

// Usage-level failure (bad flag combination, unreadable input).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Report {
public:
  explicit Report(const RunConfig& cfg) : start_(std::chrono::steady_clock::now()) {
    doc_ = {{"tool", kToolName}, {"version", kVersion}, {"config", cfg.to_json()},
            {"checks", json::array()}, {"timings_ms", json::object()}};
  }

  // Failed checks must carry a witness.
  void check(const std::string& name, bool pass, json measured, json witness = nullptr) {
    json c{{"name", name}, {"pass", pass}, {"measured", std::move(measured)}};
    if (!pass) c["witness"] = witness.is_null() ? json{{"note", "no witness available"}} : std::move(witness);
    doc_["checks"].push_back(std::move(c));
    ok_ = ok_ && pass;
  }
  void note(const std::string& key, json value) { doc_[key] = std::move(value); }
  // Times fn and records it under name.
  template <class F>
  auto timed(const std::string& name, F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      record(name, t0);
    } else {
      auto r = fn();
      record(name, t0);
      return r;
    }
  }
  bool ok() const { return ok_; }
  json finish() {
    doc_["ok"] = ok_;
    record("total", start_);
    return doc_;
  }

private:
  void record(const std::string& name, std::chrono::steady_clock::time_point t0) {
    const auto dt = std::chrono::steady_clock::now() - t0;
    doc_["timings_ms"][name] = std::chrono::duration<double, std::milli>(dt).count();
  }

  json doc_;
  bool ok_ = true;
  std::chrono::steady_clock::time_point start_;
};

// Dense unless asked otherwise or too large to write densely.
json weaver_json(const weaver::WeaverInstance& inst, bool sparse_flag, Report* rep, const std::string& name) {
  const bool sparse = sparse_flag || io::needs_sparse(inst);
  if (sparse && !sparse_flag && rep)
    rep->note("format_" + name, "sparse: " + std::to_string(inst.size()) + " x " + std::to_string(inst.dim) +
                                   " exceeds the dense JSON limit");
  return io::to_json(inst, sparse);
}

void emit(const json& doc, const std::string& path, std::ostream& out) {
  if (path.empty())
    out << doc.dump(2) << "\n";
  else
    io::write_json(path, doc);
}

std::string require_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw UsageError("--input is required for '" + cfg.command + "'");
  if (!fs::exists(cfg.input)) throw UsageError("input file not found: " + cfg.input);
  return cfg.input;
}

bool looks_like_dimacs(const std::string& path, const std::string& text) {
  if (fs::path(path).extension() == ".cnf") return true;
  const auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string::npos && (text[first] == 'p' || text[first] == 'c');
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  if (cfg.kind == "setsplit") {
    gen::SetSplitGenOptions o;
    o.n_vars = cfg.n;
    o.n_sets = cfg.m;
    o.max_occurrence = cfg.max_occ;
    o.planted = cfg.planted;
    o.seed = cfg.seed;
    const auto inst = gen::random_setsplit(o);
    emit(io::to_json(inst), cfg.output, out);
  } else if (cfg.kind == "e3") {
    gen::E3GenOptions o;
    o.n_vars = cfg.n;
    o.n_clauses = cfg.m;
    o.planted = cfg.planted;
    o.max_occurrence = cfg.max_occ > 3 ? cfg.max_occ : 0;
    o.seed = cfg.seed;
    const auto text = satreduce::to_dimacs(gen::random_e3(o));
    if (cfg.output.empty())
      out << text;
    else
      io::write_text(cfg.output, text);
  } else {
    throw UsageError("--kind must be 'setsplit' or 'e3'");
  }
  return kExitOk;
}

void require_general_k(const RunConfig& cfg) {
  if (cfg.mode == "general" && cfg.k < 2) throw UsageError("--k must be at least 2 in general mode");
  if (cfg.mode != "general" && cfg.mode != "quarter") throw UsageError("--mode must be 'quarter' or 'general'");
}

int cmd_reduce(const RunConfig& cfg, std::ostream& out) {
  require_general_k(cfg);
  const auto inst = io::instance_from_json(io::read_json(require_input(cfg)));
  weaver::WeaverInstance result;
  json trace;
  if (cfg.mode == "quarter") {
    auto red = reduce4::reduce_quarter(inst);
    trace = {{"stage1", io::to_json(red.trace)}};
    result = std::move(red.instance);
  } else {
    auto s1 = reducegen::reduce_stage1(inst);
    auto s2 = reducegen::reduce_stage2(s1.instance, cfg.k, cfg.rational_pi);
    trace = {{"stage1", io::to_json(s1.trace)}, {"stage2", io::to_json(s2.plan)}};
    result = std::move(s2.instance);
  }
  emit(weaver_json(result, cfg.sparse_json, nullptr, "weaver"), cfg.output, out);
  if (!cfg.trace.empty()) io::write_json(cfg.trace, trace);
  return kExitOk;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const auto inst = io::weaver_from_json(io::read_json(require_input(cfg)));
  weaver::SolveResult r;
  if (inst.size() <= cfg.exact_cap) {
    r = weaver::exact_w(inst, cfg.exact_cap);
  } else {
    weaver::HeuristicOptions ho;
    ho.budget = cfg.budget;
    ho.seed = cfg.seed;
    r = weaver::heuristic_w(inst, ho);
  }
  json doc = io::to_json(r);
  doc["tool"] = kToolName;
  doc["version"] = kVersion;
  doc["config"] = cfg.to_json();
  emit(doc, cfg.output, out);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  static const std::vector<std::string> kSuites = {"all", "q1", "q4", "g", "gadget", "alpha"};
  if (std::find(kSuites.begin(), kSuites.end(), cfg.suite) == kSuites.end())
    throw UsageError("--suite must be one of all, q1, q4, g, gadget, alpha");
  const bool all = cfg.suite == "all";
  Report rep(cfg);
  rep.note("command", "verify");

  if (all || cfg.suite == "q1") {
    const auto r = rep.timed("q1", [&] { return reduce4::verify_lemma_q1(1000, cfg.seed); });
    rep.check("lemma_q1", r.ok,
              {{"min_norm", r.min_norm}, {"max_trace_deviation", r.max_trace_deviation},
               {"y_eigenvalues", {r.y_eigenvalues(0), r.y_eigenvalues(1), r.y_eigenvalues(2)}},
               {"y_abs_eigen_sum", r.y_abs_eigen_sum}, {"reflections_ok", r.reflections_ok}},
              {{"z", r.min_z}, {"x", {r.min_x(0), r.min_x(1), r.min_x(2)}}});
  }
  if (all || cfg.suite == "q4") {
    const auto r = rep.timed("q4", [] { return reducegen::verify_lemma_q4(); });
    std::ostringstream exact;
    exact << r.min_exact;
    rep.check("lemma_q4", r.ok, {{"cases", r.cases}, {"min_exact", exact.str()}, {"min_float", r.min_float}},
              {{"z", r.min_z}, {"w", r.min_w}, {"coordinate", r.min_j}});
  }
  if (all || cfg.suite == "g") {
    for (int k = 2; k <= 8; ++k) {
      const auto r = rep.timed("g_k" + std::to_string(k),
                               [&] { return reducegen::verify_g_lower_bound(k, 1000, cfg.seed); });
      rep.check("g_lower_bound_k" + std::to_string(k), r.ok,
                {{"gg_deviation", r.gg_deviation}, {"column_norm_deviation", r.column_norm_deviation},
                 {"bb_deviation", r.bb_deviation}, {"min_slack", r.min_slack},
                 {"min_frob_ratio", r.min_frob_ratio}},
                {{"diagonal", r.witness}});
    }
  }
  if (all || cfg.suite == "gadget") {
    rep.timed("gadget", [&] {
      // Exhaustive over a, b, c, y1..y12 on the gadget for variables 1 and 2.
      const auto g = setsplit::equality_gadget(1, 2, 3);
      setsplit::SetSplitInstance inst{15, {g.sets.begin(), g.sets.end()}};
      bool sound = true, eq_plus = false, eq_minus = false;
      std::vector<int> bad;
      setsplit::Assignment x = setsplit::Assignment::constant(15, 1);
      for (int mask = 0; mask < (1 << 15); ++mask) {
        for (int v = 0; v < 15; ++v) x.values[v] = ((mask >> v) & 1) ? -1 : 1;
        if (setsplit::unsatisfied_count(inst, x) != 0) continue;
        if (x(1) != x(2)) {
          sound = false;
          if (bad.empty()) bad = x.values;
        }
        (x(1) == 1 ? eq_plus : eq_minus) = true;
      }
      rep.check("equality_gadget", sound && eq_plus && eq_minus,
                {{"assignments", 1 << 15}, {"sound", sound}, {"plus_completable", eq_plus},
                 {"minus_completable", eq_minus}},
                {{"assignment", bad}});
    });
  }
  if (cfg.suite == "alpha" || (all && !cfg.input.empty())) {
    const auto inst = io::weaver_from_json(io::read_json(require_input(cfg)));
    const auto r = rep.timed("alpha", [&] { return weaver::check_alpha_weaver(inst, cfg.tol); });
    rep.check("alpha_weaver", r.ok, io::to_json(r),
              {{"max_identity_deviation", r.max_identity_deviation},
               {"entry", {r.deviation_row, r.deviation_col}},
               {"max_sq_norm_vector", r.max_sq_norm_vector},
               {"max_sq_norm", r.max_sq_norm}});
  }
  const bool ok = rep.ok();
  emit(rep.finish(), cfg.output, out);
  return ok ? kExitOk : kExitCheckFailed;
}

json quarter_report_json(const reduce4::GapQuarterReport& r) {
  json j{{"method", r.method}, {"satisfiable", r.satisfiable}, {"vectors", r.vectors}, {"dim", r.dim},
         {"certified_lower", r.certified_lower}};
  if (r.satisfiable) j["witness_norm_upper"] = r.witness_norm_upper;
  if (r.exact_w) j["exact_w"] = *r.exact_w;
  if (r.heuristic_upper) j["heuristic_upper"] = *r.heuristic_upper;
  if (r.dichotomy) {
    const auto& d = *r.dichotomy;
    j["dichotomy"] = {{"constant_case_ok", d.constant_case_ok}, {"nonconstant_case_ok", d.nonconstant_case_ok},
                      {"locality_ok", d.locality_ok}, {"min_local_norm", d.min_local_norm},
                      {"min_local_var", d.min_local_var}, {"local_cases", d.local_cases}};
  }
  return j;
}

json general_report_json(const reducegen::GapGeneralReport& r) {
  json j{{"method", r.method}, {"k", r.k}, {"satisfiable", r.satisfiable}, {"vectors", r.vectors},
         {"dim", r.dim}};
  if (r.satisfiable) {
    j["witness_norm_upper"] = r.witness_norm_upper;
  } else {
    j["gamma"] = r.gamma;
    j["phi"] = r.phi;
    j["kappa"] = r.kappa;
    j["kappa_over_sqrt_k"] = r.kappa_over_sqrt_k;
    j["lower_bound"] = r.lower_bound;
  }
  if (r.exact_w) j["exact_w"] = *r.exact_w;
  if (r.heuristic_upper) j["heuristic_upper"] = *r.heuristic_upper;
  return j;
}

void certify_into(Report& rep, const RunConfig& cfg, const setsplit::SetSplitInstance& inst) {
  if (cfg.mode == "quarter") {
    reduce4::CertifyOptions o;
    o.brute_force_cap = cfg.cap;
    o.exact_cap = cfg.exact_cap;
    o.budget = cfg.budget;
    o.seed = cfg.seed;
    const auto r = rep.timed("certify", [&] { return reduce4::certify_gap_quarter(inst, o); });
    json witness;
    if (r.witness) witness = {{"assignment", r.witness->values}};
    else if (r.dichotomy) witness = {{"min_local_var", r.dichotomy->min_local_var}, {"min_local_norm", r.dichotomy->min_local_norm}};
    rep.check(r.satisfiable ? "zero_branch" : "gap_branch_quarter", r.ok, quarter_report_json(r), witness);
  } else {
    reducegen::GapGeneralOptions o;
    o.brute_force_cap = cfg.cap;
    o.exact_cap = cfg.exact_cap;
    o.budget = cfg.budget;
    o.seed = cfg.seed;
    o.rational_pi = cfg.rational_pi;
    const auto r = rep.timed("certify", [&] { return reducegen::certify_gap_general(inst, cfg.k, o); });
    json witness;
    if (r.witness) witness = {{"assignment", r.witness->values}};
    else witness = {{"phi", r.phi}, {"lower_bound", r.lower_bound}};
    rep.check(r.satisfiable ? "zero_branch" : "gap_branch_general", r.ok, general_report_json(r), witness);
  }
}

int cmd_certify(const RunConfig& cfg, std::ostream& out) {
  require_general_k(cfg);
  const auto inst = io::instance_from_json(io::read_json(require_input(cfg)));
  Report rep(cfg);
  rep.note("command", "certify");
  const auto chk = setsplit::check_322(inst);
  rep.check("input_322", chk.ok, io::to_json(chk), io::to_json(chk));
  if (chk.ok) certify_into(rep, cfg, inst);
  const bool ok = rep.ok();
  emit(rep.finish(), cfg.output, out);
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_pipeline(const RunConfig& cfg, std::ostream& out) {
  require_general_k(cfg);
  const std::string path = require_input(cfg);
  if (cfg.output.empty()) throw UsageError("pipeline needs --output <directory>");
  const fs::path dir(cfg.output);
  fs::create_directories(dir);
  Report rep(cfg);
  rep.note("command", "pipeline");

  const std::string text = io::read_text(path);
  setsplit::SetSplitInstance normalized;
  // Lifts a source witness to the normalized instance; empty when the source
  // is unsatisfiable, nullopt when the source exceeds the cap.
  std::optional<std::optional<setsplit::Assignment>> lifted;

  if (looks_like_dimacs(path, text)) {
    satreduce::CnfFormula f;
    try {
      f = satreduce::parse_dimacs(text);
    } catch (const ParseError& e) {
      throw UsageError(std::string("parse_dimacs: ") + e.what());
    }
    if (!f.e3_valid) throw UsageError("satreduce: input is not E3: " + f.e3_errors.front());
    const auto p = rep.timed("satreduce", [&] { return satreduce::full_pipeline(f); });
    io::write_json(dir / "pipeline_trace.json", io::to_json(p));
    json stats = json::array();
    for (const auto& s : p.stats) stats.push_back({{"stage", s.stage}, {"n_vars", s.n_vars}, {"items", s.items}, {"max_occurrence", s.max_occurrence}});
    rep.note("satreduce", stats);
    normalized = p.instance();
    if (f.n_vars <= cfg.cap) {
      const auto x = rep.timed("source_brute_force", [&] { return satreduce::brute_force_cnf(f, cfg.cap); });
      lifted = x ? std::optional(satreduce::lift_pipeline(p, *x)) : std::nullopt;
    }
  } else {
    const auto inst = io::instance_from_json(json::parse(text));
    if (setsplit::check_322(inst).ok) {
      rep.note("normalization", "skipped: input is already (3,2-2)");
      normalized = inst;
      if (inst.n_vars <= cfg.cap) {
        setsplit::SearchOptions so;
        so.cap = cfg.cap;
        lifted = setsplit::brute_force_satisfiable(inst, so);
      }
    } else {
      const auto t = rep.timed("to_three_occurrence", [&] { return setsplit::to_three_occurrence(inst); });
      normalized = t.instance;
      if (inst.n_vars <= cfg.cap) {
        setsplit::SearchOptions so;
        so.cap = cfg.cap;
        const auto x = setsplit::brute_force_satisfiable(inst, so);
        lifted = x ? std::optional(setsplit::lift_assignment(t, *x)) : std::nullopt;
      }
    }
  }
  io::write_json(dir / "setsplit.json", io::to_json(normalized));
  const auto chk = setsplit::check_322(normalized);
  rep.check("normalized_322", chk.ok, io::to_json(chk), io::to_json(chk));
  if (!chk.ok) {
    const bool ok = rep.ok();
    io::write_json(dir / "report.json", rep.finish());
    return ok ? kExitOk : kExitCheckFailed;
  }

  weaver::WeaverInstance final_inst;
  std::function<weaver::Signing(const setsplit::Assignment&)> to_signing;
  json trace;
  std::optional<reduce4::QuarterReduction> quarter;
  std::optional<reducegen::Stage1Reduction> s1;
  std::optional<reducegen::Stage2Reduction> s2;
  if (cfg.mode == "quarter") {
    quarter = rep.timed("reduce_quarter", [&] { return reduce4::reduce_quarter(normalized); });
    final_inst = quarter->instance;
    trace = {{"stage1", io::to_json(quarter->trace)}};
    to_signing = [&](const setsplit::Assignment& x) { return reduce4::witness_signing_quarter(quarter->trace, x); };
  } else {
    s1 = rep.timed("reduce_stage1", [&] { return reducegen::reduce_stage1(normalized); });
    io::write_json(dir / "stage1.json", weaver_json(s1->instance, cfg.sparse_json, &rep, "stage1"));
    s2 = rep.timed("reduce_stage2", [&] { return reducegen::reduce_stage2(s1->instance, cfg.k, cfg.rational_pi); });
    final_inst = s2->instance;
    trace = {{"stage1", io::to_json(s1->trace)}, {"stage2", io::to_json(s2->plan)}};
    to_signing = [&](const setsplit::Assignment& x) {
      return reducegen::witness_signing_stage2(s2->plan, reducegen::witness_signing_stage1(s1->trace, x));
    };
  }
  io::write_json(dir / "weaver.json", weaver_json(final_inst, cfg.sparse_json, &rep, "weaver"));
  io::write_json(dir / "trace.json", trace);

  const double alpha = final_inst.alpha;
  const auto ar = rep.timed("alpha_check", [&] { return weaver::check_alpha_weaver(final_inst, cfg.tol); });
  rep.check("alpha_weaver", ar.ok, io::to_json(ar),
            {{"entry", {ar.deviation_row, ar.deviation_col}}, {"max_sq_norm_vector", ar.max_sq_norm_vector}});
  rep.note("weaver", {{"vectors", final_inst.size()}, {"dim", final_inst.dim}, {"alpha", alpha}});

  if (!lifted) {
    rep.note("certification", "skipped: source has more variables than --cap");
  } else if (*lifted) {
    const auto sign = to_signing(**lifted);
    io::write_json(dir / "signing.json", io::to_json(sign));
    const double fro = weaver::frobenius_norm(weaver::signed_sum_sparse(final_inst, sign));
    rep.check("zero_branch", fro <= 1e-9,
              {{"witness_norm_upper", fro}, {"w_certified", 0.0}},
              {{"witness_norm_upper", fro}});
  } else if (normalized.n_vars <= cfg.cap) {
    certify_into(rep, cfg, normalized);
  } else {
    rep.note("certification", "source is unsatisfiable; the normalized instance has " +
                                  std::to_string(normalized.n_vars) +
                                  " variables, above --cap, so the gap is not certified at this scale");
  }
  const bool ok = rep.ok();
  const json doc = rep.finish();
  io::write_json(dir / "report.json", doc);
  out << doc.dump(2) << "\n";
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weaver discrepancy hardness toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool with_k) {
    sub->add_option("--input", cfg.input, "input file");
    sub->add_option("--output", cfg.output, "output file (directory for pipeline)");
    sub->add_option("--seed", cfg.seed, "random seed");
    if (with_k) {
      sub->add_option("--k", cfg.k, "k for general mode (alpha = 1/(2k))")->check(CLI::Range(2, 1 << 12));
      sub->add_option("--mode", cfg.mode, "quarter | general")->check(CLI::IsMember({"quarter", "general"}));
      sub->add_flag("--rational-pi", cfg.rational_pi, "rational Pi (k must be a perfect square)");
    }
  };

  auto* gen = app.add_subcommand("gen", "generate a random instance");
  common(gen, false);
  gen->add_option("--kind", cfg.kind, "setsplit | e3")->check(CLI::IsMember({"setsplit", "e3"}));
  gen->add_option("--n", cfg.n, "variables")->check(CLI::Range(4, 1 << 20));
  gen->add_option("--m", cfg.m, "sets or clauses")->check(CLI::Range(0, 1 << 22));
  gen->add_option("--max-occ", cfg.max_occ, "occurrence bound (0 = none)")->check(CLI::NonNegativeNumber);
  gen->add_flag("--planted", cfg.planted, "plant a satisfying assignment");

  auto* reduce = app.add_subcommand("reduce", "reduce a (3,2-2) instance to a Weaver instance");
  common(reduce, true);
  reduce->add_flag("--sparse-json", cfg.sparse_json, "write sparse vectors");
  reduce->add_option("--trace", cfg.trace, "write the reduction trace here");

  auto* solve = app.add_subcommand("solve", "compute W exactly or bound it heuristically");
  common(solve, false);
  solve->add_option("--cap", cfg.exact_cap, "exact search up to this many vectors")->check(CLI::Range(1, 40));
  solve->add_option("--budget", cfg.budget, "heuristic evaluations")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "run the lemma suites");
  common(verify, false);
  verify->add_option("--suite", cfg.suite, "all | q1 | q4 | g | gadget | alpha");
  verify->add_option("--tol", cfg.tol, "tolerance for the alpha-Weaver check")->check(CLI::PositiveNumber);

  auto* pipeline = app.add_subcommand("pipeline", "run DIMACS or set-splitting input end to end");
  common(pipeline, true);
  pipeline->add_option("--cap", cfg.cap, "brute-force variable cap")->check(CLI::Range(1, 40));
  pipeline->add_option("--exact-cap", cfg.exact_cap, "exact W vector cap")->check(CLI::Range(1, 40));
  pipeline->add_option("--budget", cfg.budget, "heuristic evaluations")->check(CLI::NonNegativeNumber);
  pipeline->add_option("--tol", cfg.tol, "tolerance for the alpha-Weaver check")->check(CLI::PositiveNumber);
  pipeline->add_flag("--sparse-json", cfg.sparse_json, "write sparse vectors");

  auto* certify = app.add_subcommand("certify", "certify the zero-or-gap dichotomy for a (3,2-2) instance");
  common(certify, true);
  certify->add_option("--cap", cfg.cap, "brute-force variable cap")->check(CLI::Range(1, 40));
  certify->add_option("--exact-cap", cfg.exact_cap, "exact W vector cap")->check(CLI::Range(1, 40));
  certify->add_option("--budget", cfg.budget, "heuristic evaluations")->check(CLI::NonNegativeNumber);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  try {
    if (cfg.command == "gen") return cmd_gen(cfg, out);
    if (cfg.command == "reduce") return cmd_reduce(cfg, out);
    if (cfg.command == "solve") return cmd_solve(cfg, out);
    if (cfg.command == "verify") return cmd_verify(cfg, out);
    if (cfg.command == "pipeline") return cmd_pipeline(cfg, out);
    if (cfg.command == "certify") return cmd_certify(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const io::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: unknown command\n";
  return kExitUsage;
}

}  // namespace wh::cli
