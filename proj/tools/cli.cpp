#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "nqc/acceptance.hpp"
#include "nqc/error.hpp"
#include "nqc/exponents.hpp"
#include "nqc/generators.hpp"
#include "nqc/json_io.hpp"
#include "nqc/laser.hpp"
#include "nqc/lower_bounds.hpp"
#include "nqc/protocol.hpp"

namespace nqc::cli {

namespace {

constexpr double kRealTol = 1e-12;

// Per-invocation state. Option values live in heap slots so that callbacks
// can capture plain pointers; files read feed the inputs digest.
struct Context {
  std::vector<std::string> args;
  std::string digest_material;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
  std::function<int()> action;
  std::vector<std::shared_ptr<void>> slots;

  template <class T>
  T* slot(T init = T()) {
    auto p = std::make_shared<T>(std::move(init));
    slots.push_back(p);
    return p.get();
  }

  Json read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    digest_material += path + '\0' + buf.str() + '\0';
    return parse_json_text(buf.str(), path);
  }

  int emit(const std::string& command, Json result, bool ok, const char* ok_verdict = "verified") {
    std::string material;
    for (const auto& a : args) material += a + '\0';
    Json report{{"command", command},
                {"inputs_digest", fnv1a_hex(material + digest_material)},
                {"result", std::move(result)},
                {"verdict", ok ? ok_verdict : "falsified"}};
    *out << report.dump(2) << "\n";
    return ok ? kOk : kFalsified;
  }

  int emit_raw(const Json& j) {
    *out << j.dump(2) << "\n";
    return kOk;
  }
};

std::size_t env_cap(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(v, &end, 10);
  if (*end != '\0' || parsed == 0) throw ArgumentError(std::string(name) + " must be a positive integer");
  return static_cast<std::size_t>(parsed);
}

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw ArgumentError("expected a comma-separated list of nonnegative integers, got \"" + text + "\"");
    }
    out.push_back(std::stoull(item));
  }
  if (out.empty()) throw ArgumentError("empty list");
  return out;
}

VerifyMode parse_mode(const std::string& mode) {
  if (mode == "exact") return VerifyMode::kExact;
  if (mode == "support") return VerifyMode::kSupport;
  throw ArgumentError("mode must be exact or support");
}

Json verdict_json(const Verdict& v) {
  Json j{{"pass", v.pass}, {"r", v.r}, {"detail", v.detail}};
  j["first_violation"] = v.first_violation ? Json(*v.first_violation) : Json(nullptr);
  return j;
}

Json real(double x) { return Json{{"value", x}, {"tol", kRealTol}}; }

// Registers a leaf subcommand whose action runs after parsing succeeds.
CLI::App* leaf(CLI::App* parent, Context* ctx, const std::string& name, const std::string& help,
               std::function<int()> body) {
  auto* sub = parent->add_subcommand(name, help);
  sub->callback([ctx, body] { ctx->action = body; });
  return sub;
}

// ---------------------------------------------------------------------------

void add_gen(CLI::App& app, Context* ctx) {
  auto* gen = app.add_subcommand("gen", "Generate a tensor, certificate or function table as JSON");
  gen->require_subcommand(1);

  auto* dims = ctx->slot<std::string>();
  leaf(gen, ctx, "mamu", "<n_1,...,n_k>", [=] { return ctx->emit_raw(tensor_to_json(gen_mamu(parse_list(*dims)))); })
      ->add_option("--dims", *dims, "comma-separated n_1,...,n_k")
      ->required();

  auto* m = ctx->slot<std::size_t>(2);
  auto* k = ctx->slot<std::size_t>(3);
  auto* r = ctx->slot<std::size_t>(2);
  auto* n = ctx->slot<std::size_t>(1);
  auto* q = ctx->slot<std::size_t>(2);

  auto* imm = leaf(gen, ctx, "imm", "IMM_m^k", [=] { return ctx->emit_raw(tensor_to_json(gen_imm(*m, *k))); });
  imm->add_option("--m", *m)->required();
  imm->add_option("--k", *k)->required();

  auto* ghz = leaf(gen, ctx, "ghz", "GHZ_r^k", [=] { return ctx->emit_raw(tensor_to_json(gen_ghz(*r, *k))); });
  ghz->add_option("--r", *r)->required();
  ghz->add_option("--k", *k)->required();

  auto* graph_path = ctx->slot<std::string>();
  auto* cycle = ctx->slot<std::size_t>(0);
  auto* eq = leaf(gen, ctx, "eq-graph", "graphwise equality tensor", [=] {
    if (graph_path->empty() == (*cycle == 0)) throw ArgumentError("give exactly one of --graph and --cycle");
    const Multigraph g = *cycle ? Multigraph::cycle(*cycle) : graph_from_json(ctx->read(*graph_path));
    return ctx->emit_raw(tensor_to_json(gen_eq_graph(g, *n)));
  });
  eq->add_option("--graph", *graph_path, "graph JSON file");
  eq->add_option("--cycle", *cycle, "use the k-cycle instead of a graph file");
  eq->add_option("--n", *n)->required();

  auto* eqf = leaf(gen, ctx, "eq-cycle-function", "function table of equality on the k-cycle",
                   [=] { return ctx->emit_raw(function_table_to_json(eq_cycle_function(*k, *n))); });
  eqf->add_option("--k", *k)->required();
  eqf->add_option("--n", *n)->required();

  auto* str = leaf(gen, ctx, "str", "Str_q^k", [=] { return ctx->emit_raw(tensor_to_json(gen_str(*q, *k))); });
  str->add_option("--q", *q)->required();
  str->add_option("--k", *k)->required();

  auto* border = leaf(gen, ctx, "str-border", "(q+1)-term border certificate for Str_q^k",
                      [=] { return ctx->emit_raw(certificate_to_json(gen_str_border(*q, *k))); });
  border->add_option("--q", *q)->required();
  border->add_option("--k", *k)->required();

  leaf(gen, ctx, "strassen7", "rank-7 certificate for <2,2,2>",
       [=] { return ctx->emit_raw(certificate_to_json(gen_strassen7())); });
  leaf(gen, ctx, "imm25-31", "31-term certificate for IMM_2^5",
       [=] { return ctx->emit_raw(certificate_to_json(gen_imm25_31())); });

  auto* tensor_path = ctx->slot<std::string>();
  leaf(gen, ctx, "cyclic-shift-product", "tensor product of all cyclic shifts of a tensor", [=] {
    return ctx->emit_raw(tensor_to_json(cyclic_shift_product(tensor_from_json(ctx->read(*tensor_path)))));
  })->add_option("--tensor", *tensor_path)->required();
}

void add_verify(CLI::App& app, Context* ctx) {
  auto* cert_path = ctx->slot<std::string>();
  auto* target_path = ctx->slot<std::string>();
  auto* mode = ctx->slot<std::string>("exact");
  auto* cmd = leaf(&app, ctx, "verify-cert", "Verify a rank or border certificate against a target tensor", [=] {
    const VerifyMode vm = parse_mode(*mode);
    const AnyCertificate cert = certificate_from_json(ctx->read(*cert_path));
    const Tensor target = tensor_from_json(ctx->read(*target_path));
    Json result;
    Verdict v;
    if (const auto* rc = std::get_if<RankCertificate>(&cert)) {
      v = verify_rank_cert(*rc, target, vm);
      result = {{"kind", "rank"}, {"mode", *mode}};
    } else {
      const auto& bc = std::get<BorderCertificate>(cert);
      v = verify_border_cert(bc, target);
      result = {{"kind", "border"}, {"h", bc.h}};
    }
    result.update(verdict_json(v));
    return ctx->emit("verify-cert", result, v.pass);
  });
  cmd->add_option("--cert", *cert_path)->required();
  cmd->add_option("--target", *target_path)->required();
  cmd->add_option("--mode", *mode, "exact or support (rank certificates only)");
}

void add_bound(CLI::App& app, Context* ctx) {
  auto* bound = app.add_subcommand("bound", "Lower bounds");
  bound->require_subcommand(1);

  auto* tensor_path = ctx->slot<std::string>();
  auto* parts = ctx->slot<std::vector<std::string>>();
  auto* flat = leaf(bound, ctx, "flatten", "max flattening rank over bipartitions", [=] {
    std::optional<std::vector<std::vector<std::size_t>>> chosen;
    if (!parts->empty()) {
      chosen.emplace();
      for (const auto& p : *parts) chosen->push_back(parse_list(p));
    }
    const auto r = flattening_bound(tensor_from_json(ctx->read(*tensor_path)), chosen);
    Json ranks = Json::array();
    for (const auto& [s, rank] : r.ranks) ranks.push_back(Json{{"parts", s}, {"rank", rank}});
    return ctx->emit("bound flatten", Json{{"bound", r.bound}, {"best_parts", r.best_parts}, {"ranks", ranks}}, true,
                     "computed");
  });
  flat->add_option("--tensor", *tensor_path)->required();
  flat->add_option("--parts", *parts, "row parties, e.g. 0,2,4 (repeatable); default: every bipartition");

  auto* n = ctx->slot<std::size_t>(1);
  auto* k = ctx->slot<std::size_t>(3);
  auto* alphas_path = ctx->slot<std::string>();
  auto* young = leaf(bound, ctx, "young", "Young flattening of the weighted IMM_n^3", [=] {
    const AlphaTable alphas =
        alphas_path->empty() ? AlphaTable::ones(*n) : alpha_table_from_json(ctx->read(*alphas_path));
    if (alphas.n != *n) throw ArgumentError("alpha table n differs from --n");
    YoungOptions opts;
    opts.max_n = env_cap("NQC_YOUNG_MAX_N", opts.max_n);
    const auto r = young_flattening_imm3(alphas, opts);
    return ctx->emit("bound young",
                     Json{{"rank", r.matrix_rank},
                          {"e", r.e},
                          {"bound", r.bound},
                          {"n", r.n},
                          {"p", r.p},
                          {"block_size", r.block_size},
                          {"block_ranks", r.block_ranks},
                          {"formula", young_bound_formula(*n, 3)}},
                     true, "computed");
  });
  young->add_option("--n", *n)->required();
  young->add_option("--alphas", *alphas_path, "alpha table JSON; default all ones");

  auto* classical = leaf(bound, ctx, "classical", "fooling-set bound k*n", [=] {
    return ctx->emit("bound classical", Json{{"bound", classical_bound(*k, *n)}}, true, "computed");
  });
  classical->add_option("--k", *k)->required();
  classical->add_option("--n", *n)->required();

  auto* graph_path = ctx->slot<std::string>();
  auto* mincut = leaf(bound, ctx, "mincut", "min-cut condition for a communication graph", [=] {
    const auto r = mincut_message_bound(graph_from_json(ctx->read(*graph_path)), *n);
    return ctx->emit("bound mincut",
                     Json{{"mincut", r.mincut},
                          {"feasible", r.feasible},
                          {"edge_lower_bound", r.edge_lower_bound},
                          {"edge_count", r.edge_count},
                          {"min_degree", r.min_degree},
                          {"connected", r.connected}},
                     true, "computed");
  });
  mincut->add_option("--graph", *graph_path)->required();
  mincut->add_option("--n", *n)->required();

  auto* nq = ctx->slot<double>(0);
  auto* logrank = leaf(bound, ctx, "logrank", "envelope for the zero-error complexity", [=] {
    const auto e = logrank_envelope(*k, *nq);
    return ctx->emit("bound logrank",
                     Json{{"nq0_lower", real(e.nq0_lower)},
                          {"nq0_upper", real(e.nq0_upper)},
                          {"nq0_asymptotic", real(e.nq0_asymptotic)},
                          {"caveat", e.caveat}},
                     true, "computed");
  });
  logrank->add_option("--k", *k)->required();
  logrank->add_option("--nq", *nq)->required();
}

void add_omega(CLI::App& app, Context* ctx) {
  auto* omega = app.add_subcommand("omega", "Exponent bounds");
  omega->require_subcommand(1);

  auto* blocks_path = ctx->slot<std::string>();
  auto* tol = ctx->slot<double>(1e-12);
  auto* k = ctx->slot<std::size_t>(0);
  auto* tau = leaf(omega, ctx, "tau", "solve sum_i N_i^tau = r", [=] {
    const BlockSpec spec = block_spec_from_json(ctx->read(*blocks_path));
    const double t = solve_tau(spec, *tol);
    const std::size_t parties = *k != 0 ? *k : spec.blocks.front().size();
    return ctx->emit("omega tau",
                     Json{{"tau", t},
                          {"bound", omega_from_tau(parties, t)},
                          {"k", parties},
                          {"tol", *tol},
                          {"note", "asymptotic bound k * tau"}},
                     true, "computed");
  });
  tau->add_option("--blocks", *blocks_path)->required();
  tau->add_option("--k", *k, "party count for omega = k tau; default: block length");
  tau->add_option("--tol", *tol);

  auto* qmax = ctx->slot<std::uint64_t>(10000);
  auto* divisor = ctx->slot<unsigned>(2);
  auto* laser = leaf(omega, ctx, "laser", "best log_q((q+1)^k / div) over q <= qmax", [=] {
    const auto b = best_laser_bound(*k, *qmax, *divisor);
    Json result{{"q", b.q_star}, {"bound", b.bound}, {"tol", kRealTol}, {"below_k", b.below_k},
                {"k", *k},       {"qmax", *qmax},    {"div", *divisor}};
    if (*divisor == 4) result["note"] = "divisor 4 relies on an externally cited asymptotic subrank value";
    return ctx->emit("omega laser", result, true, "computed");
  });
  laser->add_option("--k", *k)->required();
  laser->add_option("--qmax", *qmax);
  laser->add_option("--div", *divisor)->check(CLI::IsMember({2U, 4U}));

  auto* dims = ctx->slot<std::string>();
  auto* r = ctx->slot<std::uint64_t>(1);
  auto* unbalanced = leaf(omega, ctx, "unbalanced", "k log_{prod dims} r", [=] {
    std::vector<std::uint64_t> d;
    for (auto x : parse_list(*dims)) d.push_back(x);
    return ctx->emit("omega unbalanced", Json{{"bound", omega_unbalanced(d, *r)}, {"tol", kRealTol}}, true,
                     "computed");
  });
  unbalanced->add_option("--dims", *dims)->required();
  unbalanced->add_option("--r", *r)->required();

  auto* ws = ctx->slot<double>(2);
  leaf(omega, ctx, "cohn-umans", "(3 omega_s - 2) / 2", [=] {
    return ctx->emit("omega cohn-umans", Json{{"bound", cohn_umans(*ws)}, {"tol", kRealTol}}, true, "computed");
  })->add_option("--ws", *ws)->required();
}

void add_laser(CLI::App& app, Context* ctx) {
  auto* laser = app.add_subcommand("laser", "Laser method");
  laser->require_subcommand(1);
  auto* k = ctx->slot<std::size_t>(5);
  auto* q = ctx->slot<std::size_t>(2);
  auto* formula_only = ctx->slot<bool>(false);
  auto* pipeline = leaf(laser, ctx, "pipeline", "structural checks, then the bound", [=] {
    LaserOptions opts;
    opts.max_q = env_cap("NQC_LASER_MAX_Q", opts.max_q);
    opts.max_k = env_cap("NQC_LASER_MAX_K", opts.max_k);
    opts.max_entries = env_cap("NQC_LASER_MAX_ENTRIES", opts.max_entries);
    opts.formula_only = *formula_only;
    const LaserReport r = laser_pipeline(*k, *q, opts);
    Json stages = Json::array();
    for (const auto& s : r.stages) {
      stages.push_back(Json{{"name", s.name}, {"run", s.run}, {"passed", s.passed}, {"detail", s.detail}});
    }
    Json result{{"k", *k}, {"q", *q}, {"formula_only", r.formula_only}, {"stages", stages}};
    result["failed_stage"] = r.failed_stage ? Json(*r.failed_stage + 1) : Json(nullptr);
    result["bound"] = r.bound ? Json(*r.bound) : Json(nullptr);
    result["tau_bound"] = r.tau_bound ? Json(*r.tau_bound) : Json(nullptr);
    result["tol"] = kRealTol;
    result["inner_blocks_checked"] = r.inner_blocks_checked;
    return ctx->emit("laser pipeline", result, r.passed());
  });
  pipeline->add_option("--k", *k)->required();
  pipeline->add_option("--q", *q)->required();
  pipeline->add_flag("--formula-only", *formula_only, "skip tensor construction");
}

void add_simulate(CLI::App& app, Context* ctx) {
  auto* cert_path = ctx->slot<std::string>();
  auto* function_path = ctx->slot<std::string>();
  auto* target_path = ctx->slot<std::string>();
  auto* mode = ctx->slot<std::string>("exact");
  auto* list = ctx->slot<bool>(false);
  auto* cmd = leaf(&app, ctx, "simulate", "Compile a certificate into a protocol and run it on every input", [=] {
    const VerifyMode vm = parse_mode(*mode);
    const AnyCertificate cert = certificate_from_json(ctx->read(*cert_path));
    const auto* rc = std::get_if<RankCertificate>(&cert);
    if (rc == nullptr) throw ArgumentError("simulate: border certificates are checked algebraically, not simulated");
    const FunctionTable f = function_table_from_json(ctx->read(*function_path));
    const Tensor target = target_path->empty() ? f.to_tensor() : tensor_from_json(ctx->read(*target_path));
    const ProtocolSpec p = build_protocol(*rc, target, vm);
    const ProtocolVerdict v = verify_protocol(p, f, *list);
    Json scale = Json::array();
    for (const auto& s : p.scale_sq) scale.push_back(format_rational(s));
    Json result{{"pass", v.pass},
                {"r", p.r},
                {"inputs", v.inputs_checked},
                {"accepted", v.accepted},
                {"ones", v.ones},
                {"scale_sq", scale},
                {"zero_columns", p.zero_columns},
                {"detail", v.detail}};
    result["min_positive"] = v.min_positive ? Json(format_rational(*v.min_positive)) : Json(nullptr);
    result["first_violation"] = v.first_violation ? Json(*v.first_violation) : Json(nullptr);
    if (*list) {
      Json probs = Json::array();
      for (const auto& [x, pr] : v.probabilities) probs.push_back(Json{{"x", x}, {"p", format_rational(pr)}});
      result["probabilities"] = probs;
    }
    return ctx->emit("simulate", result, v.pass);
  });
  cmd->add_option("--cert", *cert_path)->required();
  cmd->add_option("--function", *function_path)->required();
  cmd->add_option("--target", *target_path, "tensor the certificate decomposes; default: the function's indicator");
  cmd->add_option("--mode", *mode, "exact or support");
  cmd->add_flag("--list-probs", *list, "include every input's acceptance probability");
}

void add_report(CLI::App& app, Context* ctx) {
  auto* json = ctx->slot<bool>(false);
  auto* strassen_path = ctx->slot<std::string>();
  auto* cmd = leaf(&app, ctx, "report", "Run every acceptance criterion", [=] {
    AcceptanceOptions opts;
    if (!strassen_path->empty()) {
      const AnyCertificate c = certificate_from_json(ctx->read(*strassen_path));
      const auto* rc = std::get_if<RankCertificate>(&c);
      if (rc == nullptr) throw ArgumentError("--strassen7 must be a rank certificate");
      opts.strassen_override = *rc;
    }
    const auto results = run_acceptance(opts);
    bool all = true;
    Json rows = Json::array();
    Json failing = Json::array();
    for (const auto& r : results) {
      all = all && r.pass;
      if (!r.pass) failing.push_back(r.id);
      rows.push_back(Json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
      *ctx->err << "criterion " << r.id << ": " << std::fixed << std::setprecision(3) << r.seconds << " s (budget "
                << r.budget_seconds << " s)\n";
    }
    if (*json) return ctx->emit("report", Json{{"criteria", rows}, {"failing", failing}}, all);
    for (const auto& r : results) {
      *ctx->out << (r.pass ? "PASS " : "FAIL ") << std::setw(2) << r.id << "  " << r.name << ": " << r.detail
                << "\n";
    }
    *ctx->out << (all ? std::string("all criteria pass") : "failing criteria: " + failing.dump()) << "\n";
    return all ? static_cast<int>(kOk) : static_cast<int>(kFalsified);
  });
  cmd->add_flag("--json", *json, "machine-readable output");
  cmd->add_option("--strassen7", *strassen_path, "use this certificate in place of the built-in Strassen one");
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  ctx.args = args;
  ctx.out = &out;
  ctx.err = &err;

  CLI::App app("Exact toolkit for nondeterministic quantum communication tensors", "nqc");
  app.require_subcommand(1);
  add_gen(app, &ctx);
  add_verify(app, &ctx);
  add_bound(app, &ctx);
  add_omega(app, &ctx);
  add_laser(app, &ctx);
  add_simulate(app, &ctx);
  add_report(app, &ctx);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  if (!ctx.action) {
    err << "usage error: no command given\n";
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    const int code = ctx.action();
    err << "elapsed " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s\n";
    return code;
  } catch (const SizeCapError& e) {
    err << "size cap: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kUsage;
}

}  // namespace nqc::cli
