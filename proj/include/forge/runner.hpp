#pragma once

#include <future>
#include <string>
#include <vector>

#include "forge/corpus.hpp"
#include "forge/report.hpp"
#include "forge/session.hpp"

namespace forge {

enum ExitCode : int { kExitOk = 0, kExitCheckFailure = 1, kExitInputError = 2, kExitInvariant = 3 };

struct RunOptions {
  bool parallel = false;
  bool fail_fast = false;
  std::uint64_t seed = 0;  // used by tasks without their own seed=
};

struct TaskOutcome {
  json::Json report;
  std::string text;
  std::string status;  // PASS, FAIL, REJECTED, INCONCLUSIVE, ERROR
  int code = kExitOk;
};

struct RunReport {
  json::Json report;
  std::string text;
  int exit_code = kExitOk;
};

namespace detail {

inline int status_code(const std::string& status) {
  if (status == "FAIL" || status == "REJECTED") return kExitCheckFailure;
  return kExitOk;
}

template <CoefficientField K>
std::vector<Polynomial<K>> poly_list(const RingPtr<K>& R, const std::string& s) {
  std::vector<Polynomial<K>> out;
  for (auto [off, piece] : split_top_level(s, 0)) out.push_back(parse_polynomial(R, piece));
  return out;
}

inline EmbedRoute parse_route(const std::string& s) {
  if (s == "base") return EmbedRoute::Base;
  if (s == "dual_cone") return EmbedRoute::DualCone;
  if (s == "tor_syzygy") return EmbedRoute::TorSyzygy;
  return EmbedRoute::Auto;
}

template <CoefficientField K>
QuotientRing<K> context_of(const Session<K>& S, const TaskSpec& t) {
  auto over = t.arg("over");
  if (!over) return QuotientRing<K>(S.ring);
  return QuotientRing<K>(S.ring, S.find(*over)->ideal->generators);
}

// Runs one task; the caller turns exceptions into ERROR / REJECTED entries.
template <CoefficientField K>
void execute(const Session<K>& S, const TaskSpec& t, std::uint64_t seed, TaskOutcome& out) {
  using json::Json;
  const RingPtr<K>& R = S.ring;
  auto ctx = context_of(S, t);
  const Binding<K>* b = S.find(t.target);
  Json result;
  std::string text, status = "PASS";

  if (t.kind == "resolve" || t.kind == "betti") {
    auto res = free_resolution(ctx, b->as_module(R), static_cast<int>(t.int_arg("max_len", -1)));
    if (t.kind == "resolve") {
      result = json::resolution(res);
    } else {
      result = Json{{"pd", res.truncated ? Json(nullptr) : Json(res.proj_dim())}, {"betti", json::betti(res.betti())}};
    }
    text = res.betti().to_text() + "pd " + (res.truncated ? std::string("? (truncated)") : std::to_string(res.proj_dim())) +
           (res.certified() ? "" : "  exactness certificate FAILED") + "\n";
    if (!res.certified()) status = "FAIL";
  } else if (t.kind == "grade") {
    int g = b->is_ideal() ? grade_or_infinite(ctx, *b->ideal) : module_grade(ctx, b->as_module(R));
    result = Json{{"grade", json::grade_value(g)}};
    text = "grade " + grade_to_string(g) + "\n";
  } else if (t.kind == "embed") {
    auto x = poly_list(R, *t.arg("x"));
    auto r = embed_module(ctx, b->as_module(R), x, parse_route(t.arg("route").value_or("auto")),
                          static_cast<int>(t.int_arg("D", -1)));
    result = json::embedding(r);
    if (!r.invariants_hold()) status = "FAIL";
    text = "route " + to_string(r.route) + "  pd_M " + std::to_string(r.pd_M) + "  pd Q over R/(x) " +
           (r.pd_Q_over_quotient ? std::to_string(*r.pd_Q_over_quotient) : "?") + "  pd T " +
           (r.pd_T_over_base ? std::to_string(*r.pd_T_over_base) : "-") + "  sequence " +
           (r.sequence_certificate.ok() ? "exact" : "NOT exact") + "\n";
    for (const auto& n : r.notes) text += "note: " + n + "\n";
    if (t.bool_arg("split", false)) {
      auto s = syzygy_split_check(ctx, r);
      result["syzygy_split"] = json::split(s);
      text += "syzygy split " + to_string(s.verdict) + "  " + s.witness + "\n";
      if (s.verdict == Verdict::Fail) status = "FAIL";
    }
  } else if (t.kind == "shamash") {
    auto res = free_resolution(ctx, b->as_module(R));
    auto x = parse_polynomial(R, *t.arg("x"));
    auto data = shamash_resolution(ctx, res, x, static_cast<int>(t.int_arg("length", -1)),
                                   static_cast<int>(t.int_arg("D", -1)));
    result = json::shamash(data);
    if (!data.certified()) status = "FAIL";
    text = data.betti().to_text() + (data.certified() ? "certified\n" : "certificate FAILED\n");
  } else if (t.kind == "check-oic") {
    OicOptions opt;
    opt.max_i = static_cast<int>(t.int_arg("max_i", -1));
    opt.probes = static_cast<int>(t.int_arg("probes", 0));
    opt.seed = seed;
    auto rep = check_oic(ctx, b->as_module(R), t.target, opt);
    result = json::oic(rep);
    if (rep.overall() != Verdict::Pass || !rep.consistent()) status = "FAIL";
    text = rep.to_text();
  } else if (t.kind == "nzd-check") {
    auto rep = nzd_check(ctx, *b->ideal);
    result = json::nzd(rep);
    if (rep.overall() != Verdict::Pass) status = "FAIL";
    for (const auto& e : rep.entries)
      text += e.generator + ": " + (e.nonzerodivisor ? "NZD" : "ZERO_DIVISOR, (0 : g) = " + e.annihilator) + "\n";
    text += "grade " + grade_to_string(rep.grade) + "  profile " + rep.profile + "\n";
  } else if (t.kind == "tor-seq") {
    std::vector<std::pair<std::string, Presentation<K>>> Ns;
    if (auto n = t.arg("N"))
      for (auto [off, piece] : split_top_level(*n, 0))
        Ns.emplace_back(std::string(piece), S.find(std::string(piece))->as_module(R));
    auto cert = tor_vanishing_sequence(ctx, b->as_module(R), Ns, seed);
    result = json::sequence(cert);
    if (cert.status != "OK")
      status = "INCONCLUSIVE";
    else if (!cert.verified())
      status = "FAIL";
    text = "sequence (" ;
    for (std::size_t i = 0; i < cert.elements.size(); ++i) text += (i ? ", " : "") + cert.elements[i].to_string();
    text += ")  h " + std::to_string(cert.h) + (cert.note.empty() ? "" : "  " + cert.note) + "\n";
    for (const auto& c : cert.tor) text += "Tor_" + std::to_string(c.j) + "(M, " + c.module + ") " + to_string(c.verdict) + "\n";
  } else if (t.kind == "corpus") {
    auto count = static_cast<std::size_t>(t.int_arg("count", 25));
    bool check = t.arg("check").value_or("oic") == "oic";
    auto modules = generate_corpus(R, seed, count);
    Json items = Json::array();
    std::size_t passed = 0;
    for (std::size_t n = 0; n < modules.size(); ++n) {
      std::string id = t.target + "[" + std::to_string(n) + "]";
      Json item{{"id", id}, {"module", json::presentation(modules[n])}};
      if (check) {
        OicOptions opt;
        opt.probes = static_cast<int>(t.int_arg("probes", 0));
        opt.seed = seed + n;
        auto rep = check_oic(ctx, modules[n], id, opt);
        bool ok = rep.overall() == Verdict::Pass && rep.consistent();
        passed += ok;
        item["oic"] = json::oic(rep);
        text += id + "  pd " + std::to_string(rep.pd) + "  " + (ok ? "PASS" : "FAIL") + "\n";
      }
      items.push_back(item);
    }
    result = Json{{"seed", seed}, {"count", count}, {"modules", items}};
    if (check) {
      result["passed"] = passed;
      if (passed != modules.size()) status = "FAIL";
      text += std::to_string(passed) + "/" + std::to_string(modules.size()) + " PASS\n";
    }
  }
  out.report["status"] = status;
  out.report["result"] = result;
  out.status = status;
  out.code = status_code(status);
  out.text += text;
}

template <CoefficientField K>
TaskOutcome run_one(const Session<K>& S, const TaskSpec& t, std::size_t index, const RunOptions& opt) {
  using json::Json;
  TaskOutcome out;
  Json args = Json::object();
  for (const auto& [k, v] : t.args) args[k] = v;
  out.report = Json{{"index", index}, {"line", t.line}, {"kind", t.kind}, {"target", t.target}, {"args", args}};
  out.text = "[" + std::to_string(index + 1) + "] " + t.kind + " " + t.target + " (line " + std::to_string(t.line) + ")\n";
  std::uint64_t seed = t.arg("seed") ? static_cast<std::uint64_t>(std::stoull(*t.arg("seed"))) : opt.seed;
  auto error = [&](const std::string& kind, const std::string& code, const std::string& msg, int exit) {
    out.report["status"] = code == "REJECTED" ? "REJECTED" : "ERROR";
    out.report["error"] = Json{{"kind", kind}, {"code", code}, {"message", msg}};
    out.status = out.report["status"];
    out.code = exit;
    out.text += out.status + " " + code + ": " + msg + "\n";
  };
  try {
    execute(S, t, seed, out);
  } catch (const Rejected& e) {
    out.report["status"] = "REJECTED";
    out.report["error"] = Json{{"kind", "rejected"}, {"code", e.code()}, {"message", e.what()}};
    out.status = "REJECTED";
    out.code = kExitCheckFailure;
    out.text += "REJECTED " + std::string(e.what()) + "\n";
  } catch (const InvariantViolation& e) {
    error("invariant", "INVARIANT_VIOLATION", e.what(), kExitInvariant);
  } catch (const InputError& e) {
    error("input", "INPUT", e.what(), kExitInputError);
  } catch (const InhomogeneousError& e) {
    error("input", "INHOMOGENEOUS", e.what(), kExitInputError);
  } catch (const DomainError& e) {
    error("input", "DOMAIN", e.what(), kExitInputError);
  } catch (const StructuralError& e) {
    error("input", "STRUCTURAL", e.what(), kExitInputError);
  } catch (const std::exception& e) {
    error("invariant", "INTERNAL", e.what(), kExitInvariant);
  }
  if (out.status == "PASS" || out.status == "FAIL" || out.status == "INCONCLUSIVE") out.text += out.status + "\n";
  return out;
}

inline int combine_exit(int a, int b) {
  // invariant violations dominate input errors, which dominate check failures
  auto rank = [](int c) { return c == kExitInvariant ? 3 : c == kExitInputError ? 2 : c == kExitCheckFailure ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

}  // namespace detail

template <CoefficientField K>
RunReport run_tasks(const Session<K>& S, const RunOptions& opt = {}) {
  using json::Json;
  std::vector<TaskOutcome> outcomes;
  const auto& tasks = S.tasks;
  if (opt.parallel) {
    std::vector<std::future<TaskOutcome>> futures;
    for (std::size_t i = 0; i < tasks.size(); ++i)
      futures.push_back(std::async(std::launch::async, [&, i] { return detail::run_one(S, tasks[i], i, opt); }));
    for (auto& f : futures) outcomes.push_back(f.get());
    if (opt.fail_fast) {
      // same cut as a sequential run
      for (std::size_t i = 0; i < outcomes.size(); ++i)
        if (outcomes[i].code != kExitOk) {
          outcomes.resize(i + 1);
          break;
        }
    }
  } else {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      outcomes.push_back(detail::run_one(S, tasks[i], i, opt));
      if (opt.fail_fast && outcomes.back().code != kExitOk) break;
    }
  }

  RunReport rep;
  std::map<std::string, std::size_t> counts{{"PASS", 0}, {"FAIL", 0}, {"REJECTED", 0}, {"INCONCLUSIVE", 0}, {"ERROR", 0}};
  Json items = Json::array();
  for (auto& o : outcomes) {
    ++counts[o.status];
    rep.exit_code = detail::combine_exit(rep.exit_code, o.code);
    items.push_back(std::move(o.report));
    rep.text += o.text;
  }
  Json summary{{"tasks", tasks.size()}, {"run", outcomes.size()}, {"skipped", tasks.size() - outcomes.size()}};
  for (const auto& [k, v] : counts) summary[k] = v;
  rep.report = Json{{"schema", 1},
                    {"ring", Json{{"field", S.field_spec}, {"variables", S.ring->variables()},
                                  {"order", to_string(S.ring->order())}}},
                    {"seed", opt.seed},
                    {"tasks", items},
                    {"summary", summary},
                    {"exit_code", rep.exit_code}};
  rep.text += "summary: " + std::to_string(counts["PASS"]) + " pass, " + std::to_string(counts["FAIL"]) + " fail, " +
              std::to_string(counts["REJECTED"]) + " rejected, " + std::to_string(counts["INCONCLUSIVE"]) +
              " inconclusive, " + std::to_string(counts["ERROR"]) + " error";
  if (outcomes.size() < tasks.size()) rep.text += ", " + std::to_string(tasks.size() - outcomes.size()) + " skipped";
  rep.text += "\n";
  return rep;
}

// Parse and run; a malformed session yields an input-error report.
inline RunReport run_session_text(std::string_view text, const RunOptions& opt = {}) {
  try {
    auto any = parse_session(text);
    return std::visit([&](const auto& S) { return run_tasks(S, opt); }, any);
  } catch (const SessionError& e) {
    RunReport rep;
    rep.exit_code = kExitInputError;
    rep.report = json::Json{{"schema", 1},
                            {"error", json::Json{{"kind", "input"},
                                                 {"line", e.line()},
                                                 {"column", e.column()},
                                                 {"message", e.message()}}},
                            {"tasks", json::Json::array()},
                            {"exit_code", rep.exit_code}};
    rep.text = std::string("error: ") + e.what() + "\n";
    return rep;
  }
}

}  // namespace forge
