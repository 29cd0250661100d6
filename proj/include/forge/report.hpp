#pragma once

// JSON views of the library's results. Key order is fixed so reports diff byte-for-byte.

#include <json.hpp>

#include "forge/order_ideals.hpp"

namespace forge::json {

using Json = nlohmann::ordered_json;

inline Json grade_value(int g) { return g == kInfiniteGrade ? Json("inf") : Json(g); }

inline Json verdict(Verdict v) { return to_string(v); }

template <CoefficientField K>
Json polys(const std::vector<Polynomial<K>>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

template <CoefficientField K>
Json ideal(const Ideal<K>& I) {
  return polys(I.generators);
}

template <CoefficientField K>
Json matrix(const ModuleMap<K>& A) {
  return Json{{"source", A.source().degrees}, {"target", A.target().degrees}, {"rows", A.to_strings()}};
}

template <CoefficientField K>
Json presentation(const Presentation<K>& P) {
  return Json{{"twists", P.generators().degrees}, {"relations", P.relations.to_strings()},
              {"relation_degrees", P.relations.source().degrees}};
}

inline Json betti(const BettiTable& b) {
  Json entries = Json::array();
  for (const auto& [key, v] : b.entries) entries.push_back(Json{{"i", key.first}, {"j", key.second}, {"n", v}});
  return Json{{"totals", b.totals()}, {"entries", entries}, {"text", b.to_text()}};
}

template <CoefficientField K>
Json complex(const FreeComplex<K>& C) {
  Json ds = Json::array();
  for (int i = 1; i <= C.top(); ++i) ds.push_back(matrix(C.differential(i)));
  Json mods = Json::array();
  for (const auto& m : C.modules()) mods.push_back(m.degrees);
  return Json{{"modules", mods}, {"differentials", ds}};
}

inline Json spots(const std::vector<SpotCertificate>& cs) {
  Json out = Json::array();
  for (const auto& c : cs)
    out.push_back(Json{{"index", c.index},
                       {"boundaries_in_cycles", c.boundaries_in_cycles},
                       {"cycles_in_boundaries", c.cycles_in_boundaries}});
  return out;
}

template <CoefficientField K>
Json resolution(const Resolution<K>& r) {
  Json j{{"minimal", r.minimal}, {"truncated", r.truncated}};
  j["pd"] = r.truncated ? Json(nullptr) : Json(r.proj_dim());
  j["betti"] = betti(r.betti());
  j["complex"] = complex(r.complex);
  j["certificate"] = spots(r.certificate);
  j["certified"] = r.certified();
  return j;
}

inline Json short_exact(const ShortExactCertificate& c) {
  return Json{{"well_defined", c.well_defined}, {"composite_zero", c.composite_zero}, {"injective", c.injective},
              {"surjective", c.surjective},     {"middle_exact", c.middle_exact},     {"hilbert_additive", c.hilbert_additive},
              {"degree_bound", c.degree_bound}, {"ok", c.ok()}};
}

template <CoefficientField K>
Json embedding(const EmbeddingResult<K>& r) {
  auto opt = [](const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); };
  Json notes = Json::array();
  for (const auto& n : r.notes) notes.push_back(n);
  Json iso = Json::array();
  for (const auto& e : r.iso_evidence) iso.push_back(Json{{"index", e.index}, {"hilbert_equal", e.hilbert_equal}});
  return Json{{"route", to_string(r.route)},
              {"x_seq", polys(r.x_seq)},
              {"twist", r.twist},
              {"M", presentation(r.M)},
              {"Q", presentation(r.Q)},
              {"T", presentation(r.T)},
              {"inclusion", matrix(r.inclusion)},
              {"pd_M", r.pd_M},
              {"pd_Q_over_quotient", opt(r.pd_Q_over_quotient)},
              {"pd_T_over_base", opt(r.pd_T_over_base)},
              {"grade_T", grade_value(r.grade_T)},
              {"T_zero", r.T_zero},
              {"Q_annihilator_zero", r.Q_annihilator_zero},
              {"sequence_certificate", short_exact(r.sequence_certificate)},
              {"ext_evidence", iso},
              {"chain_checks", r.chain_checks},
              {"notes", notes},
              {"invariants_hold", r.invariants_hold()}};
}

inline Json split(const SplitVerdict& s) {
  return Json{{"verdict", verdict(s.verdict)}, {"free_rank", s.free_rank}, {"witness", s.witness}};
}

template <CoefficientField K>
Json shamash(const ShamashData<K>& s) {
  Json h = Json::array();
  for (const auto& m : s.homotopy.maps) h.push_back(matrix(m));
  Json higher = Json::array();
  for (const auto& [key, m] : s.higher) higher.push_back(Json{{"k", key.first}, {"a", key.second}, {"map", matrix(m)}});
  Json splits = Json::array();
  for (const auto& sp : s.split)
    splits.push_back(Json{{"index", sp.index}, {"primed", sp.primed}, {"complete", sp.complete},
                          {"h_kills", sp.h_kills}, {"formula", sp.formula}});
  Json s1 = Json::array(), s2 = Json::array();
  for (const auto& c : s.seq1) s1.push_back(short_exact(c));
  for (const auto& c : s.seq2) s2.push_back(short_exact(c));
  return Json{{"x", s.x.to_string()},
              {"betti", betti(s.betti())},
              {"quotient_resolution", complex(s.quotient_resolution)},
              {"homotopy", h},
              {"higher_homotopies", higher},
              {"certificate", spots(s.certificate)},
              {"h0_matches", s.h0_matches},
              {"split", splits},
              {"sequence_1", s1},
              {"sequence_2", s2},
              {"certified", s.certified()}};
}

inline Json oic(const OicReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json j{{"i", e.i},
           {"generator", e.index},
           {"probe", e.probe},
           {"beta", e.beta},
           {"order_ideal", e.order_ideal},
           {"grade", grade_value(e.grade)},
           {"required", e.i},
           {"entries_ideal", e.entries_ideal},
           {"entries_grade", grade_value(e.entries_grade)},
           {"contains_entries", e.contains_entries}};
    j["reduced_grade"] = e.reduced_grade ? grade_value(*e.reduced_grade) : Json(nullptr);
    j["reduction_ok"] = e.reduction_ok;
    j["verdict"] = verdict(e.verdict);
    entries.push_back(j);
  }
  return Json{{"module_id", r.module_id},
              {"pd", r.pd < 0 ? Json(nullptr) : Json(r.pd)},
              {"max_i", r.max_i},
              {"partial", r.partial},
              {"entries", entries},
              {"consistent", r.consistent()},
              {"overall", verdict(r.overall())}};
}

template <CoefficientField K>
Json sequence(const RegularSequenceCertificate<K>& c) {
  Json steps = Json::array();
  for (const auto& s : c.steps) {
    Json j{{"element", s.element}, {"nonzerodivisor", s.nonzerodivisor}, {"split_rank", s.split_rank}};
    j["embed_route"] = s.embed_route.empty() ? Json(nullptr) : Json(s.embed_route);
    j["pd_next"] = s.pd_next < 0 ? Json(nullptr) : Json(s.pd_next);
    steps.push_back(j);
  }
  Json tor = Json::array();
  for (const auto& t : c.tor) tor.push_back(Json{{"N", t.module}, {"j", t.j}, {"verdict", verdict(t.verdict)}});
  return Json{{"status", c.status}, {"note", c.note},        {"h", c.h},
              {"elements", polys(c.elements)}, {"steps", steps}, {"tor_vanishing", tor},
              {"verified", c.verified()}};
}

inline Json nzd(const NzdReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back(Json{{"generator", e.generator}, {"annihilator", e.annihilator},
                           {"verdict", e.nonzerodivisor ? "NZD" : "ZERO_DIVISOR"}});
  return Json{{"entries", entries},
              {"grade", grade_value(r.grade)},
              {"pd", r.pd < 0 ? Json(nullptr) : Json(r.pd)},
              {"profile", r.profile},
              {"overall", verdict(r.overall())}};
}

}  // namespace forge::json
