#ifndef AMALGAM_LAB_REPORT_JSON_HPP
#define AMALGAM_LAB_REPORT_JSON_HPP

#include <json.hpp>

#include "amlab/amlab.hpp"

namespace amlab::report {

using nlohmann::json;

inline json matrix_rows(Mat const& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(static_cast<int>(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline json word(Word const& w) { return json(std::vector<int>(w.begin(), w.end())); }

/// Versioned dump: objects in id order (sorted by type, then canonical basis), edges i < j.
inline json geometry_dump(IncidenceGeometry const& g, std::function<Mat(int)> const& basis) {
  json objs = json::array();
  for (int i = 0; i < g.size(); ++i)
    objs.push_back({{"id", i}, {"type", g.type(i)}, {"basis_rows", matrix_rows(basis(i))}});
  json edges = json::array();
  for (auto [a, b] : g.edges()) edges.push_back({a, b});
  return {{"schema", "geom/1"}, {"types", g.types()}, {"objects", objs}, {"edges", edges}};
}

inline json geometry_dump(SubspaceGeometry const& g) {
  return geometry_dump(g.geom, [&](int i) { return g.geom.payload(i).basis(); });
}

inline json cover_dump(DoubleCover const& dc) {
  json d = geometry_dump(dc.geom, [&](int i) { return dc.base.geom.payload(dc.base_of(i)).basis(); });
  json signs = json::array();
  for (int i = 0; i < dc.geom.size(); ++i) signs.push_back({{"id", i}, {"base", dc.base_of(i)}, {"sign", dc.sign_of(i)}});
  d["signs"] = signs;
  return d;
}

inline json abelian(Abelianization const& a) {
  return {{"torsion", a.torsion}, {"free_rank", a.free_rank}};
}

inline std::string verdict_name(Pi1Verdict v) {
  switch (v) {
    case Pi1Verdict::trivial: return "trivial";
    case Pi1Verdict::nontrivial: return "nontrivial";
    default: return "inconclusive";
  }
}

inline json pi1(Pi1Presentation const& p, Pi1Report const& r) {
  json j = {{"raw", {{"generators", r.raw_generators}, {"relators", r.raw_relators}, {"triangles", p.triangles}}},
            {"simplified", {{"generators", r.simplified_generators}, {"relators", r.simplified_relators},
                            {"text", to_text(r.simplified)}}},
            {"verdict", verdict_name(r.verdict)},
            {"abelianization", abelian(r.abelian)},
            {"cosets_used", r.cosets_used}};
  j["order"] = r.order ? json(*r.order) : json(nullptr);
  return j;
}

inline json structure(StructureReport const& r) {
  json checks = json::array();
  for (auto const& c : r.checks)
    checks.push_back({{"name", c.name}, {"ok", c.ok}, {"asserted", c.asserted}, {"detail", c.detail}});
  return {{"ok", r.ok()}, {"checks", checks}};
}

inline json verdict(CompletionVerdict const& v) {
  json j = {{"target", v.target},
            {"generated", v.generated},
            {"relators_hold", v.relators_hold},
            {"relative_to", v.relative_to},
            {"member_order", v.member_order},
            {"cosets_used", v.cosets_used},
            {"generators", v.generators},
            {"relators", v.relators},
            {"iso", v.iso()},
            {"inconclusive", v.inconclusive()}};
  j["index"] = v.index ? json(*v.index) : json(nullptr);
  j["order"] = v.order ? json(*v.order) : json(nullptr);
  return j;
}

inline json manifest(Amalgam const& a) {
  json members = json::array();
  for (auto const& m : a.members()) {
    json gens = json::array();
    for (auto const& g : m.group.generators()) gens.push_back(matrix_rows(g));
    members.push_back({{"name", m.name},
                       {"rank", m.rank},
                       {"order", m.group.order()},
                       {"generators", gens},
                       {"presentation", to_text(m.pres.pres)}});
  }
  json incs = json::array();
  for (auto const& inc : a.inclusions()) {
    auto const& lo = a.members()[inc.lower].group;
    auto const& up = a.members()[inc.upper].group;
    json words = json::array();
    for (auto const& g : lo.generators()) words.push_back(word(up.factorize(g)));
    incs.push_back({{"lower", a.members()[inc.lower].name},
                    {"upper", a.members()[inc.upper].name},
                    {"identification", words}});
  }
  return {{"members", members}, {"inclusions", incs}};
}

}  // namespace amlab::report

#endif  // AMALGAM_LAB_REPORT_JSON_HPP
