#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qncert/coset.hpp"
#include "qncert/element.hpp"
#include "qncert/errors.hpp"
#include "qncert/group.hpp"
#include "qncert/group_algebra.hpp"
#include "qncert/harmonic.hpp"
#include "qncert/quasinormalizer.hpp"
#include "qncert/subgroup.hpp"
#include "qncert/sweep.hpp"

namespace qncert {

using json = nlohmann::json;

/// All certificate documents serialize with alphabetically ordered keys and
/// a trailing newline, so identical results emit identical bytes.
inline std::string emit_certificate(const json& j) { return j.dump(2) + "\n"; }

namespace detail {

inline void require_kind(const json& j, const std::string& kind) {
  if (!j.is_object() || !j.contains("kind") || j.at("kind") != kind)
    throw Error("certificate kind mismatch: expected " + kind);
}

inline json words_to_json(const Group& g, const std::vector<Element>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(g.print(x));
  return a;
}

inline std::vector<Element> words_from_json(const Group& g, const json& a) {
  std::vector<Element> out;
  for (const auto& w : a) out.push_back(g.parse(w.get<std::string>()));
  return out;
}

inline json coset_vector_to_json(const CosetVector& v) {
  const Group& g = v.subgroup().group();
  json a = json::array();
  for (const auto& [rep, c] : v.coefficients())
    a.push_back(json{{"coset", g.print(rep)},
                     {"im", c.imag()},
                     {"re", c.real()}});
  return json{{"coefficients", a}};
}

inline CosetVector coset_vector_from_json(const Subgroup& h, const json& j) {
  CosetVector v(h);
  for (const auto& e : j.at("coefficients"))
    v.add_at(h.group().parse(e.at("coset").get<std::string>()),
             {e.at("re").get<double>(), e.at("im").get<double>()});
  return v;
}

inline json algebra_to_json(const AlgebraElement& x) {
  json a = json::array();
  for (const auto& [key, c] : x.coefficients())
    a.push_back(json{{"im", c.imag()},
                     {"re", c.real()},
                     {"word", x.group().print(key)}});
  return a;
}

inline AlgebraElement algebra_from_json(const Group& g, const json& a) {
  AlgebraElement x(g);
  for (const auto& e : a)
    x.add_at(g.parse(e.at("word").get<std::string>()),
             {e.at("re").get<double>(), e.at("im").get<double>()});
  return x;
}

}  // namespace detail

// ---------------------------------------------------------------- orbit --

struct OrbitDocument {
  Element word;
  std::uint64_t budget = 0;
  OrbitStatus status = OrbitStatus::BudgetExhausted;
  std::vector<Element> cosets;
  std::vector<Element> covering_family;
  std::optional<std::uint64_t> orbit_size;
  std::uint64_t budget_used = 0;

  bool operator==(const OrbitDocument&) const = default;
};

inline OrbitDocument make_orbit_document(const Element& g,
                                         std::uint64_t budget,
                                         const OrbitResult& r) {
  OrbitDocument d;
  d.word = g;
  d.budget = budget;
  d.status = r.status;
  for (const auto& c : r.cosets) d.cosets.push_back(c.representative);
  d.covering_family = r.covering_family;
  if (r.status == OrbitStatus::Finite) d.orbit_size = r.cosets.size();
  d.budget_used = r.budget_used;
  return d;
}

inline json to_json(const Group& g, const OrbitDocument& d) {
  json j{{"budget", d.budget},
         {"budget_used", d.budget_used},
         {"cosets", detail::words_to_json(g, d.cosets)},
         {"kind", "orbit"},
         {"status", to_string(d.status)},
         {"word", g.print(d.word)}};
  if (d.status == OrbitStatus::Finite) {
    j["covering_family"] = detail::words_to_json(g, d.covering_family);
    j["orbit_size"] = *d.orbit_size;
  }
  return j;
}

inline OrbitDocument orbit_document_from_json(const Group& g, const json& j) {
  detail::require_kind(j, "orbit");
  OrbitDocument d;
  d.word = g.parse(j.at("word").get<std::string>());
  d.budget = j.at("budget").get<std::uint64_t>();
  d.status = orbit_status_from_string(j.at("status").get<std::string>());
  d.cosets = detail::words_from_json(g, j.at("cosets"));
  if (j.contains("covering_family"))
    d.covering_family = detail::words_from_json(g, j.at("covering_family"));
  if (j.contains("orbit_size"))
    d.orbit_size = j.at("orbit_size").get<std::uint64_t>();
  d.budget_used = j.at("budget_used").get<std::uint64_t>();
  return d;
}

// ------------------------------------------------------------------- qn --

struct QnDocument {
  Element word;
  OrbitStatus status = OrbitStatus::BudgetExhausted;
  TriState in_quasi_normalizer = TriState::Unknown;
  std::vector<Element> covering_family;
  std::optional<std::uint64_t> orbit_size;

  bool operator==(const QnDocument&) const = default;
};

inline QnDocument make_qn_document(const Element& g, const OrbitResult& r) {
  QnDocument d;
  d.word = g;
  d.status = r.status;
  switch (r.status) {
    case OrbitStatus::Finite:
      d.in_quasi_normalizer = TriState::True;
      d.covering_family = r.covering_family;
      d.orbit_size = r.cosets.size();
      break;
    case OrbitStatus::InfiniteCertified:
      d.in_quasi_normalizer = TriState::False;
      break;
    case OrbitStatus::BudgetExhausted:
      d.in_quasi_normalizer = TriState::Unknown;
      break;
  }
  return d;
}

inline json to_json(const Group& g, const QnDocument& d) {
  json j{{"in_quasi_normalizer", to_string(d.in_quasi_normalizer)},
         {"kind", "qn"},
         {"status", to_string(d.status)},
         {"word", g.print(d.word)}};
  if (d.status == OrbitStatus::Finite) {
    j["covering_family"] = detail::words_to_json(g, d.covering_family);
    j["orbit_size"] = *d.orbit_size;
  }
  return j;
}

inline QnDocument qn_document_from_json(const Group& g, const json& j) {
  detail::require_kind(j, "qn");
  QnDocument d;
  d.word = g.parse(j.at("word").get<std::string>());
  d.status = orbit_status_from_string(j.at("status").get<std::string>());
  d.in_quasi_normalizer =
      tristate_from_string(j.at("in_quasi_normalizer").get<std::string>());
  if (j.contains("covering_family"))
    d.covering_family = detail::words_from_json(g, j.at("covering_family"));
  if (j.contains("orbit_size"))
    d.orbit_size = j.at("orbit_size").get<std::uint64_t>();
  return d;
}

// ---------------------------------------------------------------- cond3 --

struct Cond3Document {
  TriState holds = TriState::Unknown;
  bool exhaustive = false;
  std::string scope;
  std::uint64_t budget = 0;
  std::uint64_t unknowns = 0;
  std::vector<Violation> violations;

  bool operator==(const Cond3Document&) const = default;
};

inline Cond3Document make_cond3_document(std::uint64_t budget,
                                         const Verdict3& v) {
  return Cond3Document{v.holds, v.exhaustive, v.scope,
                       budget,  v.unknowns,   v.violations};
}

inline json to_json(const Group& g, const Cond3Document& d) {
  json viols = json::array();
  for (const auto& v : d.violations)
    viols.push_back(
        json{{"covering_family", detail::words_to_json(g, v.covering_family)},
             {"g", g.print(v.g)}});
  return json{{"budget", d.budget},
              {"exhaustive", d.exhaustive},
              {"holds", to_string(d.holds)},
              {"kind", "cond3"},
              {"scope", d.scope},
              {"unknowns", d.unknowns},
              {"violations", viols}};
}

inline Cond3Document cond3_document_from_json(const Group& g, const json& j) {
  detail::require_kind(j, "cond3");
  Cond3Document d;
  d.holds = tristate_from_string(j.at("holds").get<std::string>());
  d.exhaustive = j.at("exhaustive").get<bool>();
  d.scope = j.at("scope").get<std::string>();
  d.budget = j.at("budget").get<std::uint64_t>();
  d.unknowns = j.at("unknowns").get<std::uint64_t>();
  for (const auto& v : j.at("violations"))
    d.violations.push_back(
        Violation{g.parse(v.at("g").get<std::string>()),
                  detail::words_from_json(g, v.at("covering_family"))});
  return d;
}

// ---------------------------------------------------------------- cond6 --

struct Cond6Document {
  std::vector<Element> F;
  std::uint64_t radius = 0;
  SearchOutcome outcome = SearchOutcome::NotFoundWithinRadius;
  std::optional<Element> h;
  bool verified = false;

  bool operator==(const Cond6Document&) const = default;
};

inline Cond6Document make_cond6_document(const std::vector<Element>& f,
                                         std::uint64_t radius,
                                         const Cond6Result& r) {
  Cond6Document d;
  d.F = f;
  d.radius = radius;
  d.outcome = r.outcome;
  if (r.certificate) {
    d.h = r.certificate->h;
    d.verified = r.certificate->verified;
  }
  return d;
}

inline json to_json(const Group& g, const Cond6Document& d) {
  json j{{"F", detail::words_to_json(g, d.F)},
         {"kind", "cond6"},
         {"outcome", to_string(d.outcome)},
         {"radius", d.radius}};
  if (d.h) {
    j["h"] = g.print(*d.h);
    j["verified"] = d.verified;
  }
  return j;
}

inline Cond6Document cond6_document_from_json(const Group& g, const json& j) {
  detail::require_kind(j, "cond6");
  Cond6Document d;
  d.F = detail::words_from_json(g, j.at("F"));
  d.radius = j.at("radius").get<std::uint64_t>();
  d.outcome = search_outcome_from_string(j.at("outcome").get<std::string>());
  if (j.contains("h")) {
    d.h = g.parse(j.at("h").get<std::string>());
    d.verified = j.at("verified").get<bool>();
  }
  return d;
}

// ---------------------------------------------------------- cond5, cond4 --

struct InvariantVectorDocument {
  std::string kind;  // "cond5" or "cond4"
  bool holds = false;
  std::optional<CosetVector> witness;

  bool operator==(const InvariantVectorDocument&) const = default;
};

inline InvariantVectorDocument make_invariant_vector_document(
    const std::string& kind, const ConditionWitness& w) {
  return InvariantVectorDocument{kind, w.holds, w.witness};
}

inline json to_json(const InvariantVectorDocument& d) {
  return json{{"holds", d.holds},
              {"kind", d.kind},
              {"witness", d.witness ? detail::coset_vector_to_json(*d.witness)
                                    : json(nullptr)}};
}

inline InvariantVectorDocument invariant_vector_document_from_json(
    const Subgroup& h, const std::string& kind, const json& j) {
  detail::require_kind(j, kind);
  InvariantVectorDocument d;
  d.kind = kind;
  d.holds = j.at("holds").get<bool>();
  if (!j.at("witness").is_null())
    d.witness = detail::coset_vector_from_json(h, j.at("witness"));
  return d;
}

// ----------------------------------------------------------------- wahp --

struct WahpDocument {
  AlgebraElement x;
  AlgebraElement y;
  std::uint64_t radius = 0;
  SearchOutcome outcome = SearchOutcome::NotFoundWithinRadius;
  std::optional<Element> h;

  bool operator==(const WahpDocument&) const = default;
};

inline WahpDocument make_wahp_document(const AlgebraElement& x,
                                       const AlgebraElement& y,
                                       std::uint64_t radius,
                                       const std::optional<Element>& h) {
  return WahpDocument{
      x, y, radius,
      h ? SearchOutcome::Found : SearchOutcome::NotFoundWithinRadius, h};
}

inline json to_json(const WahpDocument& d) {
  json j{{"kind", "wahp"},
         {"outcome", to_string(d.outcome)},
         {"radius", d.radius},
         {"x", detail::algebra_to_json(d.x)},
         {"y", detail::algebra_to_json(d.y)}};
  if (d.h) j["h"] = d.x.group().print(*d.h);
  return j;
}

inline WahpDocument wahp_document_from_json(const Group& g, const json& j) {
  detail::require_kind(j, "wahp");
  AlgebraElement x = detail::algebra_from_json(g, j.at("x"));
  AlgebraElement y = detail::algebra_from_json(g, j.at("y"));
  WahpDocument d{std::move(x), std::move(y),
                 j.at("radius").get<std::uint64_t>(),
                 search_outcome_from_string(j.at("outcome").get<std::string>()),
                 std::nullopt};
  if (j.contains("h")) d.h = g.parse(j.at("h").get<std::string>());
  return d;
}

// ------------------------------------------------------------ inequality --

struct InequalityDocument {
  std::vector<Element> F;
  Element g;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double min_value = 0;
  double max_value = 0;
  double tolerance = 0;
  bool bound_met = false;

  bool operator==(const InequalityDocument&) const = default;
};

inline json to_json(const Group& grp, const InequalityDocument& d) {
  return json{{"F", detail::words_to_json(grp, d.F)},
              {"bound_met", d.bound_met},
              {"g", grp.print(d.g)},
              {"kind", "inequality"},
              {"max_value", d.max_value},
              {"min_value", d.min_value},
              {"samples", d.samples},
              {"seed", d.seed},
              {"tolerance", d.tolerance}};
}

inline InequalityDocument inequality_document_from_json(const Group& grp,
                                                        const json& j) {
  detail::require_kind(j, "inequality");
  InequalityDocument d;
  d.F = detail::words_from_json(grp, j.at("F"));
  d.g = grp.parse(j.at("g").get<std::string>());
  d.samples = j.at("samples").get<std::uint64_t>();
  d.seed = j.at("seed").get<std::uint64_t>();
  d.min_value = j.at("min_value").get<double>();
  d.max_value = j.at("max_value").get<double>();
  d.tolerance = j.at("tolerance").get<double>();
  d.bound_met = j.at("bound_met").get<bool>();
  return d;
}

// ----------------------------------------------------------------- sweep --

/// Summary report; emitted but not reloaded (instances hold live subgroup
/// handles, and reproducing them means rerunning the sweep).
inline json to_json(const SweepReport& r) {
  json groups = json::array();
  for (const auto& gr : r.groups) {
    json instances = json::array();
    for (const auto& inst : gr.instances) {
      json ji{{"agree", inst.agree},
              {"cond3", to_string(inst.cond3)},
              {"cond4", inst.cond4},
              {"cond5", inst.cond5},
              {"cond6", inst.cond6},
              {"h", detail::words_to_json(inst.h.group(), inst.h.elements())},
              {"inequality_min", inst.inequality_min
                                     ? json(*inst.inequality_min)
                                     : json(nullptr)},
              {"inequality_ok", inst.inequality_ok},
              {"k", detail::words_to_json(inst.k.group(), inst.k.elements())},
              {"k_equals_g", inst.k_equals_g},
              {"violations", inst.violations.size()}};
      instances.push_back(std::move(ji));
    }
    groups.push_back(json{{"disagreements", gr.disagreements},
                          {"inequality_failures", gr.inequality_failures},
                          {"instances", std::move(instances)},
                          {"name", gr.name},
                          {"order", gr.order}});
  }
  return json{{"disagreements", r.disagreements},
              {"groups", std::move(groups)},
              {"inequality_failures", r.inequality_failures},
              {"kind", "sweep"},
              {"order_max", r.order_max},
              {"samples_per_violation", r.samples_per_violation},
              {"seed", r.seed}};
}

}  // namespace qncert
