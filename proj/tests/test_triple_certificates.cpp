#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "qncert/certificates.hpp"
#include "qncert/coset.hpp"
#include "qncert/element.hpp"
#include "qncert/errors.hpp"
#include "qncert/group.hpp"
#include "qncert/group_algebra.hpp"
#include "qncert/harmonic.hpp"
#include "qncert/quasinormalizer.hpp"
#include "qncert/subgroup.hpp"
#include "qncert/sweep.hpp"
#include "qncert/triple.hpp"

namespace qncert {
namespace {

Element fw(std::vector<std::int32_t> letters) {
  return Element(FreeWord{free_reduce(letters)});
}

Element pm(std::vector<std::int32_t> img) {
  return Element(PermImages{std::move(img)});
}

TripleSpec load_text(const std::string& text) {
  std::istringstream in(text);
  return load_triple(in);
}

void expect_load_error(const std::string& text, std::size_t line,
                       const std::string& fragment) {
  try {
    load_text(text);
    FAIL() << "expected ParseError with: " << fragment;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), line) << e.what();
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos)
        << e.what();
  }
}

TEST(TripleLoader, FreeNestedPair) {
  const TripleSpec t = load_text(
      "# nested cyclic pair\n"
      "[group]\n"
      "family = free\n"
      "rank = 2\n"
      "\n"
      "[H]\n"
      "generators = a^2\n"
      "\n"
      "[K]\n"
      "generators = a\n");
  EXPECT_TRUE(t.group.identity().is_free());
  EXPECT_TRUE(t.h.contains(fw({1, 1})));
  EXPECT_FALSE(t.h.contains(fw({1})));
  EXPECT_TRUE(t.k.contains(fw({1})));
  ASSERT_EQ(t.h_gens.size(), 1u);
  EXPECT_EQ(t.h_gens[0], fw({1, 1}));
  ASSERT_EQ(t.k_gens.size(), 1u);
  EXPECT_EQ(t.k_gens[0], fw({1}));
}

TEST(TripleLoader, PermutationTriple) {
  const TripleSpec t = load_text(
      "[group]\n"
      "family = perm\n"
      "degree = 3\n"
      "generators = (1 2), (1 2 3)\n"
      "[H]\n"
      "generators = (1 2)\n"
      "[K]\n"
      "generators = (1 2)  # H equals K here\n");
  EXPECT_EQ(t.group.order(), 6u);
  EXPECT_EQ(t.h.order(), 2u);
  EXPECT_TRUE(t.h == t.k);
  EXPECT_TRUE(t.h.contains(pm({1, 0, 2})));
}

TEST(TripleLoader, AbelianTriple) {
  const TripleSpec t = load_text(
      "[group]\n"
      "family = abelian\n"
      "rank = 2\n"
      "[H]\n"
      "generators = a b^2\n"
      "[K]\n"
      "generators = a, b\n");
  EXPECT_TRUE(t.group.identity().is_abelian());
  EXPECT_TRUE(t.h.contains(Element(ExpVec{{1, 2}})));
  EXPECT_FALSE(t.h.contains(Element(ExpVec{{0, 1}})));
  EXPECT_TRUE(t.k.contains(Element(ExpVec{{-3, 5}})));
}

TEST(TripleLoader, ContainmentIsVerified) {
  expect_load_error(
      "[group]\n"
      "family = free\n"
      "rank = 2\n"
      "[H]\n"
      "generators = a\n"
      "[K]\n"
      "generators = a^2\n",
      5, "H generator a lies outside K");
}

TEST(TripleLoader, SectionErrors) {
  expect_load_error("[M]\n", 1, "unknown section [M]");
  expect_load_error(
      "[group]\n"
      "family = free\n"
      "rank = 2\n"
      "[H]\n"
      "generators = a\n"
      "[H]\n",
      6, "duplicate section [H]");
  expect_load_error("family = free\n", 1, "key outside any section");
  expect_load_error(
      "[H]\n"
      "generators = a\n"
      "[K]\n"
      "generators = a\n",
      4, "missing section [group]");
  expect_load_error(
      "[group]\n"
      "family = free\n"
      "rank = 2\n",
      3, "missing section [H]");
  expect_load_error(
      "[group]\n"
      "family = free\n"
      "rank = 2\n"
      "[H]\n"
      "generators = a\n",
      5, "missing section [K]");
  expect_load_error(
      "[group]\n"
      "family = free\n"
      "rank = 2\n"
      "[H]\n"
      "[K]\n"
      "generators = a\n",
      4, "missing key generators in [H]");
}

TEST(TripleLoader, GroupSectionErrors) {
  expect_load_error(
      "[group]\n"
      "family free\n",
      2, "expected key = value or a section header");
  expect_load_error(
      "[group]\n"
      "family = matrix\n",
      2, "unknown family matrix");
  expect_load_error(
      "[group]\n"
      "family = free\n"
      "family = free\n",
      3, "duplicate key family");
  expect_load_error(
      "[group]\n"
      "family = free\n"
      "rank = 0\n",
      3, "rank must be a positive integer");
  expect_load_error(
      "[group]\n"
      "family = free\n"
      "rank = two\n",
      3, "rank must be a positive integer");
  expect_load_error(
      "[group]\n"
      "family = free\n"
      "order = 6\n",
      3, "unknown key order in [group]");
  expect_load_error(
      "[group]\n"
      "rank = 2\n"
      "[H]\n"
      "generators = a\n"
      "[K]\n"
      "generators = a\n",
      1, "missing key family in [group]");
}

TEST(TripleLoader, FamilyShapeErrors) {
  expect_load_error(
      "[group]\n"
      "family = perm\n"
      "degree = 3\n"
      "rank = 2\n"
      "generators = (1 2)\n"
      "[H]\n"
      "generators = (1 2)\n"
      "[K]\n"
      "generators = (1 2)\n",
      2, "perm groups take degree, not rank");
  expect_load_error(
      "[group]\n"
      "family = perm\n"
      "generators = (1 2)\n"
      "[H]\n"
      "generators = (1 2)\n"
      "[K]\n"
      "generators = (1 2)\n",
      2, "missing key degree in [group]");
  expect_load_error(
      "[group]\n"
      "family = perm\n"
      "degree = 3\n"
      "[H]\n"
      "generators = (1 2)\n"
      "[K]\n"
      "generators = (1 2)\n",
      2, "missing key generators in [group]");
  expect_load_error(
      "[group]\n"
      "family = free\n"
      "degree = 3\n"
      "[H]\n"
      "generators = a\n"
      "[K]\n"
      "generators = a\n",
      2, "free groups take rank, not degree");
  expect_load_error(
      "[group]\n"
      "family = abelian\n"
      "degree = 3\n"
      "[H]\n"
      "generators = a\n"
      "[K]\n"
      "generators = a\n",
      2, "abelian groups take rank, not degree");
  expect_load_error(
      "[group]\n"
      "family = free\n"
      "rank = 2\n"
      "generators = a\n"
      "[H]\n"
      "generators = a\n"
      "[K]\n"
      "generators = a\n",
      4, "generators are only listed for perm groups");
  expect_load_error(
      "[group]\n"
      "family = free\n"
      "[H]\n"
      "generators = a\n"
      "[K]\n"
      "generators = a\n",
      2, "missing key rank in [group]");
}

TEST(TripleLoader, WordErrors) {
  expect_load_error(
      "[group]\n"
      "family = free\n"
      "rank = 2\n"
      "[H]\n"
      "generators = a q\n"
      "[K]\n"
      "generators = a\n",
      5, "unknown generator symbol 'q'");
  expect_load_error(
      "[group]\n"
      "family = free\n"
      "rank = 2\n"
      "[H]\n"
      "generators = a,,a^2\n"
      "[K]\n"
      "generators = a\n",
      5, "empty generator entry");
  expect_load_error(
      "[group]\n"
      "family = perm\n"
      "degree = 3\n"
      "generators = (1 4)\n"
      "[H]\n"
      "generators = e\n"
      "[K]\n"
      "generators = e\n",
      4, "cycle point out of range");
  expect_load_error(
      "[group]\n"
      "family = free\n"
      "rank = 2\n"
      "[H]\n"
      "words = a\n"
      "[K]\n"
      "generators = a\n",
      5, "unknown key words in [H]");
}

TEST(TripleLoader, MissingFileIsAnError) {
  try {
    load_triple(std::string("/nonexistent/triple.spec"));
    FAIL() << "expected Error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("cannot open spec file"),
              std::string::npos);
  }
}

TEST(TripleLoader, SplitTopLevelRespectsParentheses) {
  const std::vector<std::string> cycles = split_top_level("(1 2),(3 4)", ',');
  ASSERT_EQ(cycles.size(), 2u);
  EXPECT_EQ(cycles[0], "(1 2)");
  EXPECT_EQ(cycles[1], "(3 4)");

  const std::vector<std::string> mixed =
      split_top_level("a, (1 2, 3), b", ',');
  ASSERT_EQ(mixed.size(), 3u);
  EXPECT_EQ(mixed[0], "a");
  EXPECT_EQ(mixed[1], " (1 2, 3)");
  EXPECT_EQ(mixed[2], " b");

  const std::vector<std::string> stray = split_top_level("a),b", ',');
  ASSERT_EQ(stray.size(), 2u);
  EXPECT_EQ(stray[0], "a)");
  EXPECT_EQ(stray[1], "b");
}

// --- certificate documents ---

template <typename Doc, typename ToJson, typename FromJson>
void round_trip(const Doc& d, ToJson&& to, FromJson&& from) {
  const json j = to(d);
  const std::string text = emit_certificate(j);
  EXPECT_EQ(text.back(), '\n');
  const json parsed = json::parse(text);
  const Doc back = from(parsed);
  EXPECT_TRUE(back == d);
  EXPECT_EQ(emit_certificate(to(back)), text);
}

TEST(Certificates, OrbitDocumentRoundTrips) {
  const Group g = Group::free_group(2);
  const Subgroup a_sq = Subgroup::generated(g, {fw({1, 1})});

  const OrbitResult fin = h_orbit(fw({1}), a_sq, 100);
  const OrbitDocument dfin = make_orbit_document(fw({1}), 100, fin);
  EXPECT_EQ(dfin.status, OrbitStatus::Finite);
  ASSERT_TRUE(dfin.orbit_size.has_value());
  EXPECT_EQ(*dfin.orbit_size, 1u);
  const json jfin = to_json(g, dfin);
  EXPECT_EQ(jfin.at("kind"), "orbit");
  EXPECT_EQ(jfin.at("orbit_size"), 1u);
  round_trip(
      dfin, [&](const OrbitDocument& d) { return to_json(g, d); },
      [&](const json& j) { return orbit_document_from_json(g, j); });

  const OrbitResult inf = h_orbit(fw({2}), a_sq, 100);
  const OrbitDocument dinf = make_orbit_document(fw({2}), 100, inf);
  EXPECT_EQ(dinf.status, OrbitStatus::InfiniteCertified);
  EXPECT_FALSE(to_json(g, dinf).contains("orbit_size"));
  round_trip(
      dinf, [&](const OrbitDocument& d) { return to_json(g, d); },
      [&](const json& j) { return orbit_document_from_json(g, j); });

  const Group p = Group::permutation_group(3, {{1, 0, 2}, {1, 2, 0}});
  const Subgroup h = Subgroup::generated(p, {pm({1, 0, 2})});
  const OrbitResult ex = h_orbit(pm({2, 1, 0}), h, 1);
  const OrbitDocument dex = make_orbit_document(pm({2, 1, 0}), 1, ex);
  EXPECT_EQ(dex.status, OrbitStatus::BudgetExhausted);
  round_trip(
      dex, [&](const OrbitDocument& d) { return to_json(p, d); },
      [&](const json& j) { return orbit_document_from_json(p, j); });
}

TEST(Certificates, QnDocumentCoversAllStatuses) {
  const Group g = Group::free_group(2);
  const Subgroup a_sq = Subgroup::generated(g, {fw({1, 1})});
  const Group p = Group::permutation_group(3, {{1, 0, 2}, {1, 2, 0}});
  const Subgroup h = Subgroup::generated(p, {pm({1, 0, 2})});

  const QnDocument din = make_qn_document(fw({1}), h_orbit(fw({1}), a_sq, 10));
  EXPECT_EQ(din.in_quasi_normalizer, TriState::True);
  round_trip(
      din, [&](const QnDocument& d) { return to_json(g, d); },
      [&](const json& j) { return qn_document_from_json(g, j); });

  const QnDocument dout = make_qn_document(fw({2}), h_orbit(fw({2}), a_sq, 10));
  EXPECT_EQ(dout.in_quasi_normalizer, TriState::False);
  round_trip(
      dout, [&](const QnDocument& d) { return to_json(g, d); },
      [&](const json& j) { return qn_document_from_json(g, j); });

  const QnDocument dun =
      make_qn_document(pm({2, 1, 0}), h_orbit(pm({2, 1, 0}), h, 1));
  EXPECT_EQ(dun.in_quasi_normalizer, TriState::Unknown);
  round_trip(
      dun, [&](const QnDocument& d) { return to_json(p, d); },
      [&](const json& j) { return qn_document_from_json(p, j); });
}

TEST(Certificates, Cond3DocumentListsViolations) {
  const Group p = Group::permutation_group(3, {{1, 0, 2}, {1, 2, 0}});
  const Subgroup h = Subgroup::generated(p, {pm({1, 0, 2})});
  const Verdict3 v = check_condition3(h, h, ElementScope::all(), 100);
  const Cond3Document d = make_cond3_document(100, v);
  const json j = to_json(p, d);
  EXPECT_EQ(j.at("kind"), "cond3");
  EXPECT_EQ(j.at("holds"), "false");

  bool found = false;
  for (const auto& viol : j.at("violations")) {
    if (viol.at("g") != "(1 3)") continue;
    found = true;
    const json family = viol.at("covering_family");
    ASSERT_EQ(family.size(), 2u);
    EXPECT_EQ(family[0], "(1 3 2)");
    EXPECT_EQ(family[1], "(2 3)");
  }
  EXPECT_TRUE(found);

  round_trip(
      d, [&](const Cond3Document& x) { return to_json(p, x); },
      [&](const json& jj) { return cond3_document_from_json(p, jj); });
}

TEST(Certificates, Cond6DocumentSchema) {
  const Group g = Group::free_group(2);
  const Subgroup cyc_a = Subgroup::generated(g, {fw({1})});
  const std::vector<Element> f{fw({2}), fw({-2})};
  const Cond6Result r = cond6_search(f, cyc_a, cyc_a, 2);
  const Cond6Document d = make_cond6_document(f, 2, r);
  const json j = to_json(g, d);
  EXPECT_EQ(j.at("kind"), "cond6");
  EXPECT_EQ(j.at("F"), json::array({"b", "b^-1"}));
  EXPECT_EQ(j.at("h"), "a");
  EXPECT_EQ(j.at("verified"), true);
  round_trip(
      d, [&](const Cond6Document& x) { return to_json(g, x); },
      [&](const json& jj) { return cond6_document_from_json(g, jj); });

  const Group p = Group::permutation_group(3, {{1, 0, 2}, {1, 2, 0}});
  const Subgroup hp = Subgroup::generated(p, {pm({1, 0, 2})});
  const std::vector<Element> comp{pm({2, 1, 0}), pm({0, 2, 1}), pm({1, 2, 0}),
                                  pm({2, 0, 1})};
  const Cond6Document dfals =
      make_cond6_document(comp, 0, cond6_search(comp, hp, hp, 0));
  EXPECT_EQ(dfals.outcome, SearchOutcome::Falsified);
  EXPECT_FALSE(to_json(p, dfals).contains("h"));
  round_trip(
      dfals, [&](const Cond6Document& x) { return to_json(p, x); },
      [&](const json& jj) { return cond6_document_from_json(p, jj); });
}

TEST(Certificates, InvariantVectorDocuments) {
  const Group p = Group::permutation_group(3, {{1, 0, 2}, {1, 2, 0}});
  const Subgroup h = Subgroup::generated(p, {pm({1, 0, 2})});
  const Subgroup full =
      Subgroup::generated(p, {pm({1, 0, 2}), pm({1, 2, 0})});

  const InvariantVectorDocument fail5 =
      make_invariant_vector_document("cond5", check_condition5(h, h));
  EXPECT_FALSE(fail5.holds);
  ASSERT_TRUE(fail5.witness.has_value());
  round_trip(
      fail5, [](const InvariantVectorDocument& x) { return to_json(x); },
      [&](const json& j) {
        return invariant_vector_document_from_json(h, "cond5", j);
      });

  const InvariantVectorDocument ok5 =
      make_invariant_vector_document("cond5", check_condition5(h, full));
  EXPECT_TRUE(ok5.holds);
  EXPECT_TRUE(to_json(ok5).at("witness").is_null());
  round_trip(
      ok5, [](const InvariantVectorDocument& x) { return to_json(x); },
      [&](const json& j) {
        return invariant_vector_document_from_json(h, "cond5", j);
      });

  const InvariantVectorDocument fail4 =
      make_invariant_vector_document("cond4", check_condition4(h, h));
  EXPECT_EQ(to_json(fail4).at("kind"), "cond4");
  round_trip(
      fail4, [](const InvariantVectorDocument& x) { return to_json(x); },
      [&](const json& j) {
        return invariant_vector_document_from_json(h, "cond4", j);
      });
}

TEST(Certificates, WahpDocumentRoundTrips) {
  const Group g = Group::free_group(2);
  const Subgroup cyc_a = Subgroup::generated(g, {fw({1})});
  const AlgebraElement sym = add(lam(g, fw({2})), lam(g, fw({-2})));
  const auto h = wahp_witness(sym, sym, cyc_a, cyc_a, 3);
  ASSERT_TRUE(h.has_value());
  const WahpDocument found = make_wahp_document(sym, sym, 3, h);
  EXPECT_EQ(found.outcome, SearchOutcome::Found);
  const json j = to_json(found);
  EXPECT_EQ(j.at("kind"), "wahp");
  EXPECT_EQ(j.at("h"), "a");
  round_trip(
      found, [](const WahpDocument& x) { return to_json(x); },
      [&](const json& jj) { return wahp_document_from_json(g, jj); });

  const WahpDocument missing =
      make_wahp_document(sym, sym, 0, wahp_witness(sym, sym, cyc_a, cyc_a, 0));
  EXPECT_EQ(missing.outcome, SearchOutcome::NotFoundWithinRadius);
  EXPECT_FALSE(to_json(missing).contains("h"));
  round_trip(
      missing, [](const WahpDocument& x) { return to_json(x); },
      [&](const json& jj) { return wahp_document_from_json(g, jj); });
}

TEST(Certificates, InequalityDocumentRoundTrips) {
  const Group p = Group::permutation_group(3, {{1, 0, 2}, {1, 2, 0}});
  InequalityDocument d;
  d.F = {pm({2, 1, 0}), pm({0, 2, 1})};
  d.g = pm({2, 1, 0});
  d.samples = 100;
  d.seed = 1;
  d.min_value = 0.9999999999999997;
  d.max_value = 1.0000000000000002;
  d.tolerance = 1e-9;
  d.bound_met = true;
  const json j = to_json(p, d);
  EXPECT_EQ(j.at("kind"), "inequality");
  EXPECT_EQ(j.at("bound_met"), true);
  round_trip(
      d, [&](const InequalityDocument& x) { return to_json(p, x); },
      [&](const json& jj) { return inequality_document_from_json(p, jj); });
}

TEST(Certificates, KindMismatchIsRejected) {
  const Group g = Group::free_group(2);
  const Subgroup a_sq = Subgroup::generated(g, {fw({1, 1})});
  const json j =
      to_json(g, make_qn_document(fw({1}), h_orbit(fw({1}), a_sq, 10)));
  EXPECT_THROW(orbit_document_from_json(g, j), Error);
  EXPECT_THROW(cond3_document_from_json(g, j), Error);
  EXPECT_THROW(orbit_document_from_json(g, json::array()), Error);
}

TEST(Certificates, EmissionIsDeterministic) {
  const Group g = Group::free_group(2);
  const Subgroup a_sq = Subgroup::generated(g, {fw({1, 1})});
  const auto make = [&] {
    return emit_certificate(
        to_json(g, make_orbit_document(fw({1}), 50, h_orbit(fw({1}), a_sq, 50))));
  };
  const std::string a = make();
  EXPECT_EQ(a, make());
  // alphabetical key order in the emitted text
  EXPECT_LT(a.find("\"budget\""), a.find("\"cosets\""));
  EXPECT_LT(a.find("\"cosets\""), a.find("\"kind\""));
  EXPECT_LT(a.find("\"kind\""), a.find("\"status\""));
}

}  // namespace
}  // namespace qncert
