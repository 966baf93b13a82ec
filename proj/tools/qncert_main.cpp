#include <algorithm>
#include <complex>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qncert/qncert.hpp"

namespace {

using namespace qncert;

constexpr int kExitHolds = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitInputError = 3;

int status_exit(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::Finite:
      return kExitHolds;
    case OrbitStatus::InfiniteCertified:
      return kExitFalsified;
    case OrbitStatus::BudgetExhausted:
      return kExitUnknown;
  }
  return kExitInputError;
}

int tristate_exit(TriState t) {
  switch (t) {
    case TriState::True:
      return kExitHolds;
    case TriState::False:
      return kExitFalsified;
    case TriState::Unknown:
      return kExitUnknown;
  }
  return kExitInputError;
}

int outcome_exit(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::Found:
      return kExitHolds;
    case SearchOutcome::Falsified:
      return kExitFalsified;
    case SearchOutcome::NotFoundWithinRadius:
      return kExitUnknown;
  }
  return kExitInputError;
}

std::vector<Element> parse_word_list(const Group& g, const std::string& s) {
  std::vector<Element> out;
  for (const std::string& part : split_top_level(s, ',')) {
    const std::string w = qncert::detail::trim(part);
    if (w.empty()) throw Error("empty word in list: " + s);
    out.push_back(g.parse(w));
  }
  return out;
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error("bad coefficient: " + s);
  }
  if (used != s.size()) throw Error("bad coefficient: " + s);
  return v;
}

// Literal grammar: word[:re[:im]] entries separated by commas. Commas and
// colons inside cycle parentheses belong to the word.
AlgebraElement parse_algebra_literal(const Group& g, const std::string& s) {
  AlgebraElement x(g);
  for (const std::string& part : split_top_level(s, ',')) {
    const std::vector<std::string> fields = split_top_level(part, ':');
    if (fields.empty() || fields.size() > 3)
      throw Error("bad algebra term: " + part);
    const std::string w = qncert::detail::trim(fields[0]);
    if (w.empty()) throw Error("bad algebra term: " + part);
    const double re = fields.size() > 1 ? parse_real(detail::trim(fields[1])) : 1.0;
    const double im = fields.size() > 2 ? parse_real(detail::trim(fields[2])) : 0.0;
    x.add_at(g.parse(w), {re, im});
  }
  return x;
}

std::string emit(const json& j) { return emit_certificate(j); }

int run_orbit(const std::string& spec, const std::string& word,
              std::uint64_t budget) {
  const TripleSpec t = load_triple(spec);
  const Element g = t.group.parse(word);
  const OrbitResult r = h_orbit(g, t.h, budget);
  std::cout << emit(to_json(t.group, make_orbit_document(g, budget, r)));
  return status_exit(r.status);
}

int run_qn(const std::string& spec, const std::string& word) {
  const TripleSpec t = load_triple(spec);
  const Element g = t.group.parse(word);
  const OrbitResult r = h_orbit(g, t.h, 10000);
  std::cout << emit(to_json(t.group, make_qn_document(g, r)));
  return status_exit(r.status);
}

int run_cond3(const std::string& spec, std::optional<int> radius, bool all) {
  const TripleSpec t = load_triple(spec);
  ElementScope scope =
      all ? ElementScope::all()
          : radius ? ElementScope::ball(*radius)
                   : t.group.is_finite_family() ? ElementScope::all()
                                                : ElementScope::ball(4);
  const std::uint64_t budget = 10000;
  const Verdict3 v = check_condition3(t.h, t.k, scope, budget);
  std::cout << emit(to_json(t.group, make_cond3_document(budget, v)));
  return tristate_exit(v.holds);
}

int run_cond6(const std::string& spec, const std::string& set, int radius) {
  const TripleSpec t = load_triple(spec);
  const std::vector<Element> f = parse_word_list(t.group, set);
  const Cond6Result r = cond6_search(f, t.h, t.k, radius);
  std::cout << emit(to_json(t.group, make_cond6_document(f, radius, r)));
  return outcome_exit(r.outcome);
}

int run_cond5(const std::string& spec) {
  const TripleSpec t = load_triple(spec);
  const ConditionWitness w = check_condition5(t.h, t.k);
  std::cout << emit(to_json(make_invariant_vector_document("cond5", w)));
  return w.holds ? kExitHolds : kExitFalsified;
}

int run_cond4(const std::string& spec) {
  const TripleSpec t = load_triple(spec);
  const ConditionWitness w = check_condition4(t.h, t.k);
  std::cout << emit(to_json(make_invariant_vector_document("cond4", w)));
  return w.holds ? kExitHolds : kExitFalsified;
}

int run_wahp(const std::string& spec, const std::string& xs,
             const std::string& ys, int radius) {
  const TripleSpec t = load_triple(spec);
  const AlgebraElement x = parse_algebra_literal(t.group, xs);
  const AlgebraElement y = parse_algebra_literal(t.group, ys);
  const std::optional<Element> h = wahp_witness(x, y, t.h, t.k, radius);
  std::cout << emit(to_json(make_wahp_document(x, y, radius, h)));
  return h ? kExitHolds : kExitUnknown;
}

int run_ineq(const std::string& spec, const std::string& gw,
             const std::string& set, std::uint64_t samples,
             std::uint64_t seed) {
  const TripleSpec t = load_triple(spec);
  const Element g = t.group.parse(gw);
  const std::vector<Element> f = parse_word_list(t.group, set);
  const std::vector<Element> support = subgroup_candidates(t.h, 2);

  InequalityDocument d;
  d.F = f;
  d.g = g;
  d.samples = samples;
  d.seed = seed;
  d.tolerance = kInequalityTolerance;
  Rng rng(seed);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const auto coeffs = random_unit_vector(rng, support.size());
    AlgebraElement u(t.group);
    for (std::size_t j = 0; j < support.size(); ++j)
      u.add_at(support[j], coeffs[j]);
    const double v = inequality_check(f, g, t.h, u);
    if (i == 0) {
      d.min_value = d.max_value = v;
    } else {
      d.min_value = std::min(d.min_value, v);
      d.max_value = std::max(d.max_value, v);
    }
  }
  d.bound_met = samples > 0 && d.min_value >= 1.0 - d.tolerance;
  std::cout << emit(to_json(t.group, d));
  return d.bound_met ? kExitHolds : kExitFalsified;
}

int run_sweep(std::size_t order_max) {
  const SweepReport r = sweep_catalog(order_max);
  std::cout << emit(to_json(r));
  return r.ok() ? kExitHolds : kExitFalsified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Certificates for one-sided quasi-normalizer conditions on nested "
      "group triples"};
  app.require_subcommand(1);

  std::string spec, word, set, xs, ys, gw;
  std::uint64_t budget = 10000;
  std::uint64_t samples = 100, seed = 1;
  int radius = 3;
  std::optional<int> cond3_radius;
  bool all = false;
  std::size_t order_max = 0;

  auto* orbit = app.add_subcommand(
      "orbit", "Bounded enumeration of the H-orbit of the coset [word]");
  orbit->add_option("spec", spec, "triple spec file")->required();
  orbit->add_option("word", word, "group element")->required();
  orbit->add_option("--budget", budget, "max cosets to discover");

  auto* qn = app.add_subcommand(
      "qn", "Is [word] in the one-sided quasi-normalizer of H?");
  qn->add_option("spec", spec, "triple spec file")->required();
  qn->add_option("word", word, "group element")->required();

  auto* cond3 = app.add_subcommand(
      "cond3", "Every finite-orbit element lies in K, over a scope");
  cond3->add_option("spec", spec, "triple spec file")->required();
  auto* ropt = cond3->add_option("--radius", cond3_radius,
                                 "test the generator ball of this radius");
  cond3->add_flag("--all", all, "test every element (finite groups)")
      ->excludes(ropt);

  auto* cond6 = app.add_subcommand(
      "cond6", "Search h in H with F·h·F missing H entirely");
  cond6->add_option("spec", spec, "triple spec file")->required();
  cond6->add_option("--set", set, "comma-separated F, each outside K")
      ->required();
  cond6->add_option("--radius", radius, "H-generator ball radius");

  auto* cond5 = app.add_subcommand(
      "cond5", "H-invariant vectors of l2(G/H) live in l2(K/H)");
  cond5->add_option("spec", spec, "triple spec file")->required();

  auto* cond4 = app.add_subcommand(
      "cond4", "H-compact vectors of l2(G/H) live in l2(K/H)");
  cond4->add_option("spec", spec, "triple spec file")->required();

  auto* wahp = app.add_subcommand(
      "wahp", "Witness h in H clearing E_H(x·lam(h)·y) for K-perp x, y");
  wahp->add_option("spec", spec, "triple spec file")->required();
  wahp->add_option("--x", xs, "algebra element: word[:re[:im]],...")
      ->required();
  wahp->add_option("--y", ys, "algebra element: word[:re[:im]],...")
      ->required();
  wahp->add_option("--radius", radius, "H-generator ball radius");

  auto* ineq = app.add_subcommand(
      "ineq", "Covering-family inequality on random unit vectors over H");
  ineq->add_option("spec", spec, "triple spec file")->required();
  ineq->add_option("--g", gw, "the element g")->required();
  ineq->add_option("--set", set, "comma-separated family F")->required();
  ineq->add_option("--samples", samples, "number of random unit vectors");
  ineq->add_option("--seed", seed, "random seed");

  auto* sweep = app.add_subcommand(
      "sweep", "Exhaustive condition-equivalence sweep over small groups");
  sweep->add_option("--order-max", order_max, "largest group order to sweep")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (app.got_subcommand(orbit)) return run_orbit(spec, word, budget);
    if (app.got_subcommand(qn)) return run_qn(spec, word);
    if (app.got_subcommand(cond3)) return run_cond3(spec, cond3_radius, all);
    if (app.got_subcommand(cond6)) return run_cond6(spec, set, radius);
    if (app.got_subcommand(cond5)) return run_cond5(spec);
    if (app.got_subcommand(cond4)) return run_cond4(spec);
    if (app.got_subcommand(wahp)) return run_wahp(spec, xs, ys, radius);
    if (app.got_subcommand(ineq)) return run_ineq(spec, gw, set, samples, seed);
    if (app.got_subcommand(sweep)) return run_sweep(order_max);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
