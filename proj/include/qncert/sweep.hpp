#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qncert/coset.hpp"
#include "qncert/element.hpp"
#include "qncert/errors.hpp"
#include "qncert/group.hpp"
#include "qncert/group_algebra.hpp"
#include "qncert/harmonic.hpp"
#include "qncert/lattice.hpp"
#include "qncert/quasinormalizer.hpp"
#include "qncert/random.hpp"
#include "qncert/subgroup.hpp"

namespace qncert {

/// Slack for the covering-family inequality: the exact value is a sum of
/// squared moduli of unit-vector entries, compared against 1.
constexpr double kInequalityTolerance = 1e-9;

/// One nested pair H <= K inside a fixed finite ambient group, with all
/// four finitely checkable conditions evaluated side by side.
struct SweepInstance {
  Subgroup h;
  Subgroup k;
  TriState cond3 = TriState::Unknown;
  bool cond4 = false;
  bool cond5 = false;
  bool cond6 = false;
  bool k_equals_g = false;
  bool agree = false;
  std::vector<Violation> violations;
  std::optional<double> inequality_min;
  bool inequality_ok = true;
};

struct SweepGroupReport {
  std::string name;
  std::size_t order = 0;
  std::vector<SweepInstance> instances;
  std::size_t disagreements = 0;
  std::size_t inequality_failures = 0;
};

struct SweepReport {
  std::vector<SweepGroupReport> groups;
  std::size_t order_max = 0;
  std::size_t samples_per_violation = 0;
  std::uint64_t seed = 0;
  std::size_t disagreements = 0;
  std::size_t inequality_failures = 0;

  bool ok() const { return disagreements == 0 && inequality_failures == 0; }
};

namespace detail {
inline AlgebraElement unit_vector_on(const Group& g,
                                     const std::vector<Element>& support,
                                     Rng& rng) {
  const auto coeffs = random_unit_vector(rng, support.size());
  AlgebraElement u(g);
  for (std::size_t i = 0; i < support.size(); ++i)
    u.add_at(support[i], coeffs[i]);
  return u;
}
}  // namespace detail

/// Checks every nested pair H <= K of subgroups of a finite group.
/// Conditions (3), (4), (5) and (6) must all agree with the flag K = G,
/// and every finite-orbit violation must satisfy the covering-family
/// inequality on random unit vectors supported on H.
inline SweepGroupReport equivalence_sweep(const std::string& name,
                                          const Group& g, std::size_t samples,
                                          std::uint64_t seed) {
  if (!g.is_finite_family())
    throw PreconditionError("the equivalence sweep requires a finite group");
  SweepGroupReport report;
  report.name = name;
  report.order = g.order();

  const std::vector<Subgroup> subs = enumerate_subgroups(g);
  const std::vector<Element> all = g.elements();
  const std::uint64_t budget = g.order();

  for (const auto& h : subs) {
    for (const auto& k : subs) {
      if (!subgroup_leq(h, k)) continue;

      SweepInstance inst{h, k, TriState::Unknown, false,      false,
                         false, false, false,     {},         std::nullopt,
                         true};
      const Verdict3 v3 = check_condition3(h, k, ElementScope::all(), budget);
      inst.cond3 = v3.holds;
      inst.violations = v3.violations;
      inst.cond4 = check_condition4(h, k).holds;
      inst.cond5 = check_condition5(h, k).holds;
      inst.k_equals_g = k.order() == g.order();

      std::vector<Element> complement;
      for (const auto& x : all)
        if (!k.contains(x)) complement.push_back(x);
      inst.cond6 = complement.empty()
                       ? true
                       : cond6_search(complement, h, k, 0).outcome ==
                             SearchOutcome::Found;

      const bool expected = inst.k_equals_g;
      inst.agree = inst.cond3 == (expected ? TriState::True : TriState::False)
                   && inst.cond4 == expected && inst.cond5 == expected
                   && inst.cond6 == expected;
      if (!inst.agree) ++report.disagreements;

      const std::vector<Element> support = h.elements();
      for (const auto& viol : inst.violations) {
        Rng rng(seed);
        for (std::size_t s = 0; s < samples; ++s) {
          const AlgebraElement u = detail::unit_vector_on(g, support, rng);
          const double val =
              inequality_check(viol.covering_family, viol.g, h, u);
          if (!inst.inequality_min || val < *inst.inequality_min)
            inst.inequality_min = val;
        }
      }
      if (inst.inequality_min &&
          *inst.inequality_min < 1.0 - kInequalityTolerance) {
        inst.inequality_ok = false;
        ++report.inequality_failures;
      }

      report.instances.push_back(std::move(inst));
    }
  }
  return report;
}

/// Sweeps the whole fixed battery of finite groups of order at most
/// `order_max`.
inline SweepReport sweep_catalog(std::size_t order_max,
                                 std::size_t samples = 20,
                                 std::uint64_t seed = 1) {
  SweepReport report;
  report.order_max = order_max;
  report.samples_per_violation = samples;
  report.seed = seed;
  for (const auto& named : standard_finite_groups()) {
    if (named.group.order() > order_max) continue;
    SweepGroupReport gr = equivalence_sweep(named.name, named.group, samples,
                                            seed);
    report.disagreements += gr.disagreements;
    report.inequality_failures += gr.inequality_failures;
    report.groups.push_back(std::move(gr));
  }
  return report;
}

}  // namespace qncert
