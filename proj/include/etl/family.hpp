#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "etl/consequence.hpp"
#include "etl/formula.hpp"
#include "etl/model.hpp"
#include "etl/truth_value.hpp"

namespace etl {

/// Enumerates every extensional model of the given flavors over the given
/// constants and parameter atoms: all theory valuations (lexicographic) times
/// all constant partitions (lexicographic), with the two one-element models
/// appended at the end on request. `fn` returns false to stop early.
template <typename Fn>
bool for_each_extensional_model(const std::vector<Flavor>& flavors,
                                const std::set<std::string>& constants,
                                const std::set<int>& atoms, bool include_unit_models,
                                Fn&& fn) {
  for (Flavor flavor : flavors) {
    const std::vector<TruthValue>& values = flavor_values(flavor);
    const std::vector<std::string> consts(constants.begin(), constants.end());
    bool keep_going = for_each_valuation(flavor, atoms, [&](const Valuation& theory) {
      std::vector<std::size_t> odometer(consts.size(), 0);
      for (;;) {
        std::map<std::string, TruthValue> partition;
        for (std::size_t i = 0; i < consts.size(); ++i)
          partition[consts[i]] = values[odometer[i]];
        ModelKind kind;
        switch (flavor) {
          case Flavor::Classical: kind = ModelKind::Classical; break;
          case Flavor::K3: kind = ModelKind::K3; break;
          case Flavor::P3: kind = ModelKind::P3; break;
          default: kind = ModelKind::B4; break;
        }
        if (!fn(ExtensionalModel(kind, theory, std::move(partition)))) return false;
        std::size_t i = consts.size();
        while (i > 0) {
          --i;
          if (++odometer[i] < values.size()) break;
          odometer[i] = 0;
          if (i == 0) return true;
        }
        if (consts.empty()) return true;
      }
    });
    if (!keep_going) return false;
  }
  if (include_unit_models) {
    if (!fn(unit_empty_model(constants))) return false;
    if (!fn(unit_full_model(constants))) return false;
  }
  return true;
}

/// Enumerates assignments of universe elements to the given variables in
/// lexicographic order (variables ascending, elements in universe order).
template <typename Fn>
bool for_each_assignment(const ExtensionalModel& m, const std::set<int>& vars, Fn&& fn) {
  const std::vector<TruthValue>& universe = m.universe();
  const std::vector<int> order(vars.begin(), vars.end());
  std::vector<std::size_t> odometer(order.size(), 0);
  for (;;) {
    std::map<int, TruthValue> map;
    for (std::size_t i = 0; i < order.size(); ++i) map[order[i]] = universe[odometer[i]];
    if (!fn(Assignment(universe.front(), std::move(map)))) return false;
    std::size_t i = order.size();
    while (i > 0) {
      --i;
      if (++odometer[i] < universe.size()) break;
      odometer[i] = 0;
      if (i == 0) return true;
    }
    if (order.empty()) return true;
  }
}

struct FamilyLimits {
  std::uint64_t budget = 1'000'000;  // max (model, assignment) pairs examined
  bool include_unit_models = false;
};

enum class FamilyVerdict { Valid, Refuted, BudgetExceeded };

struct FamilyCounterexample {
  ExtensionalModel model;
  Assignment assignment;
};

struct ConsequenceResult {
  FamilyVerdict verdict = FamilyVerdict::Valid;
  std::optional<FamilyCounterexample> counter;
  std::uint64_t checked = 0;
};

/// Consequence over the enumerable extensional family: valid when no model
/// and assignment over the occurring constants, parameter atoms and free
/// variables satisfies every premise but not the conclusion. The first
/// counterexample in enumeration order is reported.
inline ConsequenceResult extensional_consequence(const std::vector<Formula>& premises,
                                                 const Formula& conclusion,
                                                 const std::vector<Flavor>& flavors,
                                                 const FamilyLimits& limits = {}) {
  std::set<std::string> consts;
  std::set<int> atoms;
  std::set<int> vars;
  auto gather = [&](const Formula& f) {
    const AtomSets sets = atom_sets(f);
    consts.insert(sets.consts.begin(), sets.consts.end());
    vars.insert(sets.vars.begin(), sets.vars.end());
    for (const PropFormula& p : sets.params) p.collect_atoms(atoms);
  };
  for (const Formula& p : premises) gather(p);
  gather(conclusion);

  ConsequenceResult result;
  for_each_extensional_model(
      flavors, consts, atoms, limits.include_unit_models, [&](const ExtensionalModel& m) {
        return for_each_assignment(m, vars, [&](const Assignment& gamma) {
          if (result.checked >= limits.budget) {
            result.verdict = FamilyVerdict::BudgetExceeded;
            return false;
          }
          ++result.checked;
          for (const Formula& p : premises)
            if (!satisfies(m, gamma, p)) return true;
          if (satisfies(m, gamma, conclusion)) return true;
          result.verdict = FamilyVerdict::Refuted;
          result.counter = FamilyCounterexample{m, gamma};
          return false;
        });
      });
  return result;
}

}  // namespace etl
