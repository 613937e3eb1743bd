#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "etl/prop_formula.hpp"
#include "etl/truth_value.hpp"
#include "etl/valuation.hpp"

namespace etl {

/// Enumerates every flavor-valuation over the given atoms in lexicographic
/// order (atoms ascending, values in the flavor's declared order) and calls
/// `fn` with each; `fn` returns false to stop. Returns false if stopped.
template <typename Fn>
bool for_each_valuation(Flavor flavor, const std::set<int>& atoms, Fn&& fn) {
  const std::vector<TruthValue>& values = flavor_values(flavor);
  const std::vector<int> order(atoms.begin(), atoms.end());
  std::vector<std::size_t> odometer(order.size(), 0);
  for (;;) {
    std::map<int, TruthValue> m;
    for (std::size_t i = 0; i < order.size(); ++i) m[order[i]] = values[odometer[i]];
    if (!fn(Valuation(flavor, std::move(m)))) return false;
    std::size_t i = order.size();
    while (i > 0) {
      --i;
      if (++odometer[i] < values.size()) break;
      odometer[i] = 0;
      if (i == 0) return true;
    }
    if (order.empty()) return true;
  }
}

struct EntailmentResult {
  bool holds = false;
  std::optional<Valuation> countermodel;
};

/// Brute-force consequence: every flavor-valuation over the occurring atoms
/// that designates all premises must designate the conclusion. The reported
/// countermodel is the first one in lexicographic scan order.
inline EntailmentResult entails(Flavor flavor, const std::vector<PropFormula>& premises,
                                const PropFormula& conclusion) {
  std::set<int> atoms = conclusion.atoms();
  for (const PropFormula& p : premises) p.collect_atoms(atoms);
  EntailmentResult result;
  result.holds = for_each_valuation(flavor, atoms, [&](Valuation v) {
    for (const PropFormula& p : premises)
      if (!designated(eval_param(v, p))) return true;
    if (designated(eval_param(v, conclusion))) return true;
    result.countermodel = std::move(v);
    return false;
  });
  return result;
}

/// Membership of `a` in the intersection of the theories the valuations in
/// `S` stand for.
inline bool intersection_membership(const std::vector<Valuation>& S, const PropFormula& a) {
  if (S.empty()) throw std::invalid_argument("intersection_membership: empty valuation set");
  return std::all_of(S.begin(), S.end(), [&](const Valuation& v) {
    return theory_membership(v, a).in_theory;
  });
}

/// The theory of a valuation set restricted to a finite formula universe.
inline std::set<PropFormula> restricted_theory(const std::vector<Valuation>& S,
                                               const std::vector<PropFormula>& universe) {
  std::set<PropFormula> out;
  for (const PropFormula& a : universe)
    if (intersection_membership(S, a)) out.insert(a);
  return out;
}

/// Finite-instance primality: S's restricted theory is not the intersection
/// of two pool theories that both differ from it on the universe.
inline bool check_prime(const std::vector<Valuation>& S,
                        const std::vector<std::vector<Valuation>>& pool,
                        const std::vector<PropFormula>& universe) {
  const std::set<PropFormula> target = restricted_theory(S, universe);
  std::vector<std::set<PropFormula>> theories;
  theories.reserve(pool.size());
  for (const auto& member : pool) theories.push_back(restricted_theory(member, universe));
  for (std::size_t i = 0; i < theories.size(); ++i) {
    if (theories[i] == target) continue;
    for (std::size_t j = i; j < theories.size(); ++j) {
      if (theories[j] == target) continue;
      std::set<PropFormula> both;
      std::set_intersection(theories[i].begin(), theories[i].end(), theories[j].begin(),
                            theories[j].end(), std::inserter(both, both.begin()));
      if (both == target) return false;
    }
  }
  return true;
}

/// The bounded desk universe: all structurally distinct formulas over the
/// given atoms built from ~, & and | with height at most `depth`, where an
/// atom has height 1. Deterministic order (by height, then construction).
inline std::vector<PropFormula> desk_universe(const std::set<int>& atoms, int depth) {
  std::set<PropFormula> seen;
  std::vector<PropFormula> all;                // cumulative output
  std::size_t level_begin = 0;                 // first index of the previous height
  for (int atom : atoms) {
    PropFormula a = PropFormula::atom(atom);
    if (seen.insert(a).second) all.push_back(std::move(a));
  }
  for (int h = 2; h <= depth; ++h) {
    const std::size_t leq = all.size();        // everything of height <= h-1
    std::vector<PropFormula> fresh;
    auto emit = [&](PropFormula f) {
      if (seen.insert(f).second) fresh.push_back(std::move(f));
    };
    for (std::size_t i = level_begin; i < leq; ++i)
      emit(PropFormula::negation(all[i]));
    for (std::size_t i = 0; i < leq; ++i) {
      for (std::size_t j = 0; j < leq; ++j) {
        if (i < level_begin && j < level_begin) continue;  // height < h, emitted before
        emit(PropFormula::conj(all[i], all[j]));
        emit(PropFormula::disj(all[i], all[j]));
      }
    }
    level_begin = leq;
    all.insert(all.end(), fresh.begin(), fresh.end());
  }
  return all;
}

}  // namespace etl
