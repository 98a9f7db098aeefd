#pragma once
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "grafter/alphabet.hpp"
#include "grafter/plant.hpp"
#include "grafter/term.hpp"

namespace grafter {

// Returns (source, target) plants of a typable term.
std::pair<Plant, Plant> typecheck(const CellTermPtr& t, const Alphabet& alpha);

// One atomic rewrite: footpath `gen` (pattern => replacement) applied at a
// concrete occurrence of `pattern` inside `host`.
struct PastingStep {
  Plant host;
  Occurrence occ;
  std::string gen;
  Plant pattern;      // source plant of gen
  Plant replacement;  // target plant of gen
  Plant result;
};

// A vertical chain of atomic steps. In a plain pasting consecutive plants
// coincide; saturation may leave congruence junctions where a step's host is
// merely congruent to the previous result (never produced by normalize()).
struct Pasting {
  Plant src, tgt;
  std::vector<PastingStep> steps;
};

// Maps a plant code to its congruence-class representative code. Identity
// when no plant relations are in play.
using PlantClassifier = std::function<std::string(const std::string&)>;

// Flattens a term to an anchored chain of atomic steps (no normalization).
Pasting flatten(const CellTermPtr& t, const Alphabet& alpha);

// Lexicographically least reordering under commutation of independent steps.
Pasting nf(const Pasting& p);

std::string step_key(const PastingStep& s);
std::string pasting_key(const Pasting& p, const PlantClassifier& cls = nullptr);

// Rebuilds a term (vertical composite of context applications) from a chain.
CellTermPtr to_term(const Pasting& p);

// normalize = to_term . nf . flatten ; idempotent.
CellTermPtr normalize(const CellTermPtr& t, const Alphabet& alpha);

// Whiskers every step of p with constant plants on both sides.
Pasting whisker(const Pasting& p, const Plant& left, const Plant& right);
// Applies the whole chain inside a context.
Pasting apply_in_context(const Context& c, const Pasting& p);
// Vertical composition (re-anchors b onto a's target).
Pasting vcompose(const Pasting& a, const Pasting& b);
// Rebuilds chain contiguity from p.src (anchors may be isomorphic copies).
Pasting re_anchor(const Pasting& p);

// Swaps two adjacent independent steps; b must be hosted on a.result.
// Returns nullopt when the steps interfere.
std::optional<std::pair<PastingStep, PastingStep>> swap_adjacent(const PastingStep& a,
                                                                 const PastingStep& b);

// ---------------------------------------------------------------------------
// Integer combinations of parallel normalized terms.

struct CellSum {
  // normal-form key -> (coefficient, representative chain)
  std::map<std::string, std::pair<long long, Pasting>> terms;

  bool empty() const { return terms.empty(); }
};

CellSum sum_of(const CellSumExpr& e, const Alphabet& alpha,
               const PlantClassifier& cls = nullptr);
CellSum sum_add(const CellSum& a, const CellSum& b);
CellSum sum_scale(long long k, const CellSum& a);
CellSum sum_sub(const CellSum& a, const CellSum& b);
// Throws NotParallel unless all terms of the sum share source and target
// (modulo the classifier).
void check_parallel(const CellSum& s, const PlantClassifier& cls = nullptr);

}  // namespace grafter
