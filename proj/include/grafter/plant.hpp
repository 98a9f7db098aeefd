#pragma once
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "grafter/errors.hpp"

namespace grafter {

// Number of input leaves (top boundary) and output roots (bottom boundary).
struct Arity {
  int inputs = 0;
  int outputs = 0;
  auto operator<=>(const Arity&) const = default;
};

std::string to_string(const Arity& a);

// A port on the upper side of an edge: a boundary leaf (vertex == -1,
// slot == leaf index) or an output slot of a vertex.
struct UpPort {
  int vertex = -1;
  int slot = 0;
  auto operator<=>(const UpPort&) const = default;
};

// A port on the lower side of an edge: a boundary root (vertex == -1) or an
// input slot of a vertex.
struct DownPort {
  int vertex = -1;
  int slot = 0;
  auto operator<=>(const DownPort&) const = default;
};

struct Edge {
  UpPort from;
  DownPort to;
  auto operator<=>(const Edge&) const = default;
};

struct Vertex {
  std::string gen;  // generator name; "?j->k" marks a context hole
  Arity arity;
  bool is_hole() const { return !gen.empty() && gen[0] == '?'; }
};

// A plant: a planar open directed acyclic diagram. Leaves are inputs on the
// top boundary, roots are outputs on the bottom, both ordered left to right.
// Every port is met by exactly one edge. Edges run downwards only.
struct Plant {
  Arity arity;
  std::vector<Vertex> verts;
  std::vector<Edge> edges;
  int letters = 0;     // number of non-hole vertices
  int graftings = 0;   // grafting steps used to build this plant

  int edge_from(UpPort p) const;    // -1 if absent
  int edge_to(DownPort p) const;    // -1 if absent
  bool has_through_wire() const;    // some leaf wired straight to a root
  void recount_letters();
};

// One horizontal slice of an execution: generator `gen` placed with `pos`
// untouched strands to its left.
struct Layer {
  int pos = 0;
  std::string gen;
  auto operator<=>(const Layer&) const = default;
};

struct ValidityReport {
  bool ok = true;
  std::string violation;  // first violated invariant, empty when ok
};

// Identity plant of the given width (w parallel strands, zero vertices).
Plant identity_plant(int width = 1);

// Single-vertex plant for a generator.
Plant generator_plant(const std::string& name, Arity a);

ValidityReport validate(const Plant& p);

// Canonical code: the lexicographically least admissible execution of the
// diagram, serialized. Two valid plants get equal codes exactly when they
// are equal as ordered port graphs (boundary order and slot order preserved).
std::string canonicalize(const Plant& p);

bool iso_eq(const Plant& p, const Plant& q);

// Rebuilds a plant from a canonical code; arities of generators are taken
// from the layer execution itself, so the code must carry a resolvable
// sequence. `lookup` maps generator name -> arity.
Plant plant_from_code(const std::string& code,
                      const std::vector<std::pair<std::string, Arity>>& lookup);

// Explicit order-preserving isomorphism search (used for composition
// alignment; tests keep their own independent oracle).
std::optional<std::vector<int>> find_isomorphism(const Plant& p, const Plant& q);

// ---------------------------------------------------------------------------
// Contexts and occurrences

// A plant with exactly one hole vertex "?j->k". Filling the hole with any
// plant of arity j->k yields a valid plant.
struct Context {
  Plant skeleton;
  int hole = -1;  // index of the hole vertex in skeleton.verts

  Arity hole_arity() const { return skeleton.verts.at(hole).arity; }
  Arity outer_arity() const { return skeleton.arity; }
};

Context trivial_context(const Plant& boundary_shape);  // hole spans the whole plant

// Result of filling a context; keeps provenance so rewriting can tell the
// spliced region from the surrounding material.
struct FillResult {
  Plant plant;
  std::vector<int> ctx_vertex;    // skeleton vertex index -> plant vertex (-1 for hole)
  std::vector<int> fill_vertex;   // filler vertex index -> plant vertex
  std::vector<bool> vertex_from_fill;  // per plant vertex
  std::vector<bool> edge_from_fill;    // per plant edge: true if internal to filler
};

FillResult fill(const Context& c, const Plant& filler);

// An occurrence of `pattern` inside `host`: host == context[pattern].
struct Occurrence {
  std::vector<int> vmap;        // pattern vertex -> host vertex
  std::vector<int> edge_image;  // pattern edge -> host edge id
  std::vector<int> in_wire;     // pattern leaf i -> host edge id crossing into the region
  std::vector<int> out_wire;    // pattern root j -> host edge id crossing out
  std::vector<int> host_to_ctx; // host vertex -> context skeleton vertex, -1 inside region
  Context context;              // the cut, with hole where the pattern sat
};

// Validates a candidate placement and cuts its context. Entries of
// `edge_image` may be -1 except for pattern through-wires, which cannot be
// deduced from the vertex map.
std::optional<Occurrence> make_occurrence(const Plant& pattern, const Plant& host,
                                          const std::vector<int>& vmap,
                                          const std::vector<int>& edge_image);

std::vector<Occurrence> find_occurrences(const Plant& pattern, const Plant& host);

// Replaces the occurrence with `replacement` (same arity as the pattern).
FillResult replace(const Occurrence& occ, const Plant& replacement);

// Tensor a context with identity strands or plants on either side, keeping
// the hole. Used for whiskering.
Context tensor_context(const Plant& left, const Context& c, const Plant& right);

// Compose contexts: fill outer's hole with inner's skeleton (hole survives).
Context compose_contexts(const Context& outer, const Context& inner);

// ---------------------------------------------------------------------------
// Low-level assembly helpers shared by grafting and parsing.

Plant tensor_plants(const Plant& p, const Plant& q);
// Joins the given upper roots (contiguous block, in order) to the given lower
// leaves. Used by grafting and context filling.
Plant join_plants(const Plant& upper, int upper_root_begin,
                  const Plant& lower, int lower_leaf_begin, int k);

}  // namespace grafter
