#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "grafter/plant.hpp"
#include "grafter/term.hpp"

namespace grafter {

struct GeneratorDecl {
  std::string name;
  Arity arity;
};

struct FootpathDecl {
  std::string name;
  Plant source;
  Plant target;
  bool iso = false;         // iso declarations get a synthesized inverse
  bool synthesized = false; // true for auto-added inverses
};

struct CompositeDef {
  std::string name;
  CellTermPtr body;
};

struct PlantRelationDecl {
  std::string name;
  Plant lhs, rhs;
};

struct CellRelationDecl {
  std::string name;
  CellSumExpr lhs, rhs;
};

// One declaration set: plant generators, footpath generators, named composite
// 2-cells, plant relations and 2-cell relations.
struct Alphabet {
  std::vector<GeneratorDecl> generators;
  std::vector<FootpathDecl> footpaths;
  std::vector<CompositeDef> composites;
  std::vector<PlantRelationDecl> plant_relations;
  std::vector<CellRelationDecl> cell_relations;

  const GeneratorDecl* find_generator(const std::string& name) const;
  const FootpathDecl* find_footpath(const std::string& name) const;
  const CompositeDef* find_composite(const std::string& name) const;

  // Stable hash of the generator declarations; garden caches carry it.
  uint64_t generator_hash() const;
  std::vector<std::pair<std::string, Arity>> generator_lookup() const;
};

// Parses the sectioned alphabet format: GENERATORS, FOOTPATHS, COMPOSITES,
// PLANT-RELATIONS, CELL-RELATIONS; '#' starts a comment.
Alphabet parse_alphabet_text(const std::string& text, const std::string& origin);
Alphabet load_alphabet(const std::string& path);

}  // namespace grafter
