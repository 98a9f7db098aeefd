#pragma once
#include <string>

#include "grafter/alphabet.hpp"
#include "grafter/plant.hpp"
#include "grafter/term.hpp"

namespace grafter {

// Plant-term grammar (whitespace-insensitive, '*' binds tighter than ';'):
//   plant   := tensor (';' tensor)*
//   tensor  := primary ('*' primary)*
//   primary := NAME | 'id' | '?'INT'->'INT | '(' plant ')'
// 't ; u' joins all roots of t in order to all leaves of u.
Plant parse_plant_term(const std::string& text, const Alphabet& alpha);

// A plant term with exactly one hole marker '?j->k'.
Context parse_context(const std::string& text, const Alphabet& alpha);

// 2-cell grammar:
//   cell    := hcell (';' hcell)*
//   hcell   := primary ('*' primary)*
//   primary := NAME | 'id2' '(' plant ')' | '(' cell ')' | '(' context ')' '[' cell ']'
CellTermPtr parse_cell_term(const std::string& text, const Alphabet& alpha);

// Integer combinations: '0' or summands joined by '+', each an optional
// integer coefficient followed by a cell term.
CellSumExpr parse_cell_sum(const std::string& text, const Alphabet& alpha);

}  // namespace grafter
