#pragma once
#include <memory>
#include <string>
#include <vector>

#include "grafter/plant.hpp"

namespace grafter {

// Syntax of 2-cell terms: footpath (or named composite) references, identity
// 2-cells on a plant, vertical and horizontal composites, and application of
// a term inside a one-hole plant context.
struct CellTerm;
using CellTermPtr = std::shared_ptr<const CellTerm>;

struct CellTerm {
  enum class Kind { Gen, Id2, VComp, HComp, CtxApply };
  Kind kind;
  std::string name;   // Gen
  Plant plant;        // Id2
  CellTermPtr a, b;   // VComp / HComp operands; CtxApply body in a
  Context ctx;        // CtxApply
};

inline CellTermPtr cell_gen(std::string name) {
  auto t = std::make_shared<CellTerm>();
  t->kind = CellTerm::Kind::Gen;
  t->name = std::move(name);
  return t;
}
inline CellTermPtr cell_id2(Plant p) {
  auto t = std::make_shared<CellTerm>();
  t->kind = CellTerm::Kind::Id2;
  t->plant = std::move(p);
  return t;
}
inline CellTermPtr cell_vcomp(CellTermPtr a, CellTermPtr b) {
  auto t = std::make_shared<CellTerm>();
  t->kind = CellTerm::Kind::VComp;
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}
inline CellTermPtr cell_hcomp(CellTermPtr a, CellTermPtr b) {
  auto t = std::make_shared<CellTerm>();
  t->kind = CellTerm::Kind::HComp;
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}
inline CellTermPtr cell_ctx(Context c, CellTermPtr body) {
  auto t = std::make_shared<CellTerm>();
  t->kind = CellTerm::Kind::CtxApply;
  t->ctx = std::move(c);
  t->a = std::move(body);
  return t;
}

std::string term_to_string(const CellTermPtr& t);

// An unevaluated integer combination of 2-cell terms.
struct CellSumExpr {
  std::vector<std::pair<long long, CellTermPtr>> terms;
};

}  // namespace grafter
