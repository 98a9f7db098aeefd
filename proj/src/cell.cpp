#include "grafter/cell.hpp"

#include <algorithm>

namespace grafter {

namespace {

const FootpathDecl& need_footpath(const Alphabet& alpha, const std::string& name) {
  const FootpathDecl* f = alpha.find_footpath(name);
  if (!f) fail(Errc::UnknownFootpath, name);
  return *f;
}

Occurrence trivial_occurrence(const Plant& p) {
  std::vector<int> vmap(p.verts.size());
  for (size_t i = 0; i < vmap.size(); ++i) vmap[i] = (int)i;
  std::vector<int> hint(p.edges.size());
  for (size_t i = 0; i < hint.size(); ++i) hint[i] = (int)i;
  auto occ = make_occurrence(p, p, vmap, hint);
  if (!occ) fail(Errc::Internal, "trivial occurrence failed");
  return *occ;
}

// Maps an edge of `from` into `to` given a partial vertex correspondence;
// resolves through a surviving endpoint. Returns -1 when no endpoint survives.
int map_edge_by_port(const Plant& from, const Plant& to, const std::vector<int>& vcorr,
                     int edge) {
  const Edge& e = from.edges[edge];
  if (e.from.vertex < 0) return to.edge_from(UpPort{-1, e.from.slot});
  if (vcorr[e.from.vertex] >= 0)
    return to.edge_from(UpPort{vcorr[e.from.vertex], e.from.slot});
  if (e.to.vertex < 0) return to.edge_to(DownPort{-1, e.to.slot});
  if (vcorr[e.to.vertex] >= 0) return to.edge_to(DownPort{vcorr[e.to.vertex], e.to.slot});
  return -1;
}

}  // namespace

// ---------------------------------------------------------------------------
// Typechecking

std::pair<Plant, Plant> typecheck(const CellTermPtr& t, const Alphabet& alpha) {
  switch (t->kind) {
    case CellTerm::Kind::Gen: {
      if (const FootpathDecl* f = alpha.find_footpath(t->name))
        return {f->source, f->target};
      if (const CompositeDef* c = alpha.find_composite(t->name))
        return typecheck(c->body, alpha);
      fail(Errc::UnknownFootpath, t->name);
    }
    case CellTerm::Kind::Id2: {
      ValidityReport r = validate(t->plant);
      if (!r.ok) fail(Errc::InvalidPlant, r.violation);
      return {t->plant, t->plant};
    }
    case CellTerm::Kind::VComp: {
      auto [s1, t1] = typecheck(t->a, alpha);
      auto [s2, t2] = typecheck(t->b, alpha);
      if (!iso_eq(t1, s2))
        fail(Errc::VerticalMismatch,
             "target " + canonicalize(t1) + " vs source " + canonicalize(s2));
      return {s1, t2};
    }
    case CellTerm::Kind::HComp: {
      auto [s1, t1] = typecheck(t->a, alpha);
      auto [s2, t2] = typecheck(t->b, alpha);
      Plant s = tensor_plants(s1, s2);
      Plant tt = tensor_plants(t1, t2);
      s.graftings = tt.graftings = 0;
      return {s, tt};
    }
    case CellTerm::Kind::CtxApply: {
      auto [s, tt] = typecheck(t->a, alpha);
      if (t->ctx.hole_arity() != s.arity)
        fail(Errc::ContextArityMismatch,
             "hole " + to_string(t->ctx.hole_arity()) + " vs 2-cell boundary " +
                 to_string(s.arity));
      return {fill(t->ctx, s).plant, fill(t->ctx, tt).plant};
    }
  }
  fail(Errc::Internal, "unreachable");
}

// ---------------------------------------------------------------------------
// Anchoring and transport

namespace {

Occurrence transport_via_iso(const Plant& pattern, const Occurrence& occ,
                             const Plant& old_host, const Plant& new_host,
                             const std::vector<int>& sigma) {
  std::vector<int> vmap(occ.vmap.size());
  for (size_t i = 0; i < vmap.size(); ++i) vmap[i] = sigma[occ.vmap[i]];
  std::vector<int> hint(occ.edge_image.size(), -1);
  for (size_t pe = 0; pe < occ.edge_image.size(); ++pe) {
    const Edge& e = old_host.edges[occ.edge_image[pe]];
    UpPort f = e.from;
    if (f.vertex >= 0) f.vertex = sigma[f.vertex];
    int ne = new_host.edge_from(f);
    if (ne < 0) fail(Errc::Internal, "edge transport failed");
    hint[pe] = ne;
  }
  auto r = make_occurrence(pattern, new_host, vmap, hint);
  if (!r) fail(Errc::Internal, "occurrence transport failed");
  return *r;
}

}  // namespace

namespace {

// Rebuilds a contiguous chain from `start`, transporting each step's anchor.
std::vector<PastingStep> re_anchor(const Plant& start, const std::vector<PastingStep>& steps,
                                   const Alphabet& alpha) {
  std::vector<PastingStep> out;
  Plant cur = start;
  for (const PastingStep& s : steps) {
    const FootpathDecl& f = need_footpath(alpha, s.gen);
    auto sigma = find_isomorphism(s.host, cur);
    if (!sigma) fail(Errc::Internal, "chain lost contiguity");
    PastingStep n;
    n.host = cur;
    n.occ = transport_via_iso(f.source, s.occ, s.host, cur, *sigma);
    n.gen = s.gen;
    n.result = fill(n.occ.context, f.target).plant;
    out.push_back(n);
    cur = out.back().result;
  }
  return out;
}

}  // namespace

Pasting flatten(const CellTermPtr& t, const Alphabet& alpha) {
  switch (t->kind) {
    case CellTerm::Kind::Gen: {
      if (const FootpathDecl* f = alpha.find_footpath(t->name)) {
        Pasting p;
        p.src = f->source;
        p.tgt = f->target;
        PastingStep s;
        s.host = f->source;
        s.occ = trivial_occurrence(f->source);
        s.gen = t->name;
        s.result = fill(s.occ.context, f->target).plant;
        p.steps.push_back(std::move(s));
        p.tgt = p.steps.back().result;
        return p;
      }
      if (const CompositeDef* c = alpha.find_composite(t->name))
        return flatten(c->body, alpha);
      fail(Errc::UnknownFootpath, t->name);
    }
    case CellTerm::Kind::Id2: {
      Pasting p;
      p.src = p.tgt = t->plant;
      return p;
    }
    case CellTerm::Kind::VComp:
      return vcompose_impl(flatten(t->a, alpha), flatten(t->b, alpha), alpha);
    case CellTerm::Kind::HComp: {
      Pasting a = flatten(t->a, alpha);
      Pasting b = flatten(t->b, alpha);
      Pasting left = whisker_impl(a, identity_plant(0), b.src, alpha);
      Pasting right = whisker_impl(b, a.tgt, identity_plant(0), alpha);
      return vcompose_impl(left, right, alpha);
    }
    case CellTerm::Kind::CtxApply:
      return apply_in_context_impl(t->ctx, flatten(t->a, alpha), alpha);
  }
  fail(Errc::Internal, "unreachable");
}

// The _impl helpers need the alphabet; the public wrappers are declared in the
// header without it for whisker/apply/vcompose, so keep one shared instance.
// (Chains carry footpath names; every transformation re-anchors through the
// declarations.)
namespace detail {
thread_local const Alphabet* g_alpha = nullptr;
}

Pasting vcompose_impl(const Pasting& a, const Pasting& b, const Alphabet& alpha);
Pasting whisker_impl(const Pasting& p, const Plant& left, const Plant& right,
                     const Alphabet& alpha);
Pasting apply_in_context_impl(const Context& c, const Pasting& p, const Alphabet& alpha);

}  // namespace grafter
