#include "grafter/plant.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace grafter {

std::string to_string(const Arity& a) {
  return std::to_string(a.inputs) + "->" + std::to_string(a.outputs);
}

int Plant::edge_from(UpPort p) const {
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].from == p) return (int)i;
  return -1;
}

int Plant::edge_to(DownPort p) const {
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].to == p) return (int)i;
  return -1;
}

bool Plant::has_through_wire() const {
  for (const auto& e : edges)
    if (e.from.vertex < 0 && e.to.vertex < 0) return true;
  return false;
}

void Plant::recount_letters() {
  letters = 0;
  for (const auto& v : verts)
    if (!v.is_hole()) ++letters;
}

Plant identity_plant(int width) {
  Plant p;
  p.arity = {width, width};
  for (int i = 0; i < width; ++i)
    p.edges.push_back({UpPort{-1, i}, DownPort{-1, i}});
  p.letters = 0;
  p.graftings = 0;
  return p;
}

Plant generator_plant(const std::string& name, Arity a) {
  Plant p;
  p.arity = a;
  p.verts.push_back({name, a});
  for (int i = 0; i < a.inputs; ++i)
    p.edges.push_back({UpPort{-1, i}, DownPort{0, i}});
  for (int o = 0; o < a.outputs; ++o)
    p.edges.push_back({UpPort{0, o}, DownPort{-1, o}});
  p.letters = name[0] == '?' ? 0 : 1;
  p.graftings = 0;
  return p;
}

// ---------------------------------------------------------------------------
// Structural checks

namespace {

// Checks that every port is met by exactly one edge. Returns an empty string
// when fine, otherwise names the offending port.
std::string check_incidence(const Plant& p) {
  std::map<std::pair<int, int>, int> up, dn;  // (vertex, slot) -> count; vertex -1 = boundary
  for (const auto& e : p.edges) {
    up[{e.from.vertex, e.from.slot}]++;
    dn[{e.to.vertex, e.to.slot}]++;
  }
  auto expect = [](std::map<std::pair<int, int>, int>& seen, int v, int n,
                   const char* what) -> std::string {
    for (int s = 0; s < n; ++s) {
      int c = seen.count({v, s}) ? seen[{v, s}] : 0;
      if (c != 1)
        return std::string(what) + " (" + std::to_string(v) + "," + std::to_string(s) +
               ") met by " + std::to_string(c) + " edges";
    }
    return "";
  };
  std::string err;
  if (!(err = expect(up, -1, p.arity.inputs, "leaf")).empty()) return err;
  if (!(err = expect(dn, -1, p.arity.outputs, "root")).empty()) return err;
  for (size_t v = 0; v < p.verts.size(); ++v) {
    if (!(err = expect(dn, (int)v, p.verts[v].arity.inputs, "vertex input slot")).empty())
      return err;
    if (!(err = expect(up, (int)v, p.verts[v].arity.outputs, "vertex output slot")).empty())
      return err;
  }
  // No edges may refer to nonexistent slots.
  for (const auto& e : p.edges) {
    if (e.from.vertex >= (int)p.verts.size() || e.to.vertex >= (int)p.verts.size())
      return "edge refers to missing vertex";
    int upn = e.from.vertex < 0 ? p.arity.inputs : p.verts[e.from.vertex].arity.outputs;
    int dnn = e.to.vertex < 0 ? p.arity.outputs : p.verts[e.to.vertex].arity.inputs;
    if (e.from.slot < 0 || e.from.slot >= upn) return "edge source slot out of range";
    if (e.to.slot < 0 || e.to.slot >= dnn) return "edge target slot out of range";
  }
  return "";
}

bool check_acyclic(const Plant& p) {
  size_t n = p.verts.size();
  std::vector<std::vector<int>> succ(n);
  for (const auto& e : p.edges)
    if (e.from.vertex >= 0 && e.to.vertex >= 0) succ[e.from.vertex].push_back(e.to.vertex);
  std::vector<int> state(n, 0);
  std::vector<int> stack;
  for (size_t s = 0; s < n; ++s) {
    if (state[s]) continue;
    stack.push_back((int)s);
    while (!stack.empty()) {
      int v = stack.back();
      if (state[v] == 0) {
        state[v] = 1;
        for (int w : succ[v]) {
          if (state[w] == 1) return false;
          if (state[w] == 0) stack.push_back(w);
        }
      } else {
        if (state[v] == 1) state[v] = 2;
        stack.pop_back();
      }
    }
  }
  return true;
}

// Execution search. A state is the set of placed vertices plus the ordered
// frontier of dangling edges. A vertex may be placed when its input edges
// form a contiguous block of the frontier in slot order; a vertex with no
// inputs may be inserted at any position.
struct ExecSearch {
  const Plant& p;
  std::vector<std::vector<int>> in_edge, out_edge;  // per vertex, per slot
  std::map<std::pair<uint64_t, std::vector<int>>, bool> dead;
  bool existence_only = false;

  explicit ExecSearch(const Plant& plant) : p(plant) {
    size_t n = p.verts.size();
    in_edge.assign(n, {});
    out_edge.assign(n, {});
    for (size_t v = 0; v < n; ++v) {
      in_edge[v].assign(p.verts[v].arity.inputs, -1);
      out_edge[v].assign(p.verts[v].arity.outputs, -1);
    }
    for (size_t i = 0; i < p.edges.size(); ++i) {
      const Edge& e = p.edges[i];
      if (e.from.vertex >= 0) out_edge[e.from.vertex][e.from.slot] = (int)i;
      if (e.to.vertex >= 0) in_edge[e.to.vertex][e.to.slot] = (int)i;
    }
  }

  bool final_ok(const std::vector<int>& frontier) const {
    if ((int)frontier.size() != p.arity.outputs) return false;
    for (size_t i = 0; i < frontier.size(); ++i)
      if (p.edges[frontier[i]].to != DownPort{-1, (int)i}) return false;
    return true;
  }

  struct Move {
    Layer layer;
    int vertex;
    int pos;  // where the input block starts / insertion point
  };

  std::vector<Move> moves(uint64_t placed, const std::vector<int>& frontier) const {
    std::vector<Move> out;
    for (size_t v = 0; v < p.verts.size(); ++v) {
      if (placed & (1ull << v)) continue;
      const auto& ins = in_edge[v];
      if (ins.empty()) {
        for (int pos = 0; pos <= (int)frontier.size(); ++pos)
          out.push_back({{pos, p.verts[v].gen}, (int)v, pos});
        continue;
      }
      auto it = std::find(frontier.begin(), frontier.end(), ins[0]);
      if (it == frontier.end()) continue;
      int pos = (int)(it - frontier.begin());
      if (pos + (int)ins.size() > (int)frontier.size()) continue;
      bool ok = true;
      for (size_t s = 1; s < ins.size(); ++s)
        if (frontier[pos + s] != ins[s]) { ok = false; break; }
      if (ok) out.push_back({{pos, p.verts[v].gen}, (int)v, pos});
    }
    std::sort(out.begin(), out.end(), [](const Move& a, const Move& b) {
      if (a.layer != b.layer) return a.layer < b.layer;
      return a.vertex < b.vertex;
    });
    return out;
  }

  std::vector<int> apply(const std::vector<int>& frontier, const Move& m) const {
    std::vector<int> next;
    next.reserve(frontier.size());
    int j = (int)in_edge[m.vertex].size();
    next.insert(next.end(), frontier.begin(), frontier.begin() + m.pos);
    for (int e : out_edge[m.vertex]) next.push_back(e);
    next.insert(next.end(), frontier.begin() + m.pos + j, frontier.end());
    return next;
  }

  // Least execution suffix from this state, or nullopt if none completes.
  std::optional<std::vector<Layer>> best(uint64_t placed, std::vector<int> frontier) {
    if (placed == (p.verts.size() >= 64 ? ~0ull : ((1ull << p.verts.size()) - 1))) {
      if (final_ok(frontier)) return std::vector<Layer>{};
      return std::nullopt;
    }
    auto key = std::make_pair(placed, frontier);
    if (dead.count(key)) return std::nullopt;
    auto ms = moves(placed, frontier);
    size_t i = 0;
    while (i < ms.size()) {
      size_t j = i;
      while (j < ms.size() && ms[j].layer == ms[i].layer) ++j;
      std::optional<std::vector<Layer>> found;
      for (size_t t = i; t < j; ++t) {
        auto sub = best(placed | (1ull << ms[t].vertex), apply(frontier, ms[t]));
        if (sub) {
          if (!found || *sub < *found) found = sub;
          if (existence_only) break;
        }
      }
      if (found) {
        found->insert(found->begin(), ms[i].layer);
        return found;
      }
      i = j;
    }
    dead[key] = true;
    return std::nullopt;
  }

  std::optional<std::vector<Layer>> run(bool exist_only) {
    existence_only = exist_only;
    std::vector<int> frontier(p.arity.inputs);
    for (int i = 0; i < p.arity.inputs; ++i) {
      frontier[i] = p.edge_from(UpPort{-1, i});
      if (frontier[i] < 0) return std::nullopt;
    }
    return best(0, frontier);
  }
};

std::string serialize_layers(const Arity& a, const std::vector<Layer>& ls) {
  std::ostringstream os;
  os << a.inputs << "," << a.outputs;
  for (const auto& l : ls) os << "|" << l.pos << ":" << l.gen;
  return os.str();
}

}  // namespace

ValidityReport validate(const Plant& p) {
  if (p.arity.inputs < 0 || p.arity.outputs < 0)
    return {false, "negative arity"};
  std::string err = check_incidence(p);
  if (!err.empty()) return {false, "incidence: " + err};
  if (!check_acyclic(p)) return {false, "cycle among vertices"};
  int expected_letters = 0;
  for (const auto& v : p.verts)
    if (!v.is_hole()) ++expected_letters;
  if (p.letters != expected_letters)
    return {false, "letters grading disagrees with vertex count"};
  if (p.verts.size() > 64) return {false, "too many vertices"};
  if (p.verts.size() <= 8) {
    ExecSearch s(p);
    if (!s.run(true))
      return {false, "planarity: no non-crossing embedding respects the boundary order"};
  }
  return {true, ""};
}

std::string canonicalize(const Plant& p) {
  std::string err = check_incidence(p);
  if (!err.empty()) fail(Errc::InvalidPlant, err);
  if (!check_acyclic(p)) fail(Errc::InvalidPlant, "cycle among vertices");
  if (p.verts.size() > 64) fail(Errc::InvalidPlant, "too many vertices");
  ExecSearch s(p);
  auto best = s.run(false);
  if (!best) fail(Errc::InvalidPlant, "no planar execution");
  return serialize_layers(p.arity, *best);
}

bool iso_eq(const Plant& p, const Plant& q) {
  if (p.arity != q.arity || p.verts.size() != q.verts.size() ||
      p.edges.size() != q.edges.size())
    return false;
  return canonicalize(p) == canonicalize(q);
}

Plant plant_from_code(const std::string& code,
                      const std::vector<std::pair<std::string, Arity>>& lookup) {
  auto bar = code.find('|');
  std::string head = code.substr(0, bar == std::string::npos ? code.size() : bar);
  auto comma = head.find(',');
  if (comma == std::string::npos) fail(Errc::FormatError, "bad plant code: " + code);
  Plant p;
  p.arity.inputs = std::stoi(head.substr(0, comma));
  p.arity.outputs = std::stoi(head.substr(comma + 1));

  struct Wire { UpPort src; };
  std::vector<Wire> frontier;
  for (int i = 0; i < p.arity.inputs; ++i) frontier.push_back({UpPort{-1, i}});

  size_t at = bar;
  while (at != std::string::npos) {
    size_t next = code.find('|', at + 1);
    std::string part = code.substr(at + 1, (next == std::string::npos ? code.size() : next) - at - 1);
    auto colon = part.find(':');
    if (colon == std::string::npos) fail(Errc::FormatError, "bad layer: " + part);
    int pos = std::stoi(part.substr(0, colon));
    std::string gen = part.substr(colon + 1);
    Arity ga;
    bool found = false;
    for (const auto& [n, a] : lookup)
      if (n == gen) { ga = a; found = true; break; }
    if (!found) fail(Errc::UnknownGenerator, gen);
    if (pos < 0 || pos + ga.inputs > (int)frontier.size())
      fail(Errc::FormatError, "layer out of range in code: " + code);
    int v = (int)p.verts.size();
    p.verts.push_back({gen, ga});
    for (int s = 0; s < ga.inputs; ++s)
      p.edges.push_back({frontier[pos + s].src, DownPort{v, s}});
    std::vector<Wire> out;
    for (int o = 0; o < ga.outputs; ++o) out.push_back({UpPort{v, o}});
    frontier.erase(frontier.begin() + pos, frontier.begin() + pos + ga.inputs);
    frontier.insert(frontier.begin() + pos, out.begin(), out.end());
    at = next;
  }
  if ((int)frontier.size() != p.arity.outputs)
    fail(Errc::FormatError, "code does not close to declared outputs: " + code);
  for (int r = 0; r < p.arity.outputs; ++r)
    p.edges.push_back({frontier[r].src, DownPort{-1, r}});
  p.recount_letters();
  p.graftings = p.letters > 0 ? p.letters - 1 : 0;
  return p;
}

std::optional<std::vector<int>> find_isomorphism(const Plant& p, const Plant& q) {
  if (p.arity != q.arity || p.verts.size() != q.verts.size() ||
      p.edges.size() != q.edges.size())
    return std::nullopt;
  size_t n = p.verts.size();
  std::set<Edge> qedges(q.edges.begin(), q.edges.end());
  std::vector<int> sigma(n, -1);
  std::vector<bool> used(n, false);

  auto edges_ok = [&](bool final_pass) {
    for (const auto& e : p.edges) {
      int fv = e.from.vertex, tv = e.to.vertex;
      if (fv >= 0 && sigma[fv] < 0) continue;
      if (tv >= 0 && sigma[tv] < 0) continue;
      if (!final_pass && (fv >= 0 || tv >= 0) == false) continue;
      Edge m{{fv < 0 ? -1 : sigma[fv], e.from.slot}, {tv < 0 ? -1 : sigma[tv], e.to.slot}};
      if (!qedges.count(m)) return false;
    }
    return true;
  };

  std::function<bool(size_t)> go = [&](size_t v) -> bool {
    if (v == n) return edges_ok(true);
    for (size_t w = 0; w < n; ++w) {
      if (used[w]) continue;
      if (p.verts[v].gen != q.verts[w].gen || p.verts[v].arity != q.verts[w].arity) continue;
      sigma[v] = (int)w;
      used[w] = true;
      if (edges_ok(false) && go(v + 1)) return true;
      used[w] = false;
      sigma[v] = -1;
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return sigma;
}

// ---------------------------------------------------------------------------
// Contexts

Context trivial_context(const Plant& shape) {
  Context c;
  c.skeleton.arity = shape.arity;
  c.skeleton.verts.push_back(
      {"?" + std::to_string(shape.arity.inputs) + "->" + std::to_string(shape.arity.outputs),
       shape.arity});
  c.hole = 0;
  for (int i = 0; i < shape.arity.inputs; ++i)
    c.skeleton.edges.push_back({UpPort{-1, i}, DownPort{0, i}});
  for (int o = 0; o < shape.arity.outputs; ++o)
    c.skeleton.edges.push_back({UpPort{0, o}, DownPort{-1, o}});
  c.skeleton.letters = 0;
  return c;
}

FillResult fill(const Context& c, const Plant& filler) {
  const Plant& sk = c.skeleton;
  const Vertex& hv = sk.verts.at(c.hole);
  if (hv.arity != filler.arity)
    fail(Errc::ContextArityMismatch,
         "hole " + to_string(hv.arity) + " vs filler " + to_string(filler.arity));

  FillResult r;
  r.plant.arity = sk.arity;
  r.ctx_vertex.assign(sk.verts.size(), -1);
  for (size_t v = 0; v < sk.verts.size(); ++v) {
    if ((int)v == c.hole) continue;
    r.ctx_vertex[v] = (int)r.plant.verts.size();
    r.plant.verts.push_back(sk.verts[v]);
    r.vertex_from_fill.push_back(false);
  }
  r.fill_vertex.assign(filler.verts.size(), -1);
  for (size_t v = 0; v < filler.verts.size(); ++v) {
    r.fill_vertex[v] = (int)r.plant.verts.size();
    r.plant.verts.push_back(filler.verts[v]);
    r.vertex_from_fill.push_back(true);
  }

  // Wires of the skeleton that feed / drain the hole.
  std::vector<UpPort> in_src(hv.arity.inputs);
  std::vector<DownPort> out_tgt(hv.arity.outputs);
  for (const auto& e : sk.edges) {
    if (e.to.vertex == c.hole) {
      UpPort s = e.from;
      if (s.vertex >= 0) s.vertex = r.ctx_vertex[s.vertex];
      in_src[e.to.slot] = s;
    }
    if (e.from.vertex == c.hole) {
      DownPort t = e.to;
      if (t.vertex >= 0) t.vertex = r.ctx_vertex[t.vertex];
      out_tgt[e.from.slot] = t;
    }
  }

  for (const auto& e : sk.edges) {
    if (e.to.vertex == c.hole || e.from.vertex == c.hole) continue;
    Edge n = e;
    if (n.from.vertex >= 0) n.from.vertex = r.ctx_vertex[n.from.vertex];
    if (n.to.vertex >= 0) n.to.vertex = r.ctx_vertex[n.to.vertex];
    r.plant.edges.push_back(n);
    r.edge_from_fill.push_back(false);
  }
  for (const auto& e : filler.edges) {
    Edge n;
    bool interior = e.from.vertex >= 0 && e.to.vertex >= 0;
    n.from = e.from.vertex >= 0 ? UpPort{r.fill_vertex[e.from.vertex], e.from.slot}
                                : in_src[e.from.slot];
    n.to = e.to.vertex >= 0 ? DownPort{r.fill_vertex[e.to.vertex], e.to.slot}
                            : out_tgt[e.to.slot];
    r.plant.edges.push_back(n);
    r.edge_from_fill.push_back(interior);
  }
  r.plant.recount_letters();
  r.plant.graftings = r.plant.letters > 0 ? r.plant.letters - 1 : 0;
  return r;
}

// ---------------------------------------------------------------------------
// Occurrences

std::optional<Occurrence> make_occurrence(const Plant& pattern, const Plant& host,
                                          const std::vector<int>& vmap,
                                          const std::vector<int>& edge_image_hint) {
  std::vector<bool> in_region(host.verts.size(), false);
  for (int hv : vmap) {
    if (hv < 0 || hv >= (int)host.verts.size() || in_region[hv]) return std::nullopt;
    in_region[hv] = true;
  }
  for (size_t pv = 0; pv < pattern.verts.size(); ++pv) {
    const Vertex& a = pattern.verts[pv];
    const Vertex& b = host.verts[vmap[pv]];
    if (a.gen != b.gen || a.arity != b.arity) return std::nullopt;
  }

  // Resolve every pattern edge to a host edge.
  std::vector<int> wire(pattern.edges.size(), -1);
  for (size_t pe = 0; pe < pattern.edges.size(); ++pe) {
    const Edge& e = pattern.edges[pe];
    if (e.from.vertex >= 0 && e.to.vertex >= 0) {
      int he = host.edge_from(UpPort{vmap[e.from.vertex], e.from.slot});
      if (he < 0 || host.edges[he].to != DownPort{vmap[e.to.vertex], e.to.slot})
        return std::nullopt;
      wire[pe] = he;
    } else if (e.to.vertex >= 0) {
      wire[pe] = host.edge_to(DownPort{vmap[e.to.vertex], e.to.slot});
    } else if (e.from.vertex >= 0) {
      wire[pe] = host.edge_from(UpPort{vmap[e.from.vertex], e.from.slot});
    } else {
      // pure through-wire: must come from the hint
      if (pe >= edge_image_hint.size() || edge_image_hint[pe] < 0) return std::nullopt;
      wire[pe] = edge_image_hint[pe];
    }
    if (wire[pe] < 0) return std::nullopt;
    if (pe < edge_image_hint.size() && edge_image_hint[pe] >= 0 &&
        edge_image_hint[pe] != wire[pe])
      return std::nullopt;
  }

  // Which host edges are consumed, and by which pattern edge.
  std::vector<int> consumed_by(host.edges.size(), -1);
  for (size_t pe = 0; pe < pattern.edges.size(); ++pe) {
    if (consumed_by[wire[pe]] != -1) return std::nullopt;
    consumed_by[wire[pe]] = (int)pe;
  }
  // Every host edge touching the region must be consumed; edges fully outside
  // may only be consumed as through-wires.
  for (size_t he = 0; he < host.edges.size(); ++he) {
    const Edge& e = host.edges[he];
    bool fu = e.from.vertex >= 0 && in_region[e.from.vertex];
    bool tu = e.to.vertex >= 0 && in_region[e.to.vertex];
    if ((fu || tu) && consumed_by[he] < 0) return std::nullopt;
    if (!fu && !tu && consumed_by[he] >= 0) {
      const Edge& pe = pattern.edges[consumed_by[he]];
      if (!(pe.from.vertex < 0 && pe.to.vertex < 0)) return std::nullopt;
    }
  }

  // Cut the context skeleton.
  Context c;
  c.skeleton.arity = host.arity;
  std::vector<int> remap(host.verts.size(), -1);
  for (size_t v = 0; v < host.verts.size(); ++v) {
    if (in_region[v]) continue;
    remap[v] = (int)c.skeleton.verts.size();
    c.skeleton.verts.push_back(host.verts[v]);
  }
  c.hole = (int)c.skeleton.verts.size();
  Arity ha = pattern.arity;
  c.skeleton.verts.push_back(
      {"?" + std::to_string(ha.inputs) + "->" + std::to_string(ha.outputs), ha});

  for (size_t he = 0; he < host.edges.size(); ++he) {
    const Edge& e = host.edges[he];
    int pe = consumed_by[he];
    if (pe < 0) {
      Edge n = e;
      if (n.from.vertex >= 0) n.from.vertex = remap[n.from.vertex];
      if (n.to.vertex >= 0) n.to.vertex = remap[n.to.vertex];
      c.skeleton.edges.push_back(n);
      continue;
    }
    const Edge& pedge = pattern.edges[pe];
    bool pfb = pedge.from.vertex < 0;
    bool ptb = pedge.to.vertex < 0;
    if (pfb && ptb) {
      UpPort s = e.from;
      if (s.vertex >= 0) s.vertex = remap[s.vertex];
      DownPort t = e.to;
      if (t.vertex >= 0) t.vertex = remap[t.vertex];
      c.skeleton.edges.push_back({s, DownPort{c.hole, pedge.from.slot}});
      c.skeleton.edges.push_back({UpPort{c.hole, pedge.to.slot}, t});
    } else if (pfb) {
      UpPort s = e.from;
      if (s.vertex >= 0) {
        if (in_region[s.vertex]) return std::nullopt;
        s.vertex = remap[s.vertex];
      }
      c.skeleton.edges.push_back({s, DownPort{c.hole, pedge.from.slot}});
    } else if (ptb) {
      DownPort t = e.to;
      if (t.vertex >= 0) {
        if (in_region[t.vertex]) return std::nullopt;
        t.vertex = remap[t.vertex];
      }
      c.skeleton.edges.push_back({UpPort{c.hole, pedge.to.slot}, t});
    }
  }
  c.skeleton.recount_letters();
  ValidityReport rep = validate(c.skeleton);
  if (!rep.ok) return std::nullopt;
  if (c.skeleton.verts.size() > 8) {
    try {
      canonicalize(c.skeleton);
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  Occurrence occ;
  occ.vmap = vmap;
  occ.edge_image = wire;
  occ.host_to_ctx = remap;
  occ.context = std::move(c);
  occ.in_wire.assign(pattern.arity.inputs, -1);
  occ.out_wire.assign(pattern.arity.outputs, -1);
  for (size_t pe = 0; pe < pattern.edges.size(); ++pe) {
    const Edge& e = pattern.edges[pe];
    if (e.from.vertex < 0) occ.in_wire[e.from.slot] = wire[pe];
    if (e.to.vertex < 0) occ.out_wire[e.to.slot] = wire[pe];
  }
  return occ;
}

std::vector<Occurrence> find_occurrences(const Plant& pattern, const Plant& host) {
  std::vector<Occurrence> out;

  std::vector<int> through;  // indices of pattern leaf->root edges
  for (size_t pe = 0; pe < pattern.edges.size(); ++pe)
    if (pattern.edges[pe].from.vertex < 0 && pattern.edges[pe].to.vertex < 0)
      through.push_back((int)pe);

  size_t n = pattern.verts.size();
  std::vector<int> vmap(n, -1);
  std::vector<bool> used(host.verts.size(), false);

  auto try_candidate = [&]() {
    std::vector<int> hint(pattern.edges.size(), -1);
    std::function<void(size_t)> pick = [&](size_t ti) {
      if (ti == through.size()) {
        auto occ = make_occurrence(pattern, host, vmap, hint);
        if (occ) out.push_back(std::move(*occ));
        return;
      }
      for (size_t he = 0; he < host.edges.size(); ++he) {
        bool taken = false;
        for (int t2 : hint)
          if (t2 == (int)he) taken = true;
        if (taken) continue;
        hint[through[ti]] = (int)he;
        pick(ti + 1);
        hint[through[ti]] = -1;
      }
    };
    pick(0);
  };

  std::function<void(size_t)> match = [&](size_t pv) {
    if (pv == n) {
      try_candidate();
      return;
    }
    for (size_t hv = 0; hv < host.verts.size(); ++hv) {
      if (used[hv]) continue;
      if (host.verts[hv].gen != pattern.verts[pv].gen ||
          host.verts[hv].arity != pattern.verts[pv].arity)
        continue;
      // Partial edge consistency against previously mapped vertices.
      bool ok = true;
      for (const auto& e : pattern.edges) {
        if (e.from.vertex >= 0 && e.to.vertex >= 0) {
          size_t a = e.from.vertex, b = e.to.vertex;
          if (a == pv && b < pv) {
            int he = host.edge_from(UpPort{(int)hv, e.from.slot});
            if (he < 0 || host.edges[he].to != DownPort{vmap[b], e.to.slot}) { ok = false; break; }
          }
          if (b == pv && a < pv) {
            int he = host.edge_to(DownPort{(int)hv, e.to.slot});
            if (he < 0 || host.edges[he].from != UpPort{vmap[a], e.from.slot}) { ok = false; break; }
          }
        }
      }
      if (!ok) continue;
      vmap[pv] = (int)hv;
      used[hv] = true;
      match(pv + 1);
      used[hv] = false;
      vmap[pv] = -1;
    }
  };
  match(0);
  return out;
}

FillResult replace(const Occurrence& occ, const Plant& replacement) {
  return fill(occ.context, replacement);
}

Context tensor_context(const Plant& left, const Context& c, const Plant& right) {
  Context out;
  Plant mid = tensor_plants(left, c.skeleton);
  out.hole = c.hole + (int)left.verts.size();
  out.skeleton = tensor_plants(mid, right);
  out.skeleton.graftings = 0;
  return out;
}

Context compose_contexts(const Context& outer, const Context& inner) {
  FillResult r = fill(outer, inner.skeleton);
  Context out;
  out.skeleton = r.plant;
  out.hole = r.fill_vertex[inner.hole];
  return out;
}

// ---------------------------------------------------------------------------
// Assembly

Plant tensor_plants(const Plant& p, const Plant& q) {
  Plant r;
  r.arity = {p.arity.inputs + q.arity.inputs, p.arity.outputs + q.arity.outputs};
  r.verts = p.verts;
  r.verts.insert(r.verts.end(), q.verts.begin(), q.verts.end());
  int voff = (int)p.verts.size();
  r.edges = p.edges;
  for (Edge e : q.edges) {
    if (e.from.vertex >= 0) e.from.vertex += voff; else e.from.slot += p.arity.inputs;
    if (e.to.vertex >= 0) e.to.vertex += voff; else e.to.slot += p.arity.outputs;
    r.edges.push_back(e);
  }
  r.recount_letters();
  r.graftings = p.graftings + q.graftings + 1;
  return r;
}

Plant join_plants(const Plant& upper, int ur_begin, const Plant& lower, int ll_begin, int k) {
  int mU = upper.arity.inputs, oU = upper.arity.outputs;
  int mL = lower.arity.inputs, oL = lower.arity.outputs;
  if (k < 1 || ur_begin < 0 || ll_begin < 0 || ur_begin + k > oU || ll_begin + k > mL)
    fail(Errc::KTooLarge, "join block out of range");

  Plant r;
  r.arity = {mU + mL - k, oU + oL - k};
  r.verts = upper.verts;
  r.verts.insert(r.verts.end(), lower.verts.begin(), lower.verts.end());
  int voff = (int)upper.verts.size();

  // Composite leaf index for each operand leaf.
  auto up_leaf = [&](int i) { return ll_begin + i; };
  auto low_leaf = [&](int l) { return l < ll_begin ? l : ll_begin + mU + (l - ll_begin - k); };
  auto up_root = [&](int t) { return t < ur_begin ? t : ur_begin + oL + (t - ur_begin - k); };
  auto low_root = [&](int t) { return ur_begin + t; };

  // Sources for the joined block: the upper edge that fed root (ur_begin+t).
  std::vector<UpPort> joined_src(k);
  for (const Edge& e : upper.edges) {
    if (e.to.vertex < 0 && e.to.slot >= ur_begin && e.to.slot < ur_begin + k) {
      UpPort s = e.from;
      if (s.vertex >= 0) { /* index unchanged */ } else s.slot = up_leaf(s.slot);
      joined_src[e.to.slot - ur_begin] = s;
      continue;
    }
    Edge n = e;
    if (n.from.vertex < 0) n.from.slot = up_leaf(n.from.slot);
    if (n.to.vertex < 0) n.to.slot = up_root(n.to.slot);
    r.edges.push_back(n);
  }
  for (const Edge& e : lower.edges) {
    Edge n = e;
    if (n.from.vertex >= 0) n.from.vertex += voff;
    if (n.to.vertex >= 0) n.to.vertex += voff;
    if (e.from.vertex < 0 && e.from.slot >= ll_begin && e.from.slot < ll_begin + k) {
      n.from = joined_src[e.from.slot - ll_begin];
      if (n.to.vertex < 0) n.to.slot = low_root(n.to.slot);
      r.edges.push_back(n);
      continue;
    }
    if (n.from.vertex < 0) n.from.slot = low_leaf(n.from.slot);
    if (n.to.vertex < 0) n.to.slot = low_root(n.to.slot);
    r.edges.push_back(n);
  }
  r.recount_letters();
  r.graftings = upper.graftings + lower.graftings + 1;
  return r;
}

}  // namespace grafter
