#include "grafter/parse.hpp"

#include <cctype>

namespace grafter {

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  std::string origin;

  void skip_ws() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) { ++i; return true; }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      fail(Errc::SyntaxError, origin + ": expected '" + std::string(1, c) + "' at offset " +
                                  std::to_string(i) + " in \"" + s + "\"");
  }
  bool name_start() {
    char c = peek();
    return std::isalpha((unsigned char)c) || c == '_';
  }
  std::string name() {
    skip_ws();
    size_t b = i;
    while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_')) ++i;
    if (b == i) fail(Errc::SyntaxError, origin + ": expected a name in \"" + s + "\"");
    return s.substr(b, i - b);
  }
  long long integer() {
    skip_ws();
    size_t b = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
    if (b == i || (i == b + 1 && !std::isdigit((unsigned char)s[b])))
      fail(Errc::SyntaxError, origin + ": expected an integer in \"" + s + "\"");
    return std::stoll(s.substr(b, i - b));
  }
  // Position of the ')' matching the '(' at index open.
  size_t matching_paren(size_t open) {
    int depth = 0;
    for (size_t j = open; j < s.size(); ++j) {
      if (s[j] == '(') ++depth;
      if (s[j] == ')') {
        --depth;
        if (depth == 0) return j;
      }
    }
    fail(Errc::SyntaxError, origin + ": unbalanced parentheses in \"" + s + "\"");
  }
};

Plant compose_full(const Plant& t, const Plant& u, const std::string& origin) {
  if (t.arity.outputs != u.arity.inputs)
    fail(Errc::ArityMismatch, origin + ": cannot compose " + to_string(t.arity) + " with " +
                                  to_string(u.arity));
  if (t.arity.outputs == 0) return tensor_plants(t, u);
  return join_plants(t, 0, u, 0, t.arity.outputs);
}

struct PlantParser {
  Cursor cur;
  const Alphabet& alpha;
  bool allow_hole;

  Plant primary() {
    if (cur.eat('(')) {
      Plant p = plant();
      cur.expect(')');
      return p;
    }
    if (cur.peek() == '?') {
      if (!allow_hole)
        fail(Errc::SyntaxError, cur.origin + ": hole marker not allowed here");
      ++cur.i;
      int j = (int)cur.integer();
      cur.expect('-');
      cur.expect('>');
      int k = (int)cur.integer();
      if (j < 0 || k < 0) fail(Errc::SyntaxError, cur.origin + ": bad hole arity");
      return generator_plant("?" + std::to_string(j) + "->" + std::to_string(k),
                             {j, k});
    }
    if (!cur.name_start())
      fail(Errc::SyntaxError, cur.origin + ": expected a plant term in \"" + cur.s + "\"");
    std::string n = cur.name();
    if (n == "id") return identity_plant(1);
    const GeneratorDecl* g = alpha.find_generator(n);
    if (!g) fail(Errc::UnknownGenerator, cur.origin + ": " + n);
    return generator_plant(g->name, g->arity);
  }

  Plant tensor() {
    Plant p = primary();
    while (cur.eat('*')) p = tensor_plants(p, primary());
    return p;
  }

  Plant plant() {
    Plant p = tensor();
    while (cur.eat(';')) p = compose_full(p, tensor(), cur.origin);
    return p;
  }
};

Plant parse_plant_impl(const std::string& text, const Alphabet& alpha, bool allow_hole,
                       const std::string& origin) {
  PlantParser pp{{text, 0, origin}, alpha, allow_hole};
  Plant p = pp.plant();
  if (!pp.cur.done())
    fail(Errc::SyntaxError, origin + ": trailing input in \"" + text + "\"");
  return p;
}

struct CellParser {
  Cursor cur;
  const Alphabet& alpha;

  CellTermPtr primary() {
    cur.skip_ws();
    if (cur.peek() == '(') {
      size_t open = cur.i;
      size_t close = cur.matching_paren(open);
      size_t after = close + 1;
      while (after < cur.s.size() && std::isspace((unsigned char)cur.s[after])) ++after;
      std::string inner = cur.s.substr(open + 1, close - open - 1);
      if (after < cur.s.size() && cur.s[after] == '[') {
        Context c = parse_context(inner, alpha);
        cur.i = after + 1;
        CellTermPtr body = cell();
        cur.expect(']');
        return cell_ctx(std::move(c), std::move(body));
      }
      CellParser sub{{inner, 0, cur.origin}, alpha};
      CellTermPtr t = sub.cell();
      if (!sub.cur.done())
        fail(Errc::SyntaxError, cur.origin + ": trailing input in \"" + inner + "\"");
      cur.i = close + 1;
      return t;
    }
    if (!cur.name_start())
      fail(Errc::SyntaxError, cur.origin + ": expected a 2-cell term in \"" + cur.s + "\"");
    std::string n = cur.name();
    if (n == "id2") {
      cur.expect('(');
      size_t open = cur.i - 1;
      size_t close = cur.matching_paren(open);
      std::string inner = cur.s.substr(open + 1, close - open - 1);
      Plant p = parse_plant_impl(inner, alpha, false, cur.origin);
      cur.i = close + 1;
      return cell_id2(std::move(p));
    }
    if (!alpha.find_footpath(n) && !alpha.find_composite(n))
      fail(Errc::UnknownFootpath, cur.origin + ": " + n);
    return cell_gen(n);
  }

  CellTermPtr hcell() {
    CellTermPtr t = primary();
    while (cur.eat('*')) t = cell_hcomp(t, primary());
    return t;
  }

  CellTermPtr cell() {
    CellTermPtr t = hcell();
    while (true) {
      cur.skip_ws();
      if (cur.peek() != ';') break;
      cur.eat(';');
      t = cell_vcomp(t, hcell());
    }
    return t;
  }
};

}  // namespace

Plant parse_plant_term(const std::string& text, const Alphabet& alpha) {
  return parse_plant_impl(text, alpha, false, "plant term");
}

Context parse_context(const std::string& text, const Alphabet& alpha) {
  Plant p = parse_plant_impl(text, alpha, true, "context");
  Context c;
  c.hole = -1;
  for (size_t v = 0; v < p.verts.size(); ++v) {
    if (p.verts[v].is_hole()) {
      if (c.hole >= 0)
        fail(Errc::SyntaxError, "context has more than one hole: " + text);
      c.hole = (int)v;
    }
  }
  if (c.hole < 0) fail(Errc::SyntaxError, "context has no hole: " + text);
  c.skeleton = std::move(p);
  return c;
}

CellTermPtr parse_cell_term(const std::string& text, const Alphabet& alpha) {
  CellParser cp{{text, 0, "2-cell term"}, alpha};
  CellTermPtr t = cp.cell();
  if (!cp.cur.done())
    fail(Errc::SyntaxError, "2-cell term: trailing input in \"" + text + "\"");
  return t;
}

CellSumExpr parse_cell_sum(const std::string& text, const Alphabet& alpha) {
  CellSumExpr sum;
  // Split at top-level '+' signs; '+' never occurs inside terms.
  std::vector<std::string> parts;
  int depth = 0;
  std::string curp;
  for (char ch : text) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == '+' && depth == 0) {
      parts.push_back(curp);
      curp.clear();
    } else {
      curp.push_back(ch);
    }
  }
  parts.push_back(curp);

  for (auto& part : parts) {
    Cursor c{part, 0, "2-cell sum"};
    if (c.done()) fail(Errc::SyntaxError, "empty summand in \"" + text + "\"");
    long long coeff = 1;
    char ch = c.peek();
    if (ch == '-' || std::isdigit((unsigned char)ch)) {
      coeff = c.integer();
      if (c.done()) {
        if (coeff == 0 && parts.size() == 1) return sum;  // the zero sum
        fail(Errc::SyntaxError, "coefficient without a term in \"" + part + "\"");
      }
    }
    std::string rest = part.substr(c.i);
    sum.terms.push_back({coeff, parse_cell_term(rest, alpha)});
  }
  return sum;
}

std::string term_to_string(const CellTermPtr& t) {
  switch (t->kind) {
    case CellTerm::Kind::Gen:
      return t->name;
    case CellTerm::Kind::Id2:
      return "id2{" + canonicalize(t->plant) + "}";
    case CellTerm::Kind::VComp:
      return term_to_string(t->a) + " ; " + term_to_string(t->b);
    case CellTerm::Kind::HComp: {
      auto wrap = [](const CellTermPtr& x) {
        std::string s = term_to_string(x);
        if (x->kind == CellTerm::Kind::VComp) return "(" + s + ")";
        return s;
      };
      return wrap(t->a) + " * " + wrap(t->b);
    }
    case CellTerm::Kind::CtxApply:
      return "{" + canonicalize(t->ctx.skeleton) + "}[" + term_to_string(t->a) + "]";
  }
  return "?";
}

}  // namespace grafter
