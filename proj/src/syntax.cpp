// Copyright 2026 The aam authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "aam/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <set>

namespace aam {

const char* prim_name(PrimOp op) {
  switch (op) {
    case PrimOp::Le: return "<=";
    case PrimOp::Add: return "+";
    case PrimOp::Not: return "not";
  }
  return "?";
}

int prim_arity(PrimOp op) { return op == PrimOp::Not ? 1 : 2; }

namespace {

// Surface syntax tree prior to desugaring/labeling.
struct SExpr {
  enum Kind { Atom, List } kind;
  std::string atom;
  std::vector<SExpr> items;
  int line = 0, col = 0;
};

struct Lexer {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  void advance(char c) {
    if (c == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
  }
  void skip_ws() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == ';') {  // comment to end of line
        while (pos < src.size() && src[pos] != '\n') { advance(src[pos]); pos++; }
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(c);
        pos++;
      } else {
        break;
      }
    }
  }
  bool at_end() {
    skip_ws();
    return pos >= src.size();
  }

  SExpr read() {
    skip_ws();
    if (pos >= src.size()) throw ParseError("unexpected end of input", line, col);
    char c = src[pos];
    if (c == '(' || c == '[') {
      char close = c == '(' ? ')' : ']';
      SExpr list;
      list.kind = SExpr::List;
      list.line = line;
      list.col = col;
      advance(c);
      pos++;
      while (true) {
        skip_ws();
        if (pos >= src.size()) throw ParseError("unterminated list", list.line, list.col);
        if (src[pos] == close) {
          advance(src[pos]);
          pos++;
          return list;
        }
        if (src[pos] == ')' || src[pos] == ']')
          throw ParseError("mismatched bracket", line, col);
        list.items.push_back(read());
      }
    }
    if (c == ')' || c == ']') throw ParseError("unexpected close bracket", line, col);
    SExpr atom;
    atom.kind = SExpr::Atom;
    atom.line = line;
    atom.col = col;
    while (pos < src.size()) {
      char d = src[pos];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == '[' ||
          d == ']' || d == ';')
        break;
      atom.atom += d;
      advance(d);
      pos++;
    }
    return atom;
  }
};

bool is_integer(const std::string& s) {
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); i++)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

const std::set<std::string> kKeywords = {
    "lambda", "\xce\xbb", "let", "let*", "grant", "frame", "test",
    "shift", "reset", "<=", "\xe2\x89\xa4", "+", "not", "#t", "#f"};

// Desugared intermediate tree; converted to the flat arena in preorder.
struct Tree {
  ExprKind kind;
  std::string sym;
  std::unique_ptr<Tree> a, b;
  std::vector<std::unique_ptr<Tree>> args;
  PrimOp op = PrimOp::Le;
  bool lit_is_bool = false;
  int64_t lit_int = 0;
  bool lit_bool = false;
  std::vector<std::string> perms;
};

using TreeP = std::unique_ptr<Tree>;

TreeP mk(ExprKind k) {
  auto t = std::make_unique<Tree>();
  t->kind = k;
  return t;
}

std::vector<std::string> parse_perm_list(const SExpr& s) {
  if (s.kind != SExpr::List)
    throw ParseError("expected permission list", s.line, s.col);
  std::vector<std::string> ps;
  for (const auto& it : s.items) {
    if (it.kind != SExpr::Atom || kKeywords.count(it.atom))
      throw ParseError("bad permission name", it.line, it.col);
    ps.push_back(it.atom);
  }
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

TreeP convert(const SExpr& s);

std::string parse_param(const SExpr& s) {
  if (s.kind != SExpr::Atom || is_integer(s.atom) || kKeywords.count(s.atom))
    throw ParseError("expected parameter name", s.line, s.col);
  return s.atom;
}

TreeP make_lambda(const SExpr& params, const SExpr& body) {
  if (params.kind != SExpr::List || params.items.empty())
    throw ParseError("lambda needs a nonempty parameter list", params.line, params.col);
  TreeP inner = convert(body);
  for (auto it = params.items.rbegin(); it != params.items.rend(); ++it) {
    TreeP lam = mk(ExprKind::Lam);
    lam->sym = parse_param(*it);
    lam->a = std::move(inner);
    inner = std::move(lam);
  }
  return inner;
}

TreeP convert(const SExpr& s) {
  if (s.kind == SExpr::Atom) {
    const std::string& a = s.atom;
    if (a == "#t" || a == "#f") {
      TreeP t = mk(ExprKind::Lit);
      t->lit_is_bool = true;
      t->lit_bool = (a == "#t");
      return t;
    }
    if (is_integer(a)) {
      TreeP t = mk(ExprKind::Lit);
      t->lit_int = std::stoll(a);
      return t;
    }
    if (kKeywords.count(a))
      throw ParseError("keyword '" + a + "' used as a variable", s.line, s.col);
    TreeP t = mk(ExprKind::Var);
    t->sym = a;
    return t;
  }
  if (s.items.empty()) throw ParseError("empty application", s.line, s.col);
  const SExpr& head = s.items[0];
  if (head.kind == SExpr::Atom) {
    const std::string& h = head.atom;
    if (h == "lambda" || h == "\xce\xbb") {
      if (s.items.size() != 3)
        throw ParseError("lambda expects (lambda (x ...) body)", s.line, s.col);
      return make_lambda(s.items[1], s.items[2]);
    }
    if (h == "let" || h == "let*") {
      if (s.items.size() != 3 || s.items[1].kind != SExpr::List)
        throw ParseError("let expects (let ([x e] ...) body)", s.line, s.col);
      const auto& binds = s.items[1].items;
      // let* nests; let with one binding is the same thing, and our corpus
      // only uses sequential semantics, so both desugar to nested redexes.
      TreeP body = convert(s.items[2]);
      for (auto it = binds.rbegin(); it != binds.rend(); ++it) {
        if (it->kind != SExpr::List || it->items.size() != 2)
          throw ParseError("bad let binding", it->line, it->col);
        TreeP lam = mk(ExprKind::Lam);
        lam->sym = parse_param(it->items[0]);
        lam->a = std::move(body);
        TreeP app = mk(ExprKind::App);
        app->a = std::move(lam);
        app->b = convert(it->items[1]);
        body = std::move(app);
      }
      return body;
    }
    if (h == "grant" || h == "frame") {
      if (s.items.size() != 3)
        throw ParseError(h + " expects (" + h + " (p ...) body)", s.line, s.col);
      TreeP t = mk(h == "grant" ? ExprKind::Grant : ExprKind::Frame);
      t->perms = parse_perm_list(s.items[1]);
      t->a = convert(s.items[2]);
      return t;
    }
    if (h == "test") {
      if (s.items.size() != 4)
        throw ParseError("test expects (test (p ...) then else)", s.line, s.col);
      TreeP t = mk(ExprKind::Test);
      t->perms = parse_perm_list(s.items[1]);
      t->a = convert(s.items[2]);
      t->b = convert(s.items[3]);
      return t;
    }
    if (h == "shift") {
      if (s.items.size() != 3)
        throw ParseError("shift expects (shift k body)", s.line, s.col);
      TreeP t = mk(ExprKind::Shift);
      t->sym = parse_param(s.items[1]);
      t->a = convert(s.items[2]);
      return t;
    }
    if (h == "reset") {
      if (s.items.size() != 2) throw ParseError("reset expects (reset body)", s.line, s.col);
      TreeP t = mk(ExprKind::Reset);
      t->a = convert(s.items[1]);
      return t;
    }
    if (h == "<=" || h == "\xe2\x89\xa4" || h == "+" || h == "not") {
      PrimOp op = h == "+" ? PrimOp::Add : (h == "not" ? PrimOp::Not : PrimOp::Le);
      int want = prim_arity(op);
      if (static_cast<int>(s.items.size()) - 1 != want)
        throw ParseError(std::string("primitive ") + prim_name(op) + " expects " +
                             std::to_string(want) + " argument(s)",
                         s.line, s.col);
      TreeP t = mk(ExprKind::Prim);
      t->op = op;
      for (std::size_t i = 1; i < s.items.size(); i++) t->args.push_back(convert(s.items[i]));
      return t;
    }
  }
  // Application; more than two elements curries left.
  TreeP cur = convert(s.items[0]);
  if (s.items.size() < 2) throw ParseError("application needs an argument", s.line, s.col);
  for (std::size_t i = 1; i < s.items.size(); i++) {
    TreeP app = mk(ExprKind::App);
    app->a = std::move(cur);
    app->b = convert(s.items[i]);
    cur = std::move(app);
  }
  return cur;
}

// Preorder flattening: a node's label is its arena index.
int32_t flatten(const Tree& t, Program& p) {
  int32_t label = static_cast<int32_t>(p.nodes.size());
  p.nodes.emplace_back();
  {
    ExprNode& n = p.nodes[label];
    n.kind = t.kind;
    n.op = t.op;
    n.lit_is_bool = t.lit_is_bool;
    n.lit_int = t.lit_int;
    n.lit_bool = t.lit_bool;
    if (t.kind == ExprKind::Var || t.kind == ExprKind::Lam || t.kind == ExprKind::Shift)
      n.sym = p.syms.intern(t.sym);
    for (const auto& perm : t.perms) n.perms.push_back(p.syms.intern(perm));
    std::sort(n.perms.begin(), n.perms.end());
  }
  switch (t.kind) {
    case ExprKind::Var:
    case ExprKind::Lit:
      break;
    case ExprKind::App: {
      int32_t a = flatten(*t.a, p);
      int32_t b = flatten(*t.b, p);
      p.nodes[label].a = a;
      p.nodes[label].b = b;
      break;
    }
    case ExprKind::Lam:
    case ExprKind::Grant:
    case ExprKind::Frame:
    case ExprKind::Shift:
    case ExprKind::Reset: {
      int32_t a = flatten(*t.a, p);
      p.nodes[label].a = a;
      break;
    }
    case ExprKind::Test: {
      int32_t a = flatten(*t.a, p);
      int32_t b = flatten(*t.b, p);
      p.nodes[label].a = a;
      p.nodes[label].b = b;
      break;
    }
    case ExprKind::Prim: {
      std::vector<int32_t> kids;
      for (const auto& arg : t.args) kids.push_back(flatten(*arg, p));
      ExprNode& n = p.nodes[label];
      n.arg_start = static_cast<int32_t>(p.argpool.size());
      n.arg_count = static_cast<int32_t>(kids.size());
      p.argpool.insert(p.argpool.end(), kids.begin(), kids.end());
      break;
    }
  }
  return label;
}

void merge_sorted(std::vector<Sym>& dst, const std::vector<Sym>& src) {
  std::vector<Sym> out;
  std::set_union(dst.begin(), dst.end(), src.begin(), src.end(), std::back_inserter(out));
  dst.swap(out);
}

}  // namespace

void Program::finalize() {
  fv_.assign(nodes.size(), {});
  // Preorder puts children after parents, so a reverse sweep sees children first.
  for (int32_t i = static_cast<int32_t>(nodes.size()) - 1; i >= 0; i--) {
    const ExprNode& n = nodes[i];
    std::vector<Sym>& out = fv_[i];
    switch (n.kind) {
      case ExprKind::Var:
        out.push_back(n.sym);
        break;
      case ExprKind::Lit:
        break;
      case ExprKind::App:
      case ExprKind::Test:
        out = fv_[n.a];
        merge_sorted(out, fv_[n.b]);
        break;
      case ExprKind::Lam:
      case ExprKind::Shift: {
        out = fv_[n.a];
        auto it = std::lower_bound(out.begin(), out.end(), n.sym);
        if (it != out.end() && *it == n.sym) out.erase(it);
        break;
      }
      case ExprKind::Grant:
      case ExprKind::Frame:
      case ExprKind::Reset:
        out = fv_[n.a];
        break;
      case ExprKind::Prim:
        for (int k = 0; k < n.arg_count; k++) merge_sorted(out, fv_[argpool[n.arg_start + k]]);
        break;
    }
    if (n.kind == ExprKind::Grant || n.kind == ExprKind::Frame || n.kind == ExprKind::Test)
      uses_marks_ = true;
    if (n.kind == ExprKind::Shift || n.kind == ExprKind::Reset) uses_control_ = true;
  }
  // Tree depth bounds the local-continuation length in the function-boundary
  // machine; computed here once.
  std::vector<int> depth(nodes.size(), 1);
  for (int32_t i = static_cast<int32_t>(nodes.size()) - 1; i >= 0; i--) {
    const ExprNode& n = nodes[i];
    int d = 0;
    if (n.a >= 0) d = std::max(d, depth[n.a]);
    if (n.b >= 0) d = std::max(d, depth[n.b]);
    for (int k = 0; k < n.arg_count; k++) d = std::max(d, depth[argpool[n.arg_start + k]]);
    depth[i] = d + 1;
  }
  max_depth_ = nodes.empty() ? 0 : depth[root];
}

std::string Program::print(int32_t label) const {
  const ExprNode& n = nodes[label];
  switch (n.kind) {
    case ExprKind::Var:
      return syms.name(n.sym);
    case ExprKind::Lit:
      return n.lit_is_bool ? (n.lit_bool ? "#t" : "#f") : std::to_string(n.lit_int);
    case ExprKind::App:
      return "(" + print(n.a) + " " + print(n.b) + ")";
    case ExprKind::Lam:
      return "(lambda (" + syms.name(n.sym) + ") " + print(n.a) + ")";
    case ExprKind::Shift:
      return "(shift " + syms.name(n.sym) + " " + print(n.a) + ")";
    case ExprKind::Reset:
      return "(reset " + print(n.a) + ")";
    case ExprKind::Grant:
    case ExprKind::Frame:
    case ExprKind::Test: {
      std::string head = n.kind == ExprKind::Grant ? "grant" : (n.kind == ExprKind::Frame ? "frame" : "test");
      std::string ps;
      for (std::size_t i = 0; i < n.perms.size(); i++) {
        if (i) ps += " ";
        ps += syms.name(n.perms[i]);
      }
      std::string out = "(" + head + " (" + ps + ") " + print(n.a);
      if (n.kind == ExprKind::Test) out += " " + print(n.b);
      return out + ")";
    }
    case ExprKind::Prim: {
      std::string out = "(";
      out += prim_name(n.op);
      for (int k = 0; k < n.arg_count; k++) out += " " + print(argpool[n.arg_start + k]);
      return out + ")";
    }
  }
  return "?";
}

Program parse_program(const std::string& text) {
  Lexer lex(text);
  SExpr top = lex.read();
  if (!lex.at_end()) throw ParseError("trailing input after program", lex.line, lex.col);
  TreeP tree = convert(top);
  Program p;
  p.root = flatten(*tree, p);
  p.finalize();
  return p;
}

}  // namespace aam
