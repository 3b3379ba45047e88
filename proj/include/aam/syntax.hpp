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

#ifndef AAM_SYNTAX_HPP_
#define AAM_SYNTAX_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "aam/interner.hpp"

namespace aam {

using Sym = uint32_t;

class SymbolTable {
 public:
  Sym intern(const std::string& s) { return tab_.intern(s); }
  const std::string& name(Sym s) const { return tab_.at(s); }
  std::size_t size() const { return tab_.size(); }

 private:
  Interner<std::string> tab_;
};

enum class ExprKind : uint8_t {
  Var,
  App,
  Lam,
  Lit,
  Prim,
  Grant,
  Frame,
  Test,
  Shift,
  Reset,
};

enum class PrimOp : uint8_t { Le, Add, Not };

const char* prim_name(PrimOp op);
int prim_arity(PrimOp op);

// One AST node. The node's index in Program::nodes is its label; labels are
// assigned in preorder starting at 0 and are the canonical identity of an
// expression.
struct ExprNode {
  ExprKind kind;
  Sym sym = 0;           // Var name, Lam/Shift parameter
  int32_t a = -1;        // App fn / Lam, Grant, Frame, Shift, Reset body / Test then
  int32_t b = -1;        // App arg / Test else
  int32_t arg_start = 0; // Prim: slice into Program::argpool
  int32_t arg_count = 0;
  PrimOp op = PrimOp::Le;
  bool lit_is_bool = false;
  int64_t lit_int = 0;
  bool lit_bool = false;
  std::vector<Sym> perms;  // Grant/Frame/Test permission set (sorted)
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

struct Program {
  SymbolTable syms;
  std::vector<ExprNode> nodes;
  std::vector<int32_t> argpool;
  int32_t root = -1;

  const ExprNode& node(int32_t label) const { return nodes[label]; }
  int32_t prim_arg(int32_t label, int i) const {
    return argpool[nodes[label].arg_start + i];
  }

  // Free variables, sorted; cached per node after finalize().
  const std::vector<Sym>& fv(int32_t label) const { return fv_[label]; }
  bool closed(int32_t label) const { return fv_[label].empty(); }

  int max_depth() const { return max_depth_; }
  bool uses_marks() const { return uses_marks_; }
  bool uses_control() const { return uses_control_; }

  void finalize();
  std::string print(int32_t label) const;
  std::string print() const { return print(root); }

 private:
  std::vector<std::vector<Sym>> fv_;
  int max_depth_ = 0;
  bool uses_marks_ = false;
  bool uses_control_ = false;
};

// Parses an s-expression program. Accepted forms: variables, integer and
// #t/#f literals, (lambda (x ...) e) with λ as an alias, application,
// primitives <= (alias ≤), +, not, (grant (p ...) e), (frame (p ...) e),
// (test (p ...) e e), (shift k e), (reset e), and let/let* sugar.
// Multi-parameter lambdas and multi-argument applications are curried.
// Labels are assigned in preorder on the desugared tree.
Program parse_program(const std::string& text);

}  // namespace aam

#endif  // AAM_SYNTAX_HPP_
