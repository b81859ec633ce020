// Copyright 2026 the bkcurv developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small symbolic expression language over complex variables t1..tm (base)
// and z1..zn (fibre), with Wirtinger differentiation: d/dz and d/dzbar are
// treated as independent, and re/im/abs2 are rewritten through conj before
// a derivative is taken.  Immutable nodes, shared subtrees, constant folding
// only (no other simplification).

#ifndef BKCURV_EXPR_HPP
#define BKCURV_EXPR_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "common.hpp"

namespace bk {

enum class NodeKind : std::uint8_t {
  Lit,   // complex constant
  VarT,  // t_{index+1}
  VarZ,  // z_{index+1}
  Add, Sub, Mul, Div,
  Neg,
  Pow,   // integer exponent
  Exp, Log, Re, Im, Conj, Abs2,
};

struct Node;
using ExprP = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind;
  cplx lit{0.0, 0.0};  // Lit
  int index = 0;       // VarT / VarZ, zero-based
  int ipow = 0;        // Pow
  ExprP a, b;          // children (b only for binary kinds)
};

// Which variable a derivative is taken against.
struct VarRef {
  bool fibre;  // false -> t_{index+1}, true -> z_{index+1}
  int index;   // zero-based
};

// Node constructors with constant folding (literal arithmetic and the
// additive/multiplicative identities).  All higher layers build derivative
// trees through these, which keeps repeated differentiation tractable.
ExprP lit(cplx c);
ExprP var_t(int index);
ExprP var_z(int index);
ExprP add(ExprP a, ExprP b);
ExprP sub(ExprP a, ExprP b);
ExprP mul(ExprP a, ExprP b);
ExprP divide(ExprP a, ExprP b);
ExprP neg(ExprP a);
ExprP powi(ExprP a, int k);
ExprP fexp(ExprP a);
ExprP flog(ExprP a);
ExprP fre(ExprP a);
ExprP fim(ExprP a);
ExprP fconj(ExprP a);
ExprP fabs2(ExprP a);

// Parses `src` with variables t1..tm, z1..zn ("t","z","x" alias t1,z1,z1).
// Throws Error{Parse} carrying the byte offset of the first bad token.
ExprP parse_expr(const std::string& src, int m, int n);

// Canonical text form; parse_expr(print_expr(e), m, n) is structurally
// identical to e.
std::string print_expr(const ExprP& e);

bool expr_equal(const ExprP& a, const ExprP& b);

// Evaluation at t = tvals, z = zvals (sizes must cover the indices used).
cplx eval_expr(const ExprP& e, std::span<const cplx> tvals,
               std::span<const cplx> zvals);

// Symbolic Wirtinger derivative d/dv (conjugated=false) or d/dvbar (true).
ExprP wirtinger(const ExprP& e, VarRef v, bool conjugated);

// Central-difference oracle for the same derivative, step h on both axes.
cplx fd_wirtinger(const ExprP& e, VarRef v, bool conjugated,
                  std::span<const cplx> tvals, std::span<const cplx> zvals,
                  double h = 1e-5);

// d/dt for an expression used over a real parameter t = t_{index+1}:
// the sum of the holomorphic and antiholomorphic derivatives.
ExprP real_derivative(const ExprP& e, int t_index);

// Substitutes `replacement` for every occurrence of variable v in e.
ExprP substitute(const ExprP& e, VarRef v, const ExprP& replacement);

// Largest variable indices used (m_used, n_used), for validation.
void expr_var_extent(const ExprP& e, int& m_used, int& n_used);

}  // namespace bk

#endif
