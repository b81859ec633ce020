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

#include "expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>

namespace bk {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fnv1a64_hex(const std::string& s) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(s)));
  return buf;
}

namespace {

ExprP make(NodeKind k, ExprP a = nullptr, ExprP b = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

bool is_lit(const ExprP& e, cplx v) {
  return e->kind == NodeKind::Lit && e->lit == v;
}

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

cplx powi_val(cplx base, int k) {
  if (k < 0) return 1.0 / powi_val(base, -k);
  cplx r = 1.0;
  cplx p = base;
  while (k > 0) {
    if (k & 1) r *= p;
    p *= p;
    k >>= 1;
  }
  return r;
}

}  // namespace

ExprP lit(cplx c) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Lit;
  n->lit = c;
  return n;
}

ExprP var_t(int index) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::VarT;
  n->index = index;
  return n;
}

ExprP var_z(int index) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::VarZ;
  n->index = index;
  return n;
}

ExprP add(ExprP a, ExprP b) {
  if (a->kind == NodeKind::Lit && b->kind == NodeKind::Lit) {
    cplx v = a->lit + b->lit;
    if (finite(v)) return lit(v);
  }
  if (is_lit(a, 0.0)) return b;
  if (is_lit(b, 0.0)) return a;
  return make(NodeKind::Add, std::move(a), std::move(b));
}

ExprP sub(ExprP a, ExprP b) {
  if (a->kind == NodeKind::Lit && b->kind == NodeKind::Lit) {
    cplx v = a->lit - b->lit;
    if (finite(v)) return lit(v);
  }
  if (is_lit(b, 0.0)) return a;
  if (is_lit(a, 0.0)) return neg(std::move(b));
  return make(NodeKind::Sub, std::move(a), std::move(b));
}

ExprP mul(ExprP a, ExprP b) {
  if (a->kind == NodeKind::Lit && b->kind == NodeKind::Lit) {
    cplx v = a->lit * b->lit;
    if (finite(v)) return lit(v);
  }
  if (is_lit(a, 0.0) || is_lit(b, 0.0)) return lit(0.0);
  if (is_lit(a, 1.0)) return b;
  if (is_lit(b, 1.0)) return a;
  return make(NodeKind::Mul, std::move(a), std::move(b));
}

ExprP divide(ExprP a, ExprP b) {
  if (b->kind == NodeKind::Lit && b->lit != cplx(0.0)) {
    if (a->kind == NodeKind::Lit) {
      cplx v = a->lit / b->lit;
      if (finite(v)) return lit(v);
    }
    if (b->lit == cplx(1.0)) return a;
  }
  return make(NodeKind::Div, std::move(a), std::move(b));
}

ExprP neg(ExprP a) {
  if (a->kind == NodeKind::Lit) return lit(-a->lit);
  return make(NodeKind::Neg, std::move(a));
}

ExprP powi(ExprP a, int k) {
  if (k == 0) return lit(1.0);
  if (k == 1) return a;
  if (a->kind == NodeKind::Lit) {
    cplx v = powi_val(a->lit, k);
    if (finite(v)) return lit(v);
  }
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Pow;
  n->ipow = k;
  n->a = std::move(a);
  return n;
}

ExprP fexp(ExprP a) {
  if (a->kind == NodeKind::Lit) {
    cplx v = std::exp(a->lit);
    if (finite(v)) return lit(v);
  }
  return make(NodeKind::Exp, std::move(a));
}

ExprP flog(ExprP a) {
  if (a->kind == NodeKind::Lit && a->lit != cplx(0.0)) {
    cplx v = std::log(a->lit);
    if (finite(v)) return lit(v);
  }
  return make(NodeKind::Log, std::move(a));
}

ExprP fre(ExprP a) {
  if (a->kind == NodeKind::Lit) return lit(a->lit.real());
  return make(NodeKind::Re, std::move(a));
}

ExprP fim(ExprP a) {
  if (a->kind == NodeKind::Lit) return lit(a->lit.imag());
  return make(NodeKind::Im, std::move(a));
}

ExprP fconj(ExprP a) {
  if (a->kind == NodeKind::Lit) return lit(std::conj(a->lit));
  return make(NodeKind::Conj, std::move(a));
}

ExprP fabs2(ExprP a) {
  if (a->kind == NodeKind::Lit) return lit(std::norm(a->lit));
  return make(NodeKind::Abs2, std::move(a));
}

// ---------------------------------------------------------------------------
// Parser: recursive descent, byte offsets kept for error reporting.
//
//   expr  := term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' INT)?
//   atom  := NUMBER | 'i' | VAR | FUNC '(' expr ')' | '(' expr ')'
// ---------------------------------------------------------------------------

namespace {

struct Parser {
  const std::string& src;
  std::size_t pos = 0;
  int m, n;

  [[noreturn]] void fail(const std::string& msg, std::size_t at) {
    throw Error(ErrCode::Parse, msg + " at byte " + std::to_string(at), at);
  }

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  ExprP parse() {
    ExprP e = expr();
    skip_ws();
    if (pos != src.size()) fail("trailing input", pos);
    return e;
  }

  ExprP expr() {
    ExprP e = term();
    for (;;) {
      if (eat('+')) e = add(e, term());
      else if (eat('-')) e = sub(e, term());
      else return e;
    }
  }

  ExprP term() {
    ExprP e = unary();
    for (;;) {
      if (eat('*')) e = mul(e, unary());
      else if (eat('/')) e = divide(e, unary());
      else return e;
    }
  }

  ExprP unary() {
    if (eat('-')) return neg(unary());
    return power();
  }

  ExprP power() {
    ExprP base = atom();
    skip_ws();
    if (pos < src.size() && src[pos] == '^') {
      ++pos;
      skip_ws();
      std::size_t at = pos;
      bool negexp = false;
      if (pos < src.size() && src[pos] == '-') {
        negexp = true;
        ++pos;
      }
      std::size_t start = pos;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
      if (pos == start) fail("expected integer exponent", at);
      int k = 0;
      auto res = std::from_chars(src.data() + start, src.data() + pos, k);
      if (res.ec != std::errc() || k > 999) fail("exponent out of range", at);
      return powi(base, negexp ? -k : k);
    }
    return base;
  }

  ExprP atom() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of input", pos);
    std::size_t at = pos;
    char c = src[pos];
    if (c == '(') {
      ++pos;
      ExprP e = expr();
      if (!eat(')')) fail("expected ')'", pos);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number(at);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident(at);
    fail(std::string("unexpected character '") + c + "'", at);
  }

  ExprP number(std::size_t at) {
    std::size_t end = pos;
    while (end < src.size() && std::isdigit(static_cast<unsigned char>(src[end]))) ++end;
    if (end + 1 < src.size() && src[end] == '.' &&
        std::isdigit(static_cast<unsigned char>(src[end + 1]))) {
      ++end;
      while (end < src.size() && std::isdigit(static_cast<unsigned char>(src[end]))) ++end;
    }
    if (end < src.size() && (src[end] == 'e' || src[end] == 'E')) {
      std::size_t mark = end + 1;
      if (mark < src.size() && (src[mark] == '+' || src[mark] == '-')) ++mark;
      std::size_t dstart = mark;
      while (mark < src.size() && std::isdigit(static_cast<unsigned char>(src[mark]))) ++mark;
      if (mark > dstart) end = mark;  // exponent only if digits follow
    }
    double v = 0.0;
    auto res = std::from_chars(src.data() + at, src.data() + end, v);
    if (res.ec != std::errc() || res.ptr != src.data() + end)
      fail("malformed number", at);
    pos = end;
    return lit(v);
  }

  ExprP ident(std::size_t at) {
    std::size_t end = pos;
    while (end < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[end])) || src[end] == '_'))
      ++end;
    std::string name = src.substr(at, end - at);
    pos = end;
    if (name == "i") return lit(cplx(0.0, 1.0));
    if (name == "exp" || name == "log" || name == "re" || name == "im" ||
        name == "conj" || name == "abs2") {
      if (!eat('(')) fail("expected '(' after " + name, pos);
      ExprP arg = expr();
      if (!eat(')')) fail("expected ')'", pos);
      if (name == "exp") return fexp(arg);
      if (name == "log") return flog(arg);
      if (name == "re") return fre(arg);
      if (name == "im") return fim(arg);
      if (name == "conj") return fconj(arg);
      return fabs2(arg);
    }
    // Variables: t<k>, z<k>, with t,z,x shorthands for t1,z1,z1.
    if (name == "t") return check_var(false, 1, at);
    if (name == "z" || name == "x") return check_var(true, 1, at);
    if ((name[0] == 't' || name[0] == 'z') && name.size() > 1) {
      int k = 0;
      auto res = std::from_chars(name.data() + 1, name.data() + name.size(), k);
      if (res.ec == std::errc() && res.ptr == name.data() + name.size() && k >= 1)
        return check_var(name[0] == 'z', k, at);
    }
    fail("unknown identifier '" + name + "'", at);
  }

  ExprP check_var(bool fibre, int k, std::size_t at) {
    int bound = fibre ? n : m;
    if (k > bound)
      fail("variable " + std::string(fibre ? "z" : "t") + std::to_string(k) +
               " exceeds declared dimension " + std::to_string(bound),
           at);
    return fibre ? var_z(k - 1) : var_t(k - 1);
  }
};

}  // namespace

ExprP parse_expr(const std::string& src, int m, int n) {
  if (m < 0 || n < 0) throw Error(ErrCode::Invalid, "negative dimension");
  Parser p{src, 0, m, n};
  return p.parse();
}

// ---------------------------------------------------------------------------
// Printer.  Binary operators are left-associative; a child is parenthesized
// when its precedence is below what its position requires.
// ---------------------------------------------------------------------------

namespace {

int prec_of(const Node& e) {
  switch (e.kind) {
    case NodeKind::Add:
    case NodeKind::Sub:
      return 10;
    case NodeKind::Mul:
    case NodeKind::Div:
      return 20;
    case NodeKind::Neg:
      return 30;
    case NodeKind::Pow:
      return 40;
    case NodeKind::Lit:
      if (e.lit.imag() != 0.0) return 50;    // printed with its own parens
      if (e.lit.real() < 0.0) return 30;     // prints with a leading '-'
      return 50;
    default:
      return 50;
  }
}

void print_rec(const ExprP& e, int need, std::string& out) {
  int p = prec_of(*e);
  bool paren = p < need;
  if (paren) out += '(';
  switch (e->kind) {
    case NodeKind::Lit: {
      double re = e->lit.real(), im = e->lit.imag();
      if (im == 0.0) {
        out += format_double(re);
      } else {
        out += '(';
        out += format_double(re);
        out += im < 0.0 ? "-" : "+";
        out += format_double(std::abs(im));
        out += "*i)";
      }
      break;
    }
    case NodeKind::VarT:
      out += "t" + std::to_string(e->index + 1);
      break;
    case NodeKind::VarZ:
      out += "z" + std::to_string(e->index + 1);
      break;
    case NodeKind::Add:
      print_rec(e->a, 10, out);
      out += '+';
      print_rec(e->b, 11, out);
      break;
    case NodeKind::Sub:
      print_rec(e->a, 10, out);
      out += '-';
      print_rec(e->b, 11, out);
      break;
    case NodeKind::Mul:
      print_rec(e->a, 20, out);
      out += '*';
      print_rec(e->b, 21, out);
      break;
    case NodeKind::Div:
      print_rec(e->a, 20, out);
      out += '/';
      print_rec(e->b, 21, out);
      break;
    case NodeKind::Neg:
      out += '-';
      print_rec(e->a, 31, out);
      break;
    case NodeKind::Pow:
      print_rec(e->a, 50, out);
      out += '^';
      if (e->ipow < 0) out += '-';
      out += std::to_string(std::abs(e->ipow));
      break;
    case NodeKind::Exp: out += "exp("; print_rec(e->a, 0, out); out += ')'; break;
    case NodeKind::Log: out += "log("; print_rec(e->a, 0, out); out += ')'; break;
    case NodeKind::Re:  out += "re(";  print_rec(e->a, 0, out); out += ')'; break;
    case NodeKind::Im:  out += "im(";  print_rec(e->a, 0, out); out += ')'; break;
    case NodeKind::Conj: out += "conj("; print_rec(e->a, 0, out); out += ')'; break;
    case NodeKind::Abs2: out += "abs2("; print_rec(e->a, 0, out); out += ')'; break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string print_expr(const ExprP& e) {
  std::string out;
  print_rec(e, 0, out);
  return out;
}

bool expr_equal(const ExprP& a, const ExprP& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::Lit:
      return a->lit == b->lit;
    case NodeKind::VarT:
    case NodeKind::VarZ:
      return a->index == b->index;
    case NodeKind::Pow:
      return a->ipow == b->ipow && expr_equal(a->a, b->a);
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div:
      return expr_equal(a->a, b->a) && expr_equal(a->b, b->b);
    default:
      return expr_equal(a->a, b->a);
  }
}

cplx eval_expr(const ExprP& e, std::span<const cplx> tvals,
               std::span<const cplx> zvals) {
  switch (e->kind) {
    case NodeKind::Lit:
      return e->lit;
    case NodeKind::VarT:
      if (static_cast<std::size_t>(e->index) >= tvals.size())
        throw Error(ErrCode::Invalid, "t index out of range in eval");
      return tvals[e->index];
    case NodeKind::VarZ:
      if (static_cast<std::size_t>(e->index) >= zvals.size())
        throw Error(ErrCode::Invalid, "z index out of range in eval");
      return zvals[e->index];
    case NodeKind::Add: return eval_expr(e->a, tvals, zvals) + eval_expr(e->b, tvals, zvals);
    case NodeKind::Sub: return eval_expr(e->a, tvals, zvals) - eval_expr(e->b, tvals, zvals);
    case NodeKind::Mul: return eval_expr(e->a, tvals, zvals) * eval_expr(e->b, tvals, zvals);
    case NodeKind::Div: return eval_expr(e->a, tvals, zvals) / eval_expr(e->b, tvals, zvals);
    case NodeKind::Neg: return -eval_expr(e->a, tvals, zvals);
    case NodeKind::Pow: return powi_val(eval_expr(e->a, tvals, zvals), e->ipow);
    case NodeKind::Exp: return std::exp(eval_expr(e->a, tvals, zvals));
    case NodeKind::Log: return std::log(eval_expr(e->a, tvals, zvals));
    case NodeKind::Re:  return eval_expr(e->a, tvals, zvals).real();
    case NodeKind::Im:  return eval_expr(e->a, tvals, zvals).imag();
    case NodeKind::Conj: return std::conj(eval_expr(e->a, tvals, zvals));
    case NodeKind::Abs2: return std::norm(eval_expr(e->a, tvals, zvals));
  }
  throw Error(ErrCode::Internal, "unhandled node kind in eval");
}

// ---------------------------------------------------------------------------
// Wirtinger differentiation.  `conjugated` selects d/dvbar.  The chain rule
// for conj flips the flag: d(conj u)/dv = conj(du/dvbar).  re/im/abs2 are
// expanded through conj on the fly:
//   re u = (u + conj u)/2,  im u = (u - conj u)/(2i),  abs2 u = u * conj u.
// ---------------------------------------------------------------------------

namespace {

ExprP derive(const ExprP& e, VarRef v, bool cf) {
  switch (e->kind) {
    case NodeKind::Lit:
      return lit(0.0);
    case NodeKind::VarT:
      return (!v.fibre && e->index == v.index && !cf) ? lit(1.0) : lit(0.0);
    case NodeKind::VarZ:
      return (v.fibre && e->index == v.index && !cf) ? lit(1.0) : lit(0.0);
    case NodeKind::Add:
      return add(derive(e->a, v, cf), derive(e->b, v, cf));
    case NodeKind::Sub:
      return sub(derive(e->a, v, cf), derive(e->b, v, cf));
    case NodeKind::Mul:
      return add(mul(derive(e->a, v, cf), e->b), mul(e->a, derive(e->b, v, cf)));
    case NodeKind::Div:
      return divide(sub(mul(derive(e->a, v, cf), e->b), mul(e->a, derive(e->b, v, cf))),
                    mul(e->b, e->b));
    case NodeKind::Neg:
      return neg(derive(e->a, v, cf));
    case NodeKind::Pow:
      return mul(mul(lit(static_cast<double>(e->ipow)), powi(e->a, e->ipow - 1)),
                 derive(e->a, v, cf));
    case NodeKind::Exp:
      return mul(fexp(e->a), derive(e->a, v, cf));
    case NodeKind::Log:
      return divide(derive(e->a, v, cf), e->a);
    case NodeKind::Conj:
      return fconj(derive(e->a, v, !cf));
    case NodeKind::Re:
      // (du + conj(d u / dvbar-flipped)) / 2
      return divide(add(derive(e->a, v, cf), fconj(derive(e->a, v, !cf))), lit(2.0));
    case NodeKind::Im:
      return divide(sub(derive(e->a, v, cf), fconj(derive(e->a, v, !cf))),
                    lit(cplx(0.0, 2.0)));
    case NodeKind::Abs2:
      // d(u * conj u) = du * conj u + u * conj(du with flag flipped)
      return add(mul(derive(e->a, v, cf), fconj(e->a)),
                 mul(e->a, fconj(derive(e->a, v, !cf))));
  }
  throw Error(ErrCode::Internal, "unhandled node kind in derive");
}

}  // namespace

ExprP wirtinger(const ExprP& e, VarRef v, bool conjugated) {
  return derive(e, v, conjugated);
}

cplx fd_wirtinger(const ExprP& e, VarRef v, bool conjugated,
                  std::span<const cplx> tvals, std::span<const cplx> zvals,
                  double h) {
  std::vector<cplx> t(tvals.begin(), tvals.end());
  std::vector<cplx> z(zvals.begin(), zvals.end());
  cplx& slot = v.fibre ? z.at(v.index) : t.at(v.index);
  cplx saved = slot;
  auto at = [&](cplx shift) {
    slot = saved + shift;
    return eval_expr(e, t, z);
  };
  cplx dx = (at(cplx(h, 0.0)) - at(cplx(-h, 0.0))) / (2.0 * h);
  cplx dy = (at(cplx(0.0, h)) - at(cplx(0.0, -h))) / (2.0 * h);
  // d/dv = (dx - i dy)/2, d/dvbar = (dx + i dy)/2
  cplx iu(0.0, 1.0);
  return conjugated ? (dx + iu * dy) / 2.0 : (dx - iu * dy) / 2.0;
}

ExprP real_derivative(const ExprP& e, int t_index) {
  VarRef v{false, t_index};
  return add(wirtinger(e, v, false), wirtinger(e, v, true));
}

ExprP substitute(const ExprP& e, VarRef v, const ExprP& replacement) {
  switch (e->kind) {
    case NodeKind::Lit:
      return e;
    case NodeKind::VarT:
      return (!v.fibre && e->index == v.index) ? replacement : e;
    case NodeKind::VarZ:
      return (v.fibre && e->index == v.index) ? replacement : e;
    case NodeKind::Add:
      return add(substitute(e->a, v, replacement), substitute(e->b, v, replacement));
    case NodeKind::Sub:
      return sub(substitute(e->a, v, replacement), substitute(e->b, v, replacement));
    case NodeKind::Mul:
      return mul(substitute(e->a, v, replacement), substitute(e->b, v, replacement));
    case NodeKind::Div:
      return divide(substitute(e->a, v, replacement), substitute(e->b, v, replacement));
    case NodeKind::Neg:
      return neg(substitute(e->a, v, replacement));
    case NodeKind::Pow:
      return powi(substitute(e->a, v, replacement), e->ipow);
    case NodeKind::Exp:
      return fexp(substitute(e->a, v, replacement));
    case NodeKind::Log:
      return flog(substitute(e->a, v, replacement));
    case NodeKind::Re:
      return fre(substitute(e->a, v, replacement));
    case NodeKind::Im:
      return fim(substitute(e->a, v, replacement));
    case NodeKind::Conj:
      return fconj(substitute(e->a, v, replacement));
    case NodeKind::Abs2:
      return fabs2(substitute(e->a, v, replacement));
  }
  throw Error(ErrCode::Internal, "unhandled node kind in substitute");
}

void expr_var_extent(const ExprP& e, int& m_used, int& n_used) {
  switch (e->kind) {
    case NodeKind::VarT:
      if (e->index + 1 > m_used) m_used = e->index + 1;
      return;
    case NodeKind::VarZ:
      if (e->index + 1 > n_used) n_used = e->index + 1;
      return;
    default:
      if (e->a) expr_var_extent(e->a, m_used, n_used);
      if (e->b) expr_var_extent(e->b, m_used, n_used);
  }
}

}  // namespace bk
