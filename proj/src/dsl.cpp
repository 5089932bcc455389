// Copyright 2026 The lcsolve Authors
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

#include "lcsolve/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "lcsolve/error.hpp"

namespace lcs::dsl {

const char* CmpOpName(CmpOp op) {
  switch (op) {
    case CmpOp::kEq: return "=";
    case CmpOp::kNe: return "!=";
    case CmpOp::kLe: return "<=";
    case CmpOp::kGe: return ">=";
    case CmpOp::kLt: return "<";
    case CmpOp::kGt: return ">";
  }
  return "?";
}

bool Compare(CmpOp op, long a, long b) {
  switch (op) {
    case CmpOp::kEq: return a == b;
    case CmpOp::kNe: return a != b;
    case CmpOp::kLe: return a <= b;
    case CmpOp::kGe: return a >= b;
    case CmpOp::kLt: return a < b;
    case CmpOp::kGt: return a > b;
  }
  return false;
}

namespace {

struct Token {
  enum class Kind { kInt, kIdent, kSym, kEnd };
  Kind kind = Kind::kEnd;
  std::string text;
  long value = 0;
  int line = 1;
  int col = 1;
};

[[noreturn]] void Fail(const Token& t, const std::string& msg) {
  throw SyntaxError(ErrorCode::kSyntaxError, t.line, t.col, msg);
}

std::vector<Token> Lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t k) {
    for (size_t x = 0; x < k; ++x) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  static const char* kSyms[] = {"..", "->", "!=", "<=", ">=", "(", ")", "[", "]", "|",
                                ";",  ":",  "=",  "<",  ">",  "+", "-"};
  while (i < s.size()) {
    const char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    if (ch == '#') {  // comment to end of line
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Token::Kind::kInt;
      t.text = s.substr(i, j - i);
      if (t.text.size() > 9) Fail(t, "integer too large");
      t.value = std::stol(t.text);
      advance(j - i);
      out.push_back(t);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      size_t j = i;
      auto word = [&](size_t k) {
        return k < s.size() && (std::isalnum(static_cast<unsigned char>(s[k])) || s[k] == '_');
      };
      while (word(j) ||
             (s[j] == '-' && j + 1 < s.size() && std::isalpha(static_cast<unsigned char>(s[j + 1])))) {
        ++j;
      }
      t.kind = Token::Kind::kIdent;
      t.text = s.substr(i, j - i);
      advance(j - i);
      out.push_back(t);
      continue;
    }
    bool matched = false;
    for (const char* sym : kSyms) {
      const std::string sy(sym);
      if (s.compare(i, sy.size(), sy) == 0) {
        t.kind = Token::Kind::kSym;
        t.text = sy;
        advance(sy.size());
        out.push_back(t);
        matched = true;
        break;
      }
    }
    if (!matched) Fail(t, std::string("unexpected character '") + ch + "'");
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ProblemSpec Spec() {
    ProblemSpec spec;
    Keyword("colors");
    Expect(":");
    spec.lo = static_cast<int>(Int());
    Expect("..");
    const Token& hi_tok = Peek();
    spec.hi = static_cast<int>(Int());
    if (spec.hi < spec.lo) Fail(hi_tok, "empty color range");
    if (spec.hi - spec.lo >= 64) Fail(hi_tok, "at most 64 colors");
    Expect(";");
    Keyword("algebra");
    Expect(":");
    const Token& alg = Peek();
    if (alg.kind != Token::Kind::kIdent) Fail(alg, "expected an algebra name");
    try {
      WeightAlgebra::FromName(alg.text);
    } catch (const LcsError&) {
      Fail(alg, "unknown algebra '" + alg.text + "'");
    }
    spec.algebra = Next().text;
    Expect(";");
    Keyword("cost");
    Expect(":");
    const Token& cost_tok = Peek();
    spec.cost = Sum();
    if (HasAggregate(*spec.cost)) Fail(cost_tok, "cost may use only c(v) and integers");
    Expect(";");
    Keyword("check");
    Expect(":");
    spec.check = Implies();
    Expect(";");
    while (IsWord("cap")) {
      Next();
      const Token& c_tok = Peek();
      const int color = static_cast<int>(Int());
      if (color < spec.lo || color > spec.hi) Fail(c_tok, "cap for a color outside the range");
      Keyword("at");
      const int cap = static_cast<int>(Int());
      Expect(";");
      spec.caps.push_back({color, cap});
    }
    if (Peek().kind != Token::Kind::kEnd) Fail(Peek(), "unexpected '" + Peek().text + "'");
    return spec;
  }

 private:
  const Token& Peek(int k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& Next() {
    const Token& t = Peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool IsSym(const char* s, int k = 0) const {
    return Peek(k).kind == Token::Kind::kSym && Peek(k).text == s;
  }
  bool IsWord(const char* s, int k = 0) const {
    return Peek(k).kind == Token::Kind::kIdent && Peek(k).text == s;
  }
  void Expect(const char* s) {
    if (!IsSym(s)) Fail(Peek(), std::string("expected '") + s + "'" + Found());
    Next();
  }
  void Keyword(const char* s) {
    if (!IsWord(s)) Fail(Peek(), std::string("expected '") + s + "'" + Found());
    Next();
  }
  std::string Found() const {
    return Peek().kind == Token::Kind::kEnd ? " at end of input"
                                            : ", found '" + Peek().text + "'";
  }
  long Int() {
    if (Peek().kind != Token::Kind::kInt) Fail(Peek(), "expected an integer" + Found());
    return Next().value;
  }

  static bool HasAggregate(const Arith& a) {
    if (a.kind == Arith::Kind::kCount || a.kind == Arith::Kind::kSum) return true;
    return (a.a && HasAggregate(*a.a)) || (a.b && HasAggregate(*a.b));
  }

  std::optional<CmpOp> CmpAhead() const {
    if (Peek().kind != Token::Kind::kSym) return std::nullopt;
    const std::string& s = Peek().text;
    if (s == "=") return CmpOp::kEq;
    if (s == "!=") return CmpOp::kNe;
    if (s == "<=") return CmpOp::kLe;
    if (s == ">=") return CmpOp::kGe;
    if (s == "<") return CmpOp::kLt;
    if (s == ">") return CmpOp::kGt;
    return std::nullopt;
  }

  // ---- boolean level ----
  std::shared_ptr<const BoolExpr> Implies() {
    auto l = Or();
    if (!IsSym("->")) return l;
    Next();
    auto e = std::make_shared<BoolExpr>();
    e->kind = BoolExpr::Kind::kImplies;
    e->a = l;
    e->b = Implies();
    return e;
  }
  std::shared_ptr<const BoolExpr> Or() {
    auto l = And();
    while (IsWord("or")) {
      Next();
      auto e = std::make_shared<BoolExpr>();
      e->kind = BoolExpr::Kind::kOr;
      e->a = l;
      e->b = And();
      l = e;
    }
    return l;
  }
  std::shared_ptr<const BoolExpr> And() {
    auto l = Not();
    while (IsWord("and")) {
      Next();
      auto e = std::make_shared<BoolExpr>();
      e->kind = BoolExpr::Kind::kAnd;
      e->a = l;
      e->b = Not();
      l = e;
    }
    return l;
  }
  std::shared_ptr<const BoolExpr> Not() {
    if (!IsWord("not")) return Atom();
    Next();
    auto e = std::make_shared<BoolExpr>();
    e->kind = BoolExpr::Kind::kNot;
    e->a = Not();
    return e;
  }
  std::shared_ptr<const BoolExpr> Atom() {
    if (IsSym("(")) {
      Next();
      auto e = Implies();
      Expect(")");
      return e;
    }
    if (IsWord("exists") || IsWord("forall")) {
      const bool all = Next().text == "forall";
      Expect("(");
      const bool closed = Hood();
      Expect("|");
      auto pred = PredOr();
      Expect(")");
      // exists: count >= 1; forall: no neighbor fails the predicate
      auto cnt = std::make_shared<Arith>();
      cnt->kind = Arith::Kind::kCount;
      cnt->closed = closed;
      if (all) {
        auto neg = std::make_shared<ColorPred>();
        neg->kind = ColorPred::Kind::kNot;
        neg->a = pred;
        cnt->pred = neg;
      } else {
        cnt->pred = pred;
      }
      auto k = std::make_shared<Arith>();
      k->value = all ? 0 : 1;
      auto e = std::make_shared<BoolExpr>();
      e->op = all ? CmpOp::kEq : CmpOp::kGe;
      e->lhs = cnt;
      e->rhs = k;
      return e;
    }
    if (Peek().kind == Token::Kind::kSym && Peek().text == ";") {
      Fail(Peek(), "expected an expression");
    }
    auto lhs = Sum();
    const auto op = CmpAhead();
    if (!op) Fail(Peek(), "expected a comparison" + Found());
    Next();
    auto e = std::make_shared<BoolExpr>();
    e->op = *op;
    e->lhs = lhs;
    e->rhs = Sum();
    return e;
  }

  // ---- arithmetic level ----
  std::shared_ptr<const Arith> Sum() {
    auto l = Term();
    while (IsSym("+") || IsSym("-")) {
      const bool plus = Next().text == "+";
      auto e = std::make_shared<Arith>();
      e->kind = plus ? Arith::Kind::kAdd : Arith::Kind::kSub;
      e->a = l;
      e->b = Term();
      l = e;
    }
    return l;
  }
  std::shared_ptr<const Arith> Term() {
    auto e = std::make_shared<Arith>();
    if (Peek().kind == Token::Kind::kInt) {
      e->value = Next().value;
      return e;
    }
    if (IsWord("c") && IsSym("(", 1)) {
      const Token& at = Peek();
      Next();
      Next();
      const Token& who = Peek();
      if (who.kind != Token::Kind::kIdent) Fail(who, "expected c(v)");
      if (who.text == "u") {
        throw SyntaxError(ErrorCode::kSymmetryViolation, at.line, at.col,
                          "c(u) may only appear inside count or sum");
      }
      if (who.text != "v") Fail(who, "unknown vertex '" + who.text + "'");
      Next();
      Expect(")");
      e->kind = Arith::Kind::kCenter;
      return e;
    }
    if (IsWord("count")) {
      Next();
      Expect("(");
      e->kind = Arith::Kind::kCount;
      e->closed = Hood();
      Expect("|");
      e->pred = PredOr();
      Expect(")");
      return e;
    }
    if (IsWord("sum")) {
      Next();
      Expect("(");
      e->kind = Arith::Kind::kSum;
      e->closed = Hood();
      Expect("|");
      CU();
      Expect(")");
      return e;
    }
    Fail(Peek(), "expected an integer, c(v), count or sum" + Found());
  }

  // "u in N(v)" or "u in N[v]"; true for the closed neighborhood.
  bool Hood() {
    Keyword("u");
    Keyword("in");
    Keyword("N");
    bool closed;
    if (IsSym("(")) {
      closed = false;
    } else if (IsSym("[")) {
      closed = true;
    } else {
      Fail(Peek(), "expected N(v) or N[v]");
    }
    Next();
    Keyword("v");
    Expect(closed ? "]" : ")");
    return closed;
  }
  void CU() {
    Keyword("c");
    Expect("(");
    if (!IsWord("u")) Fail(Peek(), "expected c(u) inside an aggregate");
    Next();
    Expect(")");
  }

  std::shared_ptr<const ColorPred> PredOr() {
    auto l = PredAnd();
    while (IsWord("or")) {
      Next();
      auto e = std::make_shared<ColorPred>();
      e->kind = ColorPred::Kind::kOr;
      e->a = l;
      e->b = PredAnd();
      l = e;
    }
    return l;
  }
  std::shared_ptr<const ColorPred> PredAnd() {
    auto l = PredAtom();
    while (IsWord("and")) {
      Next();
      auto e = std::make_shared<ColorPred>();
      e->kind = ColorPred::Kind::kAnd;
      e->a = l;
      e->b = PredAtom();
      l = e;
    }
    return l;
  }
  std::shared_ptr<const ColorPred> PredAtom() {
    auto e = std::make_shared<ColorPred>();
    if (IsWord("not")) {
      Next();
      e->kind = ColorPred::Kind::kNot;
      e->a = PredAtom();
      return e;
    }
    if (IsSym("(")) {
      Next();
      auto inner = PredOr();
      Expect(")");
      return inner;
    }
    CU();
    const auto op = CmpAhead();
    if (!op) Fail(Peek(), "expected a comparison" + Found());
    Next();
    e->op = *op;
    e->value = static_cast<int>(Int());
    return e;
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

// ---- printing ----

std::string Print(const ColorPred& p) {
  switch (p.kind) {
    case ColorPred::Kind::kCmp:
      return std::string("(") + CmpOpName(p.op) + " c(u) " + std::to_string(p.value) + ")";
    case ColorPred::Kind::kAnd: return "(and " + Print(*p.a) + " " + Print(*p.b) + ")";
    case ColorPred::Kind::kOr: return "(or " + Print(*p.a) + " " + Print(*p.b) + ")";
    case ColorPred::Kind::kNot: return "(not " + Print(*p.a) + ")";
  }
  return "?";
}

std::string Print(const Arith& a) {
  const char* hood = a.closed ? "N[v]" : "N(v)";
  switch (a.kind) {
    case Arith::Kind::kInt: return std::to_string(a.value);
    case Arith::Kind::kCenter: return "c(v)";
    case Arith::Kind::kCount: return std::string("(count ") + hood + " " + Print(*a.pred) + ")";
    case Arith::Kind::kSum: return std::string("(sum ") + hood + ")";
    case Arith::Kind::kAdd: return "(+ " + Print(*a.a) + " " + Print(*a.b) + ")";
    case Arith::Kind::kSub: return "(- " + Print(*a.a) + " " + Print(*a.b) + ")";
  }
  return "?";
}

std::string Print(const BoolExpr& b) {
  switch (b.kind) {
    case BoolExpr::Kind::kCmp:
      return std::string("(") + CmpOpName(b.op) + " " + Print(*b.lhs) + " " + Print(*b.rhs) + ")";
    case BoolExpr::Kind::kAnd: return "(and " + Print(*b.a) + " " + Print(*b.b) + ")";
    case BoolExpr::Kind::kOr: return "(or " + Print(*b.a) + " " + Print(*b.b) + ")";
    case BoolExpr::Kind::kNot: return "(not " + Print(*b.a) + ")";
    case BoolExpr::Kind::kImplies: return "(-> " + Print(*b.a) + " " + Print(*b.b) + ")";
  }
  return "?";
}

// ---- evaluation ----

bool Holds(const ColorPred& p, long value) {
  switch (p.kind) {
    case ColorPred::Kind::kCmp: return Compare(p.op, value, p.value);
    case ColorPred::Kind::kAnd: return Holds(*p.a, value) && Holds(*p.b, value);
    case ColorPred::Kind::kOr: return Holds(*p.a, value) || Holds(*p.b, value);
    case ColorPred::Kind::kNot: return !Holds(*p.a, value);
  }
  return false;
}

struct View {
  long center;
  std::vector<long> around;  // neighbor color values
};

long Eval(const Arith& a, const View& w) {
  switch (a.kind) {
    case Arith::Kind::kInt: return a.value;
    case Arith::Kind::kCenter: return w.center;
    case Arith::Kind::kCount: {
      long c = a.closed && Holds(*a.pred, w.center) ? 1 : 0;
      for (long x : w.around) c += Holds(*a.pred, x);
      return c;
    }
    case Arith::Kind::kSum: {
      long s = a.closed ? w.center : 0;
      for (long x : w.around) s += x;
      return s;
    }
    case Arith::Kind::kAdd: return Eval(*a.a, w) + Eval(*a.b, w);
    case Arith::Kind::kSub: return Eval(*a.a, w) - Eval(*a.b, w);
  }
  return 0;
}

bool Eval(const BoolExpr& b, const View& w) {
  switch (b.kind) {
    case BoolExpr::Kind::kCmp: return Compare(b.op, Eval(*b.lhs, w), Eval(*b.rhs, w));
    case BoolExpr::Kind::kAnd: return Eval(*b.a, w) && Eval(*b.b, w);
    case BoolExpr::Kind::kOr: return Eval(*b.a, w) || Eval(*b.b, w);
    case BoolExpr::Kind::kNot: return !Eval(*b.a, w);
    case BoolExpr::Kind::kImplies: return !Eval(*b.a, w) || Eval(*b.b, w);
  }
  return false;
}

// ---- cap inference ----

bool IsConstant(const Arith& a) {
  switch (a.kind) {
    case Arith::Kind::kInt: return true;
    case Arith::Kind::kAdd:
    case Arith::Kind::kSub: return IsConstant(*a.a) && IsConstant(*a.b);
    default: return false;
  }
}

// Sums of nonnegative terms only.
bool IsMonotone(const Arith& a) {
  switch (a.kind) {
    case Arith::Kind::kAdd: return IsMonotone(*a.a) && IsMonotone(*a.b);
    case Arith::Kind::kSub: return false;
    default: return true;
  }
}

CmpOp Flip(CmpOp op) {
  switch (op) {
    case CmpOp::kLe: return CmpOp::kGe;
    case CmpOp::kGe: return CmpOp::kLe;
    case CmpOp::kLt: return CmpOp::kGt;
    case CmpOp::kGt: return CmpOp::kLt;
    default: return op;
  }
}

struct CapNeeds {
  int lo, hi;
  std::map<int, long> required;  // color value -> smallest safe cap
  std::map<int, long> inferred;
  std::set<int> unbounded;

  void Colors(const Arith& a, std::set<int>* out) const {
    if (a.kind == Arith::Kind::kCount) {
      for (int x = lo; x <= hi; ++x) {
        if (Holds(*a.pred, x)) out->insert(x);
      }
    } else if (a.kind == Arith::Kind::kSum) {
      for (int x = lo; x <= hi; ++x) {
        if (x != 0) out->insert(x);
      }
    }
    if (a.a) Colors(*a.a, out);
    if (a.b) Colors(*a.b, out);
  }

  void Walk(const BoolExpr& b) {
    if (b.kind != BoolExpr::Kind::kCmp) {
      if (b.a) Walk(*b.a);
      if (b.b) Walk(*b.b);
      return;
    }
    const Arith* side = b.lhs.get();
    const Arith* bound = b.rhs.get();
    CmpOp op = b.op;
    if (IsConstant(*side)) {
      std::swap(side, bound);
      op = Flip(op);
    }
    std::set<int> colors;
    Colors(*side, &colors);
    if (colors.empty()) return;
    if (!IsConstant(*bound) || !IsMonotone(*side)) {
      unbounded.insert(colors.begin(), colors.end());
      return;
    }
    const long k = std::max(0L, Eval(*bound, View{0, {}}));
    const long need = (op == CmpOp::kGe || op == CmpOp::kLt) ? k : k + 1;
    for (int x : colors) {
      required[x] = std::max(required[x], need);
      inferred[x] = std::max(inferred[x], k + 1);
    }
  }
};

}  // namespace

ProblemSpec parse_problem(const std::string& text) {
  Parser p(Lex(text));
  return p.Spec();
}

std::string to_sexpr(const ProblemSpec& spec) {
  std::string s = "(spec (colors " + std::to_string(spec.lo) + " " + std::to_string(spec.hi) +
                  ") (algebra " + spec.algebra + ") (cost " + Print(*spec.cost) +
                  ") (check " + Print(*spec.check) + ")";
  for (const auto& [c, k] : spec.caps) {
    s += " (cap " + std::to_string(c) + " " + std::to_string(k) + ")";
  }
  return s + ")";
}

CompiledProblem compile_problem(const ProblemSpec& spec, const LabeledGraph& g,
                                const CompileOptions& options) {
  const int lo = spec.lo;
  auto inst = std::make_shared<ProblemInstance>();
  inst->graph = g;
  inst->algebra = WeightAlgebra::FromName(spec.algebra);
  for (int x = spec.lo; x <= spec.hi; ++x) inst->color_names.push_back(std::to_string(x));
  std::vector<Color> all;
  for (int c = 0; c <= spec.hi - spec.lo; ++c) all.push_back(c);
  const auto cost = spec.cost;
  set_uniform_lists(inst.get(), all,
                    [cost, lo](Color c) { return Weight::Of(Eval(*cost, View{lo + c, {}})); });
  const auto check = spec.check;
  inst->check = [check, lo](const LocalColoring& lc) {
    View w{lo + lc.center_color, {}};
    w.around.reserve(lc.colors.size());
    for (Color c : lc.colors) w.around.push_back(lo + c);
    return Eval(*check, w);
  };
  inst->problem_id = "dsl";
  validate_instance(*inst);

  CompiledProblem out;
  if (options.infer_caps) {
    CapNeeds needs{spec.lo, spec.hi, {}, {}, {}};
    needs.Walk(*spec.check);
    for (int x = spec.lo; x <= spec.hi; ++x) {
      if (needs.unbounded.count(x)) continue;
      auto it = needs.inferred.find(x);
      out.caps[x - lo] = it == needs.inferred.end() ? 0 : static_cast<int>(it->second);
    }
    for (const auto& [x, k] : spec.caps) {
      auto it = needs.required.find(x);
      if (it != needs.required.end() && k < it->second) {
        throw LcsError(ErrorCode::kCapTooSmall,
                       "cap " + std::to_string(k) + " for color " + std::to_string(x) +
                           " is below the compared constant " + std::to_string(it->second));
      }
      out.caps[x - lo] = k;
    }
  }
  out.instance = inst;
  out.pns = counting_pns(inst, out.caps);
  return out;
}

}  // namespace lcs::dsl
