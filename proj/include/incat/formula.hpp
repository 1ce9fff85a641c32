#pragma once

/// @file formula.hpp
/// @brief First-order formulas over the joint vocabulary {in1, in2, =}.
///
/// Grammar, loosest binding first:
///
///     formula := imp ('<->' imp)*                  left-associative
///     imp     := or ('->' imp)?                    right-associative
///     or      := and ('|' and)*
///     and     := unary ('&' unary)*
///     unary   := '!' unary | quant | atom
///     quant   := ('forall' | 'exists') IDENT formula
///     atom    := 'true' | 'false' | '(' formula ')'
///              | IDENT ('in1' | 'in2' | '=') IDENT
///
/// A quantifier body extends as far right as possible. Terms are variables
/// only. Evaluation is Tarskian over the domain {0, ..., N-1} in ascending
/// id order.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "incat/errors.hpp"
#include "incat/structure.hpp"

namespace incat {

enum class FormulaKind {
  truth,
  falsity,
  member,
  equal,
  negation,
  conjunction,
  disjunction,
  implication,
  biconditional,
  universal,
  existential,
};

/// Formula syntax tree. Atoms use `left`/`right` for their two variables; a
/// quantifier keeps its bound variable in `left` and its body in `args[0]`;
/// connectives keep their operands in `args`.
struct Formula {
  FormulaKind kind = FormulaKind::truth;
  Tag tag = Tag::e1;
  std::string left;
  std::string right;
  std::vector<Formula> args;

  static Formula truth() { return {}; }
  static Formula falsity() { return {FormulaKind::falsity, Tag::e1, {}, {}, {}}; }
  static Formula member(Tag t, std::string x, std::string y) {
    return {FormulaKind::member, t, std::move(x), std::move(y), {}};
  }
  static Formula equal(std::string x, std::string y) {
    return {FormulaKind::equal, Tag::e1, std::move(x), std::move(y), {}};
  }
  static Formula negation(Formula f) {
    return {FormulaKind::negation, Tag::e1, {}, {}, {std::move(f)}};
  }
  static Formula binary(FormulaKind k, Formula a, Formula b) {
    Formula f{k, Tag::e1, {}, {}, {}};
    f.args.push_back(std::move(a));
    f.args.push_back(std::move(b));
    return f;
  }
  static Formula conj(Formula a, Formula b) { return binary(FormulaKind::conjunction, std::move(a), std::move(b)); }
  static Formula disj(Formula a, Formula b) { return binary(FormulaKind::disjunction, std::move(a), std::move(b)); }
  static Formula implies(Formula a, Formula b) { return binary(FormulaKind::implication, std::move(a), std::move(b)); }
  static Formula iff(Formula a, Formula b) { return binary(FormulaKind::biconditional, std::move(a), std::move(b)); }
  static Formula forall(std::string v, Formula body) {
    return {FormulaKind::universal, Tag::e1, std::move(v), {}, {std::move(body)}};
  }
  static Formula exists(std::string v, Formula body) {
    return {FormulaKind::existential, Tag::e1, std::move(v), {}, {std::move(body)}};
  }

  bool is_atom() const noexcept { return kind <= FormulaKind::equal; }
  bool is_quantifier() const noexcept {
    return kind == FormulaKind::universal || kind == FormulaKind::existential;
  }
  bool is_binary() const noexcept { return !is_atom() && !is_quantifier() && kind != FormulaKind::negation; }

  /// Number of syntax-tree nodes.
  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& a : args) n += a.size();
    return n;
  }

  friend bool operator==(const Formula&, const Formula&) = default;
};

using Assignment = std::map<std::string, ElementId>;

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

enum class Tok {
  ident, kw_true, kw_false, kw_forall, kw_exists, kw_in1, kw_in2,
  bang, amp, bar, arrow, dblarrow, eq, lparen, rparen, end,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
inline bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '_'; }

inline std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto error = [&](std::size_t at, const std::string& msg) {
    return ParseError(at, "lexical error at position " + std::to_string(at) + ": " + msg);
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (ident_start(c)) {
      while (i < text.size() && ident_char(text[i])) ++i;
      std::string word(text.substr(start, i - start));
      Tok k = Tok::ident;
      if (word == "true") k = Tok::kw_true;
      else if (word == "false") k = Tok::kw_false;
      else if (word == "forall") k = Tok::kw_forall;
      else if (word == "exists") k = Tok::kw_exists;
      else if (word == "in1") k = Tok::kw_in1;
      else if (word == "in2") k = Tok::kw_in2;
      out.push_back({k, std::move(word), start});
      continue;
    }
    switch (c) {
      case '!': out.push_back({Tok::bang, "!", start}); ++i; break;
      case '&': out.push_back({Tok::amp, "&", start}); ++i; break;
      case '|': out.push_back({Tok::bar, "|", start}); ++i; break;
      case '=': out.push_back({Tok::eq, "=", start}); ++i; break;
      case '(': out.push_back({Tok::lparen, "(", start}); ++i; break;
      case ')': out.push_back({Tok::rparen, ")", start}); ++i; break;
      case '-':
        if (text.substr(i, 2) != "->") throw error(start, "expected `->`");
        out.push_back({Tok::arrow, "->", start});
        i += 2;
        break;
      case '<':
        if (text.substr(i, 3) != "<->") throw error(start, "expected `<->`");
        out.push_back({Tok::dblarrow, "<->", start});
        i += 3;
        break;
      default:
        throw error(start, std::string("unexpected character `") + c + "`");
    }
  }
  out.push_back({Tok::end, "", text.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Formula parse() {
    Formula f = formula();
    if (peek().kind == Tok::rparen) throw error("unbalanced parentheses");
    if (peek().kind != Tok::end) throw error("unexpected `" + peek().text + "`");
    return f;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& take() { return toks_[i_++]; }

  ParseError error(const std::string& msg) const {
    return ParseError(peek().pos, "parse error at position " + std::to_string(peek().pos) + ": " + msg);
  }

  Formula formula() {
    Formula f = imp();
    while (peek().kind == Tok::dblarrow) {
      take();
      f = Formula::iff(std::move(f), imp());
    }
    return f;
  }

  Formula imp() {
    Formula f = disjunction();
    if (peek().kind == Tok::arrow) {
      take();
      return Formula::implies(std::move(f), imp());
    }
    return f;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (peek().kind == Tok::bar) {
      take();
      f = Formula::disj(std::move(f), conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (peek().kind == Tok::amp) {
      take();
      f = Formula::conj(std::move(f), unary());
    }
    return f;
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::bang:
        take();
        return Formula::negation(unary());
      case Tok::kw_forall:
      case Tok::kw_exists: {
        const bool universal = take().kind == Tok::kw_forall;
        if (peek().kind != Tok::ident) {
          if (peek().kind == Tok::end || peek().kind == Tok::rparen) throw error("dangling quantifier");
          throw error("expected a variable after quantifier");
        }
        std::string v = take().text;
        if (peek().kind == Tok::end || peek().kind == Tok::rparen) throw error("dangling quantifier");
        Formula body = formula();
        return universal ? Formula::forall(std::move(v), std::move(body))
                         : Formula::exists(std::move(v), std::move(body));
      }
      default:
        return atom();
    }
  }

  Formula atom() {
    switch (peek().kind) {
      case Tok::kw_true: take(); return Formula::truth();
      case Tok::kw_false: take(); return Formula::falsity();
      case Tok::lparen: {
        take();
        Formula f = formula();
        if (peek().kind != Tok::rparen) throw error("unbalanced parentheses");
        take();
        return f;
      }
      case Tok::ident: {
        std::string x = take().text;
        const Tok op = peek().kind;
        if (op != Tok::kw_in1 && op != Tok::kw_in2 && op != Tok::eq) {
          throw error("expected `in1`, `in2` or `=`");
        }
        take();
        if (peek().kind != Tok::ident) throw error("expected a variable");
        std::string y = take().text;
        if (op == Tok::eq) return Formula::equal(std::move(x), std::move(y));
        return Formula::member(op == Tok::kw_in1 ? Tag::e1 : Tag::e2, std::move(x), std::move(y));
      }
      case Tok::end: throw error("unexpected end of input");
      case Tok::rparen: throw error("unbalanced parentheses");
      default: throw error("unexpected `" + peek().text + "`");
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline Formula parse_formula(std::string_view text) { return detail::Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Printing and syntactic helpers

namespace detail {

// A formula "ends open" when its rightmost constituent is a quantifier whose
// body would swallow anything printed after it.
inline bool ends_open(const Formula& f) {
  if (f.is_quantifier()) return true;
  if (f.kind == FormulaKind::negation) return ends_open(f.args[0]);
  return false;
}

inline const char* operator_text(FormulaKind k) {
  switch (k) {
    case FormulaKind::conjunction: return "&";
    case FormulaKind::disjunction: return "|";
    case FormulaKind::implication: return "->";
    case FormulaKind::biconditional: return "<->";
    default: return "?";
  }
}

inline void render_into(const Formula& f, std::string& out) {
  switch (f.kind) {
    case FormulaKind::truth: out += "true"; return;
    case FormulaKind::falsity: out += "false"; return;
    case FormulaKind::member:
      out += f.left + (f.tag == Tag::e1 ? " in1 " : " in2 ") + f.right;
      return;
    case FormulaKind::equal: out += f.left + " = " + f.right; return;
    case FormulaKind::negation:
      out += '!';
      render_into(f.args[0], out);
      return;
    case FormulaKind::universal:
    case FormulaKind::existential:
      out += f.kind == FormulaKind::universal ? "forall " : "exists ";
      out += f.left;
      out += ' ';
      render_into(f.args[0], out);
      return;
    default: {
      out += '(';
      const bool wrap = ends_open(f.args[0]);
      if (wrap) out += '(';
      render_into(f.args[0], out);
      if (wrap) out += ')';
      out += ' ';
      out += operator_text(f.kind);
      out += ' ';
      render_into(f.args[1], out);
      out += ')';
    }
  }
}

inline void free_vars_into(const Formula& f, std::set<std::string>& bound,
                           std::set<std::string>& out) {
  if (f.is_atom()) {
    if (f.kind == FormulaKind::member || f.kind == FormulaKind::equal) {
      if (!bound.contains(f.left)) out.insert(f.left);
      if (!bound.contains(f.right)) out.insert(f.right);
    }
    return;
  }
  if (f.is_quantifier()) {
    const bool fresh = bound.insert(f.left).second;
    free_vars_into(f.args[0], bound, out);
    if (fresh) bound.erase(f.left);
    return;
  }
  for (const auto& a : f.args) free_vars_into(a, bound, out);
}

inline void all_vars_into(const Formula& f, std::set<std::string>& out) {
  if (!f.left.empty()) out.insert(f.left);
  if (!f.right.empty()) out.insert(f.right);
  for (const auto& a : f.args) all_vars_into(a, out);
}

}  // namespace detail

/// Canonical text: binary connectives fully parenthesized, so that
/// parse_formula(render(f)) == f.
inline std::string render(const Formula& f) {
  std::string out;
  detail::render_into(f, out);
  return out;
}

inline std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  detail::free_vars_into(f, bound, out);
  return out;
}

/// Every variable name occurring in f, free or bound.
inline std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> out;
  detail::all_vars_into(f, out);
  return out;
}

/// Replaces the free occurrences of `from` by `to`. The caller guarantees
/// `to` does not occur in f.
inline Formula substitute(const Formula& f, const std::string& from, const std::string& to) {
  Formula g = f;
  if (f.is_atom()) {
    if (g.left == from) g.left = to;
    if (g.right == from) g.right = to;
    return g;
  }
  if (f.is_quantifier() && f.left == from) return g;
  for (auto& a : g.args) a = substitute(a, from, to);
  return g;
}

// ---------------------------------------------------------------------------
// Evaluation

struct EvalOptions {
  /// Cache quantifier results keyed by the values of their free variables.
  /// Purely an optimization: results are identical with it off.
  bool memoize = true;
  /// Largest cache (in entries) for a single quantifier node.
  std::size_t memo_limit = std::size_t{1} << 22;
};

namespace detail {

// Membership lookup: a dense bit matrix for small domains, binary search on
// the relation's sorted rows otherwise.
class MembershipOracle {
 public:
  static constexpr std::size_t kDenseLimit = 4096;

  explicit MembershipOracle(const DualStructure& s) : s_(&s), n_(s.size()) {
    if (n_ <= kDenseLimit) {
      for (int k = 0; k < 2; ++k) {
        dense_[k].assign(n_ * n_, false);
        const auto& r = s.relation(k == 0 ? Tag::e1 : Tag::e2);
        for (ElementId p = 0; p < n_; ++p) {
          for (ElementId c : r.members(p)) dense_[k][c * n_ + p] = true;
        }
      }
    }
  }

  bool operator()(Tag t, ElementId child, ElementId parent) const {
    if (n_ <= kDenseLimit) return dense_[t == Tag::e1 ? 0 : 1][child * n_ + parent];
    return s_->relation(t).contains(child, parent);
  }

 private:
  const DualStructure* s_;
  std::size_t n_;
  std::vector<bool> dense_[2];
};

class CompiledFormula {
 public:
  CompiledFormula(const DualStructure& s, const Formula& f, const Assignment& a, EvalOptions opts)
      : n_(s.size()), membership_(s), opts_(opts) {
    std::map<std::string, std::vector<int>> scope;
    for (const auto& v : free_vars(f)) {
      auto it = a.find(v);
      if (it == a.end()) throw Error("unbound free variable `" + v + "`");
      if (it->second >= n_) {
        throw Error("variable `" + v + "` assigned " + std::to_string(it->second) +
                    ", outside the domain of size " + std::to_string(n_));
      }
      scope[v].push_back(static_cast<int>(initial_.size()));
      initial_.push_back(it->second);
    }
    slots_ = initial_.size();
    std::vector<int> ignored;
    root_ = compile(f, scope, ignored);
  }

  bool run() const {
    std::vector<ElementId> env(slots_, 0);
    std::copy(initial_.begin(), initial_.end(), env.begin());
    return eval(root_, env);
  }

 private:
  struct Node {
    FormulaKind kind;
    Tag tag;
    int x = -1, y = -1;  // atom slots; x is the bound slot of a quantifier
    int lhs = -1, rhs = -1;
    std::vector<int> free_slots;
    mutable std::vector<std::uint8_t> memo;  // 0 unknown, 1 false, 2 true
  };

  int compile(const Formula& f, std::map<std::string, std::vector<int>>& scope,
              std::vector<int>& free_out) {
    Node node;
    node.kind = f.kind;
    node.tag = f.tag;
    auto lookup = [&](const std::string& v) {
      const int slot = scope.at(v).back();
      free_out.push_back(slot);
      return slot;
    };
    if (f.kind == FormulaKind::member || f.kind == FormulaKind::equal) {
      node.x = lookup(f.left);
      node.y = lookup(f.right);
    } else if (f.is_quantifier()) {
      node.x = static_cast<int>(slots_++);
      scope[f.left].push_back(node.x);
      std::vector<int> inner;
      node.lhs = compile(f.args[0], scope, inner);
      scope[f.left].pop_back();
      std::sort(inner.begin(), inner.end());
      inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
      std::erase(inner, node.x);
      node.free_slots = inner;
      free_out.insert(free_out.end(), inner.begin(), inner.end());
      if (opts_.memoize) {
        std::size_t entries = 1;
        bool fits = true;
        for (std::size_t i = 0; i < inner.size() && fits; ++i) {
          if (n_ != 0 && entries > opts_.memo_limit / n_) fits = false;
          entries *= n_;
        }
        if (fits && entries <= opts_.memo_limit) node.memo.assign(entries, 0);
      }
    } else {
      if (!f.args.empty()) node.lhs = compile(f.args[0], scope, free_out);
      if (f.args.size() > 1) node.rhs = compile(f.args[1], scope, free_out);
    }
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size() - 1);
  }

  bool eval(int i, std::vector<ElementId>& env) const {
    const Node& node = nodes_[i];
    switch (node.kind) {
      case FormulaKind::truth: return true;
      case FormulaKind::falsity: return false;
      case FormulaKind::member: return membership_(node.tag, env[node.x], env[node.y]);
      case FormulaKind::equal: return env[node.x] == env[node.y];
      case FormulaKind::negation: return !eval(node.lhs, env);
      case FormulaKind::conjunction: return eval(node.lhs, env) && eval(node.rhs, env);
      case FormulaKind::disjunction: return eval(node.lhs, env) || eval(node.rhs, env);
      case FormulaKind::implication: return !eval(node.lhs, env) || eval(node.rhs, env);
      case FormulaKind::biconditional: return eval(node.lhs, env) == eval(node.rhs, env);
      case FormulaKind::universal:
      case FormulaKind::existential: {
        std::size_t key = 0;
        if (!node.memo.empty()) {
          for (int s : node.free_slots) key = key * n_ + env[s];
          if (node.memo[key] != 0) return node.memo[key] == 2;
        }
        const bool universal = node.kind == FormulaKind::universal;
        bool result = universal;
        for (ElementId v = 0; v < n_; ++v) {
          env[node.x] = v;
          if (eval(node.lhs, env) != universal) {
            result = !universal;
            break;
          }
        }
        if (!node.memo.empty()) node.memo[key] = result ? 2 : 1;
        return result;
      }
    }
    return false;
  }

  std::size_t n_;
  MembershipOracle membership_;
  EvalOptions opts_;
  std::vector<ElementId> initial_;
  std::size_t slots_ = 0;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace detail

/// Truth of f in s under a. Throws Error when a free variable of f is
/// unassigned or assigned outside the domain.
inline bool evaluate(const DualStructure& s, const Formula& f, const Assignment& a = {},
                     EvalOptions opts = {}) {
  return detail::CompiledFormula(s, f, a, opts).run();
}

/// Variable bindings explaining why a formula is false, outermost first.
using Counterexample = std::vector<std::pair<std::string, ElementId>>;

/// When f is false under a, descends through universal quantifiers,
/// implications (into the consequent) and conjunctions (into the first false
/// conjunct), recording the least falsifying value of each universal
/// variable. Returns nullopt when f holds.
inline std::optional<Counterexample> falsify(const DualStructure& s, const Formula& f,
                                             const Assignment& a = {}, EvalOptions opts = {}) {
  if (evaluate(s, f, a, opts)) return std::nullopt;
  Counterexample out;
  Assignment env = a;
  const Formula* cur = &f;
  for (;;) {
    if (cur->kind == FormulaKind::universal) {
      bool found = false;
      for (ElementId v = 0; v < s.size() && !found; ++v) {
        Assignment next = env;
        next[cur->left] = v;
        if (!evaluate(s, cur->args[0], next, opts)) {
          env = std::move(next);
          out.emplace_back(cur->left, v);
          found = true;
        }
      }
      cur = &cur->args[0];
    } else if (cur->kind == FormulaKind::implication) {
      cur = &cur->args[1];
    } else if (cur->kind == FormulaKind::conjunction) {
      cur = evaluate(s, cur->args[0], env, opts) ? &cur->args[1] : &cur->args[0];
    } else {
      return out;
    }
  }
}

inline std::string render_counterexample(const Counterexample& c) {
  std::string out;
  for (const auto& [v, x] : c) {
    if (!out.empty()) out += ' ';
    out += v + "=" + std::to_string(x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Schema instances

namespace detail {

inline std::string fresh_name(const std::set<std::string>& taken, const std::string& stem) {
  if (!taken.contains(stem)) return stem;
  for (int i = 1;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!taken.contains(candidate)) return candidate;
  }
}

inline Formula close_over(Formula body, const std::vector<std::string>& params) {
  for (auto it = params.rbegin(); it != params.rend(); ++it) body = Formula::forall(*it, std::move(body));
  return body;
}

inline void check_schema_variables(const Formula& f, const std::vector<std::string>& params,
                                   const std::set<std::string>& schema_free,
                                   const std::set<std::string>& reserved) {
  for (const auto& p : params) {
    if (reserved.contains(p)) throw Error("variable capture: parameter `" + p + "` is reserved by the schema");
  }
  for (const auto& v : free_vars(f)) {
    if (schema_free.contains(v)) continue;
    if (std::find(params.begin(), params.end(), v) != params.end()) continue;
    if (reserved.contains(v)) throw Error("variable capture: `" + v + "` is free in the formula");
    throw Error("free variable `" + v + "` is neither a schema variable nor a parameter");
  }
}

}  // namespace detail

/// Separation instance for f(w; params) with membership read as `tag`:
///
///     forall params forall a exists b forall w (w in b <-> (w in a & f))
inline Formula instantiate_separation(const Formula& f, Tag tag, const std::vector<std::string>& params) {
  detail::check_schema_variables(f, params, {"w"}, {"w", "a", "b"});
  Formula body = Formula::iff(Formula::member(tag, "w", "b"),
                              Formula::conj(Formula::member(tag, "w", "a"), f));
  body = Formula::forall("a", Formula::exists("b", Formula::forall("w", std::move(body))));
  return detail::close_over(std::move(body), params);
}

/// Replacement instance for f(u, v; params) with membership read as `tag`:
///
///     forall params ((forall u forall v forall v' ((f & f[v'/v]) -> v = v'))
///        -> forall a exists b forall v (v in b <-> exists u (u in a & f)))
///
/// With `bounded`, the image is cut down to elements that are members of
/// something, i.e. `... <-> (exists u (u in a & f) & exists c v in c)`. On a
/// finite level V_n the unbounded form fails as soon as an image contains a
/// set of the top rank; the bounded form holds for every formula.
inline Formula instantiate_replacement(const Formula& f, Tag tag, const std::vector<std::string>& params,
                                       bool bounded = false) {
  detail::check_schema_variables(f, params, {"u", "v"}, {"u", "v", "a", "b"});
  std::set<std::string> taken = all_vars(f);
  taken.insert(params.begin(), params.end());
  taken.insert({"u", "v", "a", "b"});
  const std::string v2 = detail::fresh_name(taken, "v1");
  taken.insert(v2);
  const std::string c = detail::fresh_name(taken, "c");

  Formula functional = Formula::forall(
      "u", Formula::forall("v", Formula::forall(v2, Formula::implies(
                                                        Formula::conj(f, substitute(f, "v", v2)),
                                                        Formula::equal("v", v2)))));
  Formula image = Formula::exists("u", Formula::conj(Formula::member(tag, "u", "a"), f));
  if (bounded) image = Formula::conj(std::move(image), Formula::exists(c, Formula::member(tag, "v", c)));
  Formula consequent = Formula::forall(
      "a", Formula::exists("b", Formula::forall("v", Formula::iff(Formula::member(tag, "v", "b"),
                                                                  std::move(image)))));
  return detail::close_over(Formula::implies(std::move(functional), std::move(consequent)), params);
}

// ---------------------------------------------------------------------------
// Defined notions, expanded into the base vocabulary

namespace sentences {

/// forall x forall y ((forall z (z in x <-> z in y)) -> x = y)
inline Formula extensionality(Tag t) {
  const std::string in = t == Tag::e1 ? "in1" : "in2";
  return parse_formula("forall x forall y ((forall z (z " + in + " x <-> z " + in + " y)) -> x = y)");
}

/// Every member of a member of x is a member of x.
inline Formula transitive(Tag t, const std::string& x) {
  const std::string m = x + "_m", mm = x + "_mm";
  return Formula::forall(
      m, Formula::implies(Formula::member(t, m, x),
                          Formula::forall(mm, Formula::implies(Formula::member(t, mm, m),
                                                               Formula::member(t, mm, x)))));
}

/// A transitive set of transitive sets.
inline Formula ordinal(Tag t, const std::string& x) {
  const std::string m = x + "_o";
  return Formula::conj(transitive(t, x),
                       Formula::forall(m, Formula::implies(Formula::member(t, m, x), transitive(t, m))));
}

/// q is the Kuratowski pair {{x}, {x, y}} in the sense of tag t.
inline Formula kuratowski_pair(Tag t, const std::string& q, const std::string& x, const std::string& y) {
  const std::string z = "pz", e = "pe";
  Formula single = Formula::forall(e, Formula::iff(Formula::member(t, e, z), Formula::equal(e, x)));
  Formula twin = Formula::forall(
      e, Formula::iff(Formula::member(t, e, z), Formula::disj(Formula::equal(e, x), Formula::equal(e, y))));
  return Formula::forall(
      z, Formula::iff(Formula::member(t, z, q), Formula::disj(std::move(single), std::move(twin))));
}

}  // namespace sentences

enum class SchemaKind { separation, replacement };

/// One fixed joint-vocabulary schema instance.
struct BatteryInstance {
  std::string name;
  Tag tag;  // the membership the schema is stated for
  SchemaKind kind;
  Formula sentence;
};

/// The schema instances the isomorphism construction relies on, stated for
/// both orientations of the two relations. Functions are coded as sets of
/// Kuratowski pairs in the other relation, and the cumulative level is a
/// plain set parameter.
///
/// - theta-separation/eI: separation in eI of {w in l : w = g(t) for some
///   t in u}, g a set of pairs of the other relation.
/// - level-map-replacement/eI: bounded replacement in eI along the map
///   u |-> v whose other-relation members are the g-images of u.
/// - case-two-replacement/eI: bounded replacement in eI along the inverse of
///   a pair set h of the other relation.
inline std::vector<BatteryInstance> battery_instances() {
  std::vector<BatteryInstance> out;
  for (Tag i : {Tag::e1, Tag::e2}) {
    const Tag j = other(i);
    const std::string suffix = "/" + tag_name(i);

    auto image_of = [&](Tag pair_tag, const std::string& w) {
      return Formula::exists(
          "t", Formula::conj(Formula::member(pair_tag, "t", "u"),
                             Formula::exists("q", Formula::conj(Formula::member(pair_tag, "q", "g"),
                                                                sentences::kuratowski_pair(pair_tag, "q", "t", w)))));
    };

    out.push_back({"theta-separation" + suffix, i, SchemaKind::separation,
                   instantiate_separation(image_of(j, "w"), i, {"u", "g"})});

    Formula theta = Formula::forall(
        "w", Formula::iff(Formula::member(j, "w", "v"),
                          Formula::conj(Formula::member(j, "w", "l"), image_of(i, "w"))));
    out.push_back({"level-map-replacement" + suffix, i, SchemaKind::replacement,
                   instantiate_replacement(theta, i, {"g", "l"}, true)});

    Formula inverse = Formula::exists(
        "q", Formula::conj(Formula::member(j, "q", "h"), sentences::kuratowski_pair(j, "q", "v", "u")));
    out.push_back({"case-two-replacement" + suffix, i, SchemaKind::replacement,
                   instantiate_replacement(inverse, i, {"h"}, true)});
  }
  return out;
}

}  // namespace incat
