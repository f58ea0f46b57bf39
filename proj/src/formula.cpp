#include "densat/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace densat {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::make(Node n) {
  std::size_t h = mix(static_cast<std::size_t>(n.kind), static_cast<std::size_t>(n.modality));
  if (n.kind == Kind::Atom) h = mix(h, std::hash<std::string>{}(n.name));
  for (const auto& k : n.kids) {
    n.size += k.size();
    n.degree = std::max(n.degree, k.degree());
    n.uses_b = n.uses_b || k.uses_b();
    h = mix(h, k.hash());
  }
  if (n.kind == Kind::Box) {
    n.degree += 1;
    n.uses_b = n.uses_b || n.modality == Modality::B;
  }
  n.hash = h;
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::atom(std::string name) {
  Node n{Kind::Atom, Modality::A, {}, {}};
  n.name = std::move(name);
  return make(std::move(n));
}

Formula Formula::falsum() { return make(Node{Kind::Falsum, Modality::A, {}, {}}); }

Formula Formula::negation(Formula child) {
  Node n{Kind::Not, Modality::A, {}, {}};
  n.kids.push_back(std::move(child));
  return make(std::move(n));
}

Formula Formula::conjunction(Formula left, Formula right) {
  Node n{Kind::And, Modality::A, {}, {}};
  n.kids.push_back(std::move(left));
  n.kids.push_back(std::move(right));
  return make(std::move(n));
}

Formula Formula::box(Modality m, Formula child) {
  Node n{Kind::Box, m, {}, {}};
  n.kids.push_back(std::move(child));
  return make(std::move(n));
}

Formula Formula::disjunction(Formula l, Formula r) {
  return negation(conjunction(negation(std::move(l)), negation(std::move(r))));
}

Formula Formula::implication(Formula l, Formula r) {
  return negation(conjunction(std::move(l), negation(std::move(r))));
}

Formula Formula::diamond(Modality m, Formula child) {
  return negation(box(m, negation(std::move(child))));
}

void Formula::collect_atoms(std::set<std::string>& out) const {
  if (is_atom()) {
    out.insert(name());
    return;
  }
  for (const auto& k : node_->kids) k.collect_atoms(out);
}

std::set<std::string> Formula::atoms() const {
  std::set<std::string> out;
  collect_atoms(out);
  return out;
}

bool operator==(const Formula& x, const Formula& y) noexcept {
  if (x.node_ == y.node_) return true;
  if (x.hash() != y.hash() || x.size() != y.size()) return false;
  return (x <=> y) == 0;
}

std::strong_ordering operator<=>(const Formula& x, const Formula& y) noexcept {
  if (x.node_ == y.node_) return std::strong_ordering::equal;
  if (auto c = x.size() <=> y.size(); c != 0) return c;
  if (auto c = x.kind() <=> y.kind(); c != 0) return c;
  if (auto c = x.modality() <=> y.modality(); c != 0) return c;
  if (x.is_atom()) return x.name().compare(y.name()) <=> 0;
  const auto& xs = x.node_->kids;
  const auto& ys = y.node_->kids;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (auto c = xs[i] <=> ys[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// FormulaSet

FormulaSet::FormulaSet(std::initializer_list<Formula> init) : FormulaSet(std::vector<Formula>(init)) {}

FormulaSet::FormulaSet(std::vector<Formula> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

bool FormulaSet::insert(const Formula& f) {
  auto it = std::lower_bound(items_.begin(), items_.end(), f);
  if (it != items_.end() && *it == f) return false;
  items_.insert(it, f);
  return true;
}

bool FormulaSet::contains(const Formula& f) const {
  return std::binary_search(items_.begin(), items_.end(), f);
}

std::size_t FormulaSet::degree() const noexcept {
  std::size_t d = 0;
  for (const auto& f : items_) d = std::max(d, f.degree());
  return d;
}

std::size_t FormulaSet::symbol_count() const noexcept {
  std::size_t n = 0;
  for (const auto& f : items_) n += f.size();
  return n;
}

bool FormulaSet::subset_of(const FormulaSet& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

FormulaSet FormulaSet::united(const FormulaSet& other) const {
  FormulaSet out;
  out.items_.reserve(items_.size() + other.items_.size());
  std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                 std::back_inserter(out.items_));
  return out;
}

FormulaSet FormulaSet::intersected(const FormulaSet& other) const {
  FormulaSet out;
  std::set_intersection(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                        std::back_inserter(out.items_));
  return out;
}

FormulaSet FormulaSet::minus(const FormulaSet& other) const {
  FormulaSet out;
  std::set_difference(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                      std::back_inserter(out.items_));
  return out;
}

bool FormulaSet::uses_b() const noexcept {
  return std::any_of(items_.begin(), items_.end(), [](const Formula& f) { return f.uses_b(); });
}

std::size_t FormulaSet::hash() const noexcept {
  std::size_t h = items_.size();
  for (const auto& f : items_) h = mix(h, f.hash());
  return h;
}

Measures measures(const Formula& f) { return {f.degree(), f.size()}; }

// ---------------------------------------------------------------------------
// Closures

namespace {

FormulaSet close(const FormulaSet& u, bool unfold_boxes) {
  std::vector<Formula> todo(u.begin(), u.end());
  FormulaSet out = u;
  auto add = [&](const Formula& f) {
    if (out.insert(f)) todo.push_back(f);
  };
  while (!todo.empty()) {
    Formula f = todo.back();
    todo.pop_back();
    switch (f.kind()) {
      case Kind::And:
        add(f.left());
        add(f.right());
        break;
      case Kind::Not: {
        const Formula& g = f.child();
        add(g);
        if (g.is_and()) {
          add(Formula::negation(g.left()));
          add(Formula::negation(g.right()));
        } else if (unfold_boxes && g.is_box()) {
          add(Formula::negation(g.child()));
        }
        break;
      }
      case Kind::Box:
        if (unfold_boxes) add(f.child());
        break;
      default:
        break;
    }
  }
  return out;
}

}  // namespace

FormulaSet csf(const FormulaSet& u) { return close(u, false); }
FormulaSet sf(const FormulaSet& u) { return close(u, true); }

FormulaSet box_inverse(const FormulaSet& w, Modality m) {
  std::vector<Formula> out;
  for (const auto& f : w) {
    if (f.is_box(m)) out.push_back(f.child());
  }
  return FormulaSet(std::move(out));
}

// ---------------------------------------------------------------------------
// Parser
//
//   imp   := or ('->' imp)?
//   or    := and ('|' and)*
//   and   := unary ('&' unary)*
//   unary := ('~' | '[]' | '<>' | '[a]' | '[b]' | '<a>' | '<b>') unary | atom
//   atom  := ident | 'true' | 'false' | '(' imp ')'

ParseError::ParseError(Reason reason, std::size_t position, const std::string& message)
    : std::runtime_error("at " + std::to_string(position) + ": " + message),
      reason_(reason),
      position_(position) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, Syntax syntax) : text_(text), syntax_(syntax) {}

  Formula parse_all() {
    Formula f = implication();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(ParseError::Reason::Syntax, pos_, msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  // The consequent's leading negation is absorbed instead of stacking a
  // second one, so "a -> ~b" is ~(a & b).
  static Formula imply(Formula l, Formula r) {
    Formula neg_r = r.is_not() ? r.child() : Formula::negation(r);
    return Formula::negation(Formula::conjunction(std::move(l), std::move(neg_r)));
  }

  Formula implication() {
    Formula l = disjunction();
    if (accept("->")) return imply(std::move(l), implication());
    return l;
  }

  Formula disjunction() {
    Formula l = conjunction();
    while (accept("|")) l = Formula::disjunction(std::move(l), conjunction());
    return l;
  }

  Formula conjunction() {
    Formula l = unary();
    while (accept("&")) l = Formula::conjunction(std::move(l), unary());
    return l;
  }

  // Returns true and sets `m` if a modal operator starts here.
  bool modal_operator(bool& is_box, Modality& m) {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char open = text_[pos_];
    if (open != '[' && open != '<') return false;
    char close = open == '[' ? ']' : '>';
    std::size_t start = pos_;
    is_box = open == '[';
    if (pos_ + 1 < text_.size() && text_[pos_ + 1] == close) {
      if (syntax_ == Syntax::Bimodal)
        throw ParseError(ParseError::Reason::ModalityMismatch, start,
                         "unindexed modality in bimodal formula");
      pos_ += 2;
      m = Modality::A;
      return true;
    }
    if (pos_ + 2 < text_.size() && text_[pos_ + 2] == close &&
        (text_[pos_ + 1] == 'a' || text_[pos_ + 1] == 'b')) {
      if (syntax_ == Syntax::Unimodal)
        throw ParseError(ParseError::Reason::ModalityMismatch, start,
                         "indexed modality in unimodal formula");
      m = text_[pos_ + 1] == 'a' ? Modality::A : Modality::B;
      pos_ += 3;
      return true;
    }
    fail("malformed modal operator");
  }

  Formula unary() {
    if (accept("~")) return Formula::negation(unary());
    bool is_box = false;
    Modality m = Modality::A;
    if (modal_operator(is_box, m)) {
      Formula body = unary();
      return is_box ? Formula::box(m, std::move(body)) : Formula::diamond(m, std::move(body));
    }
    return primary();
  }

  Formula primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept("(")) {
      Formula f = implication();
      if (!accept(")")) fail("expected ')'");
      return f;
    }
    char c = text_[pos_];
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             ((text_[pos_] >= 'a' && text_[pos_] <= 'z') || (text_[pos_] >= '0' && text_[pos_] <= '9') ||
              text_[pos_] == '_'))
        ++pos_;
      std::string id(text_.substr(start, pos_ - start));
      if (id == "true") return Formula::verum();
      if (id == "false") return Formula::falsum();
      return Formula::atom(std::move(id));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  Syntax syntax_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printer. Negated shapes are re-sugared where the result parses back to the
// identical tree.

enum Level { kImp = 1, kOr = 2, kAnd = 3, kUnary = 4 };

class Printer {
 public:
  explicit Printer(Syntax syntax) : syntax_(syntax) {}

  void print(const Formula& f, int min_level) {
    int lvl = level(f);
    bool parens = lvl < min_level;
    if (parens) out_ << '(';
    emit(f);
    if (parens) out_ << ')';
  }

  std::string str() const { return out_.str(); }

 private:
  static bool is_or_shape(const Formula& f) {
    if (!f.is_not() || !f.child().is_and()) return false;
    return f.child().left().is_not() && f.child().right().is_not();
  }
  static bool is_imp_shape(const Formula& f) {
    if (!f.is_not() || !f.child().is_and()) return false;
    const Formula& r = f.child().right();
    return r.is_not() && !r.child().is_not();
  }
  static bool is_diamond_shape(const Formula& f) {
    return f.is_not() && f.child().is_box() && f.child().child().is_not();
  }

  static int level(const Formula& f) {
    switch (f.kind()) {
      case Kind::And:
        return kAnd;
      case Kind::Not:
        if (f.child().is_falsum() || is_diamond_shape(f)) return kUnary;
        if (is_or_shape(f)) return kOr;
        if (is_imp_shape(f)) return kImp;
        return kUnary;
      default:
        return kUnary;
    }
  }

  void modal(bool box, Modality m) {
    if (syntax_ == Syntax::Unimodal) {
      out_ << (box ? "[]" : "<>");
    } else {
      out_ << (box ? '[' : '<') << (m == Modality::A ? 'a' : 'b') << (box ? ']' : '>');
    }
  }

  void emit(const Formula& f) {
    switch (f.kind()) {
      case Kind::Atom:
        out_ << f.name();
        return;
      case Kind::Falsum:
        out_ << "false";
        return;
      case Kind::Box:
        modal(true, f.modality());
        print(f.child(), kUnary);
        return;
      case Kind::And:
        print(f.left(), kAnd);
        out_ << " & ";
        print(f.right(), kUnary);
        return;
      case Kind::Not:
        break;
    }
    const Formula& c = f.child();
    if (c.is_falsum()) {
      out_ << "true";
    } else if (is_diamond_shape(f)) {
      modal(false, c.modality());
      print(c.child().child(), kUnary);
    } else if (is_or_shape(f)) {
      print(c.left().child(), kOr);
      out_ << " | ";
      print(c.right().child(), kAnd);
    } else if (is_imp_shape(f)) {
      print(c.left(), kOr);
      out_ << " -> ";
      print(c.right().child(), kImp);
    } else {
      out_ << '~';
      print(c, kUnary);
    }
  }

  Syntax syntax_;
  std::ostringstream out_;
};

}  // namespace

Formula parse(std::string_view text, Syntax syntax) { return Parser(text, syntax).parse_all(); }

std::string render(const Formula& f, Syntax syntax) {
  Printer p(syntax);
  p.print(f, kImp);
  return p.str();
}

std::string render(const FormulaSet& s, Syntax syntax) {
  std::string out = "{";
  bool first = true;
  for (const auto& f : s) {
    if (!first) out += ", ";
    first = false;
    out += render(f, syntax);
  }
  return out + "}";
}

}  // namespace densat
