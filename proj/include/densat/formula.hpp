#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace densat {

enum class Modality : std::uint8_t { A, B };

enum class Kind : std::uint8_t { Atom, Falsum, Not, And, Box };

// Which concrete syntax the parser accepts and the printer emits.
enum class Syntax { Unimodal, Bimodal };

/// Immutable modal formula over the core connectives {atom, false, ~, &, box_a, box_b}.
///
/// Nodes are shared; copying a Formula is a reference-count bump. Size and
/// degree are cached at construction so measures are O(1).
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula falsum();
  static Formula negation(Formula child);
  static Formula conjunction(Formula left, Formula right);
  static Formula box(Modality m, Formula child);

  // Derived forms built from the core connectives.
  static Formula verum() { return negation(falsum()); }
  static Formula disjunction(Formula l, Formula r);
  static Formula implication(Formula l, Formula r);
  static Formula diamond(Modality m, Formula child);

  Kind kind() const noexcept { return node_->kind; }
  Modality modality() const noexcept { return node_->modality; }
  const std::string& name() const noexcept { return node_->name; }
  // Child of Not/Box, left operand of And.
  const Formula& child() const { return node_->kids[0]; }
  const Formula& left() const { return node_->kids[0]; }
  const Formula& right() const { return node_->kids[1]; }

  bool is_atom() const noexcept { return kind() == Kind::Atom; }
  bool is_falsum() const noexcept { return kind() == Kind::Falsum; }
  bool is_not() const noexcept { return kind() == Kind::Not; }
  bool is_and() const noexcept { return kind() == Kind::And; }
  bool is_box() const noexcept { return kind() == Kind::Box; }
  bool is_box(Modality m) const noexcept { return is_box() && modality() == m; }

  /// Number of AST nodes.
  std::size_t size() const noexcept { return node_->size; }
  /// Modal depth.
  std::size_t degree() const noexcept { return node_->degree; }
  /// True if a box indexed by b occurs anywhere.
  bool uses_b() const noexcept { return node_->uses_b; }
  std::size_t hash() const noexcept { return node_->hash; }

  void collect_atoms(std::set<std::string>& out) const;
  std::set<std::string> atoms() const;

  friend bool operator==(const Formula& x, const Formula& y) noexcept;
  friend std::strong_ordering operator<=>(const Formula& x, const Formula& y) noexcept;

 private:
  struct Node {
    Kind kind;
    Modality modality = Modality::A;
    std::string name;
    std::vector<Formula> kids;
    std::size_t size = 1;
    std::size_t degree = 0;
    std::size_t hash = 0;
    bool uses_b = false;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Node n);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

/// Finite set of formulas kept as a sorted, duplicate-free vector. Iteration
/// order is the structural total order on formulas.
class FormulaSet {
 public:
  using const_iterator = std::vector<Formula>::const_iterator;

  FormulaSet() = default;
  FormulaSet(std::initializer_list<Formula> init);
  explicit FormulaSet(std::vector<Formula> items);

  bool insert(const Formula& f);
  bool contains(const Formula& f) const;
  bool empty() const noexcept { return items_.empty(); }
  /// Cardinality.
  std::size_t size() const noexcept { return items_.size(); }
  const_iterator begin() const noexcept { return items_.begin(); }
  const_iterator end() const noexcept { return items_.end(); }
  const std::vector<Formula>& items() const noexcept { return items_; }

  /// max degree over members, 0 when empty
  std::size_t degree() const noexcept;
  /// sum of member sizes, 0 when empty
  std::size_t symbol_count() const noexcept;

  bool subset_of(const FormulaSet& other) const;
  FormulaSet united(const FormulaSet& other) const;
  FormulaSet intersected(const FormulaSet& other) const;
  FormulaSet minus(const FormulaSet& other) const;
  bool uses_b() const noexcept;
  std::size_t hash() const noexcept;

  friend bool operator==(const FormulaSet&, const FormulaSet&) = default;
  friend auto operator<=>(const FormulaSet& x, const FormulaSet& y) {
    return x.items_ <=> y.items_;
  }

 private:
  std::vector<Formula> items_;
};

struct FormulaSetHash {
  std::size_t operator()(const FormulaSet& s) const noexcept { return s.hash(); }
};

struct Measures {
  std::size_t degree;
  std::size_t size;
  friend bool operator==(const Measures&, const Measures&) = default;
};

Measures measures(const Formula& f);

/// Classical closure: splits conjunctions and negated conjunctions and strips
/// negations, without looking under boxes.
FormulaSet csf(const FormulaSet& u);
/// csf plus unfolding of (negated) boxes of both modalities.
FormulaSet sf(const FormulaSet& u);
/// Bodies of the top-level boxes of modality m.
FormulaSet box_inverse(const FormulaSet& w, Modality m);

class ParseError : public std::runtime_error {
 public:
  enum class Reason { Syntax, ModalityMismatch };
  ParseError(Reason reason, std::size_t position, const std::string& message);
  Reason reason() const noexcept { return reason_; }
  std::size_t position() const noexcept { return position_; }

 private:
  Reason reason_;
  std::size_t position_;
};

Formula parse(std::string_view text, Syntax syntax);
std::string render(const Formula& f, Syntax syntax);
std::string render(const FormulaSet& s, Syntax syntax);

inline Syntax syntax_for(const Formula& f) { return f.uses_b() ? Syntax::Bimodal : Syntax::Unimodal; }

}  // namespace densat
