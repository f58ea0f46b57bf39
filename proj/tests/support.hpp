#pragma once

#include <random>
#include <string>
#include <vector>

#include "densat/formula.hpp"

namespace densat::testing {

inline Formula uni(const std::string& text) { return parse(text, Syntax::Unimodal); }
inline Formula bi(const std::string& text) { return parse(text, Syntax::Bimodal); }

inline FormulaSet uset(std::initializer_list<const char*> texts) {
  std::vector<Formula> v;
  for (const char* t : texts) v.push_back(uni(t));
  return FormulaSet(std::move(v));
}

inline FormulaSet bset(std::initializer_list<const char*> texts) {
  std::vector<Formula> v;
  for (const char* t : texts) v.push_back(bi(t));
  return FormulaSet(std::move(v));
}

inline Formula p() { return Formula::atom("p"); }
inline Formula q() { return Formula::atom("q"); }
inline Formula r() { return Formula::atom("r"); }
inline Formula neg(Formula f) { return Formula::negation(std::move(f)); }
inline Formula conj(Formula l, Formula r) { return Formula::conjunction(std::move(l), std::move(r)); }
inline Formula boxa(Formula f) { return Formula::box(Modality::A, std::move(f)); }
inline Formula boxb(Formula f) { return Formula::box(Modality::B, std::move(f)); }

/// Random core formula with exactly `size` nodes (or fewer when size hits 1).
class FormulaGen {
 public:
  FormulaGen(std::uint64_t seed, std::vector<std::string> atoms, bool bimodal)
      : rng_(seed), atoms_(std::move(atoms)), bimodal_(bimodal) {}

  Formula sized(std::size_t size) {
    if (size <= 1) {
      std::uniform_int_distribution<std::size_t> pick(0, atoms_.size());
      std::size_t i = pick(rng_);
      return i == atoms_.size() ? Formula::falsum() : Formula::atom(atoms_[i]);
    }
    std::uniform_int_distribution<int> op(0, size >= 3 ? 3 : 2);
    switch (op(rng_)) {
      case 0:
        return Formula::negation(sized(size - 1));
      case 1:
        return Formula::box(Modality::A, sized(size - 1));
      case 2:
        return bimodal_ ? Formula::box(Modality::B, sized(size - 1)) : Formula::negation(sized(size - 1));
      default: {
        std::uniform_int_distribution<std::size_t> split(1, size - 2);
        std::size_t l = split(rng_);
        Formula left = sized(l);
        return Formula::conjunction(std::move(left), sized(size - 1 - l));
      }
    }
  }

  Formula up_to(std::size_t max_size) {
    std::uniform_int_distribution<std::size_t> s(1, max_size);
    return sized(s(rng_));
  }

  FormulaSet set(std::size_t max_members, std::size_t max_size) {
    std::uniform_int_distribution<std::size_t> n(0, max_members);
    std::vector<Formula> v;
    for (std::size_t i = n(rng_); i > 0; --i) v.push_back(up_to(max_size));
    return FormulaSet(std::move(v));
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::vector<std::string> atoms_;
  bool bimodal_;
};

}  // namespace densat::testing
