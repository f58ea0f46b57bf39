#include "densat/translate.hpp"

#include <stdexcept>

namespace densat {

namespace {

Formula translate(const Formula& p, const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Falsum:
      return f;
    case Kind::Not:
      return Formula::negation(translate(p, f.child()));
    case Kind::And:
      return Formula::conjunction(translate(p, f.left()), translate(p, f.right()));
    case Kind::Box:
      return Formula::box(
          f.modality(), Formula::negation(Formula::conjunction(p, Formula::negation(translate(p, f.child())))));
  }
  return f;
}

}  // namespace

Formula tau(const std::string& p, const Formula& phi) {
  if (phi.uses_b()) throw std::invalid_argument("translation takes unimodal formulas");
  if (phi.atoms().count(p)) throw std::invalid_argument("atom " + p + " occurs in the formula");
  Formula out = translate(Formula::atom(p), phi);
  if (out.size() > 5 * phi.size()) throw std::logic_error("translation exceeded five times the input size");
  return out;
}

std::string fresh_atom(const Formula& phi) {
  const auto used = phi.atoms();
  // "a" < "a0" < "a00" < ... and nothing valid lies between them
  std::string cand = "a";
  while (used.count(cand)) cand += '0';
  return cand;
}

}  // namespace densat
