#pragma once

#include <string>

#include "densat/formula.hpp"

namespace densat {

/// tau_p: homomorphic except at boxes, where []f becomes [](p -> tau_p(f)),
/// written ~(p & ~tau_p(f)). Throws std::invalid_argument if p occurs in phi
/// or phi is bimodal.
Formula tau(const std::string& p, const Formula& phi);

/// Lexicographically first identifier that does not occur in phi.
std::string fresh_atom(const Formula& phi);

}  // namespace densat
