#include "densat/windows.hpp"

#include <stdexcept>

namespace densat {

namespace {

// Fills parts[i], parts[i-1], ..., parts[0] right to left; parts[i+1] is set.
class InitialSearch {
 public:
  InitialSearch(const FormulaSet& w, const Formula& body, const WindowVisitor& visit)
      : anchor_(w), a_inv_(box_inverse(w, Modality::A)), body_(body), visit_(visit) {}

  bool run() {
    const std::size_t k = anchor_.degree();
    if (k == 0) throw std::invalid_argument("window anchor has modal degree 0");
    parts_.assign(k + 1, FormulaSet{});
    return fill(k);
  }

 private:
  bool fill(std::size_t i) {
    FormulaSet seed = a_inv_;
    if (i + 1 < parts_.size()) seed = seed.united(box_inverse(parts_[i + 1], Modality::B));
    if (i == 0) seed.insert(body_);
    return for_each_ccs(seed, [&](const Ccs& c) {
      parts_[i] = c.members;
      if (i == 0) return visit_(Window{anchor_, parts_, body_});
      return fill(i - 1);
    });
  }

  const FormulaSet& anchor_;
  FormulaSet a_inv_;
  const Formula& body_;
  const WindowVisitor& visit_;
  std::vector<FormulaSet> parts_;
};

// Builds next.parts[j] = w~_{j+1} for j = k down to 0.
class ContinuationSearch {
 public:
  ContinuationSearch(const Window& t, const WindowVisitor& visit)
      : t_(t), a_inv_(box_inverse(t.anchor, Modality::A)), visit_(visit) {}

  bool run() {
    next_.assign(t_.parts.size(), FormulaSet{});
    const std::size_t k = t_.k();
    return for_each_ccs(a_inv_, [&](const Ccs& c) {
      next_[k] = c.members;
      return k == 0 ? emit() : fill(k - 1);
    });
  }

 private:
  // next_[j] = w~_{j+1} in CCS(b-(w~_{j+2}) ∪ w_{j+1}) and a window part
  bool fill(std::size_t j) {
    const FormulaSet b_inv = box_inverse(next_[j + 1], Modality::B);
    const FormulaSet window_seed = a_inv_.united(b_inv);
    return for_each_ccs(b_inv.united(t_.parts[j + 1]), [&](const Ccs& c) {
      if (!is_ccs_of(c.members, window_seed)) return true;
      next_[j] = c.members;
      return j == 0 ? emit() : fill(j - 1);
    });
  }

  bool emit() { return visit_(Window{t_.anchor, next_, std::nullopt}); }

  const Window& t_;
  FormulaSet a_inv_;
  const WindowVisitor& visit_;
  std::vector<FormulaSet> next_;
};

std::vector<Window> collect(const std::function<bool(const WindowVisitor&)>& walk) {
  std::vector<Window> out;
  walk([&](const Window& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

}  // namespace

bool for_each_initial_window(const FormulaSet& w, const Formula& body, const WindowVisitor& visit) {
  return InitialSearch(w, body, visit).run();
}

bool for_each_continuation(const Window& t, const WindowVisitor& visit) {
  return ContinuationSearch(t, visit).run();
}

std::vector<Window> initial_windows(const FormulaSet& w, const Formula& body) {
  return collect([&](const WindowVisitor& v) { return for_each_initial_window(w, body, v); });
}

std::vector<Window> continuations(const Window& t) {
  return collect([&](const WindowVisitor& v) { return for_each_continuation(t, v); });
}

bool is_window(const std::vector<FormulaSet>& parts, const FormulaSet& anchor, const std::optional<Formula>& extra) {
  if (parts.empty()) return false;
  const FormulaSet a_inv = box_inverse(anchor, Modality::A);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    FormulaSet seed = a_inv;
    if (i + 1 < parts.size()) seed = seed.united(box_inverse(parts[i + 1], Modality::B));
    if (i == 0 && extra) seed.insert(*extra);
    if (!is_ccs_of(parts[i], seed)) return false;
  }
  return true;
}

std::vector<FormulaSet> merge(const Window& t, const Window& next) {
  std::vector<FormulaSet> out{t.head()};
  out.insert(out.end(), next.parts.begin(), next.parts.end());
  return out;
}

nlohmann::ordered_json to_json(const Window& t, Syntax syntax) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& part : t.parts) {
    auto members = nlohmann::ordered_json::array();
    for (const auto& f : part) members.push_back(render(f, syntax));
    arr.push_back(members);
  }
  return arr;
}

}  // namespace densat
