#include "relfan/filtration.hpp"

#include "relfan/errors.hpp"

namespace relfan {

Filtration Filtration::from_steps(std::size_t ambient, const std::map<int, Subspace>& steps) {
  Filtration f(ambient);
  Subspace prev(ambient);
  for (const auto& [k, s] : steps) {
    if (s.ambient() != ambient) throw precondition_violated("filtration step has wrong ambient dimension");
    if (!s.contains(prev)) throw precondition_violated("filtration is not increasing at index " + std::to_string(k));
    if (!(s == prev)) f.steps_.emplace(k, s);
    prev = s;
  }
  if (ambient > 0 && (f.steps_.empty() || !f.steps_.rbegin()->second.is_full()))
    throw precondition_violated("filtration is not exhaustive");
  return f;
}

Filtration Filtration::trivial(std::size_t ambient, int w) {
  Filtration f(ambient);
  if (ambient > 0) f.steps_.emplace(w, Subspace::full(ambient));
  return f;
}

const Subspace& Filtration::at(int k) const {
  auto it = steps_.upper_bound(k);
  if (it == steps_.begin()) return zero_;
  return std::prev(it)->second;
}

std::size_t Filtration::graded_dim(int k) const { return at(k).dim() - at(k - 1).dim(); }

int Filtration::lowest() const { return steps_.empty() ? 0 : steps_.begin()->first; }

int Filtration::highest() const { return steps_.empty() ? 0 : steps_.rbegin()->first; }

Filtration Filtration::shift(int m) const {
  Filtration f(ambient_);
  for (const auto& [k, s] : steps_) f.steps_.emplace(k - m, s);
  return f;
}

Filtration Filtration::restrict_to(const Subspace& s) const {
  std::map<int, Subspace> steps;
  for (const auto& [k, t] : steps_) steps.emplace(k, t.intersect(s));
  // Expressed in the ambient space; callers compare within S.
  Filtration f(ambient_);
  Subspace prev(ambient_);
  for (const auto& [k, t] : steps) {
    if (!(t == prev)) f.steps_.emplace(k, t);
    prev = t;
  }
  return f;
}

}  // namespace relfan
