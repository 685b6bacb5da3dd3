#pragma once

// Finite joins of step functions ⋁(aᵢ ⇒ bᵢ), generic over the order on the
// domain and codomain. Shared by function spaces over finite domains and by
// the tower levels.
//
// An oracle O provides
//   bool dom_leq(int a, int x) const;
//   int  dom_canon(int a) const;             // representative of a's class
//   bool cod_leq(int b, int c) const;
//   int  cod_bottom() const;
//   std::optional<int> cod_join(const std::vector<int>& bs) const;
// cod_join returns the least upper bound as a canonical representative, the
// bottom for an empty set, and nullopt when the set has no least upper bound.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kinfty/error.hpp"

namespace kinfty::steps {

using Pairs = std::vector<std::pair<int, int>>;

/// Join of the outputs whose guard lies below x.
template <class O>
std::optional<int> fire(const O& o, const Pairs& f, int x) {
  std::vector<int> bs;
  for (const auto& [a, b] : f)
    if (o.dom_leq(a, x)) bs.push_back(b);
  return o.cod_join(bs);
}

template <class O>
int fire_or_throw(const O& o, const Pairs& f, int x) {
  auto r = fire(o, f, x);
  if (!r) throw SemanticError("step functor is inconsistent: fired outputs have no least upper bound");
  return *r;
}

/// f ≾ g pointwise. Step functions are monotone, so comparing at the guards
/// of f is enough.
template <class O>
bool leq(const O& o, const Pairs& f, const Pairs& g) {
  for (const auto& [a, b] : f) {
    auto ga = fire(o, g, a);
    if (!ga || !o.cod_leq(b, *ga)) return false;
  }
  return true;
}

/// Canonical form: guards replaced by representatives, bottom outputs
/// dropped, each output raised to the value of the whole function at its
/// guard, then pairs already implied by the others removed in sorted order.
/// Throws SemanticError when some guard fires an unbounded set.
template <class O>
Pairs normalize(const O& o, const Pairs& f) {
  Pairs in;
  in.reserve(f.size());
  const int bottom = o.cod_bottom();
  for (const auto& [a, b] : f)
    if (!o.cod_leq(b, bottom)) in.emplace_back(o.dom_canon(a), b);
  Pairs out;
  out.reserve(in.size());
  for (const auto& [a, b] : in) out.emplace_back(a, fire_or_throw(o, in, a));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  // Guards are now unique up to representative; a pair is redundant exactly
  // when the other pairs already reach its output at its guard.
  for (std::size_t i = 0; i < out.size();) {
    Pairs rest;
    rest.reserve(out.size() - 1);
    for (std::size_t j = 0; j < out.size(); ++j)
      if (j != i) rest.push_back(out[j]);
    auto r = fire(o, rest, out[i].first);
    if (r && o.cod_leq(out[i].second, *r))
      out = std::move(rest);
    else
      ++i;
  }
  return out;
}

}  // namespace kinfty::steps
