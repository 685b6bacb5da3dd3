#include "kinfty/funcspace.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

#include "kinfty/error.hpp"

namespace kinfty::funcspace {

DomainOracle::DomainOracle(const WeakDomain& dom, const WeakDomain& cod) : dom_(&dom), cod_(&cod) {
  if (!cod.pointed()) throw InputError("step functors need a pointed codomain");
}

std::optional<int> DomainOracle::cod_join(const std::vector<int>& bs) const {
  if (bs.empty()) return cod_bottom();
  if (bs.size() == 1) return cod_->rep(bs.front());
  return cod_->lub(bs);
}

namespace {

void check_vertex(const WeakDomain& k, int v, const char* what) {
  if (v < 0 || v >= k.size()) throw InputError(std::string(what) + " is not a vertex of its domain");
}

void check_same_spaces(const StepFunctor& f, const StepFunctor& g) {
  if (f.dom != g.dom || f.cod != g.cod) throw InputError("step functors live on different spaces");
}

}  // namespace

StepFunctor empty_functor(const WeakDomain& k, const WeakDomain& l) {
  if (!l.pointed()) throw InputError("step functors need a pointed codomain");
  return StepFunctor{&k, &l, {}};
}

StepFunctor step(int a, int b, const WeakDomain& k, const WeakDomain& l) {
  check_vertex(k, a, "step guard");
  check_vertex(l, b, "step value");
  return make_functor(k, l, {{a, b}});
}

std::optional<int> find_inconsistency(const WeakDomain& k, const WeakDomain& l, const Pairs& pairs) {
  DomainOracle o(k, l);
  for (int x = 0; x < k.size(); ++x)
    if (!steps::fire(o, pairs, x)) return x;
  return std::nullopt;
}

StepFunctor make_functor(const WeakDomain& k, const WeakDomain& l, const Pairs& pairs) {
  for (const auto& [a, b] : pairs) {
    check_vertex(k, a, "step guard");
    check_vertex(l, b, "step value");
  }
  if (auto x = find_inconsistency(k, l, pairs)) {
    VertexSet clash;
    for (const auto& [a, b] : pairs)
      if (k.leq(a, *x)) clash.push_back(b);
    throw SemanticError("inconsistent step functor: at " + k.name(*x) + " the outputs " +
                        l.render_set(clash) + " have no least upper bound");
  }
  return StepFunctor{&k, &l, steps::normalize(DomainOracle(k, l), pairs)};
}

int apply(const StepFunctor& f, int x) {
  check_vertex(*f.dom, x, "argument");
  return steps::fire_or_throw(DomainOracle(*f.dom, *f.cod), f.pairs, x);
}

StepFunctor join_steps(const StepFunctor& f, const StepFunctor& g) {
  check_same_spaces(f, g);
  Pairs all = f.pairs;
  all.insert(all.end(), g.pairs.begin(), g.pairs.end());
  return make_functor(*f.dom, *f.cod, all);
}

bool pointwise_leq(const StepFunctor& f, const StepFunctor& g) {
  check_same_spaces(f, g);
  return steps::leq(DomainOracle(*f.dom, *f.cod), f.pairs, g.pairs);
}

bool equivalent(const StepFunctor& f, const StepFunctor& g) {
  return pointwise_leq(f, g) && pointwise_leq(g, f);
}

StepFunctor sup_directed_functors(const std::vector<StepFunctor>& family) {
  if (family.empty()) throw SemanticError("empty family is not directed");
  for (const auto& f : family) {
    check_same_spaces(family.front(), f);
    for (const auto& g : family) {
      const bool bounded = std::any_of(family.begin(), family.end(), [&](const StepFunctor& h) {
        return pointwise_leq(f, h) && pointwise_leq(g, h);
      });
      if (!bounded) throw SemanticError("family of step functors is not directed");
    }
  }
  Pairs all;
  for (const auto& f : family) all.insert(all.end(), f.pairs.begin(), f.pairs.end());
  return make_functor(*family.front().dom, *family.front().cod, all);
}

std::string render(const StepFunctor& f) {
  if (f.pairs.empty()) return "⊥";
  std::string out;
  for (std::size_t i = 0; i < f.pairs.size(); ++i) {
    if (i) out += " ∨ ";
    out += "(" + f.dom->name(f.pairs[i].first) + "⇒" + f.cod->name(f.pairs[i].second) + ")";
  }
  return out;
}

FunctionTable tabulate(const StepFunctor& f) {
  FunctionTable t{f.dom, f.cod, {}};
  for (int x = 0; x < f.dom->size(); ++x) t.map.push_back(apply(f, x));
  return t;
}

std::optional<std::pair<int, int>> monotonicity_violation(const FunctionTable& t) {
  for (int x = 0; x < t.dom->size(); ++x)
    for (int y = 0; y < t.dom->size(); ++y)
      if (t.dom->leq(x, y) && !t.cod->leq(t(x), t(y))) return std::make_pair(x, y);
  return std::nullopt;
}

std::optional<std::vector<int>> edge_action(const FunctionTable& t, int x, int y) {
  if (!t.dom->leq(x, y)) return std::nullopt;
  return t.cod->witness(t(x), t(y));
}

bool tables_equivalent(const FunctionTable& s, const FunctionTable& t) {
  if (s.dom != t.dom || s.cod != t.cod) return false;
  for (int x = 0; x < s.dom->size(); ++x)
    if (!s.cod->equiv(s(x), t(x))) return false;
  return true;
}

FunctionTable compose(const FunctionTable& outer, const FunctionTable& inner) {
  if (inner.cod != outer.dom) throw InputError("tables are not composable");
  FunctionTable t{inner.dom, outer.cod, {}};
  for (int x = 0; x < inner.dom->size(); ++x) t.map.push_back(outer(inner(x)));
  return t;
}

StepFunctor to_steps(const FunctionTable& t) {
  if (auto v = monotonicity_violation(t))
    throw InputError("table is not monotone: " + t.dom->name(v->first) + " ≾ " +
                     t.dom->name(v->second) + " but " + t.cod->name(t(v->first)) + " ⋠ " +
                     t.cod->name(t(v->second)));
  Pairs pairs;
  for (int e = 0; e < t.dom->size(); ++e)
    if (hpo::is_compact(*t.dom, e)) pairs.emplace_back(e, t(e));
  return make_functor(*t.dom, *t.cod, pairs);
}

ContinuityReport continuity_oracle(const FunctionTable& t, int exhaustive_limit) {
  ContinuityReport r;
  const int n = t.dom->size();
  auto check = [&](const VertexSet& xs) {
    if (!t.dom->is_directed(xs)) return true;
    auto s = t.dom->lub(xs);
    if (!s) return true;
    VertexSet image;
    for (int x : xs) image.push_back(t(x));
    auto is = t.cod->lub(image);
    return is && t.cod->equiv(*is, t(*s));
  };
  if (n <= exhaustive_limit) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      VertexSet xs;
      for (int v = 0; v < n; ++v)
        if (mask & (std::uint64_t{1} << v)) xs.push_back(v);
      if (!check(xs)) {
        r.continuous = false;
        r.witness = xs;
        return r;
      }
    }
    return r;
  }
  // Larger domains: directed sets are attained, so the chains {x, y} with
  // x ≾ y decide it.
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (t.dom->leq(x, y) && !check({x, y})) {
        r.continuous = false;
        r.witness = VertexSet{x, y};
        return r;
      }
  return r;
}

std::optional<std::vector<FunctionTable>> enumerate_monotone_tables(const WeakDomain& k, const WeakDomain& l,
                                                                   std::size_t cap) {
  std::vector<FunctionTable> out;
  bool overflow = false;
  FunctionTable t{&k, &l, std::vector<int>(static_cast<std::size_t>(k.size()), -1)};
  auto rec = [&](auto&& self, int x) -> void {
    if (overflow) return;
    if (x == k.size()) {
      if (out.size() == cap)
        overflow = true;
      else
        out.push_back(t);
      return;
    }
    for (int y = 0; y < l.size() && !overflow; ++y) {
      bool ok = true;
      for (int p = 0; p < x && ok; ++p) {
        if (k.leq(p, x) && !l.leq(t(p), y)) ok = false;
        if (k.leq(x, p) && !l.leq(y, t(p))) ok = false;
      }
      if (!ok) continue;
      t.map[static_cast<std::size_t>(x)] = y;
      self(self, x + 1);
    }
    t.map[static_cast<std::size_t>(x)] = -1;
  };
  rec(rec, 0);
  if (overflow) return std::nullopt;
  return out;
}

std::vector<FunctionTable> enumerate_monotone_tables(const WeakDomain& k, const WeakDomain& l) {
  return *enumerate_monotone_tables(k, l, std::numeric_limits<std::size_t>::max());
}

FunctionSpace function_space_domain(const WeakDomain& k, const WeakDomain& l) {
  if (!l.pointed()) throw InputError("function space needs a pointed codomain");
  auto tables = enumerate_monotone_tables(k, l);
  simplicial::FiniteComplex carrier;
  std::optional<int> bottom;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    std::string name = "[";
    for (int x = 0; x < k.size(); ++x) {
      if (x) name += ",";
      name += l.name(tables[i](x));
    }
    carrier.add_vertex(name + "]");
    const bool is_bottom = std::all_of(tables[i].map.begin(), tables[i].map.end(),
                                       [&](int y) { return l.equiv(y, *l.bottom()); });
    if (is_bottom && !bottom) bottom = static_cast<int>(i);
  }
  std::vector<std::pair<int, int>> order;
  for (std::size_t i = 0; i < tables.size(); ++i)
    for (std::size_t j = 0; j < tables.size(); ++j) {
      if (i == j) continue;
      bool below = true;
      for (int x = 0; x < k.size() && below; ++x) below = l.leq(tables[i](x), tables[j](x));
      if (below) order.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  WeakDomain domain(std::move(carrier), order, bottom);
  return FunctionSpace{std::move(tables), std::move(domain)};
}

std::vector<StepFunctor> curry(const FunctionTable& f, const WeakDomain& k, const WeakDomain& l) {
  if (f.dom->size() != k.size() * l.size()) throw InputError("table is not over k × l");
  std::vector<StepFunctor> out;
  for (int x = 0; x < k.size(); ++x) {
    FunctionTable slice{&l, f.cod, {}};
    for (int y = 0; y < l.size(); ++y) slice.map.push_back(f(x * l.size() + y));
    if (auto v = monotonicity_violation(slice))
      throw InputError("slice at " + k.name(x) + " is not monotone: " + l.name(v->first) + " ≾ " +
                       l.name(v->second));
    out.push_back(to_steps(slice));
  }
  return out;
}

FunctionTable uncurry(const std::vector<StepFunctor>& family, const WeakDomain& product) {
  if (family.empty()) throw InputError("empty family");
  const int m = family.front().dom->size();
  if (product.size() != static_cast<int>(family.size()) * m) throw InputError("product size mismatch");
  FunctionTable t{&product, family.front().cod, {}};
  for (int v = 0; v < product.size(); ++v)
    t.map.push_back(apply(family[static_cast<std::size_t>(v / m)], v % m));
  return t;
}

}  // namespace kinfty::funcspace
