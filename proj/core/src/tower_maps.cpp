#include <algorithm>

#include "kinfty/error.hpp"
#include "kinfty/tower.hpp"
#include "tower_level.hpp"

namespace kinfty::tower {

namespace {

std::string subscript(int n) {
  static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::string s = std::to_string(n);
  std::string out;
  for (char c : s) out += digits[c - '0'];
  return out;
}

constexpr std::size_t kRenderBudget = 600;

}  // namespace

// --- elements -----------------------------------------------------------------

TowerElement Tower::vertex(std::string_view name) const { return {0, canon(0, config_.K0.vertex(name))}; }

TowerElement Tower::normalize(TowerElement t) const {
  const int n = t.level;
  check_level(n);
  const int x = canon(n, t.id);
  if (n == 0) return {0, x};
  pairs(n, x);  // validates the id
  auto& cache = level(n).normal_level;
  if (auto it = cache.find(x); it != cache.end()) return {it->second, f_nm(n, it->second, x)};
  int m = 0;
  for (; m < n; ++m)
    if (f_nm(m, n, f_nm(n, m, x)) == x) break;
  level(n).normal_level.emplace(x, m);
  return {m, f_nm(n, m, x)};
}

int Tower::component(TowerElement t, int m) const { return f_nm(t.level, m, t.id); }

TowerElement Tower::lift(TowerElement t, int m) const { return {m, component(t, m)}; }

bool Tower::tower_leq(TowerElement s, TowerElement t) const {
  // Embeddings are monotone and reflect the order, so the highest base
  // level decides every displayed level.
  const int l = std::max(s.level, t.level);
  return leq(l, component(s, l), component(t, l));
}

std::optional<TowerElement> Tower::tower_join(const std::vector<TowerElement>& xs) const {
  if (xs.empty()) return bottom_element();
  int l = 0;
  for (const auto& x : xs) l = std::max(l, x.level);
  std::vector<int> ids;
  for (const auto& x : xs) ids.push_back(component(x, l));
  auto j = join(l, ids);
  if (!j) return std::nullopt;
  return normalize({l, *j});
}

std::string Tower::render_rec(int n, int id, std::size_t budget) const {
  if (n == 0) return config_.K0.name(id);
  const auto t = normalize({n, id});
  if (t.level == 0) return config_.K0.name(t.id) + subscript(n);
  if (t.level < n) return "[" + render_rec(t.level, t.id, budget) + "]" + subscript(n);
  std::string out;
  for (const auto& [a, b] : pairs(n, id)) {
    if (!out.empty()) out += " ∨ ";
    if (out.size() > budget) return out + "…";
    out += "(" + render_rec(n - 1, a, budget / 2) + "⇒" + render_rec(n - 1, b, budget / 2) + ")";
  }
  return out;
}

std::string Tower::render(int n, int id) const {
  check_level(n);
  return render_rec(n, canon(n, id), kRenderBudget);
}

std::string Tower::render(TowerElement t) const {
  t = normalize(t);
  return render(t.level, t.id);
}

std::vector<std::string> Tower::render_components(TowerElement t) const {
  std::vector<std::string> out;
  for (int m = 0; m <= config_.N; ++m) out.push_back(render(m, component(t, m)));
  return out;
}

// --- application and the maps h, k ---------------------------------------------

int Tower::adequate_level(TowerElement x, TowerElement y) const {
  x = normalize(x);
  y = normalize(y);
  return std::max({x.level - 1, y.level, 0});
}

TowerElement Tower::app_at(TowerElement x, TowerElement y, int k) const {
  if (k < 0) throw InputError("negative application level");
  check_level(k + 1);
  const int r = apply(k + 1, component(x, k + 1), component(y, k));
  return normalize({k, r});
}

TowerElement Tower::app(TowerElement x, TowerElement y) const {
  const int k = adequate_level(x, y);
  const auto r = app_at(x, y, k);
  if (k + 2 <= config_.N) {
    const auto r2 = app_at(x, y, k + 1);
    if (!tower_equiv(r, r2))
      throw SemanticError("application did not stabilize: level " + std::to_string(k) + " gives " + render(r) +
                  ", level " + std::to_string(k + 1) + " gives " + render(r2));
  }
  return r;
}

int Tower::support_level(const TowerFunctor& f) const {
  int l = 0;
  for (const auto& [a, b] : f.steps) l = std::max({l, normalize(a).level, normalize(b).level});
  return l;
}

TowerElement Tower::h_map_at(const TowerFunctor& f, int k) const {
  if (k < support_level(f))
    throw InputError("h needs a level at least the support level " + std::to_string(support_level(f)));
  check_level(k + 1);
  Pairs steps;
  for (const auto& [a, b] : f.steps) steps.emplace_back(component(a, k), component(b, k));
  return normalize({k + 1, make(k + 1, steps)});
}

TowerElement Tower::h_map(const TowerFunctor& f) const {
  const int k = support_level(f);
  const auto r = h_map_at(f, k);
  if (k + 2 <= config_.N) {
    const auto r2 = h_map_at(f, k + 1);
    if (!tower_equiv(r, r2))
      throw SemanticError("h did not stabilize: level " + std::to_string(k + 1) + " gives " + render(r) + ", level " +
                  std::to_string(k + 2) + " gives " + render(r2));
  }
  return r;
}

TowerFunctor Tower::k_map(TowerElement x) const {
  x = normalize(x);
  TowerFunctor f;
  // A level-0 element acts through its embedding, the constant λy.x′.
  const int n = x.level == 0 ? 1 : x.level;
  const int id = x.level == 0 ? f_plus(0, x.id) : x.id;
  const Pairs steps = pairs(n, id);
  for (const auto& [a, b] : steps) f.steps.emplace_back(normalize({n - 1, a}), normalize({n - 1, b}));
  return f;
}

TowerElement Tower::apply_functor(const TowerFunctor& f, TowerElement y) const {
  std::vector<TowerElement> fired;
  for (const auto& [a, b] : f.steps)
    if (tower_leq(a, y)) fired.push_back(b);
  auto r = tower_join(fired);
  if (!r) throw SemanticError("functor fires an unbounded set at " + render(y));
  return *r;
}

bool Tower::functor_leq(const TowerFunctor& f, const TowerFunctor& g) const {
  return std::all_of(f.steps.begin(), f.steps.end(),
                     [&](const auto& s) { return tower_leq(s.second, apply_functor(g, s.first)); });
}

std::string Tower::render(const TowerFunctor& f) const {
  if (f.steps.empty()) return "⊥";
  std::string out;
  for (const auto& [a, b] : f.steps) {
    if (!out.empty()) out += " ∨ ";
    out += "(" + render(a) + "⇒" + render(b) + ")";
  }
  return out;
}

bool Tower::check_prop_4_4(TowerElement x) const {
  const int top = config_.N;
  std::vector<int> images;
  for (int m = 0; m <= top; ++m) images.push_back(f_nm(m, top, component(x, m)));
  auto j = join(top, images);
  return j && equiv(top, *j, component(x, top));
}

// --- edges --------------------------------------------------------------------

TowerEdge Tower::embed_path(const PathClass& p) const {
  const auto& c = config_.K0.carrier();
  simplicial::check_composable(c, p);
  return {{0, canon(0, p.basepoint)}, {0, canon(0, simplicial::path_end(c, p))}, p};
}

TowerEdge Tower::identity_edge(TowerElement t) const {
  t = normalize(t);
  return {t, t, PathClass{component(t, 0), {}}};
}

TowerEdge Tower::unit_edge(TowerElement x) const {
  x = normalize(x);
  const auto hk = h_map(k_map(x));
  if (x.level == 0) return {x, hk, rep_.unit[static_cast<std::size_t>(x.id)]};
  return {x, hk, PathClass{component(x, 0), {}}};
}

TowerEdge Tower::counit_edge(TowerElement x) const {
  x = normalize(x);
  const auto hk = h_map(k_map(x));
  if (x.level == 0) return {hk, x, rep_.counit[static_cast<std::size_t>(x.id)]};
  return {hk, x, PathClass{component(x, 0), {}}};
}

TowerEdge Tower::transport_k(const TowerEdge& e, TowerElement y) const {
  return {app(e.source, y), app(e.target, y), e.path};
}

TowerEdge Tower::compose(const TowerEdge& e, const TowerEdge& f) const {
  if (!tower_equiv(e.target, f.source))
    throw SemanticError("edges do not compose: " + render(e.target) + " is not " + render(f.source));
  TowerEdge r{e.source, f.target, std::nullopt};
  const auto& c = config_.K0.carrier();
  if (e.path && f.path && simplicial::path_end(c, *e.path) == f.path->basepoint)
    r.path = simplicial::concat(c, *e.path, *f.path);
  return r;
}

TowerEdge Tower::reverse(const TowerEdge& e) const {
  TowerEdge r{e.target, e.source, std::nullopt};
  if (e.path) r.path = simplicial::reverse(*e.path, simplicial::path_end(config_.K0.carrier(), *e.path));
  return r;
}

}  // namespace kinfty::tower
