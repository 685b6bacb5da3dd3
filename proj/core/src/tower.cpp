#include "kinfty/tower.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "kinfty/error.hpp"
#include "kinfty/funcspace.hpp"
#include "kinfty/text_format.hpp"
#include "tower_level.hpp"

namespace kinfty::tower {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

// "name(arg)" -> arg, when s has that shape.
std::optional<int> builtin_arg(std::string_view s, std::string_view name) {
  if (s.size() < name.size() + 2 || s.substr(0, name.size()) != name || s[name.size()] != '(' ||
      s.back() != ')')
    return std::nullopt;
  return parse_int(s.substr(name.size() + 1, s.size() - name.size() - 2));
}

PathClass empty_path(int v) { return PathClass{v, {}}; }

}  // namespace

// --- representative maps ------------------------------------------------------

RepresentativeMap identity_map(const WeakDomain& k0) {
  RepresentativeMap r;
  r.mode = "identity";
  for (int v = 0; v < k0.size(); ++v) {
    r.target.push_back(v);
    r.unit.push_back(empty_path(v));
    r.counit.push_back(empty_path(v));
  }
  return r;
}

RepresentativeMap example41_map(const WeakDomain& k0) {
  auto r = identity_map(k0);
  r.mode = "example41";
  const auto& c = k0.carrier();
  if (!c.find(0, "S1.0") || !c.find(0, "S1.1") || !c.find(1, "S1.01"))
    throw InputError("rep = example41 needs a K0 containing the circle S1 (use nplus(d) with d >= 1)");
  const int zero = k0.vertex("S1.0");
  const int one = k0.vertex("S1.1");
  r.target[static_cast<std::size_t>(zero)] = one;
  r.unit[static_cast<std::size_t>(zero)] = simplicial::parse_word(c, zero, "+S1.01");
  r.counit[static_cast<std::size_t>(zero)] = simplicial::parse_word(c, one, "+S1.12 -S1.02");
  return r;
}

void validate(const WeakDomain& k0, const RepresentativeMap& rep) {
  const auto n = static_cast<std::size_t>(k0.size());
  if (rep.target.size() != n || rep.unit.size() != n || rep.counit.size() != n)
    throw InputError("representative map does not cover K0");
  const int bot = *k0.bottom();
  if (!k0.equiv(rep.target[static_cast<std::size_t>(bot)], bot))
    throw InputError("representative map must fix the bottom");
  const auto& c = k0.carrier();
  for (int v = 0; v < k0.size(); ++v) {
    const auto i = static_cast<std::size_t>(v);
    const int t = rep.target[i];
    if (t < 0 || t >= k0.size()) throw InputError("representative of " + k0.name(v) + " is not a vertex");
    simplicial::check_composable(c, rep.unit[i]);
    simplicial::check_composable(c, rep.counit[i]);
    if (rep.unit[i].basepoint != v || simplicial::path_end(c, rep.unit[i]) != t)
      throw InputError("unit path of " + k0.name(v) + " does not run to its representative");
    if (rep.counit[i].basepoint != t || simplicial::path_end(c, rep.counit[i]) != v)
      throw InputError("counit path of " + k0.name(v) + " does not run back from its representative");
  }
}

// --- configuration ------------------------------------------------------------

WeakDomain load_k0(const std::string& source, const std::string& base_dir) {
  const std::string_view s = source;
  if (s.rfind("builtin:", 0) == 0) {
    const auto b = s.substr(8);
    if (auto d = builtin_arg(b, "nplus")) return hpo::build_N_plus(*d);
    if (auto n = builtin_arg(b, "chain")) return hpo::chain_domain(*n);
    if (b == "butterfly") return hpo::butterfly_domain();
    if (b == "point") return hpo::point_domain();
    throw InputError("unknown builtin K0 '" + source + "'");
  }
  std::filesystem::path p(source);
  if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
  return WeakDomain::from_document(simplicial::parse_document_file(p.string()));
}

TowerConfig parse_config(std::string_view text, const std::string& base_dir) {
  TowerConfig cfg;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    line = line.substr(0, line.find('#'));
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const auto where = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string::npos) throw InputError(where + "expected 'key = value'");
    const std::string k = trim(std::string_view(body).substr(0, eq));
    const std::string v = trim(std::string_view(body).substr(eq + 1));
    if (k == "K0") {
      try {
        cfg.K0 = load_k0(v, base_dir);
      } catch (const InputError& e) {
        throw InputError(where + e.what());
      }
      cfg.k0_source = v;
    } else if (k == "N") {
      auto n = parse_int(v);
      if (!n || *n < 1) throw InputError(where + "N must be an integer >= 1");
      cfg.N = *n;
    } else if (k == "rep") {
      if (v != "identity" && v != "example41") throw InputError(where + "rep must be identity or example41");
      cfg.rep = v;
    } else {
      throw InputError(where + "unknown key '" + k + "'");
    }
  }
  return cfg;
}

TowerConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open config file " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str(), std::filesystem::path(path).parent_path().string());
}

// --- levels -------------------------------------------------------------------

Tower::Tower(TowerConfig config) : config_(std::move(config)) {
  const auto& k0 = config_.K0;
  if (config_.N < 1) throw InputError("truncation level N must be at least 1");
  if (!k0.pointed()) throw InputError("K0 must have a bottom");
  if (!hpo::is_bounded_complete(k0).passed) throw InputError("K0 must be bounded complete");
  if (config_.rep == "identity")
    rep_ = identity_map(k0);
  else if (config_.rep == "example41")
    rep_ = example41_map(k0);
  else
    throw InputError("unknown representative map '" + config_.rep + "'");
  validate(k0, rep_);
  for (int n = 0; n <= config_.N; ++n) {
    levels_.push_back(std::make_unique<Level>());
    if (n >= 1) {
      levels_.back()->elems.emplace_back();
      levels_.back()->index.emplace(Pairs{}, 0);
    }
  }
  generators_.resize(static_cast<std::size_t>(config_.N) + 1);
}

Tower::~Tower() = default;

void Tower::check_level(int n) const {
  if (n < 0) throw InputError("negative tower level");
  if (n > config_.N) throw TruncationOverflow(n, config_.N);
}

Tower::Level& Tower::level(int n) const {
  check_level(n);
  return *levels_[static_cast<std::size_t>(n)];
}

int Tower::canon(int n, int x) const { return n == 0 ? config_.K0.rep(x) : x; }

int Tower::bottom(int n) const {
  check_level(n);
  return n == 0 ? config_.K0.rep(*config_.K0.bottom()) : 0;
}

const Pairs& Tower::pairs(int n, int id) const {
  if (n < 1) throw InputError("level-0 elements have no steps");
  auto& l = level(n);
  if (id < 0 || static_cast<std::size_t>(id) >= l.elems.size())
    throw InputError("no element " + std::to_string(id) + " at level " + std::to_string(n));
  return l.elems[static_cast<std::size_t>(id)];
}

std::size_t Tower::interned(int n) const {
  return n == 0 ? static_cast<std::size_t>(config_.K0.size()) : level(n).elems.size();
}

bool Tower::leq(int n, int x, int y) const {
  if (n == 0) {
    check_level(0);
    return config_.K0.leq(x, y);
  }
  if (x == y || x == 0) return true;
  auto& cache = level(n).leq;
  if (auto it = cache.find(key(x, y)); it != cache.end()) return it->second;
  const bool r = leq_join(n, x, {y});
  cache.emplace(key(x, y), r);
  return r;
}

bool Tower::leq_join(int n, int x, const std::vector<int>& ys) const {
  if (n == 0) {
    if (ys.size() == 1) return config_.K0.leq(x, ys.front());
    auto j = config_.K0.lub(ys);
    return j && config_.K0.leq(x, *j);
  }
  for (const auto& [a, b] : pairs(n, x)) {
    std::vector<int> bs;
    for (int y : ys)
      for (const auto& [a2, b2] : pairs(n, y))
        if (leq(n - 1, a2, a)) bs.push_back(b2);
    bool ok = false;
    if (bs.empty())
      ok = leq(n - 1, b, bottom(n - 1));
    else if (bs.size() == 1)
      ok = leq(n - 1, b, bs.front());
    else
      ok = leq_join(n - 1, b, bs);
    if (!ok) return false;
  }
  return true;
}

std::optional<int> Tower::join2(int n, int x, int y) const {
  if (n == 0) {
    check_level(0);
    return config_.K0.lub({x, y});
  }
  if (leq(n, x, y)) return y;
  if (leq(n, y, x)) return x;
  auto& cache = level(n).join2;
  const auto k = key(std::min(x, y), std::max(x, y));
  if (auto it = cache.find(k); it != cache.end()) return it->second;
  Pairs all = pairs(n, x);
  const auto& py = pairs(n, y);
  all.insert(all.end(), py.begin(), py.end());
  std::optional<int> r;
  if (!inconsistency(n, all)) r = make_trusted(n, all);
  level(n).join2.emplace(k, r);
  return r;
}

std::optional<int> Tower::join(int n, const std::vector<int>& xs) const {
  int acc = bottom(n);
  for (int x : xs) {
    auto j = join2(n, acc, canon(n, x));
    if (!j) return std::nullopt;
    acc = *j;
  }
  return acc;
}

std::optional<int> Tower::fire(int n, const Pairs& f, int x) const {
  int acc = bottom(n - 1);
  for (const auto& [a, b] : f) {
    if (!leq(n - 1, a, x)) continue;
    auto j = join2(n - 1, acc, b);
    if (!j) return std::nullopt;
    acc = *j;
  }
  return acc;
}

int Tower::apply(int n, int f, int x) const {
  if (n < 1) throw InputError("only elements of level >= 1 can be applied");
  auto& cache = level(n).apply;
  x = canon(n - 1, x);
  if (auto it = cache.find(key(f, x)); it != cache.end()) return it->second;
  auto r = fire(n, pairs(n, f), x);
  if (!r) throw Error("level-" + std::to_string(n) + " element fires an unbounded set");
  level(n).apply.emplace(key(f, x), *r);
  return *r;
}

std::optional<int> Tower::inconsistency(int n, const Pairs& f) const {
  // fire(x) depends only on the guards below x, and in a bounded complete
  // level those have a join below x with the same guard set. Checking the
  // joins of guard subsets therefore covers every point.
  std::vector<int> guards;
  for (const auto& [a, b] : f) guards.push_back(canon(n - 1, a));
  std::sort(guards.begin(), guards.end());
  guards.erase(std::unique(guards.begin(), guards.end()), guards.end());
  std::unordered_set<int> seen(guards.begin(), guards.end());
  std::vector<int> stack = guards;
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    if (!fire(n, f, s)) return s;
    for (int g : guards) {
      if (leq(n - 1, g, s)) continue;
      auto j = join2(n - 1, s, g);
      if (j && seen.insert(*j).second) stack.push_back(*j);
    }
  }
  return std::nullopt;
}

int Tower::intern(int n, Pairs normal) const {
  auto& l = level(n);
  if (auto it = l.index.find(normal); it != l.index.end()) return it->second;
  const int id = static_cast<int>(l.elems.size());
  l.index.emplace(normal, id);
  l.elems.push_back(std::move(normal));
  return id;
}

int Tower::make_trusted(int n, const Pairs& f) const {
  auto& made = level(n).made;
  if (auto it = made.find(f); it != made.end()) return it->second;
  const int id = intern(n, steps::normalize(LevelOracle{this, n}, f));
  level(n).made.emplace(f, id);
  return id;
}

void Tower::check_steps(int n, const Pairs& f) const {
  if (n < 1) throw InputError("steps live at levels >= 1");
  check_level(n);
  const int below = static_cast<int>(interned(n - 1));
  for (const auto& [a, b] : f)
    if (a < 0 || b < 0 || a >= below || b >= below)
      throw InputError("step refers to an unknown level-" + std::to_string(n - 1) + " element");
}

std::optional<int> Tower::try_make(int n, const Pairs& f) const {
  check_steps(n, f);
  if (inconsistency(n, f)) return std::nullopt;
  return make_trusted(n, f);
}

int Tower::make_monotone(int n, const Pairs& f) const {
  check_steps(n, f);
  return make_trusted(n, f);
}

int Tower::make(int n, const Pairs& f) const {
  if (auto r = try_make(n, f)) return *r;
  const int x = *inconsistency(n, f);
  std::string outs;
  for (const auto& [a, b] : f)
    if (leq(n - 1, a, x)) outs += (outs.empty() ? "" : ", ") + render(n - 1, b);
  throw SemanticError("inconsistent steps at level " + std::to_string(n) + ": at " + render(n - 1, x) +
                      " the outputs {" + outs + "} have no least upper bound");
}

// --- projection pairs ---------------------------------------------------------

int Tower::f_plus(int n, int x) const {
  check_level(n + 1);
  x = canon(n, x);
  auto& cache = level(n).plus;
  if (auto it = cache.find(x); it != cache.end()) return it->second;
  int r = 0;
  if (n == 0) {
    const int t = canon(0, rep_.target[static_cast<std::size_t>(x)]);
    r = make_trusted(1, {{bottom(0), t}});
  } else {
    Pairs lifted;
    const Pairs steps = pairs(n, x);  // interning below may move the original
    for (const auto& [a, b] : steps) lifted.emplace_back(f_plus(n - 1, a), f_plus(n - 1, b));
    r = make_trusted(n + 1, lifted);
  }
  level(n).plus.emplace(x, r);
  return r;
}

int Tower::f_minus(int n, int g) const {
  check_level(n + 1);
  auto& cache = level(n).minus;
  if (auto it = cache.find(g); it != cache.end()) return it->second;
  int r = 0;
  if (n == 0) {
    r = apply(1, g, bottom(0));
  } else {
    // fₙ⁻ preserves joins, and (A ⇒ B) pulled back along f_{n−1}⁺ fires
    // exactly above the minimal points of lower_set(A).
    Pairs out;
    const Pairs steps = pairs(n + 1, g);
    for (const auto& [a, b] : steps) {
      const int fb = f_minus(n - 1, b);
      for (int m : lower_set(n - 1, a)) out.emplace_back(m, fb);
    }
    r = make(n, out);
  }
  level(n).minus.emplace(g, r);
  return r;
}

int Tower::f_nm(int n, int m, int x) const {
  check_level(n);
  check_level(m);
  x = canon(n, x);
  for (int i = n; i < m; ++i) x = f_plus(i, x);
  for (int i = n; i > m; --i) x = f_minus(i - 1, x);
  return x;
}

const std::vector<int>& Tower::lower_set(int n, int a) const {
  check_level(n + 1);
  auto& cache = level(n).lower;
  if (auto it = cache.find(a); it != cache.end()) return it->second;
  std::vector<int> cands;
  const Pairs steps = pairs(n + 1, a);
  if (n == 0) {
    const auto& k0 = config_.K0;
    for (int x = 0; x < k0.size(); ++x) {
      if (k0.rep(x) != x) continue;
      const int t = rep_.target[static_cast<std::size_t>(x)];
      if (std::all_of(steps.begin(), steps.end(), [&](const auto& s) { return k0.leq(s.second, t); }))
        cands.push_back(x);
    }
  } else {
    // a ≾ fₙ⁺(x) iff for every step (P ⇒ Q) of a some m ∈ lower_set(Q) has
    // (f_{n−1}⁻(P) ⇒ m) ≾ x.
    std::vector<int> guards;
    std::vector<const std::vector<int>*> choices;
    for (const auto& [p, q] : steps) {
      guards.push_back(f_minus(n - 1, p));
      choices.push_back(&lower_set(n - 1, q));
    }
    const bool feasible = std::none_of(choices.begin(), choices.end(), [](auto* c) { return c->empty(); });
    std::vector<std::size_t> pick(steps.size(), 0);
    while (feasible) {
      Pairs f;
      for (std::size_t i = 0; i < steps.size(); ++i) f.emplace_back(guards[i], (*choices[i])[pick[i]]);
      if (auto x = try_make(n, f)) cands.push_back(*x);
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == choices[i]->size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  std::vector<int> minimal;
  for (int x : cands) {
    const bool dominated = std::any_of(cands.begin(), cands.end(), [&](int y) {
      return y != x && leq(n, y, x) && !leq(n, x, y);
    });
    if (!dominated) minimal.push_back(x);
  }
  return level(n).lower.emplace(a, std::move(minimal)).first->second;
}

// --- bases --------------------------------------------------------------------

const std::vector<int>& Tower::generators(int n) const {
  check_level(n);
  auto& slot = generators_[static_cast<std::size_t>(n)];
  if (slot) return *slot;
  std::vector<int> out;
  if (n == 0) {
    for (int v = 0; v < config_.K0.size(); ++v)
      if (config_.K0.rep(v) == v) out.push_back(v);
  } else {
    const auto& below = generators(n - 1);
    if (below.size() * below.size() > 5'000'000)
      throw Error("generator set at level " + std::to_string(n) + " is too large to enumerate");
    std::unordered_set<int> seen;
    out.push_back(0);
    seen.insert(0);
    const int bot = bottom(n - 1);
    for (int a : below)
      for (int b : below) {
        if (b == bot) continue;
        const int g = make_trusted(n, {{a, b}});
        if (seen.insert(g).second) out.push_back(g);
      }
  }
  slot = std::move(out);
  return *slot;
}

const std::optional<std::vector<int>>& Tower::all_level1() const {
  if (all_level1_) return *all_level1_;
  check_level(1);
  const auto& k0 = config_.K0;
  auto tables = funcspace::enumerate_monotone_tables(k0, k0, kLevel1Cap);
  std::optional<std::vector<int>> out;
  if (tables) {
    std::unordered_set<int> seen;
    out.emplace();
    for (const auto& t : *tables) {
      Pairs f;
      for (int v = 0; v < k0.size(); ++v) f.emplace_back(v, k0.rep(t(v)));
      const int id = make_trusted(1, f);
      if (seen.insert(id).second) out->push_back(id);
    }
  }
  all_level1_ = std::move(out);
  return *all_level1_;
}

Basis Tower::compact_basis(int n) const {
  check_level(n);
  if (n == 0) return {generators(0), true};
  const auto& all1 = all_level1();
  if (n == 1) return all1 ? Basis{*all1, true} : Basis{generators(1), true};
  if (n == 2 && all1) {
    Basis b{{0}, true};
    for (int a : *all1)
      for (int g : generators(1))
        if (g != 0) b.ids.push_back(make_trusted(2, {{a, g}}));
    std::sort(b.ids.begin(), b.ids.end());
    b.ids.erase(std::unique(b.ids.begin(), b.ids.end()), b.ids.end());
    return b;
  }
  return {generators(n), false};
}

ProjectionLawReport Tower::check_projection_laws(int n, const std::function<int(int)>& minus) const {
  check_level(n + 1);
  ProjectionLawReport r;
  r.level = n;
  auto down = [&](int g) { return minus ? minus(g) : f_minus(n, g); };
  const auto lo = compact_basis(n);
  r.retraction_complete = lo.join_generating;
  for (int x : lo.ids) {
    ++r.retraction_checked;
    const int back = down(f_plus(n, x));
    if (!equiv(n, back, x)) {
      r.failure = "f" + std::to_string(n) + "-(f" + std::to_string(n) + "+(x)) = " + render(n, back) +
                  " differs from x = " + render(n, x);
      return r;
    }
  }
  const auto hi = compact_basis(n + 1);
  r.deflation_complete = hi.join_generating;
  if (n == 2 && !minus && all_level1()) {
    const auto below = check_projection_laws(1);
    if (!below.passed()) {
      r.failure = "deflation at level 2 rests on level 1: " + *below.failure;
      return r;
    }
    for (int a : *all_level1()) {
      for (int m : lower_set(0, a)) {
        if (!leq(1, a, f_plus(0, m))) {
          r.failure = "lower set of " + render(1, a) + " contains " + render(0, m) + ", which does not cover it";
          return r;
        }
      }
      if (!leq(1, f_plus(0, f_minus(0, a)), a)) {
        r.failure = "f0+(f0-(y)) is not below y = " + render(1, a);
        return r;
      }
    }
    r.deflation_complete = below.deflation_complete;
    r.deflation_by_reduction = true;
  }
  for (int y : hi.ids) {
    ++r.deflation_checked;
    const int z = f_plus(n, down(y));
    if (!leq(n + 1, z, y)) {
      r.failure = "f" + std::to_string(n) + "+(f" + std::to_string(n) + "-(y)) = " + render(n + 1, z) +
                  " is not below y = " + render(n + 1, y);
      return r;
    }
  }
  return r;
}

}  // namespace kinfty::tower
