#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "kinfty/tower.hpp"

namespace kinfty::tower {

struct PairsHash {
  std::size_t operator()(const Pairs& p) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (const auto& [a, b] : p) {
      h = (h ^ static_cast<std::uint32_t>(a)) * 1099511628211ull;
      h = (h ^ static_cast<std::uint32_t>(b)) * 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

inline std::uint64_t key(int x, int y) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) | static_cast<std::uint32_t>(y);
}

struct Tower::Level {
  // Elements, for n >= 1.
  std::vector<Pairs> elems;
  std::unordered_map<Pairs, int, PairsHash> index;
  // Raw step lists already normalized, to their ids.
  std::unordered_map<Pairs, int, PairsHash> made;
  // Caches keyed by ids at this level.
  std::unordered_map<std::uint64_t, bool> leq;
  std::unordered_map<std::uint64_t, std::optional<int>> join2;
  std::unordered_map<std::uint64_t, int> apply;  // (f at this level, x one below)
  std::unordered_map<int, int> plus;             // x here -> level n+1
  std::unordered_map<int, int> minus;            // g at level n+1 -> here
  std::unordered_map<int, std::vector<int>> lower;
  std::unordered_map<int, int> normal_level;     // lowest level fixing x
};

struct Tower::LevelOracle {
  const Tower* t;
  int n;  // level of the functions

  bool dom_leq(int a, int x) const { return t->leq(n - 1, a, x); }
  int dom_canon(int a) const { return t->canon(n - 1, a); }
  bool cod_leq(int b, int c) const { return t->leq(n - 1, b, c); }
  int cod_bottom() const { return t->bottom(n - 1); }
  std::optional<int> cod_join(const std::vector<int>& bs) const { return t->join(n - 1, bs); }
};

}  // namespace kinfty::tower
