#include "kinfty/horns.hpp"

#include <cmath>
#include <sstream>

#include "kinfty/error.hpp"

namespace kinfty::simplicial {

void validate_horn(const FiniteComplex& x, const HornInstance& h) {
  if (h.n < 1 || h.i < 0 || h.i > h.n) throw InputError("horn index out of range");
  if (h.faces.size() != static_cast<std::size_t>(h.n) + 1)
    throw InputError("horn needs n+1 face slots");
  for (int k = 0; k <= h.n; ++k) {
    const auto& f = h.faces[static_cast<std::size_t>(k)];
    if (k == h.i) {
      if (f) throw InputError("horn assigns the missing face");
      continue;
    }
    if (!f || f->dim() != h.n - 1 || !x.valid_ref(*f))
      throw InputError("horn face " + std::to_string(k) + " is not an (n-1)-simplex of the target");
  }
  for (int k = 1; k <= h.n; ++k) {
    for (int j = 0; j < k; ++j) {
      if (j == h.i || k == h.i) continue;
      if (x.face(*h.faces[static_cast<std::size_t>(k)], j) !=
          x.face(*h.faces[static_cast<std::size_t>(j)], k - 1))
        throw InputError("horn faces " + std::to_string(j) + " and " + std::to_string(k) +
                         " disagree");
    }
  }
}

HornInstance horn_of(const FiniteComplex& x, const SimplexRef& simplex, int i) {
  HornInstance h{simplex.dim(), i, {}};
  for (int k = 0; k <= h.n; ++k) {
    if (k == i)
      h.faces.emplace_back();
    else
      h.faces.emplace_back(x.face(simplex, k));
  }
  validate_horn(x, h);
  return h;
}

namespace {

bool fills(const FiniteComplex& x, const HornInstance& h, const SimplexRef& z) {
  for (int k = 0; k <= h.n; ++k) {
    if (k == h.i) continue;
    if (x.face(z, k) != *h.faces[static_cast<std::size_t>(k)]) return false;
  }
  return true;
}

}  // namespace

std::optional<SimplexRef> find_filler(const FiniteComplex& x, const HornInstance& h) {
  validate_horn(x, h);
  for (const auto& z : x.simplexes(h.n)) {
    if (fills(x, h, z)) return z;
  }
  return std::nullopt;
}

std::string describe(const FiniteComplex& x, const HornInstance& h) {
  std::ostringstream out;
  out << "Λ^" << h.n << "_" << h.i << " [";
  bool first = true;
  for (int k = 0; k <= h.n; ++k) {
    if (k == h.i) continue;
    if (!first) out << ", ";
    first = false;
    out << "d" << k << "=" << x.describe(*h.faces[static_cast<std::size_t>(k)]);
  }
  out << "]";
  return out.str();
}

KanReport kan_check(const FiniteComplex& x, int up_to, std::size_t instance_cap,
                    HornScope horns) {
  if (up_to < 0 || up_to > x.dim_bound())
    throw InputError("kan_check dimension " + std::to_string(up_to) + " exceeds dimension bound");
  KanReport report;
  report.up_to = up_to;
  report.horns = horns;

  for (int n = 1; n <= up_to; ++n) {
    const double choices = static_cast<double>(x.simplexes(n - 1).size());
    const int kinds = horns == HornScope::all ? n + 1 : n - 1;
    report.estimate += static_cast<double>(kinds) * std::pow(choices, n);
  }

  for (int n = 1; n <= up_to && !report.aborted; ++n) {
    const auto candidates = x.simplexes(n - 1);
    std::vector<int> order;
    for (int i = 1; i < n; ++i) order.push_back(i);
    if (horns == HornScope::all) {
      order.push_back(0);
      order.push_back(n);
    }

    for (int i : order) {
      HornInstance h{n, i, std::vector<std::optional<SimplexRef>>(static_cast<std::size_t>(n) + 1)};
      std::vector<int> slots;
      for (int k = 0; k <= n; ++k)
        if (k != i) slots.push_back(k);

      auto rec = [&](auto&& self, std::size_t depth) -> void {
        if (report.aborted) return;
        if (depth == slots.size()) {
          if (++report.instances > instance_cap) {
            report.aborted = true;
            return;
          }
          bool found = false;
          for (const auto& z : x.simplexes(n)) {
            if (fills(x, h, z)) {
              found = true;
              break;
            }
          }
          if (!found) {
            ++report.failures;
            if (!report.witness) report.witness = h;
          }
          return;
        }
        const int k = slots[depth];
        for (const auto& c : candidates) {
          bool compatible = true;
          for (std::size_t prev = 0; prev < depth && compatible; ++prev) {
            const int j = slots[prev];
            compatible = x.face(c, j) == x.face(*h.faces[static_cast<std::size_t>(j)], k - 1);
          }
          if (!compatible) continue;
          h.faces[static_cast<std::size_t>(k)] = c;
          self(self, depth + 1);
          h.faces[static_cast<std::size_t>(k)].reset();
          if (report.aborted) return;
        }
      };
      rec(rec, 0);
      if (report.aborted) break;
    }
  }
  report.passed = !report.aborted && report.failures == 0;
  return report;
}

}  // namespace kinfty::simplicial
