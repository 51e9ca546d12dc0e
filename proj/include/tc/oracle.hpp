#pragma once

#include <numeric>
#include <vector>

#include "tc/gmap.hpp"

namespace tc {

// Complete element table of a finite pc group, indexed in mixed radix
// over the relative orders.
struct FiniteGroupTable {
  PcRef g;
  std::vector<PcElement> elements;
  std::vector<std::size_t> strides;

  static FiniteGroupTable build(PcRef g, const Int& bound = Int(10000)) {
    FiniteGroupTable t;
    t.g = g;
    Int order = 1;
    for (const Int& m : g->orders) {
      if (m == 0) throw TooLarge("finite group table: group is infinite");
      order *= m;
      if (order > bound)
        throw TooLarge("finite group table: order exceeds the bound " + bound.str());
    }
    const int n = g->ngens();
    t.strides.assign(n, 1);
    for (int i = 1; i < n; ++i)
      t.strides[i] = t.strides[i - 1] * static_cast<std::size_t>(g->orders[i - 1]);
    std::size_t total = static_cast<std::size_t>(order);
    for (std::size_t idx = 0; idx < total; ++idx) {
      ExpVec e(n);
      std::size_t rest = idx;
      for (int i = 0; i < n; ++i) {
        std::size_t m = static_cast<std::size_t>(g->orders[i]);
        e[i] = Int(rest % m);
        rest /= m;
      }
      t.elements.push_back(PcElement{std::move(e)});
    }
    return t;
  }

  std::size_t size() const { return elements.size(); }

  std::size_t index_of(const PcElement& x) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < strides.size(); ++i)
      idx += strides[i] * static_cast<std::size_t>(x.e[i]);
    return idx;
  }
};

struct BruteForceResult {
  Int count;
  std::vector<std::size_t> orbit;                 // orbit root per element index
  std::vector<std::vector<std::size_t>> classes;  // element indices per orbit
};

// Orbits of g -> phi(x)^-1 g x over all x, by closure under the
// generator actions (the maps form a group action, so generators
// suffice). Definition-level; nilpotency is not needed.
inline BruteForceResult brute_force_reidemeister(const FiniteGroupTable& t,
                                                 const GroupMap& phi) {
  const PcPresentation& g = *t.g;
  const std::size_t n = t.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };
  auto unite = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[b] = a;
  };
  for (int s = 0; s < g.ngens(); ++s) {
    PcElement x = g.generator(s);
    PcElement px_inv = g.inv(phi.apply(x));
    for (std::size_t e = 0; e < n; ++e) {
      PcElement img = g.mul(g.mul(px_inv, t.elements[e]), x);
      unite(e, t.index_of(img));
    }
  }
  BruteForceResult r;
  std::vector<std::size_t> roots(n);
  for (std::size_t e = 0; e < n; ++e) roots[e] = find(e);
  r.orbit = roots;
  std::vector<long long> slot(n, -1);
  for (std::size_t e = 0; e < n; ++e) {
    if (slot[roots[e]] < 0) {
      slot[roots[e]] = static_cast<long long>(r.classes.size());
      r.classes.emplace_back();
    }
    r.classes[static_cast<std::size_t>(slot[roots[e]])].push_back(e);
  }
  r.count = Int(r.classes.size());
  return r;
}

// Exhaustive witness search over the exponent box [-bound, bound]^n in
// lexicographic order. A miss is evidence, not proof, of inequivalence.
inline std::optional<PcElement> bounded_witness_search(PcRef g, const GroupMap& phi,
                                                       const PcElement& gelt,
                                                       const PcElement& felt, long long bound) {
  const int n = g->ngens();
  std::vector<long long> cur(n, -bound);
  if (bound < 0) return std::nullopt;
  for (;;) {
    ExpVec e(n);
    for (int i = 0; i < n; ++i) e[i] = Int(cur[i]);
    PcElement x = g->from_exponents(e);
    if (g->mul(phi.apply(x), gelt) == g->mul(felt, x)) return x;
    int i = n - 1;
    for (; i >= 0; --i) {
      if (cur[i] < bound) {
        ++cur[i];
        break;
      }
      cur[i] = -bound;
    }
    if (i < 0) return std::nullopt;
  }
}

}  // namespace tc
