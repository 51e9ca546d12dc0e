#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "tc/twisted.hpp"

namespace tc {

// Random automorphism sampling and the Reidemeister spectrum multiset.
//
// Supported catalog: groups whose weight-1 generators carry the
// abelianization and whose higher generators are derivable as
// commutators from a defining conjugation relation (free nilpotent
// builds, the Heisenberg presentations, and all abelian groups).
// Proposals are random GL matrices on the weight-1 block (products of
// bounded elementary operations, a permutation and signs), lifted by the
// derived commutator images, with random central corrections; every
// proposal is validated by the automorphism check before use.

struct SpectrumSample {
  GroupMap aut;
  std::vector<std::string> image_words;
  Cardinality r;
};

struct SpectrumResult {
  std::vector<SpectrumSample> samples;
  std::map<std::string, int> multiset;  // decimal count or "infinite" -> multiplicity
};

namespace detail {

// definition of a derived generator: m = [g_j, g_i]^sign
struct GenDef {
  int j, i, sign;
};

inline std::vector<GenDef> derive_definitions(const PcRef& g) {
  const int n = g->ngens();
  std::vector<GenDef> defs(n, GenDef{-1, -1, 0});
  for (int m = 0; m < n; ++m) {
    if (g->weights[m] == 1) continue;
    bool found = false;
    for (int j = 1; j < n && !found; ++j)
      for (int i = 0; i < j && !found; ++i) {
        if (g->conj_trivial(j, i)) continue;
        const ExpVec& rhs = g->conj_relation(j, i);
        // tail must be exactly g_m^{+-1}
        bool single = true;
        for (int p = 0; p < n; ++p) {
          if (p == j || p == m) continue;
          if (rhs[p] != 0) single = false;
        }
        if (!single || (rhs[m] != 1 && rhs[m] != -1)) continue;
        defs[m] = GenDef{j, i, rhs[m] == 1 ? 1 : -1};
        found = true;
      }
    if (!found)
      throw Error("spectrum_sample: generator " + g->gen_names[m] +
                  " has no derivable commutator definition; group not in the catalog");
  }
  return defs;
}

inline long long rng_range(std::mt19937_64& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(rng() % static_cast<unsigned long long>(hi - lo + 1));
}

inline IntMatrix random_gl(std::mt19937_64& rng, int n) {
  IntMatrix m = IntMatrix::identity(n);
  int ops = static_cast<int>(rng_range(rng, 2, 6));
  for (int t = 0; t < ops; ++t) {
    int i = static_cast<int>(rng_range(rng, 0, n - 1));
    int j = static_cast<int>(rng_range(rng, 0, n - 1));
    if (i == j) continue;
    long long q = rng_range(rng, -2, 2);
    for (int k = 0; k < n; ++k) m.at(k, i) += Int(q) * m.at(k, j);
  }
  // random permutation of columns
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(rng_range(rng, 0, i));
    if (i != j)
      for (int k = 0; k < n; ++k) std::swap(m.at(k, i), m.at(k, j));
  }
  for (int i = 0; i < n; ++i)
    if (rng_range(rng, 0, 1) == 1)
      for (int k = 0; k < n; ++k) m.at(k, i) = -m.at(k, i);
  return m;
}

}  // namespace detail

// One validated random automorphism; throws after too many rejections.
inline GroupMap random_automorphism(PcRef g, std::mt19937_64& rng, int max_attempts = 200) {
  const int n = g->ngens();
  std::vector<detail::GenDef> defs = detail::derive_definitions(g);
  std::vector<int> block1;
  for (int i = 0; i < n; ++i)
    if (g->weights[i] == 1) block1.push_back(i);
  const int r = static_cast<int>(block1.size());
  const int maxw = g->max_weight();
  std::vector<int> top_block;
  for (int i = 0; i < n; ++i)
    if (g->weights[i] == maxw && maxw > 1) top_block.push_back(i);

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    IntMatrix m = detail::random_gl(rng, r);
    std::vector<PcElement> images(n, g->identity());
    for (int k = 0; k < r; ++k) {
      ExpVec e(n, Int(0));
      for (int p = 0; p < r; ++p) e[block1[p]] = m.at(p, k);
      // random central correction on the top weight block
      for (int t : top_block) e[t] = Int(detail::rng_range(rng, -2, 2));
      images[block1[k]] = g->from_exponents(e);
    }
    for (int i = 0; i < n; ++i) {
      if (g->weights[i] == 1) continue;
      const auto& d = defs[i];
      PcElement c = g->commutator(images[d.j], images[d.i]);
      images[i] = d.sign == 1 ? c : g->inv(c);
    }
    try {
      return check_map(g, std::move(images), MapRequirement::automorphism);
    } catch (const Error&) {
      continue;
    }
  }
  throw Error("random_automorphism: no valid proposal accepted");
}

// `budget` seeded random automorphisms with their Reidemeister numbers.
// Deterministic for a fixed seed.
inline SpectrumResult spectrum_sample(PcRef g, int budget, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SpectrumResult out;
  for (int s = 0; s < budget; ++s) {
    SpectrumSample sample;
    sample.aut = random_automorphism(g, rng);
    for (const auto& im : sample.aut.images) sample.image_words.push_back(g->print(im));
    ReidemeisterResult r = reidemeister(g, sample.aut);
    sample.r = r.finite ? Cardinality::of(r.count) : Cardinality::inf();
    out.multiset[sample.r.str()] += 1;
    out.samples.push_back(std::move(sample));
  }
  return out;
}

}  // namespace tc
