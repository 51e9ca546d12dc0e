#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "tc/oracle.hpp"
#include "tc/twisted.hpp"

using namespace tc;

namespace {

PcRef z_mod(long long m) {
  return load_presentation("pcgroup zm\ngens g\norders " + std::to_string(m) + "\n");
}

PcRef heisenberg_mod(long long p) {
  std::string ps = std::to_string(p);
  return load_presentation("pcgroup heis" + ps + "\ngens a b c\norders " + ps + " " + ps +
                           " " + ps + "\nconj b a = b c^" + std::to_string(p - 1) + "\n");
}

PcRef heisenberg() {
  return load_presentation(
      "pcgroup heis\ngens a b c\norders 0 0 0\nconj b a = b c^-1\n");
}

}  // namespace

TEST_CASE("brute force: examples") {
  PcRef z2g = z_mod(2);
  FiniteGroupTable t2 = FiniteGroupTable::build(z2g);
  BruteForceResult r2 = brute_force_reidemeister(t2, identity_map(z2g));
  CHECK(r2.count == 2);

  PcRef z3g = z_mod(3);
  FiniteGroupTable t3 = FiniteGroupTable::build(z3g);
  GroupMap dbl = check_map(z3g, {z3g->pow(z3g->generator(0), 2)}, MapRequirement::automorphism);
  CHECK(brute_force_reidemeister(t3, dbl).count == 1);

  PcRef h3 = heisenberg_mod(3);
  FiniteGroupTable th = FiniteGroupTable::build(h3);
  CHECK(th.size() == 27);
  BruteForceResult rh = brute_force_reidemeister(th, identity_map(h3));
  CHECK(rh.count == 11);  // ordinary conjugacy classes of the extraspecial group
}

TEST_CASE("brute force: orbits cover the group and are disjoint") {
  PcRef h2 = heisenberg_mod(2);
  FiniteGroupTable t = FiniteGroupTable::build(h2);
  BruteForceResult r = brute_force_reidemeister(t, identity_map(h2));
  std::size_t total = 0;
  for (const auto& cls : r.classes) total += cls.size();
  CHECK(total == t.size());
}

TEST_CASE("brute force: size guard") {
  CHECK_THROWS_AS(FiniteGroupTable::build(z_mod(10001)), TooLarge);
  CHECK_THROWS_AS(FiniteGroupTable::build(heisenberg()), TooLarge);
}

TEST_CASE("brute force agrees with the main algorithm on finite groups") {
  std::mt19937_64 rng(616);
  for (PcRef g : {z_mod(12), heisenberg_mod(3), heisenberg_mod(5)}) {
    FiniteGroupTable t = FiniteGroupTable::build(g);
    int tried = 0, accepted = 0;
    while (accepted < 5 && tried < 200) {
      ++tried;
      std::vector<PcElement> images;
      for (int i = 0; i < g->ngens(); ++i) {
        ExpVec e(g->ngens());
        for (auto& x : e) x = Int(static_cast<long long>(rng() % 6));
        images.push_back(g->from_exponents(e));
      }
      // the center image is forced in the Heisenberg groups
      if (g->ngens() == 3) images[2] = g->commutator(images[0], images[1]);
      GroupMap phi;
      try {
        phi = check_map(g, images, MapRequirement::automorphism);
      } catch (const Error&) {
        continue;
      }
      ++accepted;
      ReidemeisterResult main = reidemeister(g, phi);
      BruteForceResult bf = brute_force_reidemeister(t, phi);
      REQUIRE(main.finite);
      CHECK(main.count == bf.count);
      // representatives land in pairwise distinct brute-force orbits
      std::vector<std::size_t> roots;
      for (const auto& cls : main.classes)
        roots.push_back(bf.orbit[t.index_of(cls.representative)]);
      std::sort(roots.begin(), roots.end());
      CHECK(std::adjacent_find(roots.begin(), roots.end()) == roots.end());
    }
    CHECK(accepted == 5);
  }
}

TEST_CASE("bounded witness search: examples") {
  PcRef h = heisenberg();
  GroupMap phi = check_map(
      h,
      {h->evaluate(h->parse_word("b")), h->evaluate(h->parse_word("a b")),
       h->evaluate(h->parse_word("c^-1"))},
      MapRequirement::automorphism);
  PcElement one = h->identity();
  PcElement c = h->generator(2);

  // decide-positive pair: witness found within the box
  auto w1 = bounded_witness_search(h, phi, one, h->pow(c, 2), 2);
  REQUIRE(w1.has_value());
  CHECK(h->mul(phi.apply(*w1), one) == h->mul(h->pow(c, 2), *w1));

  // (g, g) has the identity witness at bound 0
  auto w2 = bounded_witness_search(h, phi, c, c, 0);
  REQUIRE(w2.has_value());
  CHECK(w2->is_identity());

  // (1, c) has no witness: consistent with decide = none
  CHECK_FALSE(bounded_witness_search(h, phi, one, c, 4).has_value());
  CHECK_FALSE(decide(h, phi, one, c).has_value());
}

TEST_CASE("bounded search never contradicts decide") {
  PcRef h = heisenberg();
  GroupMap phi = check_map(
      h,
      {h->evaluate(h->parse_word("a b")), h->evaluate(h->parse_word("a^2 b")),
       h->evaluate(h->parse_word("c^-1"))},
      MapRequirement::automorphism);
  std::mt19937_64 rng(90210);
  for (int it = 0; it < 25; ++it) {
    ExpVec eg(3), ef(3);
    for (auto& x : eg) x = Int(static_cast<long long>(rng() % 5) - 2);
    for (auto& x : ef) x = Int(static_cast<long long>(rng() % 5) - 2);
    PcElement ge = h->from_exponents(eg), fe = h->from_exponents(ef);
    auto found = bounded_witness_search(h, phi, ge, fe, 2);
    auto dec = decide(h, phi, ge, fe);
    if (found) {
      CHECK(dec.has_value());
    }
    if (dec) {
      // if the decision witness is inside the box the search must hit
      bool inside = true;
      for (const Int& v : dec->e)
        if (v < -2 || v > 2) inside = false;
      if (inside) CHECK(found.has_value());
    }
  }
}
