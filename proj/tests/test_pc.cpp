#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "tc/series.hpp"

using namespace tc;

namespace {

// Heisenberg group with c = [a,b]: a^-1 b a = b c^-1, c central.
PcRef heisenberg() {
  return load_presentation(
      "pcgroup heis\n"
      "gens a b c\n"
      "orders 0 0 0\n"
      "conj b a = b c^-1\n");
}

PcRef z2() {
  return load_presentation(
      "pcgroup z2\n"
      "gens g1 g2\n"
      "orders 0 0\n");
}

// Heisenberg mod p: extraspecial of order p^3 (exponent p for odd p).
PcRef heisenberg_mod(long long p) {
  std::string ps = std::to_string(p);
  return load_presentation(
      "pcgroup heis" + ps + "\n" +
      "gens a b c\n"
      "orders " + ps + " " + ps + " " + ps + "\n" +
      "conj b a = b c^" + std::to_string(p - 1) + "\n");
}

PcElement elt(const PcRef& g, const std::string& word) {
  return g->evaluate(g->parse_word(word));
}

PcElement random_element(const PcRef& g, std::mt19937_64& rng, int bound) {
  ExpVec e(g->ngens());
  for (auto& x : e) x = Int(static_cast<long long>(rng() % (2 * bound + 1)) - bound);
  return g->from_exponents(e);
}

}  // namespace

TEST_CASE("load: Heisenberg and free abelian presentations") {
  PcRef h = heisenberg();
  CHECK(h->ngens() == 3);
  CHECK(h->hirsch_length() == 3);
  CHECK(h->weights == std::vector<int>{1, 1, 2});

  PcRef z = z2();
  CHECK(z->ngens() == 2);
  CHECK(z->is_abelian());
}

TEST_CASE("load: weight violation is rejected as not nilpotent") {
  CHECK_THROWS_AS(load_presentation("pcgroup bad\n"
                                    "gens a b\n"
                                    "orders 0 0\n"
                                    "conj b a = a b\n"),
                  NotNilpotent);
}

TEST_CASE("load: syntax errors") {
  CHECK_THROWS_AS(load_presentation("nonsense\n"), ParseError);
  CHECK_THROWS_AS(load_presentation("pcgroup g\ngens a\norders 0 0\n"), ParseError);
  CHECK_THROWS_AS(load_presentation("pcgroup g\ngens a b\norders 0 0\nconj b a = b x\n"),
                  ParseError);
}

TEST_CASE("load: inconsistent presentation is rejected with the overlap") {
  // a^2 = 1 together with b^a = b c forces c^2 = 1, so normal forms
  // over infinite-order c collapse
  CHECK_THROWS_AS(load_presentation("pcgroup bad\n"
                                    "gens a b c\n"
                                    "orders 2 0 0\n"
                                    "conj b a = b c\n"
                                    "pow a = 1\n"),
                  InconsistentPresentation);
}

TEST_CASE("evaluate: collection examples") {
  PcRef h = heisenberg();
  CHECK(elt(h, "b a").e == (ExpVec{1, 1, -1}));
  CHECK(elt(h, "a a^-1").is_identity());

  PcRef z = z2();
  CHECK(elt(z, "g1 g2 g1").e == (ExpVec{2, 1}));

  CHECK_THROWS_AS(h->parse_word("a x"), UnknownGenerator);
}

TEST_CASE("commutator: examples") {
  PcRef h = heisenberg();
  PcElement a = h->generator(0), b = h->generator(1), c = h->generator(2);
  CHECK(h->commutator(a, b) == c);
  CHECK(h->commutator(a, a).is_identity());
  CHECK(h->commutator(h->pow(a, 2), b) == h->pow(c, 2));
}

TEST_CASE("collection: associativity and inverses on random triples") {
  std::mt19937_64 rng(4242);
  for (PcRef g : {heisenberg(), heisenberg_mod(3)}) {
    for (int it = 0; it < 1000; ++it) {
      PcElement x = random_element(g, rng, 4);
      PcElement y = random_element(g, rng, 4);
      PcElement z = random_element(g, rng, 4);
      CHECK(g->mul(g->mul(x, y), z) == g->mul(x, g->mul(y, z)));
      CHECK(g->mul(x, g->inv(x)).is_identity());
      CHECK(g->mul(g->inv(x), x).is_identity());
    }
  }
}

TEST_CASE("collection: powers against repeated multiplication") {
  std::mt19937_64 rng(77);
  PcRef g = heisenberg();
  for (int it = 0; it < 50; ++it) {
    PcElement x = random_element(g, rng, 3);
    long long k = static_cast<long long>(rng() % 15) - 7;
    PcElement by_mul = g->identity();
    for (long long i = 0; i < (k < 0 ? -k : k); ++i)
      by_mul = g->mul(by_mul, k < 0 ? g->inv(x) : x);
    CHECK(g->pow(x, Int(k)) == by_mul);
  }
}

TEST_CASE("subgroup: induced sequences (examples)") {
  PcRef z = z2();
  Subgroup s1 = subgroup_from_generators(
      z, {z->from_exponents({Int(2), Int(0)}), z->from_exponents({Int(3), Int(0)})});
  REQUIRE(s1.seq.size() == 1);
  CHECK(s1.seq[0].e == (ExpVec{1, 0}));

  PcRef h = heisenberg();
  Subgroup s2 = subgroup_from_generators(h, {h->pow(h->generator(0), 2), h->generator(1)});
  REQUIRE(s2.seq.size() == 3);
  CHECK(s2.seq[0].e == (ExpVec{2, 0, 0}));
  CHECK(s2.seq[1].e == (ExpVec{0, 1, 0}));
  CHECK(s2.seq[2].e == (ExpVec{0, 0, 2}));

  Subgroup s3 = subgroup_from_generators(h, {});
  CHECK(s3.is_trivial());
}

TEST_CASE("subgroup: canonical under permutation and duplication") {
  std::mt19937_64 rng(555);
  PcRef h = heisenberg();
  for (int it = 0; it < 20; ++it) {
    std::vector<PcElement> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(random_element(h, rng, 3));
    Subgroup a = subgroup_from_generators(h, gens);
    std::vector<PcElement> shuffled = {gens[2], gens[0], gens[1], gens[0]};
    Subgroup b = subgroup_from_generators(h, shuffled);
    CHECK(a == b);
  }
}

TEST_CASE("subgroup: member_decompose (examples and soundness)") {
  PcRef z = z2();
  Subgroup s = subgroup_from_generators(z, {z->from_exponents({Int(1), Int(0)})});
  auto d1 = s.member_decompose(z->from_exponents({Int(5), Int(0)}));
  REQUIRE(d1.has_value());
  CHECK((*d1)[0] == 5);
  CHECK_FALSE(s.member_decompose(z->from_exponents({Int(0), Int(1)})).has_value());

  PcRef h = heisenberg();
  Subgroup s2 = subgroup_from_generators(h, {h->pow(h->generator(0), 2), h->generator(1)});
  CHECK_FALSE(s2.member_decompose(h->generator(2)).has_value());

  std::mt19937_64 rng(99);
  for (int it = 0; it < 30; ++it) {
    std::vector<PcElement> gens = {random_element(h, rng, 3), random_element(h, rng, 3)};
    Subgroup sg = subgroup_from_generators(h, gens);
    PcElement x = h->mul(h->pow(gens[0], Int(static_cast<long long>(rng() % 5) - 2)),
                         h->pow(gens[1], Int(static_cast<long long>(rng() % 5) - 2)));
    auto d = sg.member_decompose(x);
    REQUIRE(d.has_value());
    CHECK(sg.evaluate_decomposition(*d) == x);
  }
}

TEST_CASE("abelianization: examples") {
  PcRef h = heisenberg();
  AbelianFactor ab = abelianization(whole_group(h));
  CHECK(ab.free_rank() == 2);
  CHECK(ab.invariant_factors().empty());

  PcRef z = z2();
  AbelianFactor abz = abelianization(whole_group(z));
  CHECK(abz.free_rank() == 2);

  Subgroup s = subgroup_from_generators(h, {h->pow(h->generator(0), 2), h->generator(1)});
  AbelianFactor abs_ = AbelianFactor::compute(s, derived_subgroup(s));
  CHECK(abs_.free_rank() == 2);
  CHECK(abs_.invariant_factors().empty());
}

TEST_CASE("abelian coords: projection kills the derived subgroup exactly") {
  PcRef h = heisenberg();
  AbelianFactor ab = abelianization(whole_group(h));
  PcElement c = h->generator(2);
  ExpVec zc = ab.coords(c);
  for (const Int& v : zc) CHECK(v == 0);
  // coords are homomorphic
  std::mt19937_64 rng(31);
  for (int it = 0; it < 20; ++it) {
    PcElement x = random_element(h, rng, 3), y = random_element(h, rng, 3);
    ExpVec zx = ab.coords(x), zy = ab.coords(y), zxy = ab.coords(h->mul(x, y));
    for (std::size_t i = 0; i < zx.size(); ++i) CHECK(zxy[i] == zx[i] + zy[i]);
  }
}

TEST_CASE("check_map: examples") {
  PcRef h = heisenberg();
  // a -> b, b -> ab forces c -> c^-1; abelianization det = -1
  GroupMap phi = check_map(
      h, {elt(h, "b"), elt(h, "a b"), elt(h, "c^-1")}, MapRequirement::automorphism);
  CHECK(phi.apply(h->generator(2)) == h->inv(h->generator(2)));

  CHECK_THROWS_AS(
      check_map(h, {elt(h, "a^2"), elt(h, "b"), elt(h, "c^2")}, MapRequirement::automorphism),
      NotBijective);

  PcRef z = z2();
  CHECK_NOTHROW(check_map(z, {elt(z, "g1 g2"), elt(z, "g2")}, MapRequirement::automorphism));

  // wrong image for c: relation violated
  CHECK_THROWS_AS(check_map(h, {elt(h, "b"), elt(h, "a b"), elt(h, "c")},
                            MapRequirement::endo),
                  RelationViolated);
}

TEST_CASE("check_map: homomorphism law on random pairs") {
  PcRef h = heisenberg();
  GroupMap phi = check_map(
      h, {elt(h, "b"), elt(h, "a b"), elt(h, "c^-1")}, MapRequirement::automorphism);
  std::mt19937_64 rng(12);
  for (int it = 0; it < 100; ++it) {
    PcElement x = random_element(h, rng, 4), y = random_element(h, rng, 4);
    CHECK(phi.apply(h->mul(x, y)) == h->mul(phi.apply(x), phi.apply(y)));
  }
}

TEST_CASE("lower central series: examples") {
  PcRef h = heisenberg();
  CentralSeriesData s = lower_central_series(h);
  REQUIRE(s.terms.size() == 3);
  CHECK(s.terms[1].seq.size() == 1);
  CHECK(s.terms[1].seq[0] == h->generator(2));
  CHECK(s.terms[2].is_trivial());
  CHECK(nilpotency_class(h) == 2);

  PcRef z = z2();
  CHECK(nilpotency_class(z) == 1);
}

TEST_CASE("upper central series: examples and centrality") {
  PcRef h = heisenberg();
  CentralSeriesData s = upper_central_series(h);
  REQUIRE(s.terms.size() == 3);
  CHECK(s.terms[0].is_trivial());
  REQUIRE(s.terms[1].seq.size() == 1);
  CHECK(s.terms[1].seq[0] == h->generator(2));
  CHECK(s.terms[2] == whole_group(h));

  // every term generator commutes with all group generators modulo the
  // previous term
  for (std::size_t i = 1; i < s.terms.size(); ++i)
    for (const auto& t : s.terms[i].seq)
      for (int j = 0; j < h->ngens(); ++j)
        CHECK(s.terms[i - 1].contains(h->commutator(t, h->generator(j))));

  PcRef z = z2();
  CentralSeriesData sz = upper_central_series(z);
  REQUIRE(sz.terms.size() == 2);
  CHECK(sz.terms[1] == whole_group(z));
}

TEST_CASE("quotient: Heisenberg mod center is Z^2") {
  PcRef h = heisenberg();
  Subgroup c = subgroup_from_generators(h, {h->generator(2)});
  Quotient q = quotient_mod(h, c);
  CHECK(q.group->ngens() == 2);
  CHECK(q.group->is_abelian());
  // projections of all defining relations are identities: verified at
  // construction; spot-check the section property
  PcElement x = elt(h, "a^2 b");
  PcElement lifted = q.lift(q.project(x));
  CHECK(q.project(lifted) == q.project(x));
  CHECK(lifted.e == (ExpVec{2, 1, 0}));
}

TEST_CASE("quotient: by the trivial subgroup is the identity") {
  PcRef h = heisenberg();
  Quotient q = quotient_mod(h, trivial_subgroup(h));
  CHECK(q.group == h);
  CHECK(q.project(elt(h, "a b c")) == elt(h, "a b c"));
}

TEST_CASE("quotient: by a sublattice of the center keeps torsion coordinates") {
  PcRef h = heisenberg();
  Subgroup c2 = subgroup_from_generators(h, {h->pow(h->generator(2), 2)});
  Quotient q = quotient_mod(h, c2);
  CHECK(q.group->ngens() == 3);
  CHECK(q.group->orders[2] == 2);
  // c maps to the torsion generator, c^2 to the identity
  CHECK(q.project(h->pow(h->generator(2), 2)).is_identity());
  CHECK_FALSE(q.project(h->generator(2)).is_identity());
}

TEST_CASE("quotient: non-central tail is rejected") {
  PcRef h = heisenberg();
  Subgroup s = subgroup_from_generators(h, {h->generator(1)});  // <b, ...> not central
  CHECK_THROWS_AS(quotient_mod(h, s), NotTailCompatible);
}

TEST_CASE("induced_map: examples") {
  PcRef h = heisenberg();
  Subgroup c = subgroup_from_generators(h, {h->generator(2)});
  Quotient q = quotient_mod(h, c);
  GroupMap phi = check_map(
      h, {elt(h, "b"), elt(h, "a b"), elt(h, "c^-1")}, MapRequirement::automorphism);
  GroupMap bar = induced_map(phi, q);
  CHECK(bar.apply(q.group->generator(0)) == q.group->generator(1));
  CHECK(bar.apply(q.group->generator(1)) ==
        q.group->mul(q.group->generator(0), q.group->generator(1)));

  GroupMap id = identity_map(h);
  GroupMap idbar = induced_map(id, q);
  CHECK(idbar.is_identity());
}

TEST_CASE("quotient of torsion group: Heisenberg mod 3 center") {
  PcRef g = heisenberg_mod(3);
  CentralSeriesData lcs = lower_central_series(g);
  REQUIRE(lcs.terms.size() == 3);
  Quotient q = quotient_mod(g, lcs.terms[1]);
  CHECK(q.group->ngens() == 2);
  CHECK(q.group->orders[0] == 3);
  CHECK(q.group->orders[1] == 3);
}
