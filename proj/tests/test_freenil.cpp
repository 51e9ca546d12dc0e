#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "tc/freenil.hpp"

using namespace tc;

namespace {

TruncatedSeries gen(int r, int c, int i) { return TruncatedSeries::generator(r, c, i); }

Word random_word(std::mt19937_64& rng, int rank, int len) {
  Word w;
  for (int i = 0; i < len; ++i)
    w.letters.emplace_back(static_cast<int>(rng() % rank),
                           Int(rng() % 2 == 0 ? 1 : -1));
  return w;
}

}  // namespace

TEST_CASE("series_mul: examples") {
  // (1+x)(1-x+x^2) = 1 at class 2
  TruncatedSeries u = gen(1, 2, 0);
  TruncatedSeries v = TruncatedSeries::one(1, 2);
  v.coeff[TruncatedSeries::offset(1, 1)] = -1;
  v.coeff[TruncatedSeries::offset(1, 2)] = 1;
  CHECK(series_mul(u, v).is_one());

  // (1+x)(1+y) = 1 + x + y + xy
  TruncatedSeries p = series_mul(gen(2, 2, 0), gen(2, 2, 1));
  TruncatedSeries expect = TruncatedSeries::one(2, 2);
  expect.coeff[TruncatedSeries::offset(2, 1) + 0] = 1;
  expect.coeff[TruncatedSeries::offset(2, 1) + 1] = 1;
  expect.coeff[TruncatedSeries::offset(2, 2) + 1] = 1;  // word xy = digits (0,1)
  CHECK(p == expect);

  CHECK_THROWS_AS(series_mul(gen(2, 2, 0), gen(2, 3, 0)), RankClassMismatch);
}

TEST_CASE("series_inv: examples and random units") {
  CHECK(series_inv(TruncatedSeries::one(2, 3)).is_one());

  TruncatedSeries i1 = series_inv(gen(1, 2, 0));  // 1 - x + x^2
  CHECK(i1.coeff[0] == 1);
  CHECK(i1.coeff[1] == -1);
  CHECK(i1.coeff[2] == 1);

  CHECK(series_mul(gen(2, 2, 0), series_inv(gen(2, 2, 0))).is_one());

  std::mt19937_64 rng(1712);
  for (int it = 0; it < 20; ++it) {
    TruncatedSeries u = TruncatedSeries::one(2, 3);
    for (std::size_t i = 1; i < u.coeff.size(); ++i)
      u.coeff[i] = Int(static_cast<long long>(rng() % 7) - 3);
    CHECK(series_mul(u, series_inv(u)).is_one());
    CHECK(series_mul(series_inv(u), u).is_one());
  }

  TruncatedSeries bad = TruncatedSeries::zero(2, 2);
  bad.coeff[0] = 2;
  CHECK_THROWS_AS(series_inv(bad), NotAUnit);
}

TEST_CASE("hall_basis: examples") {
  HallBasis b22 = hall_basis(2, 2);
  REQUIRE(b22.size() == 3);
  CHECK(b22.nodes[0].name == "a1");
  CHECK(b22.nodes[1].name == "a2");
  CHECK(b22.nodes[2].left == 1);   // [a2, a1]
  CHECK(b22.nodes[2].right == 0);
  CHECK(b22.weight_counts() == std::vector<int>{2, 1});

  CHECK(hall_basis(2, 3).weight_counts() == std::vector<int>{2, 1, 2});
  CHECK(hall_basis(3, 2).weight_counts() == std::vector<int>{3, 3});
}

TEST_CASE("witt_rank: examples and hall counts match") {
  CHECK(witt_rank(2, 1) == 2);
  CHECK(witt_rank(2, 3) == 2);
  CHECK(witt_rank(2, 4) == 3);

  // frozen necklace numbers for r <= 4, w <= 6
  const int table[3][6] = {
      {2, 1, 2, 3, 6, 9}, {3, 3, 8, 18, 48, 116}, {4, 6, 20, 60, 204, 670}};
  for (int r = 2; r <= 4; ++r)
    for (int w = 1; w <= 6; ++w) CHECK(witt_rank(r, w) == table[r - 2][w - 1]);

  for (int r = 2; r <= 4; ++r)
    for (int c = 1; c <= 6; ++c) {
      auto wc = hall_basis(r, c).weight_counts();
      for (int w = 1; w <= c; ++w) CHECK(Int(wc[w - 1]) == witt_rank(r, w));
    }
}

TEST_CASE("malcev_coordinates: examples") {
  MagnusContext ctx = magnus_context(hall_basis(2, 2));
  // a * b -> (1, 1, 0)
  TruncatedSeries ab = series_mul(ctx.series[0], ctx.series[1]);
  CHECK(malcev_coordinates(ab, ctx) == (ExpVec{1, 1, 0}));
  // b * a -> (1, 1, 1): b a = a b [b,a] and the basis element is [a2,a1]
  TruncatedSeries ba = series_mul(ctx.series[1], ctx.series[0]);
  CHECK(malcev_coordinates(ba, ctx) == (ExpVec{1, 1, 1}));
  // identity -> zeros
  CHECK(malcev_coordinates(TruncatedSeries::one(2, 2), ctx) == (ExpVec{0, 0, 0}));

  TruncatedSeries notgrp = TruncatedSeries::one(2, 2);
  notgrp.coeff[TruncatedSeries::offset(2, 2)] = 1;  // 1 + xx alone is not in the group
  CHECK_THROWS_AS(malcev_coordinates(notgrp, ctx), NotInGroup);
}

TEST_CASE("malcev round-trip: product of Hall generators with given exponents") {
  std::mt19937_64 rng(2718);
  MagnusContext ctx = magnus_context(hall_basis(2, 3));
  for (int it = 0; it < 25; ++it) {
    ExpVec e(ctx.basis.size());
    for (auto& x : e) x = Int(static_cast<long long>(rng() % 7) - 3);
    TruncatedSeries s = TruncatedSeries::one(2, 3);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) s = series_mul(s, series_pow(ctx.series[i], e[i]));
    CHECK(malcev_coordinates(s, ctx) == e);
  }
}

TEST_CASE("build_free_nilpotent: examples") {
  // (2,2) is the Heisenberg structure: conj a2 a1 = a2 c1
  PcRef h = build_free_nilpotent(2, 2);
  CHECK(h->ngens() == 3);
  ExpVec rel = h->conj_relation(1, 0);
  CHECK(rel == (ExpVec{0, 1, 1}));
  CHECK(h->conj_trivial(2, 0));
  CHECK(h->conj_trivial(2, 1));

  // (3,2): six generators, [a_j, a_i] = c_{ji} central
  PcRef n32 = build_free_nilpotent(3, 2);
  CHECK(n32->ngens() == 6);
  for (int j = 3; j < 6; ++j)
    for (int i = 0; i < j; ++i)
      if (i >= 3 || j >= 3) CHECK(n32->conj_trivial(j, i));

  // (2,1) is Z^2
  PcRef z = build_free_nilpotent(2, 1);
  CHECK(z->ngens() == 2);
  CHECK(z->is_abelian());

  CHECK_THROWS_AS(build_free_nilpotent(2, 8, 10), TooLarge);
}

TEST_CASE("build_free_nilpotent: lower central structure of N_{2,3}") {
  PcRef n23 = build_free_nilpotent(2, 3);
  CHECK(n23->ngens() == 5);
  CHECK(n23->weights == std::vector<int>{1, 1, 2, 3, 3});
}

TEST_CASE("faithfulness at desk scale: Magnus equality iff pc equality") {
  std::mt19937_64 rng(999);
  for (auto [r, c] : {std::pair{2, 3}, std::pair{3, 2}}) {
    PcRef g = build_free_nilpotent(r, c);
    MagnusContext ctx = magnus_context(hall_basis(r, c));
    for (int it = 0; it < 100; ++it) {
      Word w1 = random_word(rng, r, 1 + static_cast<int>(rng() % 6));
      Word w2 = random_word(rng, r, 1 + static_cast<int>(rng() % 6));
      bool magnus_eq = magnus_image(ctx, w1) == magnus_image(ctx, w2);
      bool pc_eq = g->evaluate(w1) == g->evaluate(w2);
      CHECK(magnus_eq == pc_eq);
    }
  }
}

TEST_CASE("pc collection agrees with Magnus coordinates on random words") {
  std::mt19937_64 rng(424242);
  PcRef g = build_free_nilpotent(2, 3);
  MagnusContext ctx = magnus_context(hall_basis(2, 3));
  for (int it = 0; it < 50; ++it) {
    Word w = random_word(rng, 2, 1 + static_cast<int>(rng() % 6));
    ExpVec via_magnus = malcev_coordinates(magnus_image(ctx, w), ctx);
    CHECK(g->evaluate(w).e == via_magnus);
  }
}
