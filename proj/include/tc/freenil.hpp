#pragma once

#include <string>
#include <vector>

#include "tc/normalform.hpp"
#include "tc/pc.hpp"

namespace tc {

// Element of the free associative algebra on `rank` letters truncated at
// total degree `klass`, with exact integer coefficients. Group elements
// (images of the Magnus embedding a_i -> 1 + x_i) have constant term 1.
//
// Monomials are words over the letters, enumerated by length then
// lexicographically; a word of length d with digit value v (base rank,
// first letter most significant) sits at offset(d) + v.
struct TruncatedSeries {
  int rank = 0;
  int klass = 0;
  std::vector<Int> coeff;

  static std::size_t pow_sz(int r, int d) {
    std::size_t p = 1;
    for (int i = 0; i < d; ++i) p *= static_cast<std::size_t>(r);
    return p;
  }
  static std::size_t offset(int r, int d) {
    std::size_t o = 0;
    for (int i = 0; i < d; ++i) o += pow_sz(r, i);
    return o;
  }
  static std::size_t total(int r, int c) { return offset(r, c + 1); }

  static TruncatedSeries zero(int r, int c) {
    TruncatedSeries s;
    s.rank = r;
    s.klass = c;
    s.coeff.assign(total(r, c), Int(0));
    return s;
  }
  static TruncatedSeries one(int r, int c) {
    TruncatedSeries s = zero(r, c);
    s.coeff[0] = 1;
    return s;
  }
  // Magnus image of the i-th generator: 1 + x_i
  static TruncatedSeries generator(int r, int c, int i) {
    TruncatedSeries s = one(r, c);
    s.coeff[offset(r, 1) + i] = 1;
    return s;
  }

  bool operator==(const TruncatedSeries& o) const {
    return rank == o.rank && klass == o.klass && coeff == o.coeff;
  }
  bool is_one() const {
    if (coeff[0] != 1) return false;
    for (std::size_t i = 1; i < coeff.size(); ++i)
      if (coeff[i] != 0) return false;
    return true;
  }

  // coefficients of the degree-d homogeneous part
  std::vector<Int> degree_part(int d) const {
    std::size_t o = offset(rank, d), n = pow_sz(rank, d);
    return std::vector<Int>(coeff.begin() + o, coeff.begin() + o + n);
  }
};

inline TruncatedSeries series_mul(const TruncatedSeries& u, const TruncatedSeries& v) {
  if (u.rank != v.rank || u.klass != v.klass)
    throw RankClassMismatch("series_mul: operands have different (rank, class)");
  const int r = u.rank, c = u.klass;
  TruncatedSeries w = TruncatedSeries::zero(r, c);
  for (int du = 0; du <= c; ++du) {
    std::size_t ou = TruncatedSeries::offset(r, du), nu = TruncatedSeries::pow_sz(r, du);
    for (std::size_t a = 0; a < nu; ++a) {
      const Int& ca = u.coeff[ou + a];
      if (ca == 0) continue;
      for (int dv = 0; dv + du <= c; ++dv) {
        std::size_t ov = TruncatedSeries::offset(r, dv), nv = TruncatedSeries::pow_sz(r, dv);
        std::size_t ow = TruncatedSeries::offset(r, du + dv);
        for (std::size_t b = 0; b < nv; ++b) {
          const Int& cb = v.coeff[ov + b];
          if (cb == 0) continue;
          w.coeff[ow + a * nv + b] += ca * cb;
        }
      }
    }
  }
  return w;
}

inline TruncatedSeries series_inv(const TruncatedSeries& u) {
  if (u.coeff[0] != 1) throw NotAUnit("series_inv: constant term must be 1");
  const int r = u.rank, c = u.klass;
  TruncatedSeries nil = u;
  nil.coeff[0] = 0;
  for (auto& x : nil.coeff) x = -x;  // -n where u = 1 + n
  TruncatedSeries acc = TruncatedSeries::one(r, c);
  TruncatedSeries p = TruncatedSeries::one(r, c);
  for (int k = 1; k <= c; ++k) {
    p = series_mul(p, nil);
    for (std::size_t i = 0; i < acc.coeff.size(); ++i) acc.coeff[i] += p.coeff[i];
  }
  return acc;
}

inline TruncatedSeries series_pow(const TruncatedSeries& u, const Int& k) {
  TruncatedSeries base = k < 0 ? series_inv(u) : u;
  Int q = abs_int(k);
  TruncatedSeries acc = TruncatedSeries::one(u.rank, u.klass);
  if (q == 0) return acc;
  for (;;) {
    if ((q & 1) != 0) acc = series_mul(acc, base);
    q >>= 1;
    if (q == 0) break;
    base = series_mul(base, base);
  }
  return acc;
}

// group commutator u^-1 v^-1 u v in the truncated algebra
inline TruncatedSeries series_comm(const TruncatedSeries& u, const TruncatedSeries& v) {
  return series_mul(series_mul(series_mul(series_inv(u), series_inv(v)), u), v);
}

// ---------------------------------------------------------------------
// Hall basis of basic commutators
// ---------------------------------------------------------------------

// Basic commutators through weight `klass` over `rank` letters, in the
// canonical order: by weight, then by (right constituent, left
// constituent) position. [u,v] is admitted when u > v in this order and,
// if u = [x,y], y <= v.
struct HallBasis {
  int rank = 0;
  int klass = 0;
  struct Node {
    int weight;
    int left = -1;   // basis index, -1 for letters
    int right = -1;
    std::string name;
  };
  std::vector<Node> nodes;

  std::size_t size() const { return nodes.size(); }
  std::vector<int> weight_counts() const {
    std::vector<int> wc(klass, 0);
    for (const auto& n : nodes) wc[n.weight - 1]++;
    return wc;
  }
};

inline HallBasis hall_basis(int r, int c) {
  if (r < 1 || c < 1) throw Error("hall_basis: rank and class must be positive");
  HallBasis b;
  b.rank = r;
  b.klass = c;
  for (int i = 0; i < r; ++i)
    b.nodes.push_back({1, -1, -1, "a" + std::to_string(i + 1)});
  int cname = 1;
  for (int w = 2; w <= c; ++w) {
    std::size_t end = b.nodes.size();
    for (std::size_t v = 0; v < end; ++v) {
      if (b.nodes[v].weight >= w) break;
      for (std::size_t u = v + 1; u < end; ++u) {
        if (b.nodes[u].weight + b.nodes[v].weight != w) continue;
        if (b.nodes[u].left >= 0 && b.nodes[u].right > static_cast<int>(v)) continue;
        b.nodes.push_back({w, static_cast<int>(u), static_cast<int>(v),
                           "c" + std::to_string(cname++)});
      }
    }
  }
  return b;
}

// necklace count (1/w) sum_{d|w} mu(d) r^{w/d}
inline Int witt_rank(int r, int w) {
  if (r < 1 || w < 1) throw Error("witt_rank: arguments must be positive");
  auto moebius = [](int n) {
    int m = 1;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      n /= p;
      if (n % p == 0) return 0;
      m = -m;
    }
    if (n > 1) m = -m;
    return m;
  };
  Int s = 0;
  for (int d = 1; d <= w; ++d) {
    if (w % d) continue;
    int mu = moebius(d);
    if (mu == 0) continue;
    Int p = 1;
    for (int i = 0; i < w / d; ++i) p *= r;
    s += mu * p;
  }
  return s / w;
}

// ---------------------------------------------------------------------
// coordinate extraction and the free nilpotent constructor
// ---------------------------------------------------------------------

// Everything needed to compute in N_{r,c} through the Magnus embedding:
// the series of each basic commutator, its leading Lie polynomial, and a
// solver per weight for expressing homogeneous Lie elements in the
// weight block of the Hall basis.
struct MagnusContext {
  HallBasis basis;
  std::vector<TruncatedSeries> series;      // per basis node
  std::vector<std::vector<Int>> lie;        // degree-w coefficients per node
  std::vector<std::vector<int>> blocks;     // node indices per weight (1-based w-1)
  std::vector<SmithDecomposition> solvers;  // per weight, of the Lie-block matrix
  std::vector<IntMatrix> block_mats;

  int rank() const { return basis.rank; }
  int klass() const { return basis.klass; }
};

namespace detail {

inline std::vector<Int> lie_bracket(const std::vector<Int>& p, int dp,
                                    const std::vector<Int>& q, int dq, int r) {
  // [p, q] = pq - qp on homogeneous components
  std::size_t np = TruncatedSeries::pow_sz(r, dp), nq = TruncatedSeries::pow_sz(r, dq);
  std::vector<Int> out(TruncatedSeries::pow_sz(r, dp + dq), Int(0));
  for (std::size_t a = 0; a < np; ++a) {
    if (p[a] == 0) continue;
    for (std::size_t b = 0; b < nq; ++b) {
      if (q[b] == 0) continue;
      out[a * nq + b] += p[a] * q[b];
      out[b * np + a] -= p[a] * q[b];
    }
  }
  return out;
}

}  // namespace detail

inline MagnusContext magnus_context(HallBasis basis) {
  MagnusContext ctx;
  ctx.basis = std::move(basis);
  const int r = ctx.rank(), c = ctx.klass();
  ctx.blocks.assign(c, {});
  for (std::size_t i = 0; i < ctx.basis.size(); ++i) {
    const auto& n = ctx.basis.nodes[i];
    ctx.blocks[n.weight - 1].push_back(static_cast<int>(i));
    if (n.left < 0) {
      ctx.series.push_back(TruncatedSeries::generator(r, c, static_cast<int>(i)));
      std::vector<Int> l(r, Int(0));
      l[i] = 1;
      ctx.lie.push_back(std::move(l));
    } else {
      ctx.series.push_back(series_comm(ctx.series[n.left], ctx.series[n.right]));
      ctx.lie.push_back(detail::lie_bracket(ctx.lie[n.left], ctx.basis.nodes[n.left].weight,
                                            ctx.lie[n.right], ctx.basis.nodes[n.right].weight,
                                            r));
    }
  }
  for (int w = 1; w <= c; ++w) {
    std::vector<ExpVec> cols;
    for (int idx : ctx.blocks[w - 1]) cols.push_back(ctx.lie[idx]);
    IntMatrix m = IntMatrix::from_columns(TruncatedSeries::pow_sz(r, w), cols);
    ctx.solvers.push_back(snf(m));
    ctx.block_mats.push_back(std::move(m));
  }
  return ctx;
}

namespace detail {

inline std::optional<ExpVec> solve_block(const MagnusContext& ctx, int w, const ExpVec& rhs) {
  const SmithDecomposition& d = ctx.solvers[w - 1];
  const IntMatrix& m = ctx.block_mats[w - 1];
  ExpVec cvec = d.u.apply(rhs);
  ExpVec z(m.cols, Int(0));
  const std::size_t k = d.diag_len();
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (i < k && d.diag(i) != 0) {
      if (cvec[i] % d.diag(i) != 0) return std::nullopt;
      z[i] = cvec[i] / d.diag(i);
    } else if (cvec[i] != 0) {
      return std::nullopt;
    }
  }
  ExpVec x = d.v.apply(z);
  if (m.apply(x) != rhs) return std::nullopt;
  return x;
}

}  // namespace detail

// Unique exponents with u = prod_b B_b^{e_b} in Hall order, by layered
// extraction: at each weight the lowest homogeneous part of the residual
// is a Lie element, solved exactly in the weight block.
inline ExpVec malcev_coordinates(const TruncatedSeries& u, const MagnusContext& ctx) {
  if (u.rank != ctx.rank() || u.klass != ctx.klass())
    throw RankClassMismatch("malcev_coordinates: series does not match the context");
  if (u.coeff[0] != 1) throw NotInGroup("malcev_coordinates: constant term is not 1");
  ExpVec exps(ctx.basis.size(), Int(0));
  TruncatedSeries s = u;
  for (int w = 1; w <= ctx.klass(); ++w) {
    ExpVec h = s.degree_part(w);
    bool zero = true;
    for (const Int& x : h)
      if (x != 0) zero = false;
    if (zero) continue;
    auto e = detail::solve_block(ctx, w, h);
    if (!e) throw NotInGroup("malcev_coordinates: residual is not a Lie element");
    TruncatedSeries p = TruncatedSeries::one(ctx.rank(), ctx.klass());
    for (std::size_t k = 0; k < ctx.blocks[w - 1].size(); ++k) {
      int idx = ctx.blocks[w - 1][k];
      exps[idx] = (*e)[k];
      if ((*e)[k] != 0) p = series_mul(p, series_pow(ctx.series[idx], (*e)[k]));
    }
    s = series_mul(series_inv(p), s);
  }
  if (!s.is_one()) throw NotInGroup("malcev_coordinates: nonzero residual after extraction");
  return exps;
}

inline ExpVec malcev_coordinates(const TruncatedSeries& u, const HallBasis& basis) {
  return malcev_coordinates(u, magnus_context(basis));
}

// Magnus image of a word over the rank generators (indices into the
// first block of the basis).
inline TruncatedSeries magnus_image(const MagnusContext& ctx, const Word& w) {
  TruncatedSeries s = TruncatedSeries::one(ctx.rank(), ctx.klass());
  for (const auto& [g, e] : w.letters) {
    if (g < 0 || g >= ctx.rank()) throw UnknownGenerator("magnus_image: letter out of range");
    s = series_mul(s, series_pow(ctx.series[g], e));
  }
  return s;
}

// Consistent weighted pc presentation of the free nilpotent group
// N_{r,c} on the Hall basis, with every conjugation relation computed in
// the Magnus embedding. The structure constants are derived, never
// transcribed.
inline PcRef build_free_nilpotent(int r, int c, std::size_t max_hirsch = 80) {
  if (r < 1 || c < 1) throw Error("build_free_nilpotent: rank and class must be positive");
  HallBasis basis = hall_basis(r, c);
  if (basis.size() > max_hirsch)
    throw TooLarge("build_free_nilpotent: Hall basis has " + std::to_string(basis.size()) +
                   " elements, bound is " + std::to_string(max_hirsch));
  MagnusContext ctx = magnus_context(basis);
  const int n = static_cast<int>(basis.size());
  std::vector<std::string> names;
  std::vector<Int> orders(n, Int(0));
  for (const auto& node : basis.nodes) names.push_back(node.name);
  std::vector<std::tuple<int, int, ExpVec>> conj;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      if (basis.nodes[i].weight + basis.nodes[j].weight > c) continue;  // commute
      TruncatedSeries cm = series_comm(ctx.series[j], ctx.series[i]);
      ExpVec tail = malcev_coordinates(cm, ctx);
      ExpVec rhs = tail;
      rhs[j] += 1;
      conj.emplace_back(j, i, std::move(rhs));
    }
  return PcPresentation::create("N_" + std::to_string(r) + "_" + std::to_string(c), names,
                                orders, std::move(conj), {});
}

}  // namespace tc
