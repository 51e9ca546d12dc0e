#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tc/errors.hpp"
#include "tc/int.hpp"

namespace tc {

// A group element in Mal'cev coordinates: one exponent per generator of
// the polycyclic sequence, reduced into [0, m_i) where m_i is finite.
// Two elements are equal iff their exponent tuples are equal.
struct PcElement {
  ExpVec e;

  bool operator==(const PcElement& o) const { return e == o.e; }
  bool operator!=(const PcElement& o) const { return e != o.e; }
  bool operator<(const PcElement& o) const { return e < o.e; }

  bool is_identity() const {
    for (const Int& x : e)
      if (x != 0) return false;
    return true;
  }

  // index of the first nonzero exponent, or size() when trivial
  std::size_t leading() const {
    std::size_t i = 0;
    while (i < e.size() && e[i] == 0) ++i;
    return i;
  }
};

// A word over named generators: sequence of (generator index, exponent).
struct Word {
  std::vector<std::pair<int, Int>> letters;
};

class PcPresentation;
using PcRef = std::shared_ptr<const PcPresentation>;

// A consistent weighted power-conjugate presentation of a finitely
// generated nilpotent group.
//
// Relations, with the fixed conventions [x,y] = x^-1 y^-1 x y and
// x^y = y^-1 x y:
//   conj (j,i), j > i :  g_i^-1 g_j g_i = g_j * (tail of strictly larger
//                        weight), stored as a full normal-form vector
//   pow  (i), m_i < oo:  g_i^{m_i} = tail on generators of index > i
//
// Collection is from the left: letters are pushed through the partially
// collected word using the stored conjugation automorphisms (and their
// derived inverses); only the resulting unique normal form is
// contractual. Consistency of the presentation is established at
// construction time by the standard overlap tests; a failing
// presentation is rejected, never repaired.
class PcPresentation {
 public:
  std::string name;
  std::vector<std::string> gen_names;
  std::vector<Int> orders;   // 0 = infinite
  std::vector<int> weights;  // lower-central weight, inferred at load

  static PcRef create(std::string name, std::vector<std::string> gens,
                      std::vector<Int> orders,
                      std::vector<std::tuple<int, int, ExpVec>> conj_relations,
                      std::vector<std::pair<int, ExpVec>> pow_relations) {
    auto p = std::shared_ptr<PcPresentation>(new PcPresentation());
    p->name = std::move(name);
    p->gen_names = std::move(gens);
    p->orders = std::move(orders);
    p->init_tables(std::move(conj_relations), std::move(pow_relations));
    return p;
  }

  int ngens() const { return n_; }

  int gen_index(const std::string& nm) const {
    auto it = name_index_.find(nm);
    if (it == name_index_.end()) throw UnknownGenerator("unknown generator '" + nm + "'");
    return it->second;
  }

  int hirsch_length() const {
    int h = 0;
    for (const Int& m : orders)
      if (m == 0) ++h;
    return h;
  }

  // max generator weight; equals the nilpotency class for presentations
  // graded along the lower central series
  int max_weight() const { return n_ ? weights[n_ - 1] : 1; }

  bool is_torsion_free_presentation() const {
    for (const Int& m : orders)
      if (m != 0) return false;
    return true;
  }

  bool is_abelian() const {
    for (int j = 1; j < n_; ++j)
      for (int i = 0; i < j; ++i)
        if (!conj_trivial(j, i)) return false;
    return true;
  }

  // first generator index of weight >= w (n if none)
  int weight_tail_start(int w) const {
    int t = 0;
    while (t < n_ && weights[t] < w) ++t;
    return t;
  }

  PcElement identity() const { return PcElement{ExpVec(n_, Int(0))}; }

  PcElement generator(int i) const {
    PcElement x = identity();
    x.e[i] = 1;
    return x;
  }

  // normalize an arbitrary exponent tuple into normal form
  PcElement from_exponents(const ExpVec& raw) const {
    if (static_cast<int>(raw.size()) != n_) throw Error("from_exponents: length mismatch");
    PcElement r = identity();
    for (int i = 0; i < n_; ++i)
      if (raw[i] != 0) mul_gen(r.e, i, raw[i]);
    return r;
  }

  PcElement mul(const PcElement& a, const PcElement& b) const {
    PcElement r = a;
    mul_elem(r.e, b.e);
    return r;
  }

  PcElement inv(const PcElement& a) const {
    PcElement r = identity();
    for (int m = n_ - 1; m >= 0; --m)
      if (a.e[m] != 0) mul_gen(r.e, m, -a.e[m]);
    return r;
  }

  PcElement pow(const PcElement& a, const Int& k) const {
    if (k == 0) return identity();
    PcElement base = k < 0 ? inv(a) : a;
    Int q = abs_int(k);
    PcElement acc = identity();
    // binary powering
    PcElement sq = base;
    for (;;) {
      if ((q & 1) != 0) acc = mul(acc, sq);
      q >>= 1;
      if (q == 0) break;
      sq = mul(sq, sq);
    }
    return acc;
  }

  // y^-1 x y
  PcElement conjugate(const PcElement& x, const PcElement& y) const {
    return mul(mul(inv(y), x), y);
  }

  // [x, y] = x^-1 y^-1 x y
  PcElement commutator(const PcElement& x, const PcElement& y) const {
    return mul(mul(inv(x), inv(y)), mul(x, y));
  }

  PcElement evaluate(const Word& w) const {
    PcElement r = identity();
    for (const auto& [g, e] : w.letters) {
      if (g < 0 || g >= n_) throw UnknownGenerator("word references invalid generator");
      if (e != 0) mul_gen(r.e, g, e);
    }
    return r;
  }

  const ExpVec& conj_relation(int j, int i) const {
    check_pair(j, i);
    return conj_[idx(j, i)].empty() ? trivial_conj(j) : conj_[idx(j, i)];
  }

  const ExpVec& conj_inv_relation(int j, int i) const {
    check_pair(j, i);
    return conj_inv_[idx(j, i)].empty() ? trivial_conj(j) : conj_inv_[idx(j, i)];
  }

  bool conj_trivial(int j, int i) const { return conj_[idx(j, i)].empty(); }

  // tail of g_i^{m_i}; identity tail when the relation is g_i^{m_i} = 1
  ExpVec pow_tail(int i) const {
    if (orders[i] == 0) throw Error("pow_tail: generator has infinite order");
    return pow_[i].empty() ? ExpVec(n_, Int(0)) : pow_[i];
  }

  // ---- word syntax ----

  Word parse_word(const std::string& text) const {
    Word w;
    std::istringstream is(text);
    std::string tok;
    std::vector<std::string> toks;
    while (is >> tok) toks.push_back(tok);
    if (toks.size() == 1 && toks[0] == "1") return w;
    for (const auto& t : toks) {
      auto caret = t.find('^');
      std::string nm = t.substr(0, caret);
      Int e = 1;
      if (caret != std::string::npos) {
        std::string es = t.substr(caret + 1);
        if (es.empty() || (!isdigit(static_cast<unsigned char>(es[0])) && es[0] != '-'))
          throw ParseError("bad exponent in word token '" + t + "'");
        try {
          e = Int(es);
        } catch (...) {
          throw ParseError("bad exponent in word token '" + t + "'");
        }
      }
      w.letters.emplace_back(gen_index(nm), e);
    }
    return w;
  }

  std::string print(const PcElement& x) const {
    std::ostringstream os;
    bool any = false;
    for (int i = 0; i < n_; ++i) {
      if (x.e[i] == 0) continue;
      if (any) os << ' ';
      os << gen_names[i];
      if (x.e[i] != 1) os << '^' << x.e[i];
      any = true;
    }
    if (!any) return "1";
    return os.str();
  }

  // ---- file format ----

  std::string save() const {
    std::ostringstream os;
    os << "pcgroup " << name << "\n";
    os << "gens";
    for (const auto& nm : gen_names) os << ' ' << nm;
    os << "\norders";
    for (const Int& m : orders) os << ' ' << m;
    os << "\n";
    for (int j = 1; j < n_; ++j)
      for (int i = 0; i < j; ++i)
        if (!conj_trivial(j, i))
          os << "conj " << gen_names[j] << ' ' << gen_names[i] << " = "
             << print(PcElement{conj_[idx(j, i)]}) << "\n";
    for (int i = 0; i < n_; ++i)
      if (orders[i] != 0)
        os << "pow " << gen_names[i] << " = " << print(PcElement{pow_tail(i)}) << "\n";
    return os.str();
  }

 private:
  PcPresentation() = default;

  int n_ = 0;
  std::map<std::string, int> name_index_;
  // relation tables, (j,i) flattened; empty vector = trivial relation
  std::vector<ExpVec> conj_;
  std::vector<ExpVec> conj_inv_;
  std::vector<ExpVec> pow_;
  std::vector<ExpVec> trivial_conj_;  // cache: trivial_conj_[j] = e_j

  std::size_t idx(int j, int i) const { return static_cast<std::size_t>(j) * n_ + i; }

  void check_pair(int j, int i) const {
    if (!(0 <= i && i < j && j < n_)) throw Error("conj relation indices out of range");
  }

  const ExpVec& trivial_conj(int j) const { return trivial_conj_[j]; }

  // ------------------------------------------------------------------
  // collection
  // ------------------------------------------------------------------

  void mul_elem(ExpVec& u, const ExpVec& v) const {
    for (int m = 0; m < n_; ++m)
      if (v[m] != 0) mul_gen(u, m, v[m]);
  }

  // u <- u * g^e, u normal before and after
  void mul_gen(ExpVec& u, int g, Int e) const {
    if (e == 0) return;
    int top = n_ - 1;
    while (top > g && u[top] == 0) --top;
    if (top <= g) {
      // no letters above g: absorb the exponent, spill through the
      // power relation when the coordinate wraps
      Int ne = u[g] + e;
      if (orders[g] != 0) {
        Int r = fdiv_r(ne, orders[g]);
        Int q = (ne - r) / orders[g];
        u[g] = r;
        if (q != 0 && !pow_[g].empty()) {
          PcElement p{pow_tail(g)};
          PcElement pq = pow(p, q);
          mul_elem(u, pq.e);
        }
      } else {
        u[g] = ne;
      }
      return;
    }
    // u = head * T with T the letters above g; T * g^e = g^e * psi(T)
    ExpVec tail(n_, Int(0));
    for (int m = g + 1; m < n_; ++m) {
      tail[m] = u[m];
      u[m] = 0;
    }
    ExpVec moved = conj_apply(tail, g, e);
    mul_gen(u, g, e);
    mul_elem(u, moved);
  }

  // image of x (supported above g) under conjugation by g^e
  ExpVec conj_apply(const ExpVec& x, int g, const Int& e) const {
    if (e == 1 || e == -1) {
      ExpVec r(n_, Int(0));
      bool first = true;
      for (int m = g + 1; m < n_; ++m) {
        if (x[m] == 0) continue;
        const ExpVec& im = e == 1 ? conj_relation(m, g) : conj_inv_relation(m, g);
        if (first && x[m] == 1) {
          r = im;
          first = false;
          continue;
        }
        first = false;
        PcElement base{im};
        PcElement p = pow(base, x[m]);
        mul_elem(r, p.e);
      }
      return r;
    }
    // conjugation by g^e via binary powering of the automorphism
    std::vector<ExpVec> table = conj_table(g, e);
    return apply_table(table, x, g);
  }

  // full image table of conj-by-g^e on generators above g
  std::vector<ExpVec> conj_table(int g, Int e) const {
    bool neg = e < 0;
    Int q = abs_int(e);
    std::vector<ExpVec> base(n_);
    for (int m = g + 1; m < n_; ++m)
      base[m] = neg ? conj_inv_relation(m, g) : conj_relation(m, g);
    std::vector<ExpVec> acc;  // empty = identity automorphism
    for (;;) {
      if ((q & 1) != 0) acc = acc.empty() ? base : compose_tables(acc, base, g);
      q >>= 1;
      if (q == 0) break;
      base = compose_tables(base, base, g);
    }
    return acc;
  }

  // (p after q): m -> p(q(m))
  std::vector<ExpVec> compose_tables(const std::vector<ExpVec>& p,
                                     const std::vector<ExpVec>& q, int g) const {
    std::vector<ExpVec> r(n_);
    for (int m = g + 1; m < n_; ++m) r[m] = apply_table(p, q[m], g);
    return r;
  }

  ExpVec apply_table(const std::vector<ExpVec>& t, const ExpVec& x, int g) const {
    ExpVec r(n_, Int(0));
    for (int m = g + 1; m < n_; ++m) {
      if (x[m] == 0) continue;
      PcElement img{t[m]};
      PcElement p = pow(img, x[m]);
      mul_elem(r, p.e);
    }
    return r;
  }

  // ------------------------------------------------------------------
  // construction
  // ------------------------------------------------------------------

  void init_tables(std::vector<std::tuple<int, int, ExpVec>> conj_relations,
                   std::vector<std::pair<int, ExpVec>> pow_relations) {
    n_ = static_cast<int>(gen_names.size());
    if (gen_names.empty() && !name.empty() && n_ == 0) {
      // the trivial group is a valid presentation
    }
    if (static_cast<int>(orders.size()) != n_)
      throw ParseError("orders line must list one entry per generator");
    for (int i = 0; i < n_; ++i) {
      if (orders[i] < 0) throw ParseError("relative orders must be nonnegative");
      if (orders[i] == 1)
        throw ParseError("relative order 1 is not permitted; drop the generator");
      if (!name_index_.emplace(gen_names[i], i).second)
        throw ParseError("duplicate generator name '" + gen_names[i] + "'");
    }
    conj_.assign(static_cast<std::size_t>(n_) * n_, {});
    conj_inv_.assign(static_cast<std::size_t>(n_) * n_, {});
    pow_.assign(n_, {});
    trivial_conj_.resize(n_);
    for (int j = 0; j < n_; ++j) {
      trivial_conj_[j].assign(n_, Int(0));
      trivial_conj_[j][j] = 1;
    }

    for (auto& [j, i, rhs] : conj_relations) {
      check_pair(j, i);
      validate_conj_rhs(j, i, rhs);
      bool trivial = true;
      for (int m = 0; m < n_; ++m)
        if (rhs[m] != (m == j ? 1 : 0)) trivial = false;
      if (!conj_[idx(j, i)].empty())
        throw ParseError("duplicate conj relation for (" + gen_names[j] + "," + gen_names[i] + ")");
      if (!trivial) conj_[idx(j, i)] = std::move(rhs);
    }
    for (auto& [i, rhs] : pow_relations) {
      if (i < 0 || i >= n_) throw ParseError("pow relation generator out of range");
      if (orders[i] == 0)
        throw ParseError("pow relation given for infinite-order generator '" + gen_names[i] + "'");
      validate_pow_rhs(i, rhs);
      bool trivial = true;
      for (const Int& x : rhs)
        if (x != 0) trivial = false;
      if (!trivial) pow_[i] = std::move(rhs);
    }

    infer_weights();
    derive_inverse_conj();
    check_consistency();
  }

  void validate_conj_rhs(int j, int i, const ExpVec& rhs) const {
    if (static_cast<int>(rhs.size()) != n_) throw ParseError("conj relation of wrong length");
    for (int m = 0; m < j; ++m)
      if (rhs[m] != 0)
        throw NotNilpotent("conjugate of " + gen_names[j] + " by " + gen_names[i] +
                           " involves the earlier generator " + gen_names[m]);
    if (rhs[j] != 1)
      throw NotNilpotent("conjugate of " + gen_names[j] + " by " + gen_names[i] +
                         " is not " + gen_names[j] + " times a higher tail");
    for (int m = 0; m < n_; ++m)
      if (orders[m] != 0 && (rhs[m] < 0 || rhs[m] >= orders[m]))
        throw ParseError("conj relation right-hand side not in normal form");
  }

  void validate_pow_rhs(int i, const ExpVec& rhs) const {
    if (static_cast<int>(rhs.size()) != n_) throw ParseError("pow relation of wrong length");
    for (int m = 0; m <= i; ++m)
      if (rhs[m] != 0)
        throw ParseError("power relation tail for " + gen_names[i] +
                         " must involve only later generators");
    for (int m = 0; m < n_; ++m)
      if (orders[m] != 0 && (rhs[m] < 0 || rhs[m] >= orders[m]))
        throw ParseError("pow relation right-hand side not in normal form");
  }

  void infer_weights() {
    weights.assign(n_, 1);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int j = 1; j < n_; ++j)
        for (int i = 0; i < j; ++i) {
          const ExpVec& c = conj_[idx(j, i)];
          if (c.empty()) continue;
          int need = weights[j] + weights[i];
          for (int m = j + 1; m < n_; ++m) {
            if (c[m] == 0 || weights[m] >= need) continue;
            weights[m] = need;
            if (weights[m] > n_)
              throw NotNilpotent("weight inference diverges; presentation is not nilpotent");
            changed = true;
          }
        }
    }
    for (int i = 1; i < n_; ++i)
      if (weights[i] < weights[i - 1])
        throw NotNilpotent("generator weights are not non-decreasing along the sequence");
  }

  void derive_inverse_conj() {
    // sigma_i := conj by g_i is unitriangular on the tail generators;
    // its inverse is computed bottom-up
    for (int i = n_ - 2; i >= 0; --i) {
      for (int m = n_ - 1; m > i; --m) {
        const ExpVec& c = conj_[idx(m, i)];
        if (c.empty()) continue;  // commutes; inverse conjugate trivial too
        ExpVec tail = c;
        tail[m] = 0;
        // want y = g_m * z with sigma_i(z) = tail^{-1}; z = tau_i(tail^{-1}),
        // all arithmetic strictly above m where tau_i is already known
        PcElement tinv = inv(PcElement{tail});
        ExpVec z(n_, Int(0));
        for (int p = m + 1; p < n_; ++p) {
          if (tinv.e[p] == 0) continue;
          const ExpVec& im = conj_inv_relation(p, i);
          PcElement q = pow(PcElement{im}, tinv.e[p]);
          mul_elem(z, q.e);
        }
        ExpVec y(n_, Int(0));
        mul_gen(y, m, Int(1));
        mul_elem(y, z);
        conj_inv_[idx(m, i)] = std::move(y);
      }
    }
  }

  void check_consistency() {
    auto fail = [&](const std::string& what, int a, int b, int c) {
      std::ostringstream os;
      os << "overlap test failed: " << what << " at (";
      if (a >= 0) os << gen_names[a];
      if (b >= 0) os << "," << gen_names[b];
      if (c >= 0) os << "," << gen_names[c];
      os << ")";
      throw InconsistentPresentation(os.str());
    };

    // derived inverse conjugation must invert the stored conjugation
    for (int i = 0; i < n_; ++i)
      for (int m = i + 1; m < n_; ++m) {
        PcElement gm = generator(m);
        ExpVec fwd = conj_apply(gm.e, i, Int(1));
        ExpVec back = conj_apply(fwd, i, Int(-1));
        if (back != gm.e) fail("inverse conjugation", m, i, -1);
        ExpVec fwd2 = conj_apply(conj_apply(gm.e, i, Int(-1)), i, Int(1));
        if (fwd2 != gm.e) fail("inverse conjugation", m, i, -1);
      }

    // k > j > i: g_k (g_j g_i) = (g_k g_j) g_i
    for (int k = 2; k < n_; ++k)
      for (int j = 1; j < k; ++j)
        for (int i = 0; i < j; ++i) {
          if (conj_trivial(j, i) && conj_trivial(k, i) && conj_trivial(k, j)) continue;
          PcElement lhs = mul(generator(k), mul(generator(j), generator(i)));
          PcElement rhs = mul(mul(generator(k), generator(j)), generator(i));
          if (lhs != rhs) fail("associativity", k, j, i);
        }

    for (int j = 0; j < n_; ++j) {
      if (orders[j] == 0) continue;
      PcElement pj{pow_tail(j)};
      // g_j^{m_j} g_i = g_j^{m_j - 1} (g_j g_i)
      for (int i = 0; i < j; ++i) {
        if (pow_[j].empty() && conj_trivial(j, i)) continue;
        PcElement lhs = mul(pj, generator(i));
        PcElement rhs = mul(pow(generator(j), orders[j] - 1), mul(generator(j), generator(i)));
        if (lhs != rhs) fail("power overlap", j, i, -1);
      }
      // g_k g_j^{m_j} = (g_k g_j) g_j^{m_j - 1}
      for (int k = j + 1; k < n_; ++k) {
        if (pow_[j].empty() && conj_trivial(k, j)) continue;
        PcElement lhs = mul(generator(k), pj);
        PcElement rhs = mul(mul(generator(k), generator(j)), pow(generator(j), orders[j] - 1));
        if (lhs != rhs) fail("power overlap", k, j, -1);
      }
      // g_j g_j^{m_j} = g_j^{m_j} g_j
      if (!pow_[j].empty()) {
        PcElement lhs = mul(generator(j), pj);
        PcElement rhs = mul(pj, generator(j));
        if (lhs != rhs) fail("power-power overlap", j, -1, -1);
      }
    }
  }
};

// ---- presentation file format ----
//
//   pcgroup <name>
//   gens <n1> <n2> ...
//   orders <m1> <m2> ...        (0 = infinite)
//   conj <gj> <gi> = <word>     (gi^-1 gj gi; omitted pairs commute)
//   pow <gi> = <word>           (tail of gi^{m_i})
//
// Words are space-separated name^exp tokens, ^1 omissible, "1" = empty.
// Blank lines and lines starting with '#' are ignored.
inline PcRef load_presentation(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::string name;
  std::vector<std::string> gens;
  std::vector<Int> orders;
  struct RawRel {
    std::string kind, a, b, rhs;
    int lineno;
  };
  std::vector<RawRel> rels;
  int lineno = 0;
  int stage = 0;
  auto bad = [&](const std::string& msg) -> void {
    throw ParseError("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++lineno;
    std::string trimmed = line;
    auto h = trimmed.find('#');
    if (h != std::string::npos) trimmed = trimmed.substr(0, h);
    std::istringstream ls(trimmed);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (stage == 0) {
      if (kw != "pcgroup") bad("expected 'pcgroup <name>'");
      if (!(ls >> name)) bad("missing group name");
      stage = 1;
    } else if (stage == 1) {
      if (kw != "gens") bad("expected 'gens ...'");
      std::string g;
      while (ls >> g) gens.push_back(g);
      stage = 2;
    } else if (stage == 2) {
      if (kw != "orders") bad("expected 'orders ...'");
      std::string o;
      while (ls >> o) {
        try {
          orders.emplace_back(o);
        } catch (...) {
          bad("bad order '" + o + "'");
        }
      }
      if (orders.size() != gens.size()) bad("orders line must match the generator count");
      stage = 3;
    } else {
      if (kw == "conj") {
        RawRel r;
        r.kind = "conj";
        r.lineno = lineno;
        std::string eq;
        if (!(ls >> r.a >> r.b >> eq) || eq != "=") bad("expected 'conj <gj> <gi> = <word>'");
        std::getline(ls, r.rhs);
        rels.push_back(r);
      } else if (kw == "pow") {
        RawRel r;
        r.kind = "pow";
        r.lineno = lineno;
        std::string eq;
        if (!(ls >> r.a >> eq) || eq != "=") bad("expected 'pow <gi> = <word>'");
        std::getline(ls, r.rhs);
        rels.push_back(r);
      } else {
        bad("unknown directive '" + kw + "'");
      }
    }
  }
  if (stage < 3) throw ParseError("incomplete presentation: need pcgroup/gens/orders");

  // resolve relation words; right-hand sides must be written in normal
  // form (strictly increasing generator indices, exponents in range)
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!index.emplace(gens[i], static_cast<int>(i)).second)
      throw ParseError("duplicate generator name '" + gens[i] + "'");
  }
  const int n = static_cast<int>(gens.size());
  auto resolve_word = [&](const std::string& text, int ln) -> ExpVec {
    ExpVec v(n, Int(0));
    std::istringstream ws(text);
    std::string tok;
    std::vector<std::string> toks;
    while (ws >> tok) toks.push_back(tok);
    if (toks.size() == 1 && toks[0] == "1") return v;
    int prev = -1;
    for (const auto& t : toks) {
      auto caret = t.find('^');
      std::string nm = t.substr(0, caret);
      Int e = 1;
      if (caret != std::string::npos) {
        try {
          e = Int(t.substr(caret + 1));
        } catch (...) {
          throw ParseError("line " + std::to_string(ln) + ": bad exponent in token '" + t + "'");
        }
      }
      auto it = index.find(nm);
      if (it == index.end())
        throw ParseError("line " + std::to_string(ln) + ": unknown generator '" + nm + "'");
      if (it->second <= prev)
        throw ParseError("line " + std::to_string(ln) +
                         ": relation right-hand side is not a normal-form word");
      prev = it->second;
      v[it->second] = e;
    }
    return v;
  };

  std::vector<std::tuple<int, int, ExpVec>> conj_rel;
  std::vector<std::pair<int, ExpVec>> pow_rel;
  for (const auto& r : rels) {
    if (r.kind == "conj") {
      auto ja = index.find(r.a), ib = index.find(r.b);
      if (ja == index.end() || ib == index.end())
        throw ParseError("line " + std::to_string(r.lineno) + ": unknown generator in conj");
      if (ja->second <= ib->second)
        throw ParseError("line " + std::to_string(r.lineno) +
                         ": conj requires the first generator to come later in the sequence");
      conj_rel.emplace_back(ja->second, ib->second, resolve_word(r.rhs, r.lineno));
    } else {
      auto ia = index.find(r.a);
      if (ia == index.end())
        throw ParseError("line " + std::to_string(r.lineno) + ": unknown generator in pow");
      pow_rel.emplace_back(ia->second, resolve_word(r.rhs, r.lineno));
    }
  }
  return PcPresentation::create(name, gens, orders, std::move(conj_rel), std::move(pow_rel));
}

}  // namespace tc
