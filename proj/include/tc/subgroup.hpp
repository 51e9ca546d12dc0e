#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "tc/pc.hpp"

namespace tc {

// A subgroup of a pc group, stored as its canonical induced sequence:
// elements with strictly increasing leading indices, closed under the
// sifting membership test, leading exponents positive (and dividing the
// ambient relative order where finite), later entries reduced.
struct Subgroup {
  PcRef parent;
  std::vector<PcElement> seq;
  std::vector<int> leads;

  std::size_t size() const { return seq.size(); }
  bool is_trivial() const { return seq.empty(); }

  // relative order of seq[k] modulo the deeper part (0 = infinite)
  Int rel_order(std::size_t k) const {
    const Int& m = parent->orders[leads[k]];
    if (m == 0) return 0;
    return m / seq[k].e[leads[k]];
  }

  bool operator==(const Subgroup& o) const { return seq == o.seq; }

  // maximal reduction of x through the sequence; x is a member iff the
  // residue is the identity. Coefficients are reported in sequence order.
  PcElement sift(const PcElement& x, std::vector<Int>* coeffs = nullptr) const {
    const PcPresentation& g = *parent;
    if (coeffs) coeffs->assign(seq.size(), Int(0));
    PcElement r = x;
    for (;;) {
      std::size_t l = r.leading();
      if (l >= r.e.size()) return r;  // identity
      std::size_t k = 0;
      while (k < seq.size() && leads[k] != static_cast<int>(l)) ++k;
      if (k == seq.size()) return r;
      const Int& eh = seq[k].e[l];
      const Int& ex = r.e[l];
      if (ex % eh != 0) return r;
      Int q = ex / eh;
      r = g.mul(g.pow(seq[k], -q), r);
      if (coeffs) (*coeffs)[k] = q;
    }
  }

  bool contains(const PcElement& x) const { return sift(x).is_identity(); }

  // exponents over the induced sequence when x is a member; the
  // expression re-evaluates to x exactly
  std::optional<std::vector<Int>> member_decompose(const PcElement& x) const {
    std::vector<Int> coeffs;
    if (!sift(x, &coeffs).is_identity()) return std::nullopt;
    return coeffs;
  }

  PcElement evaluate_decomposition(const std::vector<Int>& coeffs) const {
    const PcPresentation& g = *parent;
    PcElement r = g.identity();
    for (std::size_t k = 0; k < seq.size(); ++k)
      if (coeffs[k] != 0) r = g.mul(r, g.pow(seq[k], coeffs[k]));
    return r;
  }
};

inline Subgroup trivial_subgroup(PcRef g) { return Subgroup{std::move(g), {}, {}}; }

inline Subgroup whole_group(PcRef g) {
  Subgroup h;
  h.parent = g;
  for (int i = 0; i < g->ngens(); ++i) {
    h.seq.push_back(g->generator(i));
    h.leads.push_back(i);
  }
  return h;
}

// tail segment <g_t, ..., g_{n-1}>
inline Subgroup tail_subgroup(PcRef g, int t) {
  Subgroup h;
  h.parent = g;
  for (int i = t; i < g->ngens(); ++i) {
    h.seq.push_back(g->generator(i));
    h.leads.push_back(i);
  }
  return h;
}

namespace detail {

// Completion of an induced sequence from a generating set. Besides the
// generators, the closure enqueues pairwise conjugates of sequence
// elements, power images at finite slots, and conjugates by the given
// ambient conjugators (for normal closures).
class SubgroupBuilder {
 public:
  SubgroupBuilder(PcRef parent, std::vector<PcElement> gens,
                  std::vector<PcElement> conjugators)
      : g_(*parent), parent_(std::move(parent)), conjugators_(std::move(conjugators)) {
    slots_.assign(g_.ngens(), std::nullopt);
    for (auto& x : gens) queue_.push_back(std::move(x));
    run();
  }

  Subgroup result() {
    Subgroup h;
    h.parent = parent_;
    for (int l = 0; l < g_.ngens(); ++l)
      if (slots_[l]) {
        h.seq.push_back(*slots_[l]);
        h.leads.push_back(l);
      }
    canonicalize(h);
    return h;
  }

 private:
  const PcPresentation& g_;
  PcRef parent_;
  std::vector<PcElement> conjugators_;
  std::vector<std::optional<PcElement>> slots_;
  std::deque<PcElement> queue_;

  void run() {
    while (!queue_.empty()) {
      PcElement x = std::move(queue_.front());
      queue_.pop_front();
      sift_in(std::move(x));
    }
  }

  void enqueue_closures(const PcElement& y) {
    for (const auto& s : slots_) {
      if (!s) continue;
      queue_.push_back(g_.commutator(y, *s));
      queue_.push_back(g_.commutator(*s, y));
      queue_.push_back(g_.conjugate(y, *s));
      queue_.push_back(g_.conjugate(*s, y));
    }
    for (const auto& c : conjugators_) {
      queue_.push_back(g_.conjugate(y, c));
      queue_.push_back(g_.conjugate(y, g_.inv(c)));
    }
  }

  void install(int l, PcElement y) {
    // at finite slots make the leading exponent the canonical divisor of
    // the relative order, and queue the power image that drops deeper
    const Int& m = g_.orders[l];
    if (m != 0) {
      Int e = y.e[l];
      Bezout b = ext_gcd(e, m);
      if (b.g != e) {
        PcElement y2 = g_.pow(y, b.x);
        // leading exponent of y2 is gcd(e, m) mod m, nonzero
        queue_.push_back(y);
        y = std::move(y2);
      }
      queue_.push_back(g_.pow(y, m / y.e[l]));
    }
    slots_[l] = y;
    enqueue_closures(y);
  }

  void sift_in(PcElement x) {
    for (;;) {
      std::size_t lu = x.leading();
      if (lu >= x.e.size()) return;
      int l = static_cast<int>(lu);
      if (g_.orders[l] == 0 && x.e[l] < 0) x = g_.inv(x);
      if (!slots_[l]) {
        install(l, std::move(x));
        return;
      }
      PcElement h = *slots_[l];
      const Int eh = h.e[l];
      const Int ex = x.e[l];
      if (ex % eh == 0) {
        x = g_.mul(g_.pow(h, -(ex / eh)), x);
        continue;  // leading index strictly increased
      }
      Bezout b = ext_gcd(eh, ex);
      PcElement z = g_.mul(g_.pow(h, b.x), g_.pow(x, b.y));
      // z leads at l with exponent gcd(eh, ex); h and x reduce through z
      slots_[l] = std::nullopt;
      install(l, std::move(z));
      queue_.push_back(std::move(h));
      queue_.push_back(std::move(x));
      return;
    }
  }

  void canonicalize(Subgroup& h) const {
    if (h.seq.empty()) return;
    for (std::size_t s = h.seq.size(); s-- > 0;) {
      for (std::size_t t = s + 1; t < h.seq.size(); ++t) {
        int l = h.leads[t];
        Int q = fdiv_q(h.seq[s].e[l], h.seq[t].e[l]);
        if (q != 0) h.seq[s] = h.parent->mul(h.seq[s], h.parent->pow(h.seq[t], -q));
      }
    }
  }
};

}  // namespace detail

// Canonical induced sequence of the subgroup generated by gens;
// invariant under permuting or duplicating the input. With conjugators
// the result is closed under conjugation by them (normal closure when
// the conjugators generate the group).
inline Subgroup subgroup_from_generators(PcRef parent, std::vector<PcElement> gens,
                                         std::vector<PcElement> conjugators = {}) {
  detail::SubgroupBuilder b(std::move(parent), std::move(gens), std::move(conjugators));
  return b.result();
}

// derived subgroup [H,H] (normal closure of pairwise commutators in H)
inline Subgroup derived_subgroup(const Subgroup& h) {
  std::vector<PcElement> comms;
  for (std::size_t i = 0; i < h.seq.size(); ++i)
    for (std::size_t j = i + 1; j < h.seq.size(); ++j)
      comms.push_back(h.parent->commutator(h.seq[i], h.seq[j]));
  return subgroup_from_generators(h.parent, std::move(comms), h.seq);
}

}  // namespace tc
