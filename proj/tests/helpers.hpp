#pragma once

// Deterministic random inputs shared by the unit and acceptance tests.
// Everything is seeded explicitly so failures reproduce.

#include <random>
#include <vector>

#include "spines/align.hpp"
#include "spines/homology.hpp"
#include "spines/presentation.hpp"
#include "spines/witness.hpp"

namespace testgen {

using Rng = std::mt19937_64;
using namespace spines;

inline long pick(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline GroupWord random_word(Rng& rng, const GroupSpec& g, int maxlen) {
  const int n = g.generator_count();
  std::vector<std::pair<int, long long>> letters;
  if (n > 0) {
    const long len = pick(rng, 0, maxlen);
    for (long i = 0; i < len; ++i) {
      long long e = pick(rng, -2, 2);
      if (e == 0) e = 1;
      letters.emplace_back(static_cast<int>(pick(rng, 1, n)), e);
    }
  }
  return normalize_word(g, letters);
}

inline RingElement random_element(Rng& rng, const GroupSpec& g, int maxterms,
                                  long maxcoeff) {
  RingElement a = ring_zero(g);
  const long terms = pick(rng, 0, maxterms);
  for (long i = 0; i < terms; ++i) {
    long c = pick(rng, -maxcoeff, maxcoeff);
    if (c == 0) c = 1;
    a = ring_add(a, ring_from_word(g, random_word(rng, g, 3), Int(c)));
  }
  return a;
}

inline RingMat random_matrix(Rng& rng, const GroupSpec& g, long rows, long cols) {
  RingMat m(g, rows, cols);
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c)
      if (pick(rng, 0, 2) != 0) m.at(r, c) = random_element(rng, g, 2, 3);
  return m;
}

inline IntMat random_int_matrix(Rng& rng, long rows, long cols, long maxabs) {
  IntMat m(rows, cols);
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c) m.at(r, c) = Int(pick(rng, -maxabs, maxabs));
  return m;
}

// A random +-g unit of the group ring.
inline RingElement random_unit(Rng& rng, const GroupSpec& g) {
  return ring_from_word(g, random_word(rng, g, 2), Int(pick(rng, 0, 1) ? 1 : -1));
}

// One legal move for the current shape of C, biased away from no-ops.
inline WitnessMove random_move(Rng& rng, const BasedComplex& C) {
  const int top = C.top_degree();
  for (;;) {
    switch (pick(rng, 0, 3)) {
      case 0:
        return stab_move(static_cast<int>(pick(rng, 0, top)));
      case 1: {
        const int k = static_cast<int>(pick(rng, 1, std::max(1, top)));
        const long rows = C.rank(k - 1), cols = C.rank(k);
        const bool row = pick(rng, 0, 1) == 1;
        const long n = row ? rows : cols;
        if (n < 2) break;
        long i = pick(rng, 0, n - 1), j = pick(rng, 0, n - 1);
        if (i == j) break;
        const RingElement c = random_element(rng, C.ring, 2, 2);
        return row ? elem_row_move(k, i, j, c) : elem_move(k, i, j, c);
      }
      case 2: {
        const int k = static_cast<int>(pick(rng, 0, top));
        if (C.rank(k) == 0) break;
        return unit_move(k, pick(rng, 0, C.rank(k) - 1), random_unit(rng, C.ring));
      }
      default: {
        const int k = static_cast<int>(pick(rng, 0, top));
        const long n = C.rank(k);
        if (n < 2) break;
        std::vector<long> p(static_cast<size_t>(n));
        for (long v = 0; v < n; ++v) p[static_cast<size_t>(v)] = v;
        std::shuffle(p.begin(), p.end(), rng);
        return perm_move(k, p);
      }
    }
  }
}

// Applies `len` random legal moves to C, returning the accumulated witness
// and advancing C to the result.
inline SimpleWitness roughen(Rng& rng, BasedComplex& C, int len) {
  SimpleWitness w;
  for (int i = 0; i < len; ++i) {
    const WitnessMove m = random_move(rng, C);
    C = apply_witness_move(C, m).complex;
    w.moves.push_back(m);
  }
  return w;
}

inline BasedComplex random_complex(Rng& rng, const GroupSpec& g, int maxdeg,
                                   int moves = 8) {
  std::vector<long> ranks;
  const int top = static_cast<int>(pick(rng, 0, maxdeg));
  for (int k = 0; k <= top; ++k) ranks.push_back(pick(rng, k == 0 ? 1 : 0, 3));
  BasedComplex C = make_complex(g, ranks, {});
  roughen(rng, C, moves);
  return C;
}

// Homology of a 2-complex with one 0-cell: H0 = Z, H1 with a bounded
// divisor chain, H2 free.
inline HomologySummary random_2complex_summary(Rng& rng, long max_divisor = 16) {
  HomologySummary h;
  const long b1 = pick(rng, 0, 4), b2 = pick(rng, 0, 4);
  h.betti = {1, b1, b2};
  std::vector<Int> tor;
  Int d(pick(rng, 2, 4));
  const long k = pick(rng, 0, 3);
  for (long i = 0; i < k && d <= max_divisor; ++i) {
    tor.push_back(d);
    d *= Int(pick(rng, 1, 2));
  }
  h.torsion = {{}, tor, {}};
  return h;
}

// A presentation over the trivial group whose complex has the given summary:
// one torsion generator per divisor, one free generator per unit of betti 1,
// and one empty relator per unit of betti 2.
inline Presentation2Complex presentation_from_summary(const HomologySummary& h) {
  const long b1 = h.betti_at(1), b2 = h.betti_at(2);
  const std::vector<Int> tor = h.torsion_at(1);
  const int gens = static_cast<int>(b1 + static_cast<long>(tor.size()));
  std::vector<FreeWord> rels;
  for (size_t i = 0; i < tor.size(); ++i)
    rels.push_back(free_gen(static_cast<int>(i) + 1,
                            static_cast<long long>(tor[i].convert_to<long>())));
  for (long i = 0; i < b2; ++i) rels.push_back(FreeWord{});
  const GroupSpec t = trivial_group();
  return make_presentation(gens, rels, t,
                           std::vector<GroupWord>(static_cast<size_t>(gens),
                                                  word_identity(t)));
}

// A random word in the kernel of pi_map: letters whose image is trivial,
// conjugated freely, with commutators thrown in over abelian groups.
inline FreeWord random_kernel_word(Rng& rng, const Presentation2Complex& P,
                                   int pieces) {
  FreeWord w;
  if (P.free_rank == 0) return w;
  auto random_free = [&](int maxlen) {
    FreeWord u;
    const long len = pick(rng, 0, maxlen);
    for (long i = 0; i < len; ++i) {
      long long e = pick(rng, -2, 2);
      if (e == 0) e = 1;
      u = free_mul(u, free_gen(static_cast<int>(pick(rng, 1, P.free_rank)), e));
    }
    return u;
  };
  for (int p = 0; p < pieces; ++p) {
    FreeWord core;
    if (P.pi.kind == GroupKind::Trivial) {
      core = random_free(3);
    } else if (P.pi.kind == GroupKind::FreeAbelian && P.free_rank >= 2 &&
               pick(rng, 0, 1) == 1) {
      const FreeWord a = random_free(2), b = random_free(2);
      core = free_mul(free_mul(a, b), free_mul(free_inv(a), free_inv(b)));
    } else if (P.pi.kind == GroupKind::FiniteCyclic && pick(rng, 0, 1) == 1) {
      // A full power of a generator that maps onto t dies in Z/n.
      core = free_gen(1, static_cast<long long>(P.pi.param) *
                             (pick(rng, 0, 1) ? 1 : -1));
    } else {
      // w * w^-1 dies in every group and still has interesting spelling.
      const FreeWord u2 = random_free(2);
      core = free_mul(u2, free_inv(u2));
    }
    const FreeWord u = random_free(2);
    w = free_mul(w, free_mul(free_mul(u, core), free_inv(u)));
  }
  if (!pi_image(P, w).is_identity()) return FreeWord{};
  return w;
}

// A presentation over pi with relators in the kernel of the chosen pi_map.
inline Presentation2Complex random_presentation(Rng& rng, const GroupSpec& pi) {
  const int gens = static_cast<int>(pick(rng, 1, 3));
  std::vector<GroupWord> images;
  for (int i = 1; i <= gens; ++i) {
    if (pi.kind == GroupKind::Trivial)
      images.push_back(word_identity(pi));
    else if (pi.kind == GroupKind::FiniteCyclic)
      images.push_back(i == 1 ? word_generator(pi, 1)
                              : random_word(rng, pi, 2));
    else
      images.push_back(pick(rng, 0, 1) ? word_identity(pi)
                                       : random_word(rng, pi, 2));
  }
  Presentation2Complex draft;
  draft.free_rank = gens;
  draft.pi = pi;
  draft.pi_map = images;
  const long nrel = pick(rng, 0, 3);
  std::vector<FreeWord> rels;
  for (long r = 0; r < nrel; ++r) {
    if (pi.kind == GroupKind::Trivial) {
      FreeWord w;
      const long len = pick(rng, 0, 4);
      for (long i = 0; i < len; ++i) {
        long long e = pick(rng, -2, 2);
        if (e == 0) e = 1;
        w = free_mul(w, free_gen(static_cast<int>(pick(rng, 1, gens)), e));
      }
      rels.push_back(w);
    } else if (pi.kind == GroupKind::FiniteCyclic) {
      // Balance an arbitrary word by a power of x1 (which maps to t).
      FreeWord w;
      const long len = pick(rng, 0, 3);
      for (long i = 0; i < len; ++i) {
        long long e = pick(rng, -2, 2);
        if (e == 0) e = 1;
        w = free_mul(w, free_gen(static_cast<int>(pick(rng, 1, gens)), e));
      }
      const GroupWord img = pi_image(draft, w);
      if (!img.is_identity()) {
        const long long exp = img.syllables.at(0).second;
        w = free_mul(w, free_gen(1, static_cast<long long>(pi.param) - exp));
      }
      rels.push_back(w);
    } else {
      rels.push_back(random_kernel_word(rng, draft, static_cast<int>(pick(rng, 1, 2))));
    }
  }
  return make_presentation(gens, rels, pi, images);
}

// Inserts a freely cancelling pair into the relator: the Fox rows and the pi
// image are unchanged, so this is always a legal homological change.
inline FreeWord pad_with_cancelling_pair(Rng& rng, const Presentation2Complex& P,
                                         const FreeWord& r) {
  const int i = static_cast<int>(pick(rng, 1, std::max(1, P.free_rank)));
  const FreeWord pair = free_mul(free_gen(i), free_gen(i, -1));
  return pick(rng, 0, 1) ? free_mul(r, pair) : free_mul(pair, r);
}

// A short random move sequence that is legal by construction.  A collapse is
// only emitted straight after its own expand, while the new relator still has
// the exact shape the collapse needs.
inline MoveSequence random_move_sequence(Rng& rng, const GroupSpec& pi, int len) {
  MoveSequence s;
  s.initial = random_presentation(rng, pi);
  Presentation2Complex P = s.initial;
  bool just_expanded = false;
  for (int step = 0; step < len; ++step) {
    PresMove m;
    const long nrel = static_cast<long>(P.relators.size());
    bool chosen = false;
    while (!chosen) {
      // A rejected attempt may have filled some fields already.
      m = PresMove{};
      chosen = true;
      switch (pick(rng, 0, 6)) {
        case 0: {
          m.kind = PresMoveKind::Expand;
          FreeWord w;
          const long wl = pick(rng, 0, 3);
          for (long i = 0; i < wl && P.free_rank > 0; ++i) {
            long long e = pick(rng, -2, 2);
            if (e == 0) e = 1;
            w = free_mul(w, free_gen(static_cast<int>(pick(rng, 1, P.free_rank)), e));
          }
          m.word = w;
          break;
        }
        case 1: {
          if (!just_expanded) {
            chosen = false;
            break;
          }
          m.kind = PresMoveKind::Collapse;
          m.gen = P.free_rank;
          m.rel = nrel - 1;
          break;
        }
        case 2: {
          if (nrel == 0) {
            chosen = false;
            break;
          }
          m.kind = PresMoveKind::InvertRelator;
          m.rel = pick(rng, 0, nrel - 1);
          break;
        }
        case 3: {
          if (nrel == 0) {
            chosen = false;
            break;
          }
          m.kind = PresMoveKind::ConjugateRelator;
          m.rel = pick(rng, 0, nrel - 1);
          m.word = random_kernel_word(rng, P, 1);
          break;
        }
        case 4: {
          if (nrel < 2) {
            chosen = false;
            break;
          }
          m.kind = PresMoveKind::MultiplyRelator;
          m.rel = pick(rng, 0, nrel - 1);
          m.rel2 = pick(rng, 0, nrel - 1);
          if (m.rel == m.rel2) chosen = false;
          break;
        }
        case 5: {
          if (nrel == 0) {
            chosen = false;
            break;
          }
          m.kind = PresMoveKind::HomologicalChange;
          m.rel = pick(rng, 0, nrel - 1);
          m.word =
              pad_with_cancelling_pair(rng, P, P.relators[static_cast<size_t>(m.rel)]);
          break;
        }
        default: {
          if (pick(rng, 0, 1) == 0 || nrel < 2) {
            m.kind = PresMoveKind::StabilizePair;
          } else {
            m.kind = PresMoveKind::PermuteRelators;
            std::vector<long> p(static_cast<size_t>(nrel));
            for (long v = 0; v < nrel; ++v) p[static_cast<size_t>(v)] = v;
            std::shuffle(p.begin(), p.end(), rng);
            m.perm = p;
          }
          break;
        }
      }
    }
    P = apply_move(P, m);
    just_expanded =
        m.kind == PresMoveKind::Expand || m.kind == PresMoveKind::StabilizePair;
    s.moves.push_back(m);
  }
  return s;
}

// A chain map guaranteed to satisfy the alignment preconditions (H0 iso,
// H1 epi): start from the inclusion of C into C plus cells in degrees >= 2,
// then disguise both sides with witness equivalences and a homotopy.
inline ChainMap random_alignable_map(Rng& rng) {
  const GroupSpec t = trivial_group();
  const Presentation2Complex P = random_presentation(rng, t);
  const BasedComplex C = fox_boundary(P);

  std::vector<long> extra = {0, 0, pick(rng, 0, 2), pick(rng, 0, 2)};
  std::map<int, RingMat> bnd;
  if (extra[2] > 0 && extra[3] > 0)
    bnd.emplace(3, random_matrix(rng, t, extra[2], extra[3]));
  const BasedComplex A = make_complex(t, extra, bnd);
  const BasedComplex D0 = direct_sum(C, A);

  std::map<int, RingMat> incl;
  for (int k = 0; k <= C.top_degree(); ++k) {
    if (C.rank(k) == 0) continue;
    RingMat block(t, D0.rank(k), C.rank(k));
    for (long i = 0; i < C.rank(k); ++i) block.at(i, i) = ring_one(t);
    incl.emplace(k, block);
  }
  ChainMap f = make_chain_map(C, D0, incl);

  BasedComplex D = D0;
  const SimpleWitness wd = roughen(rng, D, 6);
  f = compose_maps(replay_with_equivalence(D0, wd).forward, f);

  BasedComplex C2 = C;
  const SimpleWitness wc = roughen(rng, C2, 4);
  f = compose_maps(f, replay_with_equivalence(C, wc).backward);

  // Add a boundary-shaped perturbation: f + d*h + h*d is still a chain map.
  std::map<int, RingMat> hc;
  for (int k = 0; k <= C2.top_degree(); ++k) {
    const long rows = f.target.rank(k + 1), cols = C2.rank(k);
    if (rows == 0 || cols == 0) continue;
    if (pick(rng, 0, 1) == 0) continue;
    hc.emplace(k, random_matrix(rng, t, rows, cols));
  }
  ChainMap pert = zero_map(C2, f.target);
  for (int k = 0; k <= C2.top_degree(); ++k) {
    RingMat term(t, f.target.rank(k), C2.rank(k));
    if (term.rows == 0 || term.cols == 0) continue;
    if (const auto it = hc.find(k); it != hc.end())
      term = rm_add(term, compose(f.target.boundary(k + 1), it->second));
    if (k >= 1)
      if (const auto it = hc.find(k - 1); it != hc.end())
        term = rm_add(term, compose(it->second, C2.boundary(k)));
    if (!rm_is_zero(term)) pert.components.emplace(k, term);
  }
  ChainMap out = map_add(f, pert);
  verify_chain_map(out);
  return out;
}

}  // namespace testgen
