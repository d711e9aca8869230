#include "spines/presentation.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "spines/errors.hpp"

namespace spines {

FreeWord free_mul(const FreeWord& a, const FreeWord& b) {
  FreeWord out = a;
  for (const auto& [g, e] : b.syllables) {
    if (e == 0) continue;
    if (!out.syllables.empty() && out.syllables.back().first == g) {
      out.syllables.back().second += e;
      if (out.syllables.back().second == 0) out.syllables.pop_back();
    } else {
      out.syllables.emplace_back(g, e);
    }
  }
  return out;
}

FreeWord free_inv(const FreeWord& w) {
  FreeWord out;
  for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it)
    out.syllables.emplace_back(it->first, -it->second);
  return out;
}

FreeWord free_reduce(const FreeWord& w) { return free_mul(FreeWord{}, w); }

FreeWord free_gen(int i, long long e) {
  FreeWord w;
  if (e != 0) w.syllables.emplace_back(i, e);
  return w;
}

static void check_word_range(const FreeWord& w, int n, const char* what) {
  for (const auto& [g, e] : w.syllables) {
    (void)e;
    if (g < 1 || g > n)
      throw InvalidInputError(std::string(what) + ": generator index " + std::to_string(g) +
                              " out of range");
  }
}

GroupWord pi_image(const Presentation2Complex& P, const FreeWord& w) {
  GroupWord acc = word_identity(P.pi);
  for (const auto& [g, e] : w.syllables) {
    if (g < 1 || g > P.free_rank)
      throw InvalidInputError("generator index out of range in word");
    GroupWord img = P.pi_map[static_cast<size_t>(g) - 1];
    if (e < 0) img = word_inv(P.pi, img);
    for (long long t = 0; t < (e < 0 ? -e : e); ++t) acc = word_mul(P.pi, acc, img);
  }
  return acc;
}

Presentation2Complex make_presentation(int free_rank, std::vector<FreeWord> relators,
                                       const GroupSpec& pi, std::vector<GroupWord> pi_map) {
  if (free_rank < 0) throw InvalidInputError("negative generator count");
  pi.check();
  if (static_cast<int>(pi_map.size()) != free_rank)
    throw InvalidInputError("pi_map must assign an image to each generator");
  Presentation2Complex P;
  P.free_rank = free_rank;
  P.pi = pi;
  for (auto& w : pi_map) P.pi_map.push_back(normalize_word(pi, w.syllables));
  for (const FreeWord& r : relators) check_word_range(r, free_rank, "relator");
  P.relators = std::move(relators);
  for (size_t j = 0; j < P.relators.size(); ++j)
    if (!pi_image(P, P.relators[j]).is_identity())
      throw InvalidInputError("relator " + std::to_string(j + 1) +
                              " does not die in the coefficient group");
  return P;
}

bool presentations_match(const Presentation2Complex& A, const Presentation2Complex& B) {
  if (A.free_rank != B.free_rank || !(A.pi == B.pi) || A.pi_map != B.pi_map) return false;
  if (A.relators.size() != B.relators.size()) return false;
  for (size_t i = 0; i < A.relators.size(); ++i)
    if (!(free_reduce(A.relators[i]) == free_reduce(B.relators[i]))) return false;
  return true;
}

RingElement fox_derivative(const Presentation2Complex& P, int i, const FreeWord& w) {
  check_word_range(w, P.free_rank, "fox derivative");
  RingElement res = ring_zero(P.pi);
  GroupWord acc = word_identity(P.pi);
  for (const auto& [g, e] : w.syllables) {
    const GroupWord& img = P.pi_map[static_cast<size_t>(g) - 1];
    if (e > 0) {
      for (long long t = 0; t < e; ++t) {
        if (g == i) res = ring_add(res, ring_from_word(P.pi, acc));
        acc = word_mul(P.pi, acc, img);
      }
    } else {
      const GroupWord inv = word_inv(P.pi, img);
      for (long long t = 0; t < -e; ++t) {
        acc = word_mul(P.pi, acc, inv);
        if (g == i) res = ring_sub(res, ring_from_word(P.pi, acc));
      }
    }
  }
  return res;
}

BasedComplex fox_boundary(const Presentation2Complex& P) {
  const GroupSpec& g = P.pi;
  const long n = P.free_rank;
  const long m = static_cast<long>(P.relators.size());
  RingMat d2(g, n, m);
  for (long j = 0; j < m; ++j)
    for (int i = 1; i <= n; ++i)
      d2.at(i - 1, j) = fox_derivative(P, i, P.relators[static_cast<size_t>(j)]);
  RingMat d1(g, 1, n);
  for (int i = 1; i <= n; ++i)
    d1.at(0, i - 1) = ring_sub(
        ring_from_word(g, P.pi_map[static_cast<size_t>(i) - 1]), ring_one(g));
  BasedComplex C = make_complex(g, {1, n, m}, {{1, d1}, {2, d2}});
  validate_complex(C);
  return C;
}

// ----------------------------------------------------------- moves

static Presentation2Complex pres_expand(const Presentation2Complex& P, const FreeWord& w) {
  check_word_range(w, P.free_rank, "expand");
  Presentation2Complex Q = P;
  Q.free_rank = P.free_rank + 1;
  Q.pi_map.push_back(word_inv(P.pi, pi_image(P, w)));
  Q.relators.push_back(free_mul(free_gen(Q.free_rank), w));
  return Q;
}

static std::set<int> word_gens(const FreeWord& w) {
  std::set<int> s;
  for (const auto& [g, e] : w.syllables) {
    (void)e;
    s.insert(g);
  }
  return s;
}

// The relator must literally spell gen * w with gen absent from w and from
// every other relator.
static FreeWord collapse_rest(const Presentation2Complex& P, int gen, long ri) {
  if (ri < 0 || ri >= static_cast<long>(P.relators.size()))
    throw InvalidInputError("collapse: relator index out of range");
  if (gen < 1 || gen > P.free_rank)
    throw InvalidInputError("collapse: generator index out of range");
  const FreeWord& r = P.relators[static_cast<size_t>(ri)];
  if (r.syllables.empty() || r.syllables[0].first != gen || r.syllables[0].second < 1)
    throw CheckFailedError("collapse: relator does not start with the generator");
  FreeWord w;
  if (r.syllables[0].second > 1)
    w.syllables.emplace_back(gen, r.syllables[0].second - 1);
  w.syllables.insert(w.syllables.end(), r.syllables.begin() + 1, r.syllables.end());
  if (word_gens(w).count(gen))
    throw CheckFailedError("collapse: generator reoccurs in its own relator");
  for (size_t k = 0; k < P.relators.size(); ++k)
    if (static_cast<long>(k) != ri && word_gens(P.relators[k]).count(gen))
      throw CheckFailedError("collapse: generator occurs in another relator");
  return w;
}

static Presentation2Complex pres_collapse(const Presentation2Complex& P, int gen, long ri) {
  collapse_rest(P, gen, ri);
  auto shift = [gen](const FreeWord& word) {
    FreeWord out;
    for (const auto& [g, e] : word.syllables)
      out.syllables.emplace_back(g > gen ? g - 1 : g, e);
    return out;
  };
  Presentation2Complex Q;
  Q.free_rank = P.free_rank - 1;
  Q.pi = P.pi;
  for (int k = 0; k < P.free_rank; ++k)
    if (k != gen - 1) Q.pi_map.push_back(P.pi_map[static_cast<size_t>(k)]);
  for (size_t k = 0; k < P.relators.size(); ++k)
    if (static_cast<long>(k) != ri) Q.relators.push_back(shift(P.relators[k]));
  return Q;
}

static void check_rel_index(const Presentation2Complex& P, long i, const char* who) {
  if (i < 0 || i >= static_cast<long>(P.relators.size()))
    throw InvalidInputError(std::string(who) + ": relator index out of range");
}

Presentation2Complex apply_move(const Presentation2Complex& P, const PresMove& m) {
  switch (m.kind) {
    case PresMoveKind::Expand:
      return pres_expand(P, m.word);
    case PresMoveKind::StabilizePair:
      return pres_expand(P, FreeWord{});
    case PresMoveKind::Collapse:
      return pres_collapse(P, m.gen, m.rel);
    case PresMoveKind::InvertRelator: {
      check_rel_index(P, m.rel, "invert");
      Presentation2Complex Q = P;
      Q.relators[static_cast<size_t>(m.rel)] =
          free_inv(Q.relators[static_cast<size_t>(m.rel)]);
      return Q;
    }
    case PresMoveKind::ConjugateRelator: {
      check_rel_index(P, m.rel, "conjugate");
      check_word_range(m.word, P.free_rank, "conjugate");
      Presentation2Complex Q = P;
      FreeWord& r = Q.relators[static_cast<size_t>(m.rel)];
      r = free_mul(free_mul(m.word, r), free_inv(m.word));
      return Q;
    }
    case PresMoveKind::MultiplyRelator: {
      check_rel_index(P, m.rel, "multiply");
      check_rel_index(P, m.rel2, "multiply");
      if (m.rel == m.rel2)
        throw InvalidInputError("multiply: relator indices must differ");
      Presentation2Complex Q = P;
      Q.relators[static_cast<size_t>(m.rel)] =
          free_mul(Q.relators[static_cast<size_t>(m.rel)],
                   Q.relators[static_cast<size_t>(m.rel2)]);
      return Q;
    }
    case PresMoveKind::HomologicalChange: {
      check_rel_index(P, m.rel, "homological change");
      if (!verify_homological_change(P, m.rel, m.word))
        throw CheckFailedError("homological change: Fox derivative rows differ");
      Presentation2Complex Q = P;
      Q.relators[static_cast<size_t>(m.rel)] = m.word;
      return Q;
    }
    case PresMoveKind::PermuteRelators: {
      const long n = static_cast<long>(P.relators.size());
      std::vector<long> s = m.perm;
      std::sort(s.begin(), s.end());
      std::vector<long> want(static_cast<size_t>(n));
      std::iota(want.begin(), want.end(), 0);
      if (s != want)
        throw InvalidInputError("permute: not a permutation of the relators");
      Presentation2Complex Q = P;
      for (long j = 0; j < n; ++j)
        Q.relators[static_cast<size_t>(j)] =
            P.relators[static_cast<size_t>(m.perm[static_cast<size_t>(j)])];
      return Q;
    }
  }
  throw InvalidInputError("unknown presentation move");
}

bool verify_homological_change(const Presentation2Complex& P, long rel,
                               const FreeWord& new_word) {
  check_rel_index(P, rel, "homological change");
  check_word_range(new_word, P.free_rank, "homological change");
  if (!pi_image(P, new_word).is_identity()) return false;
  const FreeWord& old_word = P.relators[static_cast<size_t>(rel)];
  for (int g = 1; g <= P.free_rank; ++g)
    if (!(fox_derivative(P, g, old_word) == fox_derivative(P, g, new_word))) return false;
  return true;
}

static SimpleWitness expand_witness(const Presentation2Complex& P, const FreeWord& w) {
  SimpleWitness out;
  out.moves.push_back(stab_move(1));
  const long iy = P.free_rank;  // 0-based index of the new degree-1 basis vector
  for (int i = 1; i <= P.free_rank; ++i) {
    RingElement c = fox_derivative(P, i, free_inv(w));
    if (!c.is_zero()) out.moves.push_back(elem_move(1, iy, i - 1, c));
  }
  return out;
}

static SimpleWitness collapse_witness(const Presentation2Complex& P, int gen, long ri) {
  const FreeWord w = collapse_rest(P, gen, ri);
  const long n = P.free_rank;
  const long m = static_cast<long>(P.relators.size());
  SimpleWitness out;
  std::vector<long> perm1;
  for (long k = 0; k < n; ++k)
    if (k != gen - 1) perm1.push_back(k);
  perm1.push_back(gen - 1);
  out.moves.push_back(perm_move(1, perm1));
  std::vector<long> perm2;
  for (long k = 0; k < m; ++k)
    if (k != ri) perm2.push_back(k);
  perm2.push_back(ri);
  out.moves.push_back(perm_move(2, perm2));
  std::vector<long> pos(static_cast<size_t>(n), 0);
  for (size_t newpos = 0; newpos < perm1.size(); ++newpos)
    pos[static_cast<size_t>(perm1[newpos])] = static_cast<long>(newpos);
  for (int old_gen = 1; old_gen <= n; ++old_gen) {
    if (old_gen == gen) continue;
    RingElement c = fox_derivative(P, old_gen, free_inv(w));
    if (!c.is_zero())
      out.moves.push_back(
          elem_move(1, n - 1, pos[static_cast<size_t>(old_gen) - 1], ring_neg(c)));
  }
  out.moves.push_back(destab_move(1));
  return out;
}

SimpleWitness move_witness(const Presentation2Complex& P, const PresMove& m) {
  switch (m.kind) {
    case PresMoveKind::Expand:
      return expand_witness(P, m.word);
    case PresMoveKind::StabilizePair:
      return expand_witness(P, FreeWord{});
    case PresMoveKind::Collapse:
      return collapse_witness(P, m.gen, m.rel);
    case PresMoveKind::InvertRelator:
      check_rel_index(P, m.rel, "invert");
      return SimpleWitness{{unit_move(2, m.rel, ring_from_int(P.pi, -1))}};
    case PresMoveKind::ConjugateRelator:
      check_rel_index(P, m.rel, "conjugate");
      return SimpleWitness{
          {unit_move(2, m.rel, ring_from_word(P.pi, pi_image(P, m.word)))}};
    case PresMoveKind::MultiplyRelator:
      check_rel_index(P, m.rel, "multiply");
      check_rel_index(P, m.rel2, "multiply");
      return SimpleWitness{{elem_move(2, m.rel, m.rel2, ring_one(P.pi))}};
    case PresMoveKind::HomologicalChange:
      return SimpleWitness{};
    case PresMoveKind::PermuteRelators:
      return SimpleWitness{{perm_move(2, m.perm)}};
  }
  throw InvalidInputError("unknown presentation move");
}

MovesToChainResult moves_to_chain_equiv(const MoveSequence& s) {
  Presentation2Complex P = make_presentation(s.initial.free_rank, s.initial.relators,
                                             s.initial.pi, s.initial.pi_map);
  const BasedComplex C0 = fox_boundary(P);
  SimpleWitness wit;
  for (const PresMove& m : s.moves) {
    wit = witness_concat(wit, move_witness(P, m));
    P = apply_move(P, m);
  }
  ReplayEquivalence eq = replay_with_equivalence(C0, wit);
  if (!(eq.result == fox_boundary(P)))
    throw CheckFailedError("move witness endpoint differs from the final complex");
  verify_homotopy(eq.on_result);
  verify_homotopy(eq.on_start);

  MovesToChainResult out;
  out.final_presentation = P;
  out.witness = wit;
  out.forward = eq.forward;
  out.backward = eq.backward;
  out.on_result = eq.on_result;
  out.on_start = eq.on_start;
  return out;
}

}  // namespace spines
