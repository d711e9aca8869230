#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "spines/errors.hpp"
#include "spines/presentation.hpp"

namespace spines {
namespace {

PresMove mv_expand(FreeWord w) {
  PresMove m;
  m.kind = PresMoveKind::Expand;
  m.word = std::move(w);
  return m;
}

PresMove mv_collapse(int gen, long rel) {
  PresMove m;
  m.kind = PresMoveKind::Collapse;
  m.gen = gen;
  m.rel = rel;
  return m;
}

PresMove mv_invert(long rel) {
  PresMove m;
  m.kind = PresMoveKind::InvertRelator;
  m.rel = rel;
  return m;
}

PresMove mv_conj(long rel, FreeWord w) {
  PresMove m;
  m.kind = PresMoveKind::ConjugateRelator;
  m.rel = rel;
  m.word = std::move(w);
  return m;
}

PresMove mv_mul(long rel, long rel2) {
  PresMove m;
  m.kind = PresMoveKind::MultiplyRelator;
  m.rel = rel;
  m.rel2 = rel2;
  return m;
}

PresMove mv_permrel(std::vector<long> p) {
  PresMove m;
  m.kind = PresMoveKind::PermuteRelators;
  m.perm = std::move(p);
  return m;
}

PresMove mv_homchange(long rel, FreeWord w) {
  PresMove m;
  m.kind = PresMoveKind::HomologicalChange;
  m.rel = rel;
  m.word = std::move(w);
  return m;
}

PresMove mv_stab_pair() {
  PresMove m;
  m.kind = PresMoveKind::StabilizePair;
  return m;
}

// Accumulates presentation moves together with their chain witness, plus a
// macro log so a whole builder can be undone move-for-move later.
class Builder {
 public:
  explicit Builder(Presentation2Complex P) : P_(std::move(P)) {}

  const Presentation2Complex& pres() const { return P_; }
  const SimpleWitness& witness() const { return witness_; }
  const std::vector<PresMove>& moves() const { return moves_; }

  void a_expand(const FreeWord& w) { push(mv_expand(w)); }
  void a_collapse(int g, long ri) { push(mv_collapse(g, ri)); }
  void a_invert(long i) { push(mv_invert(i)); }
  void a_conj(long i, const FreeWord& w) { push(mv_conj(i, w)); }
  void a_mul(long i, long j) { push(mv_mul(i, j)); }
  void a_permrel(std::vector<long> p) { push(mv_permrel(std::move(p))); }
  void a_homchange(long i, const FreeWord& w) { push(mv_homchange(i, w)); }

  // Substitute generator iy by iy*x_ix^eps; iy's slot migrates to the end.
  // The net chain effect is one degree-1 elementary move plus the cycle
  // permutation sending iy last.
  void dance(int iy, int ix, int eps, bool log = true) {
    if (iy == ix) throw InvalidInputError("dance: generators must differ");
    const int n = P_.free_rank;
    const FreeWord xw = free_gen(ix, eps);
    const FreeWord w_rel = free_mul(free_inv(xw), free_gen(iy, -1));
    a_expand(w_rel);
    const long m = static_cast<long>(P_.relators.size()) - 1;
    for (long ri = 0; ri < m; ++ri) {
      while (true) {
        const FreeWord r = P_.relators[static_cast<size_t>(ri)];
        long si = -1;
        long long ee = 0;
        for (size_t k = 0; k < r.syllables.size(); ++k) {
          if (r.syllables[k].first == iy) {
            si = static_cast<long>(k);
            ee = r.syllables[k].second;
            break;
          }
        }
        if (si < 0) break;
        const long long step = ee > 0 ? 1 : -1;
        FreeWord rest;
        if (ee - step != 0) rest.syllables.emplace_back(iy, ee - step);
        rest.syllables.insert(rest.syllables.end(),
                              r.syllables.begin() + si + 1, r.syllables.end());
        if (step == 1) {
          const FreeWord cw = free_mul(free_inv(rest), free_gen(iy, -1));
          a_conj(m, cw);
          a_mul(ri, m);
          a_conj(m, free_inv(cw));
        } else {
          const FreeWord cw = free_inv(rest);
          a_invert(m);
          a_conj(m, cw);
          a_mul(ri, m);
          a_conj(m, free_inv(cw));
          a_invert(m);
        }
      }
    }
    a_invert(m);
    a_collapse(iy, m);
    if (log) macros_.push_back(Macro{MacroKind::Dance, iy, ix, eps, n, 0, 0, Int(0), {}, {}, {}});
  }

  // Move generator iy to the end; at the chain level a pure permutation.
  void cycle(int iy, bool log = true) {
    const int n = P_.free_rank;
    if (n <= 1) return;
    const int ix = iy != 1 ? 1 : 2;
    dance(iy, ix, 1, false);
    const int ix2 = ix > iy ? ix - 1 : ix;
    dance(n, ix2, -1, false);
    if (log) macros_.push_back(Macro{MacroKind::Cycle, iy, 0, 0, n, 0, 0, Int(0), {}, {}, {}});
  }

  void stab_pair(bool log = true) {
    a_expand(FreeWord{});
    if (log) macros_.push_back(Macro{MacroKind::Stab, 0, 0, 0, 0, 0, 0, Int(0), {}, {}, {}});
  }

  void permrel(std::vector<long> p, bool log = true) {
    a_permrel(p);
    if (log)
      macros_.push_back(
          Macro{MacroKind::PermRel, 0, 0, 0, 0, 0, 0, Int(0), std::move(p), {}, {}});
  }

  // Relator col_i += c * col_j via multiply/invert.
  void col_add(long i, long j, const Int& c, bool log = true) {
    if (i == j || c == 0) throw InvalidInputError("col_add: need i != j and c != 0");
    if (c < 0) a_invert(j);
    for (Int t = 0; t < int_abs(c); ++t) a_mul(i, j);
    if (c < 0) a_invert(j);
    if (log) macros_.push_back(Macro{MacroKind::ColAdd, 0, 0, 0, 0, i, j, c, {}, {}, {}});
  }

  void col_neg(long i, bool log = true) {
    a_invert(i);
    if (log) macros_.push_back(Macro{MacroKind::ColNeg, 0, 0, 0, 0, i, 0, Int(0), {}, {}, {}});
  }

  void homchange(long i, const FreeWord& w, bool log = true) {
    if (i < 0 || i >= static_cast<long>(P_.relators.size()))
      throw InvalidInputError("homchange: relator index out of range");
    const FreeWord old = P_.relators[static_cast<size_t>(i)];
    a_homchange(i, w);
    if (log)
      macros_.push_back(Macro{MacroKind::HomChange, 0, 0, 0, 0, i, 0, Int(0), {}, old, w});
  }

  // Appends the inverse of another builder's macro log.
  void invert_macros_of(const Builder& other) {
    for (auto it = other.macros_.rbegin(); it != other.macros_.rend(); ++it) {
      const Macro& mac = *it;
      switch (mac.kind) {
        case MacroKind::Stab:
          a_collapse(P_.free_rank, static_cast<long>(P_.relators.size()) - 1);
          break;
        case MacroKind::Dance:
          for (int t = 0; t < mac.n - mac.iy; ++t) cycle(mac.iy, false);
          dance(mac.iy, mac.ix, -mac.eps, false);
          for (int t = 0; t < mac.n - mac.iy; ++t) cycle(mac.iy, false);
          break;
        case MacroKind::Cycle:
          for (int t = 0; t < mac.n - mac.iy; ++t) cycle(mac.iy, false);
          break;
        case MacroKind::PermRel: {
          std::vector<long> q(mac.perm.size(), 0);
          for (size_t j = 0; j < mac.perm.size(); ++j)
            q[static_cast<size_t>(mac.perm[j])] = static_cast<long>(j);
          a_permrel(q);
          break;
        }
        case MacroKind::ColAdd:
          col_add(mac.i, mac.j, -mac.c, false);
          break;
        case MacroKind::ColNeg:
          a_invert(mac.i);
          break;
        case MacroKind::HomChange:
          a_homchange(mac.i, mac.old_word);
          break;
      }
    }
  }

 private:
  enum class MacroKind { Stab, Dance, Cycle, PermRel, ColAdd, ColNeg, HomChange };

  struct Macro {
    MacroKind kind;
    int iy, ix, eps, n;
    long i, j;
    Int c;
    std::vector<long> perm;
    FreeWord old_word;
    FreeWord new_word;
  };

  void push(PresMove m) {
    SimpleWitness w = move_witness(P_, m);
    witness_.moves.insert(witness_.moves.end(), w.moves.begin(), w.moves.end());
    P_ = apply_move(P_, m);
    moves_.push_back(std::move(m));
  }

  Presentation2Complex P_;
  SimpleWitness witness_;
  std::vector<PresMove> moves_;
  std::vector<Macro> macros_;
};

// h1 (mL x nK) with EL*h1 = d1 and h1*EK = d2, found by one stacked
// integer system over the entries of h1.
std::optional<IntMat> solve_homotopy(const IntMat& EL, const IntMat& EK,
                                     const IntMat& d1, const IntMat& d2, long mL,
                                     long nK) {
  const long nL = EL.rows;
  const long mK = EK.cols;
  const long nvars = mL * nK;
  const long neqs = nL * nK + mL * mK;
  if (neqs == 0) return IntMat(mL, nK);
  IntMat rows(neqs, nvars);
  IntMat rhs(neqs, 1);
  long idx = 0;
  for (long r = 0; r < nL; ++r)
    for (long c = 0; c < nK; ++c) {
      for (long k = 0; k < mL; ++k) rows.at(idx, k * nK + c) = EL.at(r, k);
      rhs.at(idx, 0) = d1.at(r, c);
      ++idx;
    }
  for (long r = 0; r < mL; ++r)
    for (long c = 0; c < mK; ++c) {
      for (long k = 0; k < nK; ++k) rows.at(idx, r * nK + k) = EK.at(k, c);
      rhs.at(idx, 0) = d2.at(r, c);
      ++idx;
    }
  const std::optional<IntMat> X = solve_linear(rows, rhs);
  if (!X) return std::nullopt;
  IntMat h1(mL, nK);
  for (long r = 0; r < mL; ++r)
    for (long c = 0; c < nK; ++c) h1.at(r, c) = X->at(r * nK + c, 0);
  return h1;
}

}  // namespace

SynthesisResult synthesize_moves_from_equiv(const Presentation2Complex& K,
                                            const Presentation2Complex& L,
                                            const ChainMap& e,
                                            const std::optional<SimpleWitness>& w) {
  const BasedComplex CK = fox_boundary(K);
  const BasedComplex CL = fox_boundary(L);
  if (!(e.source == CK) || !(e.target == CL))
    throw InvalidInputError(
        "the chain map does not run between the presentations' complexes");
  verify_chain_map(e);
  if (w) {
    const ReplayEquivalence pre = replay_with_equivalence(CK, *w);
    if (!(pre.result == CL))
      throw CheckFailedError("supplied witness does not end at the target complex");
  }
  if (K.pi.kind != GroupKind::Trivial)
    throw UndecidedError("move synthesis is only decided over the trivial group");

  const long nK = K.free_rank;
  const long mK = static_cast<long>(K.relators.size());
  const long nL = L.free_rank;
  const long mL = static_cast<long>(L.relators.size());

  const IntMat e0 = to_int_matrix(e.component(0));
  if (e0.at(0, 0) == -1)
    throw UndecidedError(
        "degree-0 component is -1: an orientation-reversing equivalence has no move "
        "realization");
  if (e0.at(0, 0) != 1)
    throw CheckFailedError("degree-0 component of the equivalence is not 1");
  const IntMat e1 = to_int_matrix(e.component(1));  // nL x nK
  const IntMat e2 = to_int_matrix(e.component(2));  // mL x mK
  const IntMat EK = to_int_matrix(CK.boundary(2));  // nK x mK
  const IntMat EL = to_int_matrix(CL.boundary(2));  // nL x mL

  // Degree-1 section: [e1 | d2L] * [g; s] = id.
  IntMat A(nL, nK + mL);
  for (long r = 0; r < nL; ++r) {
    for (long c = 0; c < nK; ++c) A.at(r, c) = e1.at(r, c);
    for (long c = 0; c < mL; ++c) A.at(r, nK + c) = EL.at(r, c);
  }
  const std::optional<IntMat> X = solve_linear(A, int_identity(nL));
  if (!X)
    throw CheckFailedError(
        "e1*g + d2*s = id has no integral solution; the map is not an equivalence");
  IntMat g(nK, nL), s(mL, nL);
  for (long r = 0; r < nK; ++r)
    for (long c = 0; c < nL; ++c) g.at(r, c) = X->at(r, c);
  for (long r = 0; r < mL; ++r)
    for (long c = 0; c < nL; ++c) s.at(r, c) = X->at(nK + r, c);

  // Stage 1, K side: stabilize nL pairs and dance the g block in.
  Builder bk(K);
  for (long t = 0; t < nL; ++t) bk.stab_pair();
  for (long b = 0; b < nL; ++b) {
    std::vector<std::pair<int, int>> steps;
    for (long r = 0; r < nK; ++r) {
      const Int c = g.at(r, b);
      const int sgn = c > 0 ? 1 : -1;
      for (Int t = 0; t < int_abs(c); ++t)
        steps.emplace_back(static_cast<int>(r) + 1, sgn);
    }
    if (steps.empty()) {
      bk.cycle(static_cast<int>(nK) + 1);
      continue;
    }
    bool first = true;
    for (const auto& [ix, eps] : steps) {
      const int iy = first ? static_cast<int>(nK) + 1 : bk.pres().free_rank;
      bk.dance(iy, ix, eps);
      first = false;
    }
  }

  // Stage 1, L side (inverted wholesale at the end).
  Builder bl(L);
  for (long t = 0; t < nK; ++t) bl.stab_pair();
  for (long r = 0; r < nK; ++r) {
    std::vector<std::pair<int, int>> steps;
    for (long b = 0; b < nL; ++b) {
      const Int c = e1.at(b, r);
      const int sgn = c > 0 ? 1 : -1;
      for (Int t = 0; t < int_abs(c); ++t)
        steps.emplace_back(static_cast<int>(b) + 1, sgn);
    }
    if (steps.empty()) {
      bl.cycle(static_cast<int>(nL) + 1);
      continue;
    }
    bool first = true;
    for (const auto& [ix, eps] : steps) {
      const int iy = first ? static_cast<int>(nL) + 1 : bl.pres().free_rank;
      bl.dance(iy, ix, eps);
      first = false;
    }
  }
  for (long t = 0; t < nL; ++t) bl.cycle(1);
  {
    std::vector<long> p;
    for (long j = mL; j < mL + nK; ++j) p.push_back(j);
    for (long j = 0; j < mL; ++j) p.push_back(j);
    bl.permrel(p);
  }
  const Presentation2Complex L1 = bl.pres();

  // Stage 2: factor the degree-2 discrepancy over GL(Z) column operations.
  const IntMat D2K = to_int_matrix(fox_boundary(bk.pres()).boundary(2));
  const IntMat D2L = to_int_matrix(fox_boundary(L1).boundary(2));
  if (D2K.cols != D2L.cols)
    throw CheckFailedError("degree-2 ranks differ after alignment");
  const long n2 = D2K.cols;
  IntMat etil(nK + mL, mK + nL);
  for (long r = 0; r < nK; ++r) {
    for (long c = 0; c < mK; ++c) etil.at(r, c) = EK.at(r, c);
    for (long c = 0; c < nL; ++c) etil.at(r, mK + c) = -g.at(r, c);
  }
  for (long r = 0; r < mL; ++r) {
    for (long c = 0; c < mK; ++c) etil.at(nK + r, c) = e2.at(r, c);
    for (long c = 0; c < nL; ++c) etil.at(nK + r, mK + c) = s.at(r, c);
  }
  if (!(int_mul(D2L, etil) == D2K))
    throw CheckFailedError("d2' * [[d2, -g], [e2, s]] = d2'' failed; the aligned "
                           "degree-2 block does not intertwine");
  const IntMat M = inv_unimodular(etil);
  std::vector<ColOp> ops = gl_col_ops(M);
  std::reverse(ops.begin(), ops.end());
  for (ColOp& op : ops) op = col_op_inverse(op);
  for (const ColOp& op : ops) {
    switch (op.kind) {
      case ColOp::Kind::Add:
        bk.col_add(op.i, op.j, op.c);
        break;
      case ColOp::Kind::Neg:
        bk.col_neg(op.i);
        break;
      case ColOp::Kind::Swap: {
        std::vector<long> p(static_cast<size_t>(n2));
        for (long j = 0; j < n2; ++j) p[static_cast<size_t>(j)] = j;
        std::swap(p[static_cast<size_t>(op.i)], p[static_cast<size_t>(op.j)]);
        bk.permrel(p);
        break;
      }
    }
  }
  if (!(to_int_matrix(fox_boundary(bk.pres()).boundary(2)) == D2L))
    throw CheckFailedError("degree-2 boundaries differ after the column reduction");

  // Stage 3: homological changes equalize the relator words.
  for (long i = 0; i < static_cast<long>(bk.pres().relators.size()); ++i) {
    const FreeWord& a = bk.pres().relators[static_cast<size_t>(i)];
    const FreeWord& b = L1.relators[static_cast<size_t>(i)];
    if (!(free_reduce(a) == free_reduce(b))) bk.homchange(i, b);
  }
  if (!presentations_match(bk.pres(), L1))
    throw CheckFailedError("relator words differ after homological changes");

  // Stage 4: undo the L-side sequence.
  bk.invert_macros_of(bl);
  if (!presentations_match(bk.pres(), L))
    throw CheckFailedError("the synthesized sequence does not end at the target "
                           "presentation");

  // Chain-level replay and the closing homotopy.
  const ReplayEquivalence rep = replay_with_equivalence(CK, bk.witness());
  if (!(rep.result == CL))
    throw CheckFailedError("the synthesized witness does not end at the target "
                           "complex");
  const ChainMap& F = rep.forward;
  const IntMat d1 = int_sub(e1, to_int_matrix(F.component(1)));
  const IntMat d2 = int_sub(e2, to_int_matrix(F.component(2)));
  const std::optional<IntMat> h1 = solve_homotopy(EL, EK, d1, d2, mL, nK);
  if (!h1)
    throw CheckFailedError(
        "d*h + h*d = e - f has no solution; the synthesized map is not homotopic "
        "to the input");
  ChainHomotopy h =
      make_homotopy(F, e, {{1, from_int_matrix(K.pi, *h1)}});
  verify_homotopy(h);

  SynthesisResult out;
  out.moves = MoveSequence{K, bk.moves()};
  out.chain_map = F;
  out.homotopy = std::move(h);
  return out;
}

}  // namespace spines
