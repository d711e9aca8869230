#include "spines/align.hpp"

#include "spines/errors.hpp"

namespace spines {
namespace {

void require_2dim(const BasedComplex& C, const char* who) {
  if (C.top_degree() > 2)
    throw InvalidInputError(std::string(who) + ": complex is not concentrated in "
                            "degrees 0..2");
}

void require_shape(const RingMat& m, long rows, long cols, const GroupSpec& g,
                   const char* name) {
  if (!(m.group == g) || m.rows != rows || m.cols != cols)
    throw InvalidInputError(std::string("alignment witness ") + name +
                            " has the wrong shape");
}

// H0(cone f) = H1(cone f) = 0 decides "H0(f) iso and H1(f) epi" for maps of
// complexes bounded below; both groups must vanish including torsion.
bool cone_trivial_through_deg1(const ChainMap& f) {
  const BasedComplex cone = mapping_cone(f);
  const HomologySummary h = homology_Z(cone);
  for (int k = 0; k <= 1; ++k)
    if (h.betti_at(k) != 0 || !h.torsion_at(k).empty()) return false;
  return true;
}

// Joint integral solve for the degree-0 witnesses (g0, s, t, u).
std::optional<AlignmentWitness> solve_deg0_witness(const ChainMap& f) {
  const BasedComplex& C = f.source;
  const BasedComplex& D = f.target;
  const GroupSpec& G = C.ring;
  const long c0 = C.rank(0), c1 = C.rank(1);
  const long d0 = D.rank(0), d1 = D.rank(1), d2 = D.rank(2);
  const IntMat f0 = to_int_matrix(f.component(0));
  const IntMat f1 = to_int_matrix(f.component(1));
  const IntMat d1D = to_int_matrix(D.boundary(1));
  const IntMat d2D = to_int_matrix(D.boundary(2));
  const IntMat d1C = to_int_matrix(C.boundary(1));

  const long off_g = 0;
  const long off_s = c0 * d0;
  const long off_t = off_s + d1 * d0;
  const long off_u = off_t + c1 * c0;
  const long nv = off_u + d2 * c0;
  const long neq = d0 * d0 + c0 * c0 + d1 * c0;
  IntMat A(neq, nv), rhs(neq, 1);
  const auto var_g = [&](long r, long c) { return off_g + r * d0 + c; };
  const auto var_s = [&](long r, long c) { return off_s + r * d0 + c; };
  const auto var_t = [&](long r, long c) { return off_t + r * c0 + c; };
  const auto var_u = [&](long r, long c) { return off_u + r * c0 + c; };
  long eq = 0;
  // (1) f0*g0 + d1D*s = id
  for (long r = 0; r < d0; ++r)
    for (long c = 0; c < d0; ++c) {
      for (long m = 0; m < c0; ++m) A.at(eq, var_g(m, c)) += f0.at(r, m);
      for (long m = 0; m < d1; ++m) A.at(eq, var_s(m, c)) += d1D.at(r, m);
      rhs.at(eq, 0) = (r == c) ? 1 : 0;
      ++eq;
    }
  // (2) g0*f0 + d1C*t = id
  for (long r = 0; r < c0; ++r)
    for (long c = 0; c < c0; ++c) {
      for (long m = 0; m < d0; ++m) A.at(eq, var_g(r, m)) += f0.at(m, c);
      for (long m = 0; m < c1; ++m) A.at(eq, var_t(m, c)) += d1C.at(r, m);
      rhs.at(eq, 0) = (r == c) ? 1 : 0;
      ++eq;
    }
  // (3) d2D*u + f1*t - s*f0 = 0
  for (long r = 0; r < d1; ++r)
    for (long c = 0; c < c0; ++c) {
      for (long m = 0; m < d2; ++m) A.at(eq, var_u(m, c)) += d2D.at(r, m);
      for (long m = 0; m < c1; ++m) A.at(eq, var_t(m, c)) += f1.at(r, m);
      for (long m = 0; m < d0; ++m) A.at(eq, var_s(r, m)) -= f0.at(m, c);
      ++eq;
    }
  const std::optional<IntMat> sol = (neq == 0) ? std::make_optional(IntMat(nv, 1))
                                               : solve_linear(A, rhs);
  if (!sol) return std::nullopt;
  const auto take = [&](long off, long rows, long cols) {
    IntMat out(rows, cols);
    for (long r = 0; r < rows; ++r)
      for (long c = 0; c < cols; ++c)out.at(r, c) = sol->at(off + r * cols + c, 0);
    return from_int_matrix(G, out);
  };
  AlignmentWitness w;
  w.g0 = take(off_g, c0, d0);
  w.s = take(off_s, d1, d0);
  w.t = take(off_t, c1, c0);
  w.u = take(off_u, d2, c0);
  w.g = RingMat(G, 0, 0);
  return w;
}

// Joint integral solve for the degree-1 witnesses (g, s).
std::optional<AlignmentWitness> solve_deg1_witness(const ChainMap& f) {
  const BasedComplex& C = f.source;
  const BasedComplex& D = f.target;
  const GroupSpec& G = C.ring;
  const long n0 = C.rank(0), c1 = C.rank(1);
  const long e1 = D.rank(1), e2 = D.rank(2);
  const IntMat f1 = to_int_matrix(f.component(1));
  const IntMat d1C = to_int_matrix(C.boundary(1));
  const IntMat d1D = to_int_matrix(D.boundary(1));
  const IntMat d2D = to_int_matrix(D.boundary(2));

  const long off_g = 0;
  const long off_s = c1 * e1;
  const long nv = off_s + e2 * e1;
  const long neq = n0 * e1 + e1 * e1;
  IntMat A(neq, nv), rhs(neq, 1);
  const auto var_g = [&](long r, long c) { return off_g + r * e1 + c; };
  const auto var_s = [&](long r, long c) { return off_s + r * e1 + c; };
  long eq = 0;
  // d1C*g = d1D
  for (long r = 0; r < n0; ++r)
    for (long c = 0; c < e1; ++c) {
      for (long m = 0; m < c1; ++m) A.at(eq, var_g(m, c)) += d1C.at(r, m);
      rhs.at(eq, 0) = d1D.at(r, c);
      ++eq;
    }
  // d2D*s + f1*g = id
  for (long r = 0; r < e1; ++r)
    for (long c = 0; c < e1; ++c) {
      for (long m = 0; m < e2; ++m) A.at(eq, var_s(m, c)) += d2D.at(r, m);
      for (long m = 0; m < c1; ++m) A.at(eq, var_g(m, c)) += f1.at(r, m);
      rhs.at(eq, 0) = (r == c) ? 1 : 0;
      ++eq;
    }
  const std::optional<IntMat> sol = (neq == 0) ? std::make_optional(IntMat(nv, 1))
                                               : solve_linear(A, rhs);
  if (!sol) return std::nullopt;
  const auto take = [&](long off, long rows, long cols) {
    IntMat out(rows, cols);
    for (long r = 0; r < rows; ++r)
      for (long c = 0; c < cols; ++c) out.at(r, c) = sol->at(off + r * cols + c, 0);
    return from_int_matrix(G, out);
  };
  AlignmentWitness w;
  w.g0 = RingMat(G, 0, 0);
  w.s = take(off_s, e2, e1);
  w.t = RingMat(G, 0, 0);
  w.u = RingMat(G, 0, 0);
  w.g = take(off_g, c1, e1);
  return w;
}

}  // namespace

AlignedPair align_deg0(const ChainMap& f,
                       const std::optional<AlignmentWitness>& supplied) {
  const BasedComplex& C = f.source;
  const BasedComplex& D = f.target;
  require_2dim(C, "align_deg0");
  verify_chain_map(f);
  const GroupSpec& G = C.ring;
  const long c0 = C.rank(0), c1 = C.rank(1), c2 = C.rank(2);
  const long d0 = D.rank(0), d1 = D.rank(1), d2 = D.rank(2);

  AlignmentWitness w;
  if (supplied) {
    w = *supplied;
    require_shape(w.g0, c0, d0, G, "g0");
    require_shape(w.s, d1, d0, G, "s");
    require_shape(w.t, c1, c0, G, "t");
    require_shape(w.u, d2, c0, G, "u");
  } else {
    if (G.kind != GroupKind::Trivial)
      throw UndecidedError(
          "align_deg0: witnesses (g0, s, t, u) must be supplied over a nontrivial "
          "group");
    if (!cone_trivial_through_deg1(f))
      throw CheckFailedError(
          "align_deg0: H0(f) must be an isomorphism and H1(f) an epimorphism");
    std::optional<AlignmentWitness> solved = solve_deg0_witness(f);
    if (!solved)
      throw CheckFailedError(
          "align_deg0: joint witness system for f0*g0 + d1*s = id, g0*f0 + d1*t = "
          "id, d2*u + f1*t = s*f0 is unsolvable");
    w = *solved;
  }

  const RingMat f0 = f.component(0);
  const RingMat f1 = f.component(1);
  const RingMat f2 = f.component(2);
  // The three identities, verified exactly.
  if (!(compose(f0, w.g0) == rm_sub(rm_identity(G, d0), compose(D.boundary(1), w.s))))
    throw CheckFailedError("align_deg0: f0*g0 + d1*s = id failed");
  if (!(compose(w.g0, f0) == rm_sub(rm_identity(G, c0), compose(C.boundary(1), w.t))))
    throw CheckFailedError("align_deg0: g0*f0 + d1*t = id failed");
  if (!(rm_add(compose(D.boundary(2), w.u), compose(f1, w.t)) == compose(w.s, f0)))
    throw CheckFailedError("align_deg0: d2*u + f1*t = s*f0 failed");

  const RingMat d2p = block_matrix(
      {{C.boundary(2), rm_neg(w.t)}, {RingMat(G, d0, c2), f0}});
  const RingMat d1p = hstack({compose(f0, C.boundary(1)), compose(D.boundary(1), w.s)});
  const BasedComplex Cp =
      make_complex(G, {d0, c1 + d0, c2 + c0}, {{1, d1p}, {2, d2p}});
  validate_complex(Cp);

  AlignedPair out;
  out.C_prime = Cp;
  out.D_prime = D;
  out.f_prime = make_chain_map(
      Cp, D,
      {{0, rm_identity(G, d0)}, {1, hstack({f1, w.s})}, {2, hstack({f2, w.u})}});
  verify_chain_map(out.f_prime);
  out.into_C = make_chain_map(
      C, Cp,
      {{0, f0},
       {1, vstack({rm_identity(G, c1), RingMat(G, d0, c1)})},
       {2, vstack({rm_identity(G, c2), RingMat(G, c0, c2)})}});
  verify_chain_map(out.into_C);
  out.into_D = identity_map(D);
  const ChainMap composite = compose_maps(out.f_prime, out.into_C);
  if (!(composite == f))
    throw CheckFailedError("align_deg0: f'*(C -> C') = f failed");

  // The witness script: stabilize, write the blocks in, reorder, destabilize.
  SimpleWitness& mv = out.witness_C;
  for (long a = 0; a < c0; ++a) mv.moves.push_back(stab_move(1));
  for (long b = 0; b < d0; ++b) mv.moves.push_back(stab_move(0));
  // Degree-1 order: [C1 | A1 | B1], degree 0: [C0 | B0], degree 2: [C2 | A].
  const auto A1 = [&](long a) { return c1 + a; };
  const auto B1 = [&](long b) { return c1 + c0 + b; };
  const auto B0 = [&](long b) { return c0 + b; };
  const RingMat d1C = C.boundary(1);
  for (long a = 0; a < c0; ++a)
    for (long r = 0; r < c1; ++r)
      if (!w.t.at(r, a).is_zero())
        mv.moves.push_back(elem_move(1, A1(a), r, w.t.at(r, a)));
  for (long a = 0; a < c0; ++a)
    for (long b = 0; b < d0; ++b)
      if (!f0.at(b, a).is_zero())
        mv.moves.push_back(elem_move(1, A1(a), B1(b), ring_neg(f0.at(b, a))));
  for (long b = 0; b < d0; ++b)
    for (long a = 0; a < c0; ++a)
      if (!w.g0.at(a, b).is_zero())
        mv.moves.push_back(elem_move(0, B0(b), a, w.g0.at(a, b)));
  for (long r = 0; r < c1; ++r)
    for (long a = 0; a < c0; ++a)
      if (!d1C.at(a, r).is_zero())
        mv.moves.push_back(elem_move(1, r, A1(a), ring_neg(d1C.at(a, r))));
  for (long b = 0; b < d0; ++b)
    for (long a = 0; a < c0; ++a)
      if (!w.g0.at(a, b).is_zero())
        mv.moves.push_back(elem_move(1, B1(b), A1(a), w.g0.at(a, b)));
  for (long b = 0; b < d0; ++b)
    for (long a = 0; a < c0; ++a)
      if (!f0.at(b, a).is_zero())
        mv.moves.push_back(elem_move(0, a, B0(b), ring_neg(f0.at(b, a))));
  {
    std::vector<long> p0;
    for (long b = 0; b < d0; ++b) p0.push_back(c0 + b);
    for (long a = 0; a < c0; ++a) p0.push_back(a);
    mv.moves.push_back(perm_move(0, p0));
    std::vector<long> p1;
    for (long r = 0; r < c1; ++r) p1.push_back(r);
    for (long b = 0; b < d0; ++b) p1.push_back(c1 + c0 + b);
    for (long a = 0; a < c0; ++a) p1.push_back(c1 + a);
    mv.moves.push_back(perm_move(1, p1));
  }
  for (long a = 0; a < c0; ++a) mv.moves.push_back(destab_move(0));

  const ReplayEquivalence rep = replay_with_equivalence(C, mv);
  if (!(rep.result == Cp))
    throw CheckFailedError("align_deg0: witness replay does not land on C'");

  out.square_homotopy = zero_homotopy(composite);  // f'*into_C = into_D*f exactly
  verify_homotopy(out.square_homotopy);
  return out;
}

AlignedPair align_deg1(const ChainMap& f,
                       const std::optional<AlignmentWitness>& supplied) {
  const BasedComplex& C = f.source;
  const BasedComplex& D = f.target;
  require_2dim(C, "align_deg1");
  verify_chain_map(f);
  const GroupSpec& G = C.ring;
  const long n0 = C.rank(0);
  if (D.rank(0) != n0 || !(f.component(0) == rm_identity(G, n0)))
    throw InvalidInputError(
        "align_deg1: degree-0 component must be the identity (align degree 0 "
        "first)");
  const long c1 = C.rank(1), c2 = C.rank(2);
  const long e1 = D.rank(1), e2 = D.rank(2);

  AlignmentWitness w;
  if (supplied) {
    w = *supplied;
    require_shape(w.g, c1, e1, G, "g");
    require_shape(w.s, e2, e1, G, "s");
  } else {
    if (G.kind != GroupKind::Trivial)
      throw UndecidedError(
          "align_deg1: witnesses (g, s) must be supplied over a nontrivial group");
    if (!cone_trivial_through_deg1(f))
      throw CheckFailedError(
          "align_deg1: H0(f) must be an isomorphism and H1(f) an epimorphism");
    std::optional<AlignmentWitness> solved = solve_deg1_witness(f);
    if (!solved)
      throw CheckFailedError(
          "align_deg1: joint witness system for d1C*g = d1D, d2D*s = id - f1*g is "
          "unsolvable");
    w = *solved;
  }

  const RingMat f1 = f.component(1);
  const RingMat f2 = f.component(2);
  if (!(compose(C.boundary(1), w.g) == D.boundary(1)))
    throw CheckFailedError("align_deg1: d1C*g = d1D failed");
  if (!(compose(D.boundary(2), w.s) ==
        rm_sub(rm_identity(G, e1), compose(f1, w.g))))
    throw CheckFailedError("align_deg1: d2D*s = id - f1*g failed");

  const RingMat d2Cp =
      block_matrix({{C.boundary(2), rm_neg(w.g)}, {RingMat(G, e1, c2), rm_identity(G, e1)}});
  const RingMat d1Cp = hstack({C.boundary(1), D.boundary(1)});
  const BasedComplex Cp =
      make_complex(G, {n0, c1 + e1, c2 + e1}, {{1, d1Cp}, {2, d2Cp}});
  validate_complex(Cp);
  const RingMat d2Dp = block_matrix(
      {{rm_identity(G, c1), RingMat(G, c1, e2)}, {rm_neg(f1), D.boundary(2)}});
  // Cells of D above degree 2 ride along unchanged; their boundaries land in
  // the old block, which the degree-2 reorder moves behind the new cells.
  std::vector<long> dp_ranks{n0, c1 + e1, c1 + e2};
  std::map<int, RingMat> dp_bnd{{1, d1Cp}, {2, d2Dp}};
  for (int k = 3; k <= D.top_degree(); ++k) {
    dp_ranks.push_back(D.rank(k));
    dp_bnd[k] = (k == 3) ? vstack({RingMat(G, c1, D.rank(3)), D.boundary(3)})
                         : D.boundary(k);
  }
  const BasedComplex Dp = make_complex(G, dp_ranks, dp_bnd);
  validate_complex(Dp);

  AlignedPair out;
  out.C_prime = Cp;
  out.D_prime = Dp;
  out.f_prime = make_chain_map(
      Cp, Dp,
      {{0, rm_identity(G, n0)},
       {1, rm_identity(G, c1 + e1)},
       {2, block_matrix({{C.boundary(2), rm_neg(w.g)}, {f2, w.s}})}});
  verify_chain_map(out.f_prime);
  out.into_C = make_chain_map(
      C, Cp,
      {{0, rm_identity(G, n0)},
       {1, vstack({rm_identity(G, c1), RingMat(G, e1, c1)})},
       {2, vstack({rm_identity(G, c2), RingMat(G, e1, c2)})}});
  verify_chain_map(out.into_C);
  std::map<int, RingMat> intoD{
      {0, rm_identity(G, n0)},
      {1, vstack({RingMat(G, c1, e1), rm_identity(G, e1)})},
      {2, vstack({RingMat(G, c1, e2), rm_identity(G, e2)})}};
  for (int k = 3; k <= D.top_degree(); ++k) intoD[k] = rm_identity(G, D.rank(k));
  out.into_D = make_chain_map(D, Dp, intoD);
  verify_chain_map(out.into_D);

  // C-side witness: stabilize e1 pairs and write the g block in.
  for (long b = 0; b < e1; ++b) out.witness_C.moves.push_back(stab_move(1));
  for (long b = 0; b < e1; ++b)
    for (long r = 0; r < c1; ++r)
      if (!w.g.at(r, b).is_zero())
        out.witness_C.moves.push_back(elem_move(1, c1 + b, r, w.g.at(r, b)));
  const ReplayEquivalence repC = replay_with_equivalence(C, out.witness_C);
  if (!(repC.result == Cp))
    throw CheckFailedError("align_deg1: C-side witness replay does not land on C'");

  // D-side witness: stabilize c1 pairs, write the f1 block, reorder.
  for (long r = 0; r < c1; ++r) out.witness_D.moves.push_back(stab_move(1));
  for (long r = 0; r < c1; ++r)
    for (long b = 0; b < e1; ++b)
      if (!f1.at(b, r).is_zero())
        out.witness_D.moves.push_back(elem_move(1, e1 + r, b, f1.at(b, r)));
  {
    std::vector<long> p1;
    for (long r = 0; r < c1; ++r) p1.push_back(e1 + r);
    for (long b = 0; b < e1; ++b) p1.push_back(b);
    out.witness_D.moves.push_back(perm_move(1, p1));
    std::vector<long> p2;
    for (long r = 0; r < c1; ++r) p2.push_back(e2 + r);
    for (long a = 0; a < e2; ++a) p2.push_back(a);
    out.witness_D.moves.push_back(perm_move(2, p2));
  }
  const ReplayEquivalence repD = replay_with_equivalence(D, out.witness_D);
  if (!(repD.result == Dp))
    throw CheckFailedError("align_deg1: D-side witness replay does not land on D'");

  const ChainMap lhs = compose_maps(out.f_prime, out.into_C);
  const ChainMap rhs = compose_maps(out.into_D, f);
  out.square_homotopy = make_homotopy(
      lhs, rhs,
      {{1, vstack({rm_neg(rm_identity(G, c1)), RingMat(G, e2, c1)})}});
  verify_homotopy(out.square_homotopy);
  return out;
}

SplitResult split_summand(const ChainMap& f) {
  const BasedComplex& D = f.source;
  const BasedComplex& C = f.target;
  require_2dim(D, "split_summand");
  verify_chain_map(f);
  const GroupSpec& G = C.ring;
  if (D.rank(0) != C.rank(0) || D.rank(1) != C.rank(1))
    throw InvalidInputError("split_summand: degree-0/1 ranks must agree");
  if (!(f.component(0) == rm_identity(G, C.rank(0))) ||
      !(f.component(1) == rm_identity(G, C.rank(1))))
    throw InvalidInputError(
        "split_summand: degree-0/1 components must be the identity");
  const RingMat f2 = f.component(2);
  const long c2 = C.rank(2);
  const long e2 = D.rank(2);

  SplitResult out;
  for (long a = 0; a < e2; ++a) out.witness.moves.push_back(stab_move(2));
  for (long a = 0; a < e2; ++a)
    for (long r = 0; r < c2; ++r)
      if (!f2.at(r, a).is_zero())
        out.witness.moves.push_back(elem_move(2, c2 + a, r, f2.at(r, a)));

  const long c3 = C.rank(3);
  const RingMat d3 = block_matrix(
      {{C.boundary(3), rm_neg(f2)}, {RingMat(G, e2, c3), rm_identity(G, e2)}});
  const RingMat d2 = hstack({C.boundary(2), D.boundary(2)});
  std::vector<long> ranks{C.rank(0), C.rank(1), c2 + e2, c3 + e2};
  std::map<int, RingMat> bnd{{1, C.boundary(1)}, {2, d2}, {3, d3}};
  for (int k = 4; k <= C.top_degree(); ++k) {
    ranks.push_back(C.rank(k));
    bnd[k] = (k == 4) ? vstack({C.boundary(4), RingMat(G, e2, C.rank(4))})
                      : C.boundary(k);
  }
  out.complex = make_complex(G, ranks, bnd);
  validate_complex(out.complex);
  out.map = make_chain_map(
      D, out.complex,
      {{0, rm_identity(G, C.rank(0))},
       {1, rm_identity(G, C.rank(1))},
       {2, vstack({RingMat(G, c2, e2), rm_identity(G, e2)})}});
  verify_chain_map(out.map);

  const ReplayEquivalence rep = replay_with_equivalence(C, out.witness);
  if (!(rep.result == out.complex))
    throw CheckFailedError("split_summand: witness replay does not land on C''");

  std::map<int, RingMat> incl;
  for (int k = 0; k <= C.top_degree(); ++k) {
    const long extra = out.complex.rank(k) - C.rank(k);
    incl[k] = vstack({rm_identity(G, C.rank(k)), RingMat(G, extra, C.rank(k))});
  }
  out.into = make_chain_map(C, out.complex, incl);
  verify_chain_map(out.into);
  const ChainMap fhat = compose_maps(out.into, f);
  RingMat h2(G, out.complex.rank(3), e2);
  for (long a = 0; a < e2; ++a) h2.at(c3 + a, a) = ring_one(G);
  out.homotopy = make_homotopy(fhat, out.map, {{2, h2}});
  verify_homotopy(out.homotopy);
  return out;
}

}  // namespace spines
