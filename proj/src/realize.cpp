#include "spines/realize.hpp"

#include <string>
#include <utility>

#include "spines/errors.hpp"
#include "spines/homology.hpp"
#include "spines/int_matrix.hpp"
#include "spines/ring_matrix.hpp"

namespace spines {

namespace {

// Rethrows pipeline failures with the stage name attached so a caller can
// tell which leg rejected the input without losing the original error kind.
template <typename Body>
auto stage(const char* name, Body&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const UndecidedError& e) {
    throw UndecidedError(std::string("realize ") + name + ": " + e.what());
  } catch (const CheckFailedError& e) {
    throw CheckFailedError(std::string("realize ") + name + ": " + e.what());
  } catch (const InvalidInputError& e) {
    throw InvalidInputError(std::string("realize ") + name + ": " + e.what());
  }
}

// Degreewise integer inverse of the duality map.  Each component must be a
// square unimodular matrix; a Poincare complex whose pairing fails this is
// rejected up front rather than deep inside the glue.
ChainMap invert_degreewise(const ChainMap& delta, int dim) {
  const GroupSpec g = delta.source.ring;
  std::map<int, RingMat> comps;
  for (int k = 0; k <= dim; ++k) {
    const long rows = delta.target.rank(k);
    const long cols = delta.source.rank(k);
    if (rows == 0 && cols == 0) continue;
    if (rows != cols)
      throw InvalidInputError(
          "realize: duality map component in degree " + std::to_string(k) +
          " is not square, so it has no degreewise inverse");
    IntMat inv;
    try {
      inv = inv_unimodular(to_int_matrix(delta.component(k)));
    } catch (const CheckFailedError&) {
      throw InvalidInputError(
          "realize: duality map component in degree " + std::to_string(k) +
          " is not invertible over the integers");
    }
    comps.emplace(k, from_int_matrix(g, inv));
  }
  ChainMap out = make_chain_map(delta.target, delta.source, comps);
  verify_chain_map(out);
  return out;
}

}  // namespace

DecompositionResult realize_decomposition(const BasedComplex& D,
                                          const PoincareComplex& target,
                                          const ChainMap& f) {
  const GroupSpec G = D.ring;
  if (G.kind != GroupKind::Trivial)
    throw InvalidInputError("realize: only the trivial group is supported");
  validate_complex(D);

  // Revalidate the ambient datum instead of trusting the caller's struct.
  const PoincareComplex amb =
      make_poincare_complex(target.chains, target.dim, target.duality_map);
  if (amb.dim != 4)
    throw InvalidInputError("realize: the ambient complex must be 4-dimensional");
  const BasedComplex& T = amb.chains;
  const ChainMap& delta = amb.duality_map;

  if (!(f.source == D) || !(f.target == T))
    throw InvalidInputError("realize: f must be a chain map D -> ambient");
  verify_chain_map(f);

  // The dual-side glue conjugates the inverse pairing by replay equivalences
  // and needs dual(delta) = delta for the result to close up exactly.
  if (!(dualize_map(delta, 4) == delta))
    throw InvalidInputError("realize: the duality map must equal its own dual");
  const ChainMap delta_inv = invert_degreewise(delta, 4);

  if (!is_homologically_2dim(D))
    throw CheckFailedError("realize: H_j(D) = 0 for j >= 3 and H^3(D) = 0 failed");
  {
    const HomologySummary hc = homology_Z(mapping_cone(f));
    if (!hc.group_trivial(0) || !hc.group_trivial(1))
      throw CheckFailedError(
          "realize: H0(f) must be an isomorphism and H1(f) an epimorphism");
  }

  DecompositionResult out;

  // 1. Reduce the source to two dimensions.
  const Reduce2Result red = stage("reduce", [&] { return reduce_to_dim2(D); });
  out.reduce_witness = red.witness;
  const ChainMap f1 = compose_maps(f, red.backward);

  // 2. Make the degree-0 component the identity.  When it already is, keep
  //    the reduced complex as-is so the output M stays literally the reduced
  //    source instead of a stabilized copy of it.
  ChainMap f2 = f1;
  ChainMap a0_into = identity_map(red.complex);
  SimpleWitness a0_witness;
  const bool skip0 = f1.component(0) == rm_identity(G, red.complex.rank(0));
  if (!skip0) {
    const AlignedPair a0 = stage("align0", [&] { return align_deg0(f1); });
    f2 = a0.f_prime;
    a0_into = a0.into_C;
    a0_witness = a0.witness_C;
  }

  // 3. Align degree 1 on both sides, then split the image off as a based
  //    summand of the rebuilt ambient complex.
  const AlignedPair a1 = stage("align1", [&] { return align_deg1(f2); });
  const SplitResult sp = stage("split", [&] { return split_summand(a1.f_prime); });

  out.M_chains = a1.C_prime;
  out.N_prime = sp.complex;
  out.M_to_N = sp.map;
  out.source_witness = witness_concat(a0_witness, a1.witness_C);
  out.target_witness = witness_concat(a1.witness_D, sp.witness);

  // 4. Replay the accumulated target-side moves; the replay equivalence is
  //    what carries the ambient pairing over to N'.
  const ReplayEquivalence repN = stage("replay", [&] {
    ReplayEquivalence rep = replay_with_equivalence(T, out.target_witness);
    if (!(rep.result == out.N_prime))
      throw CheckFailedError("target witness replay does not land on N'");
    return rep;
  });

  // 5. Naturality: M_to_N * D_to_M is homotopic to target_forward * f.
  const ChainMap r = compose_maps(a0_into, red.forward);
  out.D_to_M = compose_maps(a1.into_C, r);
  out.target_forward = compose_maps(sp.into, a1.into_D);
  out.factor_homotopy = stage("factor", [&] {
    const ChainHomotopy legA = homotopy_right(homotopy_flip(sp.homotopy),
                                              compose_maps(a1.into_C, r));
    const ChainHomotopy legB =
        homotopy_right(homotopy_left(sp.into, a1.square_homotopy), r);
    const ChainHomotopy legC =
        homotopy_left(compose_maps(out.target_forward, f), red.on_start);
    ChainHomotopy h = homotopy_concat(homotopy_concat(legA, legB), legC);
    verify_homotopy(h);
    return h;
  });

  // 6. Duality glue.  Conjugate the ambient pairing by the replay backward
  //    map to get a pairing on N', send the dual of N' back down with the
  //    inverse pairing conjugated the other way, and restrict to the dual of
  //    the cone on M -> N' to get the complementary piece W.
  ChainMap L_full = identity_map(T);
  ChainHomotopy H_full;
  stage("duality", [&] {
    const ChainMap V = repN.forward;
    const ChainMap Bk = repN.backward;
    const ChainMap delta_p =
        compose_maps(dualize_map(Bk, 4), compose_maps(delta, Bk));
    out.datum.poincare = make_poincare_complex(out.N_prime, 4, delta_p);

    const ChainMap theta =
        compose_maps(V, compose_maps(delta_inv, dualize_map(V, 4)));
    const ChainMap iota_N = cone_inclusion(out.M_to_N);
    const ChainMap pi_W = dualize_map(iota_N, 4);
    out.W_full = pi_W.source;
    out.datum.K_map = out.M_to_N;
    L_full = compose_maps(theta, pi_W);

    // Nullhomotopy of dual(L)*delta'*K on the full dual: transport the
    // replay homotopies through the pairing, push into the cone, and close
    // with the canonical contraction of N' inside cone(M -> N').
    const ChainHomotopy Ha = dualize_homotopy(repN.on_start, 4);
    const ChainHomotopy H2 =
        homotopy_left(compose_maps(V, delta_inv),
                      homotopy_right(Ha, compose_maps(delta, Bk)));
    const ChainHomotopy HK = homotopy_concat(H2, repN.on_result);
    const ChainHomotopy Hb =
        homotopy_left(iota_N, homotopy_right(HK, out.M_to_N));
    std::map<int, RingMat> can;
    for (int k = 0; k <= out.M_chains.top_degree(); ++k) {
      const long mk = out.M_chains.rank(k);
      if (mk == 0) continue;
      can.emplace(k, vstack({rm_identity(G, mk),
                             RingMat(G, out.N_prime.rank(k + 1), mk)}));
    }
    const ChainHomotopy h_can = make_homotopy(
        Hb.to_map, zero_map(out.M_chains, iota_N.target), can);
    H_full = homotopy_concat(Hb, h_can);
    return 0;
  });

  // 7. Reduce W to two dimensions.  The datum wants the reduced side, so the
  //    L map and the nullhomotopy are carried across the reduction.
  const Reduce2Result wred =
      stage("reduce dual", [&] { return reduce_to_dim2(out.W_full); });
  out.W_chains = wred.complex;
  out.W_reindex = wred.forward;
  out.dual_witness = wred.witness;

  stage("duality", [&] {
    out.datum.L_map = compose_maps(L_full, wred.backward);
    out.datum.nullhomotopy =
        homotopy_left(dualize_map(wred.backward, 4), H_full);
    verify_simple_algebraic_duality(out.datum, out.W_chains);
    return 0;
  });

  return out;
}

}  // namespace spines
