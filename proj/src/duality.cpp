#include "spines/duality.hpp"

#include <string>
#include <utility>
#include <vector>

#include "spines/errors.hpp"

namespace spines {

namespace {

// Torsion lists compare up to isomorphism of the group they describe; the
// Smith form of the diagonal stack gives the canonical divisor chain.
std::vector<Int> canonical_divisors(const std::vector<Int>& torsion) {
  if (torsion.empty()) return {};
  long n = static_cast<long>(torsion.size());
  IntMat diag(n, n);
  for (long i = 0; i < n; ++i) diag.at(i, i) = torsion[static_cast<size_t>(i)];
  std::vector<Int> out;
  for (const Int& d : snf(diag).divisors)
    if (d > 1) out.push_back(d);
  return out;
}

void require_2complex_summary(const HomologySummary& h, const char* which) {
  for (long b : h.betti)
    if (b < 0) throw InvalidInputError(std::string(which) + ": negative betti number");
  for (const auto& degree : h.torsion)
    for (const Int& d : degree)
      if (d < 2) throw InvalidInputError(std::string(which) + ": torsion divisor below 2");
  if (h.betti_at(0) > 1 || !h.torsion_at(0).empty())
    throw InvalidInputError(std::string(which) + ": degree 0 must be Z or 0");
  if (!h.torsion_at(2).empty())
    throw InvalidInputError(std::string(which) +
                            ": a 2-complex has free homology in degree 2");
  for (int k = 3; k <= h.top_degree(); ++k)
    if (!h.group_trivial(k))
      throw InvalidInputError(std::string(which) + ": nonzero homology above degree 2");
}

RingMat top_rows(const RingMat& A, long n) {
  RingMat out(A.group, n, A.cols);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < A.cols; ++c) out.at(r, c) = A.at(r, c);
  return out;
}

}  // namespace

PoincareComplex make_poincare_complex(const BasedComplex& chains, int dim,
                                      const ChainMap& duality_map) {
  validate_complex(chains);
  if (dim < chains.top_degree())
    throw InvalidInputError("duality dimension is below the top degree of the complex");
  if (duality_map.source != chains || duality_map.target != dualize(chains, dim))
    throw InvalidInputError("duality map endpoints must be the complex and its dual");
  verify_chain_map(duality_map);
  if (!is_Z_homology_equivalence(duality_map))
    throw CheckFailedError("duality map is not a Z-homology equivalence");
  return PoincareComplex{chains, dim, duality_map};
}

PoincareComplex s4_model() {
  GroupSpec g;
  BasedComplex chains = make_complex(g, {1, 0, 0, 0, 1}, {});
  RingMat one = rm_identity(g, 1);
  ChainMap delta = make_chain_map(chains, dualize(chains, 4), {{0, one}, {4, one}});
  return make_poincare_complex(chains, 4, delta);
}

bool check_dual_homology_S4(const HomologySummary& hK, const HomologySummary& hL) {
  require_2complex_summary(hK, "first summary");
  require_2complex_summary(hL, "second summary");
  // By universal coefficients H^1 is the free part of H_1 and H^2 is the
  // free part of H_2 plus the torsion of H_1, so the comparison reads off
  // betti numbers crosswise and torsion in degree 1 on both sides.
  return hK.betti_at(1) == hL.betti_at(2) && hK.betti_at(2) == hL.betti_at(1) &&
         canonical_divisors(hK.torsion_at(1)) == canonical_divisors(hL.torsion_at(1));
}

Presentation2Complex canonical_dual_spine(const HomologySummary& hK) {
  require_2complex_summary(hK, "summary");
  std::vector<Int> divisors = canonical_divisors(hK.torsion_at(1));
  int gens = static_cast<int>(divisors.size()) + static_cast<int>(hK.betti_at(2));
  std::vector<FreeWord> relators;
  for (size_t i = 0; i < divisors.size(); ++i)
    relators.push_back(free_gen(static_cast<int>(i) + 1,
                                divisors[i].convert_to<long long>()));
  for (long i = 0; i < hK.betti_at(1); ++i) relators.push_back(FreeWord{});
  GroupSpec g;
  std::vector<GroupWord> pi_map(static_cast<size_t>(gens));
  return make_presentation(gens, std::move(relators), g, std::move(pi_map));
}

bool verify_simple_algebraic_duality(const DualityDatum& d, const BasedComplex& L_chains,
                                     const std::optional<SimpleWitness>& simple) {
  make_poincare_complex(d.poincare.chains, d.poincare.dim, d.poincare.duality_map);
  if (d.K_map.target != d.poincare.chains || d.L_map.target != d.poincare.chains)
    throw InvalidInputError("K and L maps must land in the middle complex");
  if (d.L_map.source != L_chains)
    throw InvalidInputError("L_chains does not match the source of the L map");
  verify_chain_map(d.K_map);
  verify_chain_map(d.L_map);

  const int n = d.poincare.dim;
  const BasedComplex& CK = d.K_map.source;
  const BasedComplex& N = d.poincare.chains;
  const GroupSpec& g = CK.ring;

  ChainMap phi =
      compose_maps(dualize_map(d.L_map, n), compose_maps(d.poincare.duality_map, d.K_map));
  int s1 = 0;
  {
    ChainMap zero = zero_map(CK, phi.target);
    if (d.nullhomotopy.from_map == zero && d.nullhomotopy.to_map == phi)
      s1 = 1;
    else if (d.nullhomotopy.from_map == phi && d.nullhomotopy.to_map == zero)
      s1 = -1;
    else
      throw CheckFailedError("nullhomotopy endpoints are not 0 and dual(L)*Delta*K");
  }
  verify_homotopy(d.nullhomotopy);

  // Push the nullhomotopy into the cone of dual(cone(L)) -> dual(N): the
  // block column (s1*H, -psi, 0) is a nullhomotopy of incl*psi there, which
  // lifts psi = Delta*K through the restriction map.
  ChainMap psi = compose_maps(d.poincare.duality_map, d.K_map);
  ChainMap restrict = dualize_map(cone_inclusion(d.L_map), n);
  BasedComplex F = restrict.source;
  ChainMap incl = cone_inclusion(restrict);
  std::map<int, RingMat> comps;
  for (int k = 0; k <= CK.top_degree(); ++k) {
    long cols = CK.rank(k);
    if (cols == 0) continue;
    RingMat top = d.nullhomotopy.component(k);
    if (s1 < 0) top = rm_neg(top);
    RingMat mid = rm_neg(psi.component(k));
    RingMat tail(g, N.rank(n - k - 1), cols);
    comps[k] = vstack({top, mid, tail});
  }
  ChainHomotopy into_cone =
      make_homotopy(zero_map(CK, incl.target), compose_maps(incl, psi), comps);
  verify_homotopy(into_cone);

  LiftResult lifted = lift_from_nullhomotopy(psi, restrict, into_cone);
  if (!is_Z_homology_equivalence(lifted.lift))
    throw CheckFailedError(
        "the lift of Delta*K through dual(cone(L)) is not a Z-homology equivalence");

  if (g.kind == GroupKind::Trivial) return true;
  if (simple) {
    if (replay(CK, *simple) != F)
      throw CheckFailedError("simple witness does not carry the K chains onto dual(cone(L))");
    return true;
  }
  throw UndecidedError("simpleness of the dual lift is undecided over a nontrivial group");
}

DualityDatum build_duality_datum_S4(const Presentation2Complex& K,
                                    const Presentation2Complex& L) {
  if (K.pi.kind != GroupKind::Trivial || L.pi.kind != GroupKind::Trivial)
    throw InvalidInputError("duality construction works over the trivial group only");
  BasedComplex CK = fox_boundary(K);
  BasedComplex CL = fox_boundary(L);
  if (!check_dual_homology_S4(homology_Z(CK), homology_Z(CL)))
    throw CheckFailedError("H1(K) = H^2(L) and H2(K) = H^1(L) failed");

  PoincareComplex N = s4_model();
  RingMat one = rm_identity(CK.ring, 1);
  ChainMap K_map = make_chain_map(CK, N.chains, {{0, one}});
  ChainMap L_map = make_chain_map(CL, N.chains, {{0, one}});
  verify_chain_map(K_map);
  verify_chain_map(L_map);

  // Both C_K and the shifted dual relative complex have the same homology,
  // hence the identical standard form; composing the two halves gives an
  // equivalence E : C_K -> dual(cone(L)) whose top block rows, against the
  // dual of L, are the wanted nullhomotopy.
  BasedComplex F = dualize(mapping_cone(L_map), 4);
  StandardFormResult sK = standard_form_Z(CK);
  StandardFormResult sF = standard_form_Z(F);
  if (sK.form != sF.form)
    throw CheckFailedError("standard forms of the K chains and dual(cone(L)) differ");
  ChainMap E = compose_maps(sF.from_form, sK.to_form);
  Int unit = to_int_matrix(E.component(0)).at(0, 0);
  if (unit == -1)
    E = map_neg(E);
  else if (unit != 1)
    throw CheckFailedError("degree-0 component of the standard-form match is not a unit");

  std::map<int, RingMat> comps;
  for (int k = 0; k <= CK.top_degree(); ++k) {
    long rows = CL.rank(3 - k);
    if (rows == 0 || CK.rank(k) == 0) continue;
    comps[k] = rm_neg(top_rows(E.component(k), rows));
  }
  ChainMap phi =
      compose_maps(dualize_map(L_map, 4), compose_maps(N.duality_map, K_map));
  ChainHomotopy H = make_homotopy(zero_map(CK, phi.target), phi, comps);
  verify_homotopy(H);

  DualityDatum datum{N, K_map, L_map, H};
  verify_simple_algebraic_duality(datum, CL);
  return datum;
}

}  // namespace spines
