#include "spines/homology.hpp"

#include <algorithm>

#include "spines/errors.hpp"

namespace spines {

static void require_trivial_ring(const BasedComplex& C, const char* who) {
  if (!(C.ring == trivial_group()))
    throw InvalidInputError(std::string(who) +
                            " needs a complex over the trivial group; augment first");
}

HomologySummary homology_Z(const BasedComplex& C) {
  require_trivial_ring(C, "homology_Z");
  const int top = C.top_degree();
  std::vector<SNFResult> s(static_cast<size_t>(top) + 2);
  for (int k = 1; k <= top; ++k)
    s[static_cast<size_t>(k)] = snf(to_int_matrix(C.boundary(k)));
  HomologySummary out;
  for (int k = 0; k <= top; ++k) {
    const long rk = k >= 1 ? static_cast<long>(s[static_cast<size_t>(k)].divisors.size()) : 0;
    const long rk1 =
        k + 1 <= top ? static_cast<long>(s[static_cast<size_t>(k) + 1].divisors.size()) : 0;
    const long b = C.rank(k) - rk - rk1;
    if (b < 0) throw CheckFailedError("negative betti number; complex is not a complex");
    std::vector<Int> tors;
    if (k + 1 <= top)
      for (const Int& d : s[static_cast<size_t>(k) + 1].divisors)
        if (d > 1) tors.push_back(d);
    out.betti.push_back(b);
    out.torsion.push_back(std::move(tors));
  }
  return out;
}

std::pair<long, std::vector<Int>> cohomology_Z(const BasedComplex& C, int degree) {
  require_trivial_ring(C, "cohomology_Z");
  if (degree < 0) return {0, {}};
  if (degree > C.top_degree()) return {0, {}};
  const long rin = degree >= 1
                       ? static_cast<long>(snf(to_int_matrix(C.boundary(degree))).divisors.size())
                       : 0;
  SNFResult sout = snf(to_int_matrix(C.boundary(degree + 1)));
  const long rout = static_cast<long>(sout.divisors.size());
  const long b = C.rank(degree) - rin - rout;
  std::vector<Int> tors;
  if (degree >= 1)
    for (const Int& d : snf(to_int_matrix(C.boundary(degree))).divisors)
      if (d > 1) tors.push_back(d);
  return {b, tors};
}

bool is_homologically_2dim(const BasedComplex& C) {
  if (!(C.ring == trivial_group()))
    throw UndecidedError(
        "homological 2-dimensionality is only decided over the trivial group");
  HomologySummary h = homology_Z(C);
  for (int j = 3; j <= h.top_degree(); ++j)
    if (!h.group_trivial(j)) return false;
  auto [b3, t3] = cohomology_Z(C, 3);
  return b3 == 0 && t3.empty();
}

bool is_Z_homology_equivalence(const ChainMap& f) {
  ChainMap g = f.source.ring == trivial_group() ? f : augment_chain_map(f);
  verify_chain_map(g);
  HomologySummary h = homology_Z(mapping_cone(g));
  for (int k = 0; k <= h.top_degree(); ++k)
    if (!h.group_trivial(k)) return false;
  return true;
}

// Witness moves performing the Smith reduction of the top boundary d_T.
// Column operations live in degree T, row operations are basis changes of
// degree T-1.  The script mirrors snf() above acting on an IntMat scratch
// copy, so the resulting matrix is diag(divisors).
static SimpleWitness smith_moves_for_top(const BasedComplex& C, int T) {
  const GroupSpec g = C.ring;
  IntMat S = to_int_matrix(C.boundary(T));
  const long rows = S.rows, cols = S.cols;
  SimpleWitness w;

  auto transposition = [](long n, long i, long j) {
    std::vector<long> p(static_cast<size_t>(n));
    for (long t = 0; t < n; ++t) p[static_cast<size_t>(t)] = t;
    std::swap(p[static_cast<size_t>(i)], p[static_cast<size_t>(j)]);
    return p;
  };
  auto swap_rows = [&](long i, long j) {
    if (i == j) return;
    for (long c = 0; c < cols; ++c) std::swap(S.at(i, c), S.at(j, c));
    w.moves.push_back(perm_move(T - 1, transposition(rows, i, j)));
  };
  auto swap_cols = [&](long i, long j) {
    if (i == j) return;
    for (long r = 0; r < rows; ++r) std::swap(S.at(r, i), S.at(r, j));
    w.moves.push_back(perm_move(T, transposition(cols, i, j)));
  };
  auto addrow = [&](long dst, long src, const Int& c) {
    for (long k = 0; k < cols; ++k) S.at(dst, k) += c * S.at(src, k);
    w.moves.push_back(elem_row_move(T, dst, src, ring_from_int(g, c)));
  };
  auto addcol = [&](long dst, long src, const Int& c) {
    for (long r = 0; r < rows; ++r) S.at(r, dst) += c * S.at(r, src);
    w.moves.push_back(elem_move(T, dst, src, ring_from_int(g, c)));
  };
  auto negrow = [&](long i) {
    for (long c = 0; c < cols; ++c) S.at(i, c) = -S.at(i, c);
    w.moves.push_back(unit_move(T - 1, i, ring_from_int(g, -1)));
  };

  long t = 0;
  while (t < std::min(rows, cols)) {
    long pi = -1, pj = -1;
    for (long i = t; i < rows; ++i)
      for (long j = t; j < cols; ++j)
        if (S.at(i, j) != 0 && (pi < 0 || int_abs(S.at(i, j)) < int_abs(S.at(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (long i = t + 1; i < rows; ++i)
        if (S.at(i, t) != 0) {
          Int q = floor_div(S.at(i, t), S.at(t, t));
          addrow(i, t, -q);
          if (S.at(i, t) != 0) {
            swap_rows(t, i);
            dirty = true;
          }
        }
      for (long j = t + 1; j < cols; ++j)
        if (S.at(t, j) != 0) {
          Int q = floor_div(S.at(t, j), S.at(t, t));
          addcol(j, t, -q);
          if (S.at(t, j) != 0) {
            swap_cols(t, j);
            dirty = true;
          }
        }
    }
    if (S.at(t, t) < 0) negrow(t);
    ++t;
  }
  return w;
}

Reduce2Result reduce_to_dim2(const BasedComplex& C) {
  if (!(C.ring == trivial_group()))
    throw UndecidedError("reduce_to_dim2 is only decided over the trivial group");
  if (!is_homologically_2dim(C))
    throw CheckFailedError("homology is not concentrated in degrees 0..2");

  BasedComplex cur = C;
  SimpleWitness total;
  auto push = [&](const SimpleWitness& part) {
    cur = replay(cur, part);
    total = witness_concat(total, part);
  };

  for (int T = cur.top_degree(); T >= 3; T = cur.top_degree()) {
    push(smith_moves_for_top(cur, T));
    IntMat S = to_int_matrix(cur.boundary(T));
    const long m = S.rows, n = S.cols;
    long r = 0;
    while (r < std::min(m, n) && S.at(r, r) != 0) ++r;
    if (r < n)
      throw CheckFailedError("top boundary is not injective; cannot remove degree " +
                             std::to_string(T));
    for (long i = 0; i < r; ++i)
      if (S.at(i, i) != 1)
        throw CheckFailedError("top boundary has a nonunit divisor; cannot remove degree " +
                               std::to_string(T));
    // Cycle the pivot rows to the tail so the pairs cancel last-to-last.
    if (r > 0 && m != r) {
      std::vector<long> p;
      for (long i = r; i < m; ++i) p.push_back(i);
      for (long i = 0; i < r; ++i) p.push_back(i);
      push(SimpleWitness{{perm_move(T - 1, p)}});
    }
    SimpleWitness destabs;
    for (long i = 0; i < r; ++i) destabs.moves.push_back(destab_move(T - 1));
    push(destabs);
    if (cur.top_degree() >= T)
      throw CheckFailedError("reduction failed to lower the top degree");
  }

  ReplayEquivalence eq = replay_with_equivalence(C, total);
  if (!(eq.result == cur)) throw CheckFailedError("reduction replay mismatch");
  verify_chain_map(eq.forward);
  verify_chain_map(eq.backward);
  verify_homotopy(eq.on_result);
  verify_homotopy(eq.on_start);

  Reduce2Result out;
  out.complex = eq.result;
  out.witness = total;
  out.forward = eq.forward;
  out.backward = eq.backward;
  out.on_result = eq.on_result;
  out.on_start = eq.on_start;
  return out;
}

namespace {

// Row positions allowed to move at each diagonalization step: those not
// already used as the image of a piece one degree down.
struct MatchingState {
  std::vector<IntMat> d;           // current boundaries, index 1..top
  std::vector<std::vector<long>> target_row;  // per degree k: piece target rows of d_k
  std::vector<std::vector<Int>> divisors;     // per degree k: piece divisors of d_k
};

IntMat embed_rows(const IntMat& small, const std::vector<long>& rows, long n) {
  IntMat out = int_identity(n);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows.size(); ++j)
      out.at(rows[i], rows[j]) = small.at(static_cast<long>(i), static_cast<long>(j));
  return out;
}

}  // namespace

StandardFormResult standard_form_Z(const BasedComplex& C) {
  require_trivial_ring(C, "standard_form_Z");
  const GroupSpec g = C.ring;
  const int top = C.top_degree();

  std::vector<IntMat> d(static_cast<size_t>(top) + 2);
  for (int k = 1; k <= top; ++k) d[static_cast<size_t>(k)] = to_int_matrix(C.boundary(k));
  std::vector<IntMat> phi(static_cast<size_t>(top) + 1), phiinv(static_cast<size_t>(top) + 1);
  for (int k = 0; k <= top; ++k) phi[static_cast<size_t>(k)] = phiinv[static_cast<size_t>(k)] = int_identity(C.rank(k));

  // Per degree: which rows of d_k are already matched as targets of d_{k}?
  std::vector<std::vector<long>> target_rows(static_cast<size_t>(top) + 2);
  std::vector<std::vector<Int>> divs(static_cast<size_t>(top) + 2);

  std::vector<bool> used_prev;  // rows of C_{k-1} already targets of d_{k-1} sources
  std::vector<bool> source_prev(static_cast<size_t>(C.rank(0)), false);

  for (int k = 1; k <= top; ++k) {
    const long m = C.rank(k - 1), n = C.rank(k);
    std::vector<long> rows_free;
    for (long r = 0; r < m; ++r)
      if (!source_prev[static_cast<size_t>(r)]) rows_free.push_back(r);
    IntMat B(static_cast<long>(rows_free.size()), n);
    for (size_t i = 0; i < rows_free.size(); ++i)
      for (long c = 0; c < n; ++c) B.at(static_cast<long>(i), c) = d[static_cast<size_t>(k)].at(rows_free[i], c);
    // Rows outside rows_free must already be zero by dd = 0.
    for (long r = 0; r < m; ++r)
      if (source_prev[static_cast<size_t>(r)])
        for (long c = 0; c < n; ++c)
          if (d[static_cast<size_t>(k)].at(r, c) != 0)
            throw CheckFailedError("boundary hits a matched row; dd != 0?");

    SNFResult s = snf(B);
    IntMat U = embed_rows(s.U, rows_free, m);
    IntMat Uinv = embed_rows(inv_unimodular(s.U), rows_free, m);
    IntMat Vinv = inv_unimodular(s.V);

    d[static_cast<size_t>(k)] = int_mul(int_mul(U, d[static_cast<size_t>(k)]), s.V);
    if (k + 1 <= top) d[static_cast<size_t>(k) + 1] = int_mul(Vinv, d[static_cast<size_t>(k) + 1]);
    if (k - 1 >= 1) d[static_cast<size_t>(k) - 1] = int_mul(d[static_cast<size_t>(k) - 1], Uinv);
    phi[static_cast<size_t>(k) - 1] = int_mul(U, phi[static_cast<size_t>(k) - 1]);
    phiinv[static_cast<size_t>(k) - 1] = int_mul(phiinv[static_cast<size_t>(k) - 1], Uinv);
    phi[static_cast<size_t>(k)] = int_mul(Vinv, phi[static_cast<size_t>(k)]);
    phiinv[static_cast<size_t>(k)] = int_mul(phiinv[static_cast<size_t>(k)], s.V);

    const long r = static_cast<long>(s.divisors.size());
    target_rows[static_cast<size_t>(k)].assign(rows_free.begin(), rows_free.begin() + r);
    divs[static_cast<size_t>(k)] = s.divisors;
    source_prev.assign(static_cast<size_t>(n), false);
    for (long c = 0; c < r; ++c) source_prev[static_cast<size_t>(c)] = true;
  }

  // Basis classification per degree: (piece kind, divisor, position).
  struct Slot {
    int cls;  // 0 free, 1 source of piece at this degree, 2 target of piece one up
    Int div;
    long pos;  // original basis index in the diagonalized complex
  };
  std::vector<std::vector<Slot>> slots(static_cast<size_t>(top) + 1);
  for (int k = 0; k <= top; ++k) {
    const long n = C.rank(k);
    std::vector<int> cls(static_cast<size_t>(n), 0);
    std::vector<Int> dv(static_cast<size_t>(n), 0);
    if (k >= 1)
      for (size_t idx = 0; idx < divs[static_cast<size_t>(k)].size(); ++idx) {
        cls[idx] = 1;
        dv[idx] = divs[static_cast<size_t>(k)][idx];
      }
    if (k + 1 <= top)
      for (size_t idx = 0; idx < divs[static_cast<size_t>(k) + 1].size(); ++idx) {
        const long row = target_rows[static_cast<size_t>(k) + 1][idx];
        if (cls[static_cast<size_t>(row)] != 0)
          throw CheckFailedError("basis vector doubly matched; dd != 0?");
        cls[static_cast<size_t>(row)] = 2;
        dv[static_cast<size_t>(row)] = divs[static_cast<size_t>(k) + 1][idx];
      }
    for (long i = 0; i < n; ++i)
      slots[static_cast<size_t>(k)].push_back({cls[static_cast<size_t>(i)], dv[static_cast<size_t>(i)], i});
  }

  // Canonical order: frees, then sources ascending by divisor, then targets
  // ascending by divisor; divisor-1 pieces are dropped from the form.
  std::vector<std::vector<long>> keep_src(static_cast<size_t>(top) + 1),
      keep_tgt(static_cast<size_t>(top) + 1), keep_free(static_cast<size_t>(top) + 1);
  for (int k = 0; k <= top; ++k) {
    std::vector<std::pair<Int, long>> srcs, tgts;
    for (const Slot& s : slots[static_cast<size_t>(k)]) {
      if (s.cls == 0) keep_free[static_cast<size_t>(k)].push_back(s.pos);
      else if (s.cls == 1 && s.div > 1) srcs.emplace_back(s.div, s.pos);
      else if (s.cls == 2 && s.div > 1) tgts.emplace_back(s.div, s.pos);
    }
    std::stable_sort(srcs.begin(), srcs.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::stable_sort(tgts.begin(), tgts.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [dv, pos] : srcs) keep_src[static_cast<size_t>(k)].push_back(pos);
    for (auto& [dv, pos] : tgts) keep_tgt[static_cast<size_t>(k)].push_back(pos);
  }

  // The pairing requires matching orders of sources at degree k and targets
  // at degree k-1, so rebuild target order from the source order.
  for (int k = 1; k <= top; ++k) {
    std::vector<long> tg;
    std::vector<std::pair<Int, long>> srcs;
    for (size_t idx = 0; idx < divs[static_cast<size_t>(k)].size(); ++idx)
      if (divs[static_cast<size_t>(k)][idx] > 1)
        srcs.emplace_back(divs[static_cast<size_t>(k)][idx], static_cast<long>(idx));
    std::stable_sort(srcs.begin(), srcs.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [dv, idx] : srcs) tg.push_back(target_rows[static_cast<size_t>(k)][static_cast<size_t>(idx)]);
    keep_tgt[static_cast<size_t>(k) - 1] = tg;
  }

  std::vector<long> form_ranks;
  std::map<int, RingMat> form_diffs;
  std::vector<std::vector<long>> order(static_cast<size_t>(top) + 1);
  for (int k = 0; k <= top; ++k) {
    auto& ord = order[static_cast<size_t>(k)];
    ord.insert(ord.end(), keep_free[static_cast<size_t>(k)].begin(), keep_free[static_cast<size_t>(k)].end());
    ord.insert(ord.end(), keep_src[static_cast<size_t>(k)].begin(), keep_src[static_cast<size_t>(k)].end());
    ord.insert(ord.end(), keep_tgt[static_cast<size_t>(k)].begin(), keep_tgt[static_cast<size_t>(k)].end());
    form_ranks.push_back(static_cast<long>(ord.size()));
  }
  for (int k = 1; k <= top; ++k) {
    RingMat m(g, form_ranks[static_cast<size_t>(k) - 1], form_ranks[static_cast<size_t>(k)]);
    const long nfree = static_cast<long>(keep_free[static_cast<size_t>(k) - 1].size());
    const long nsrc = static_cast<long>(keep_src[static_cast<size_t>(k) - 1].size());
    const long cfree = static_cast<long>(keep_free[static_cast<size_t>(k)].size());
    std::vector<std::pair<Int, long>> srcs;
    for (size_t idx = 0; idx < divs[static_cast<size_t>(k)].size(); ++idx)
      if (divs[static_cast<size_t>(k)][idx] > 1)
        srcs.emplace_back(divs[static_cast<size_t>(k)][idx], static_cast<long>(idx));
    std::stable_sort(srcs.begin(), srcs.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t t = 0; t < srcs.size(); ++t)
      m.at(nfree + nsrc + static_cast<long>(t), cfree + static_cast<long>(t)) =
          ring_from_int(g, srcs[t].first);
    form_diffs.emplace(k, std::move(m));
  }
  BasedComplex form = make_complex(g, form_ranks, form_diffs);
  validate_complex(form);

  // Projection/inclusion between the diagonalized complex and the form.
  std::map<int, RingMat> pr, in;
  for (int k = 0; k <= top; ++k) {
    const auto& ord = order[static_cast<size_t>(k)];
    RingMat p(g, static_cast<long>(ord.size()), C.rank(k));
    RingMat i(g, C.rank(k), static_cast<long>(ord.size()));
    for (size_t s = 0; s < ord.size(); ++s) {
      p.at(static_cast<long>(s), ord[s]) = ring_one(g);
      i.at(ord[s], static_cast<long>(s)) = ring_one(g);
    }
    pr.emplace(k, std::move(p));
    in.emplace(k, std::move(i));
  }

  // Homotopy on the diagonalized complex cancelling the divisor-1 pieces.
  std::map<int, RingMat> hcomp;
  for (int k = 0; k + 1 <= top; ++k) {
    RingMat h(g, C.rank(k + 1), C.rank(k));
    for (size_t idx = 0; idx < divs[static_cast<size_t>(k) + 1].size(); ++idx)
      if (divs[static_cast<size_t>(k) + 1][idx] == 1)
        h.at(static_cast<long>(idx), target_rows[static_cast<size_t>(k) + 1][idx]) = ring_one(g);
    hcomp.emplace(k, std::move(h));
  }

  // Assemble the diagonalized complex and the chain iso from C.
  std::map<int, RingMat> diag_diffs;
  for (int k = 1; k <= top; ++k) diag_diffs.emplace(k, from_int_matrix(g, d[static_cast<size_t>(k)]));
  BasedComplex diag = make_complex(g, C.ranks, diag_diffs);
  validate_complex(diag);
  std::map<int, RingMat> phic, phiinvc;
  for (int k = 0; k <= top; ++k) {
    phic.emplace(k, from_int_matrix(g, phi[static_cast<size_t>(k)]));
    phiinvc.emplace(k, from_int_matrix(g, phiinv[static_cast<size_t>(k)]));
  }
  ChainMap phi_map = make_chain_map(C, diag, phic);
  ChainMap phiinv_map = make_chain_map(diag, C, phiinvc);
  verify_chain_map(phi_map);
  verify_chain_map(phiinv_map);

  ChainMap pr_map = make_chain_map(diag, form, pr);
  ChainMap in_map = make_chain_map(form, diag, in);
  verify_chain_map(pr_map);
  verify_chain_map(in_map);

  StandardFormResult out;
  out.form = form;
  out.to_form = compose_maps(pr_map, phi_map);
  out.from_form = compose_maps(phiinv_map, in_map);

  ChainHomotopy h_diag =
      make_homotopy(compose_maps(in_map, pr_map), identity_map(diag), hcomp);
  verify_homotopy(h_diag);
  // Conjugating by the iso: from*to = phiinv*(in*pr)*phi ~ phiinv*id*phi = id.
  std::map<int, RingMat> hs;
  for (int k = 0; k <= top; ++k)
    hs.emplace(k, compose(phiinv_map.component(k + 1),
                          compose(h_diag.component(k), phi_map.component(k))));
  out.on_source =
      make_homotopy(compose_maps(out.from_form, out.to_form), identity_map(C), hs);
  verify_homotopy(out.on_source);
  out.on_form = zero_homotopy(identity_map(form));
  {
    ChainMap round = compose_maps(out.to_form, out.from_form);
    if (!(round == identity_map(form)))
      throw CheckFailedError("standard form round trip is not the identity");
  }
  return out;
}

LiftResult lift_from_nullhomotopy(const ChainMap& f, const ChainMap& j,
                                  const ChainHomotopy& h) {
  if (!(f.target == j.target))
    throw InvalidInputError("lift_from_nullhomotopy: f and j must share their target");
  verify_chain_map(f);
  verify_chain_map(j);
  BasedComplex cone = mapping_cone(j);
  ChainMap incl = cone_inclusion(j);
  ChainMap into_cone = compose_maps(incl, f);
  ChainMap zero = zero_map(f.source, cone);
  verify_homotopy(h);

  int sign;
  if (h.from_map == zero && h.to_map == into_cone) sign = +1;
  else if (h.from_map == into_cone && h.to_map == zero) sign = -1;
  else
    throw CheckFailedError(
        "nullhomotopy endpoints are not 0 and (cone inclusion) after f");

  const BasedComplex& A = f.source;
  const BasedComplex& F = j.source;
  std::map<int, RingMat> liftc, homc;
  const int topA = A.top_degree();
  for (int k = 0; k <= topA; ++k) {
    RingMat hk = h.component(k);  // A_k -> F_k (+) B_{k+1}
    RingMat hF(A.ring, F.rank(k), A.rank(k));
    RingMat hB(A.ring, f.target.rank(k + 1), A.rank(k));
    for (long r = 0; r < hF.rows; ++r)
      for (long c = 0; c < hF.cols; ++c) hF.at(r, c) = hk.at(r, c);
    for (long r = 0; r < hB.rows; ++r)
      for (long c = 0; c < hB.cols; ++c) hB.at(r, c) = hk.at(F.rank(k) + r, c);
    liftc.emplace(k, sign > 0 ? rm_neg(hF) : hF);
    homc.emplace(k, sign > 0 ? hB : rm_neg(hB));
  }
  LiftResult out;
  out.lift = make_chain_map(A, F, liftc);
  verify_chain_map(out.lift);
  out.homotopy = make_homotopy(compose_maps(j, out.lift), f, homc);
  verify_homotopy(out.homotopy);
  return out;
}

}  // namespace spines
