#include "spines/witness.hpp"

#include <algorithm>
#include <numeric>

#include "spines/errors.hpp"

namespace spines {

WitnessMove stab_move(int degree) {
  WitnessMove m;
  m.kind = WitnessMoveKind::Stabilize;
  m.degree = degree;
  return m;
}

WitnessMove destab_move(int degree) {
  WitnessMove m;
  m.kind = WitnessMoveKind::Destabilize;
  m.degree = degree;
  return m;
}

WitnessMove elem_move(int degree, long i, long j, const RingElement& c) {
  WitnessMove m;
  m.kind = WitnessMoveKind::Elementary;
  m.degree = degree;
  m.i = i;
  m.j = j;
  m.scalar = c;
  return m;
}

WitnessMove elem_row_move(int degree, long i, long j, const RingElement& c) {
  WitnessMove m = elem_move(degree, i, j, c);
  m.row_flavor = true;
  return m;
}

WitnessMove unit_move(int degree, long i, const RingElement& u) {
  WitnessMove m;
  m.kind = WitnessMoveKind::UnitDiagonal;
  m.degree = degree;
  m.i = i;
  m.scalar = u;
  return m;
}

WitnessMove perm_move(int degree, std::vector<long> p) {
  WitnessMove m;
  m.kind = WitnessMoveKind::Permutation;
  m.degree = degree;
  m.perm = std::move(p);
  return m;
}

SimpleWitness witness_concat(const SimpleWitness& a, const SimpleWitness& b) {
  SimpleWitness w = a;
  w.moves.insert(w.moves.end(), b.moves.begin(), b.moves.end());
  return w;
}

SimpleWitness witness_inverse(const SimpleWitness& w) {
  SimpleWitness out;
  out.moves.reserve(w.moves.size());
  for (auto it = w.moves.rbegin(); it != w.moves.rend(); ++it) {
    WitnessMove m = *it;
    switch (m.kind) {
      case WitnessMoveKind::Stabilize:
        m.kind = WitnessMoveKind::Destabilize;
        break;
      case WitnessMoveKind::Destabilize:
        m.kind = WitnessMoveKind::Stabilize;
        break;
      case WitnessMoveKind::Elementary:
        m.scalar = ring_neg(m.scalar);
        break;
      case WitnessMoveKind::UnitDiagonal:
        m.scalar = trivial_unit_inverse(m.scalar);
        break;
      case WitnessMoveKind::Permutation: {
        std::vector<long> q(m.perm.size());
        for (size_t jj = 0; jj < m.perm.size(); ++jj) q[static_cast<size_t>(m.perm[jj])] = static_cast<long>(jj);
        m.perm = std::move(q);
        break;
      }
    }
    out.moves.push_back(std::move(m));
  }
  return out;
}

static std::map<int, RingMat> identity_components(const BasedComplex& C) {
  std::map<int, RingMat> out;
  for (int k = 0; k <= C.top_degree(); ++k) out.emplace(k, rm_identity(C.ring, C.rank(k)));
  return out;
}

static MoveResult apply_stab(const BasedComplex& C, int k) {
  const GroupSpec& g = C.ring;
  std::vector<long> ranks = C.ranks;
  while (static_cast<int>(ranks.size()) <= k + 1) ranks.push_back(0);
  ranks[static_cast<size_t>(k)] += 1;
  ranks[static_cast<size_t>(k) + 1] += 1;
  const int top = static_cast<int>(ranks.size()) - 1;

  std::map<int, RingMat> diffs;
  for (int j = 1; j <= top; ++j) {
    RingMat m = C.boundary(j);
    if (j == k) {
      m = hstack({m, RingMat(g, m.rows, 1)});
    } else if (j == k + 1) {
      m = hstack({m, RingMat(g, m.rows, 1)});
      m = vstack({m, RingMat(g, 1, m.cols)});
      m.at(m.rows - 1, m.cols - 1) = ring_one(g);
    } else if (j == k + 2) {
      m = vstack({m, RingMat(g, 1, m.cols)});
    }
    diffs.emplace(j, std::move(m));
  }
  MoveResult res;
  res.complex = make_complex(g, ranks, diffs);
  for (int j = 0; j <= res.complex.top_degree(); ++j) {
    const long ro = C.rank(j), rn = res.complex.rank(j);
    RingMat f(g, rn, ro), b(g, ro, rn);
    for (long i = 0; i < ro; ++i) {
      f.at(i, i) = ring_one(g);
      b.at(i, i) = ring_one(g);
    }
    res.fwd.emplace(j, std::move(f));
    res.bwd.emplace(j, std::move(b));
  }
  RingMat h(g, res.complex.rank(k + 1), res.complex.rank(k));
  h.at(h.rows - 1, h.cols - 1) = ring_one(g);
  res.h_new.emplace(k, std::move(h));
  return res;
}

static MoveResult apply_destab(const BasedComplex& C, int k) {
  const GroupSpec& g = C.ring;
  const long rk1 = C.rank(k + 1);
  const long rk = C.rank(k);
  if (rk1 < 1 || rk < 1)
    throw CheckFailedError("destabilize: no basis pair in degrees (" + std::to_string(k + 1) +
                           ", " + std::to_string(k) + ")");
  const RingMat dk1 = C.boundary(k + 1);
  for (long r = 0; r < rk; ++r) {
    const RingElement want = r == rk - 1 ? ring_one(g) : ring_zero(g);
    if (!(dk1.at(r, rk1 - 1) == want))
      throw CheckFailedError("destabilize: last column of d_" + std::to_string(k + 1) +
                             " is not the last basis vector");
  }
  for (long c = 0; c + 1 < rk1; ++c)
    if (!dk1.at(rk - 1, c).is_zero())
      throw CheckFailedError("destabilize: last row of d_" + std::to_string(k + 1) +
                             " has entries outside the pair");
  if (k >= 1) {
    const RingMat dk = C.boundary(k);
    for (long r = 0; r < dk.rows; ++r)
      if (!dk.at(r, rk - 1).is_zero())
        throw CheckFailedError("destabilize: last column of d_" + std::to_string(k) +
                               " is not zero");
  }
  const RingMat dk2 = C.boundary(k + 2);
  for (long c = 0; c < dk2.cols; ++c)
    if (!dk2.at(rk1 - 1, c).is_zero())
      throw CheckFailedError("destabilize: last row of d_" + std::to_string(k + 2) +
                             " is not zero");

  std::vector<long> ranks = C.ranks;
  ranks[static_cast<size_t>(k)] -= 1;
  ranks[static_cast<size_t>(k) + 1] -= 1;
  while (ranks.size() > 1 && ranks.back() == 0) ranks.pop_back();
  const int top = static_cast<int>(ranks.size()) - 1;
  std::map<int, RingMat> diffs;
  for (int j = 1; j <= top; ++j) {
    const RingMat m = C.boundary(j);
    RingMat mm(g, ranks[static_cast<size_t>(j) - 1], ranks[static_cast<size_t>(j)]);
    for (long r = 0; r < mm.rows; ++r)
      for (long c = 0; c < mm.cols; ++c) mm.at(r, c) = m.at(r, c);
    diffs.emplace(j, std::move(mm));
  }
  MoveResult res;
  res.complex = make_complex(g, ranks, diffs);
  for (int j = 0; j <= C.top_degree(); ++j) {
    const long ro = C.rank(j), rn = res.complex.rank(j);
    RingMat f(g, rn, ro), b(g, ro, rn);
    for (long i = 0; i < rn; ++i) {
      f.at(i, i) = ring_one(g);
      b.at(i, i) = ring_one(g);
    }
    res.fwd.emplace(j, std::move(f));
    res.bwd.emplace(j, std::move(b));
  }
  RingMat h(g, rk1, rk);
  h.at(rk1 - 1, rk - 1) = ring_one(g);
  res.h_old.emplace(k, std::move(h));
  return res;
}

static MoveResult apply_elem_col(const BasedComplex& C, int d, long i, long j,
                                 const RingElement& c) {
  const GroupSpec& g = C.ring;
  if (i == j) throw InvalidInputError("elementary move needs distinct indices");
  if (i < 0 || i >= C.rank(d) || j < 0 || j >= C.rank(d))
    throw InvalidInputError("elementary move index out of range in degree " +
                            std::to_string(d));
  std::map<int, RingMat> diffs = C.boundaries;
  if (d >= 1) {
    RingMat& m = diffs.at(d);
    for (long r = 0; r < m.rows; ++r)
      m.at(r, i) = ring_add(m.at(r, i), ring_mul(c, m.at(r, j)));
  }
  if (d + 1 <= C.top_degree()) {
    RingMat& m = diffs.at(d + 1);
    for (long col = 0; col < m.cols; ++col)
      m.at(j, col) = ring_sub(m.at(j, col), ring_mul(m.at(i, col), c));
  }
  MoveResult res;
  res.complex = make_complex(g, C.ranks, diffs);
  res.fwd = identity_components(C);
  res.fwd.at(d).at(j, i) = ring_neg(c);
  res.bwd = identity_components(C);
  res.bwd.at(d).at(j, i) = c;
  return res;
}

static MoveResult apply_unit(const BasedComplex& C, int d, long i, const RingElement& u) {
  const GroupSpec& g = C.ring;
  if (!is_trivial_unit(u))
    throw InvalidInputError("unit-diagonal move needs a scalar of the form +-(group word)");
  if (i < 0 || i >= C.rank(d))
    throw InvalidInputError("unit-diagonal move index out of range in degree " +
                            std::to_string(d));
  const RingElement uinv = trivial_unit_inverse(u);
  std::map<int, RingMat> diffs = C.boundaries;
  if (d >= 1) {
    RingMat& m = diffs.at(d);
    for (long r = 0; r < m.rows; ++r) m.at(r, i) = ring_mul(u, m.at(r, i));
  }
  if (d + 1 <= C.top_degree()) {
    RingMat& m = diffs.at(d + 1);
    for (long col = 0; col < m.cols; ++col) m.at(i, col) = ring_mul(m.at(i, col), uinv);
  }
  MoveResult res;
  res.complex = make_complex(g, C.ranks, diffs);
  res.fwd = identity_components(C);
  res.fwd.at(d).at(i, i) = uinv;
  res.bwd = identity_components(C);
  res.bwd.at(d).at(i, i) = u;
  return res;
}

static MoveResult apply_perm(const BasedComplex& C, int d, const std::vector<long>& p) {
  const GroupSpec& g = C.ring;
  const long n = C.rank(d);
  {
    std::vector<long> s = p;
    std::sort(s.begin(), s.end());
    std::vector<long> want(static_cast<size_t>(n));
    std::iota(want.begin(), want.end(), 0);
    if (s != want)
      throw InvalidInputError("permutation move is not a permutation of the degree-" +
                              std::to_string(d) + " basis");
  }
  std::map<int, RingMat> diffs = C.boundaries;
  if (d >= 1 && d <= C.top_degree()) {
    const RingMat m = diffs.at(d);
    RingMat mm(g, m.rows, m.cols);
    for (long r = 0; r < m.rows; ++r)
      for (long c = 0; c < m.cols; ++c) mm.at(r, c) = m.at(r, p[static_cast<size_t>(c)]);
    diffs.at(d) = std::move(mm);
  }
  if (d + 1 <= C.top_degree()) {
    const RingMat m = diffs.at(d + 1);
    RingMat mm(g, m.rows, m.cols);
    for (long r = 0; r < m.rows; ++r)
      for (long c = 0; c < m.cols; ++c) mm.at(r, c) = m.at(p[static_cast<size_t>(r)], c);
    diffs.at(d + 1) = std::move(mm);
  }
  MoveResult res;
  res.complex = make_complex(g, C.ranks, diffs);
  res.fwd = identity_components(C);
  res.bwd = identity_components(C);
  RingMat f(g, n, n), b(g, n, n);
  for (long jj = 0; jj < n; ++jj) {
    f.at(jj, p[static_cast<size_t>(jj)]) = ring_one(g);
    b.at(p[static_cast<size_t>(jj)], jj) = ring_one(g);
  }
  res.fwd.at(d) = std::move(f);
  res.bwd.at(d) = std::move(b);
  return res;
}

MoveResult apply_witness_move(const BasedComplex& C, const WitnessMove& m) {
  if (m.degree < 0) throw InvalidInputError("move degree must be >= 0");
  switch (m.kind) {
    case WitnessMoveKind::Stabilize:
      return apply_stab(C, m.degree);
    case WitnessMoveKind::Destabilize:
      return apply_destab(C, m.degree);
    case WitnessMoveKind::Elementary:
      if (m.row_flavor) {
        if (m.degree < 1)
          throw InvalidInputError("row-flavor elementary move needs degree >= 1");
        return apply_elem_col(C, m.degree - 1, m.j, m.i, ring_neg(m.scalar));
      }
      return apply_elem_col(C, m.degree, m.i, m.j, m.scalar);
    case WitnessMoveKind::UnitDiagonal:
      return apply_unit(C, m.degree, m.i, m.scalar);
    case WitnessMoveKind::Permutation:
      return apply_perm(C, m.degree, m.perm);
  }
  throw InvalidInputError("unknown move kind");
}

namespace {

// Shaped access into a sparse component map for maps S -> T.
RingMat comp_get(const std::map<int, RingMat>& f, const BasedComplex& S, const BasedComplex& T,
                 int k) {
  auto it = f.find(k);
  if (it != f.end()) return it->second;
  return RingMat(S.ring, T.rank(k), S.rank(k));
}

std::map<int, RingMat> comp_compose(const std::map<int, RingMat>& g,
                                    const std::map<int, RingMat>& f, const BasedComplex& S,
                                    const BasedComplex& M, const BasedComplex& T) {
  std::map<int, RingMat> out;
  const int top = std::max({S.top_degree(), M.top_degree(), T.top_degree()});
  for (int k = 0; k <= top; ++k)
    out.emplace(k, compose(comp_get(g, M, T, k), comp_get(f, S, M, k)));
  return out;
}

}  // namespace

ReplayEquivalence replay_with_equivalence(const BasedComplex& C, const SimpleWitness& w) {
  BasedComplex cur = C;
  std::map<int, RingMat> F = identity_components(C);
  std::map<int, RingMat> B = F;
  std::map<int, RingMat> H_cur;
  std::map<int, RingMat> H_start;

  for (const WitnessMove& mv : w.moves) {
    MoveResult res = apply_witness_move(cur, mv);
    const BasedComplex& nw = res.complex;
    verify_chain_map(make_chain_map(cur, nw, res.fwd));
    verify_chain_map(make_chain_map(nw, cur, res.bwd));

    std::map<int, RingMat> newF = comp_compose(res.fwd, F, C, cur, nw);
    std::map<int, RingMat> newB = comp_compose(B, res.bwd, nw, cur, C);
    // id_new - newF*newB = (id_new - fwd*bwd) + fwd (id_old - F*B) bwd
    std::map<int, RingMat> newH;
    const int hs_top = std::max({nw.top_degree(), cur.top_degree(), C.top_degree()}) + 1;
    for (int k = 0; k <= hs_top; ++k) {
      RingMat a(cur.ring, nw.rank(k + 1), nw.rank(k));
      if (auto it = res.h_new.find(k); it != res.h_new.end()) a = it->second;
      RingMat mid(cur.ring, cur.rank(k + 1), cur.rank(k));
      if (auto it = H_cur.find(k); it != H_cur.end()) mid = it->second;
      RingMat b = compose(comp_get(res.fwd, cur, nw, k + 1),
                          compose(mid, comp_get(res.bwd, nw, cur, k)));
      newH[k] = rm_add(a, b);
    }
    // id_start - newB*newF = (id_start - B*F) + B (id_old - fwd-side) F
    std::map<int, RingMat> newHs;
    for (int k = 0; k <= hs_top; ++k) {
      RingMat a(cur.ring, C.rank(k + 1), C.rank(k));
      if (auto it = H_start.find(k); it != H_start.end()) a = it->second;
      RingMat mid(cur.ring, cur.rank(k + 1), cur.rank(k));
      if (auto it = res.h_old.find(k); it != res.h_old.end()) mid = it->second;
      RingMat b = compose(comp_get(B, cur, C, k + 1),
                          compose(mid, comp_get(F, C, cur, k)));
      newHs[k] = rm_add(a, b);
    }
    cur = nw;
    F = std::move(newF);
    B = std::move(newB);
    H_cur = std::move(newH);
    H_start = std::move(newHs);
  }

  ReplayEquivalence eq;
  eq.start = C;
  eq.result = cur;
  eq.forward = make_chain_map(C, cur, F);
  eq.backward = make_chain_map(cur, C, B);
  eq.on_result = make_homotopy(compose_maps(eq.forward, eq.backward), identity_map(cur), H_cur);
  eq.on_start = make_homotopy(compose_maps(eq.backward, eq.forward), identity_map(C), H_start);
  return eq;
}

BasedComplex replay(const BasedComplex& C, const SimpleWitness& w) {
  BasedComplex cur = C;
  for (const WitnessMove& mv : w.moves) cur = apply_witness_move(cur, mv).complex;
  return cur;
}

std::pair<BasedComplex, SimpleWitness> stabilize(const BasedComplex& C, int k) {
  if (k < 0) throw InvalidInputError("stabilization degree must be >= 0");
  SimpleWitness w{{stab_move(k)}};
  return {replay(C, w), w};
}

std::pair<BasedComplex, SimpleWitness> elementary_op(const BasedComplex& C,
                                                     const WitnessMove& m) {
  if (m.kind == WitnessMoveKind::Stabilize || m.kind == WitnessMoveKind::Destabilize)
    throw InvalidInputError("elementary_op applies only basis moves; use stabilize/replay");
  SimpleWitness w{{m}};
  return {replay(C, w), w};
}

}  // namespace spines
