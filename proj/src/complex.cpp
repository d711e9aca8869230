#include "spines/complex.hpp"

#include <algorithm>

#include "spines/errors.hpp"

namespace spines {

RingMat BasedComplex::boundary(int k) const {
  auto it = boundaries.find(k);
  if (it != boundaries.end()) return it->second;
  return RingMat(ring, rank(k - 1), rank(k));
}

BasedComplex make_complex(const GroupSpec& ring, std::vector<long> ranks,
                          std::map<int, RingMat> boundaries) {
  ring.check();
  if (ranks.empty()) ranks.push_back(0);
  for (long r : ranks)
    if (r < 0) throw InvalidInputError("negative rank in complex");
  while (ranks.size() > 1 && ranks.back() == 0) ranks.pop_back();

  BasedComplex C;
  C.ring = ring;
  C.ranks = std::move(ranks);
  const int top = C.top_degree();
  for (const auto& [k, m] : boundaries) {
    if (k < 1) throw InvalidInputError("boundary map at degree < 1");
    if (!(m.group == ring))
      throw InvalidInputError("boundary matrix over a different coefficient group");
    if (m.rows != C.rank(k - 1) || m.cols != C.rank(k))
      throw InvalidInputError("boundary matrix d_" + std::to_string(k) + " has shape " +
                              std::to_string(m.rows) + "x" + std::to_string(m.cols) +
                              ", expected " + std::to_string(C.rank(k - 1)) + "x" +
                              std::to_string(C.rank(k)));
  }
  for (int k = 1; k <= top; ++k) {
    auto it = boundaries.find(k);
    C.boundaries.emplace(k, it != boundaries.end()
                                ? it->second
                                : RingMat(ring, C.rank(k - 1), C.rank(k)));
  }
  return C;
}

void validate_complex(const BasedComplex& C) {
  for (int k = 2; k <= C.top_degree(); ++k) {
    RingMat sq = compose(C.boundary(k - 1), C.boundary(k));
    for (long r = 0; r < sq.rows; ++r)
      for (long c = 0; c < sq.cols; ++c)
        if (!sq.at(r, c).is_zero())
          throw CheckFailedError("d*d != 0: degree " + std::to_string(k) + ", entry (" +
                                 std::to_string(r + 1) + ", " + std::to_string(c + 1) + ")");
  }
}

BasedComplex zero_complex(const GroupSpec& g) { return make_complex(g, {0}, {}); }

BasedComplex direct_sum(const BasedComplex& A, const BasedComplex& B) {
  if (!(A.ring == B.ring))
    throw InvalidInputError("direct sum over different coefficient groups");
  const int top = std::max(A.top_degree(), B.top_degree());
  std::vector<long> ranks;
  std::map<int, RingMat> diffs;
  for (int k = 0; k <= top; ++k) ranks.push_back(A.rank(k) + B.rank(k));
  for (int k = 1; k <= top; ++k)
    diffs.emplace(k, block_matrix({{A.boundary(k), RingMat(A.ring, A.rank(k - 1), B.rank(k))},
                                   {RingMat(A.ring, B.rank(k - 1), A.rank(k)), B.boundary(k)}}));
  return make_complex(A.ring, ranks, diffs);
}

RingMat ChainMap::component(int k) const {
  auto it = components.find(k);
  if (it != components.end()) return it->second;
  return RingMat(source.ring, target.rank(k), source.rank(k));
}

ChainMap make_chain_map(const BasedComplex& source, const BasedComplex& target,
                        const std::map<int, RingMat>& components) {
  if (!(source.ring == target.ring))
    throw InvalidInputError("chain map between complexes over different coefficient groups");
  ChainMap f;
  f.source = source;
  f.target = target;
  for (const auto& [k, m] : components) {
    if (k < 0) throw InvalidInputError("chain map component at negative degree");
    if (!(m.group == source.ring))
      throw InvalidInputError("chain map component over a different coefficient group");
    if (m.rows != target.rank(k) || m.cols != source.rank(k))
      throw InvalidInputError("chain map component at degree " + std::to_string(k) +
                              " has shape " + std::to_string(m.rows) + "x" +
                              std::to_string(m.cols) + ", expected " +
                              std::to_string(target.rank(k)) + "x" +
                              std::to_string(source.rank(k)));
    if (!rm_is_zero(m)) f.components.emplace(k, m);
  }
  return f;
}

void verify_chain_map(const ChainMap& f) {
  const int top = std::max(f.source.top_degree(), f.target.top_degree());
  for (int k = 1; k <= top + 1; ++k) {
    RingMat lhs = compose(f.target.boundary(k), f.component(k));
    RingMat rhs = compose(f.component(k - 1), f.source.boundary(k));
    if (!(lhs == rhs))
      throw CheckFailedError("d*f = f*d failed at degree " + std::to_string(k));
  }
}

ChainMap identity_map(const BasedComplex& C) {
  std::map<int, RingMat> comps;
  for (int k = 0; k <= C.top_degree(); ++k) comps.emplace(k, rm_identity(C.ring, C.rank(k)));
  return make_chain_map(C, C, comps);
}

ChainMap zero_map(const BasedComplex& source, const BasedComplex& target) {
  return make_chain_map(source, target, {});
}

ChainMap compose_maps(const ChainMap& g, const ChainMap& f) {
  if (!(f.target == g.source))
    throw CheckFailedError("chain map composition: inner target differs from outer source");
  std::map<int, RingMat> comps;
  const int top = std::max(f.source.top_degree(), f.target.top_degree());
  for (int k = 0; k <= top; ++k) comps.emplace(k, compose(g.component(k), f.component(k)));
  return make_chain_map(f.source, g.target, comps);
}

static void require_parallel(const ChainMap& f, const ChainMap& g, const char* what) {
  if (!(f.source == g.source) || !(f.target == g.target))
    throw CheckFailedError(std::string(what) + ": maps do not share endpoints");
}

ChainMap map_add(const ChainMap& f, const ChainMap& g) {
  require_parallel(f, g, "map sum");
  std::map<int, RingMat> comps;
  const int top = std::max(f.source.top_degree(), f.target.top_degree());
  for (int k = 0; k <= top; ++k) comps.emplace(k, rm_add(f.component(k), g.component(k)));
  return make_chain_map(f.source, f.target, comps);
}

ChainMap map_sub(const ChainMap& f, const ChainMap& g) {
  return map_add(f, map_neg(g));
}

ChainMap map_neg(const ChainMap& f) {
  std::map<int, RingMat> comps;
  for (const auto& [k, m] : f.components) comps.emplace(k, rm_neg(m));
  return make_chain_map(f.source, f.target, comps);
}

RingMat ChainHomotopy::component(int k) const {
  auto it = components.find(k);
  if (it != components.end()) return it->second;
  return RingMat(from_map.source.ring, from_map.target.rank(k + 1), from_map.source.rank(k));
}

ChainHomotopy make_homotopy(const ChainMap& from_map, const ChainMap& to_map,
                            const std::map<int, RingMat>& components) {
  require_parallel(from_map, to_map, "homotopy");
  ChainHomotopy h;
  h.from_map = from_map;
  h.to_map = to_map;
  for (const auto& [k, m] : components) {
    if (k < 0) throw InvalidInputError("homotopy component at negative degree");
    if (m.rows != from_map.target.rank(k + 1) || m.cols != from_map.source.rank(k))
      throw InvalidInputError("homotopy component at degree " + std::to_string(k) +
                              " has shape " + std::to_string(m.rows) + "x" +
                              std::to_string(m.cols) + ", expected " +
                              std::to_string(from_map.target.rank(k + 1)) + "x" +
                              std::to_string(from_map.source.rank(k)));
    if (!rm_is_zero(m)) h.components.emplace(k, m);
  }
  return h;
}

void verify_homotopy(const ChainHomotopy& h) {
  const BasedComplex& C = h.from_map.source;
  const BasedComplex& D = h.from_map.target;
  const int top = std::max(C.top_degree(), D.top_degree());
  for (int k = 0; k <= top + 1; ++k) {
    RingMat lhs = rm_add(compose(D.boundary(k + 1), h.component(k)),
                         compose(h.component(k - 1), C.boundary(k)));
    RingMat rhs = rm_sub(h.to_map.component(k), h.from_map.component(k));
    if (!(lhs == rhs))
      throw CheckFailedError("d*h + h*d = g - f failed at degree " + std::to_string(k));
  }
}

ChainHomotopy zero_homotopy(const ChainMap& f) { return make_homotopy(f, f, {}); }

ChainHomotopy homotopy_flip(const ChainHomotopy& h) {
  std::map<int, RingMat> comps;
  for (const auto& [k, m] : h.components) comps.emplace(k, rm_neg(m));
  return make_homotopy(h.to_map, h.from_map, comps);
}

ChainHomotopy homotopy_concat(const ChainHomotopy& h1, const ChainHomotopy& h2) {
  if (!(h1.to_map == h2.from_map))
    throw CheckFailedError("homotopy concatenation: middle maps differ");
  std::map<int, RingMat> comps;
  const int top = std::max(h1.from_map.source.top_degree(), h1.from_map.target.top_degree());
  for (int k = 0; k <= top; ++k) comps.emplace(k, rm_add(h1.component(k), h2.component(k)));
  return make_homotopy(h1.from_map, h2.to_map, comps);
}

ChainHomotopy homotopy_left(const ChainMap& a, const ChainHomotopy& h) {
  if (!(h.from_map.target == a.source))
    throw CheckFailedError("homotopy whiskering: endpoint mismatch");
  std::map<int, RingMat> comps;
  const int top = std::max(h.from_map.source.top_degree(), a.target.top_degree());
  for (int k = 0; k <= top; ++k)
    comps.emplace(k, compose(a.component(k + 1), h.component(k)));
  return make_homotopy(compose_maps(a, h.from_map), compose_maps(a, h.to_map), comps);
}

ChainHomotopy homotopy_right(const ChainHomotopy& h, const ChainMap& b) {
  if (!(b.target == h.from_map.source))
    throw CheckFailedError("homotopy whiskering: endpoint mismatch");
  std::map<int, RingMat> comps;
  const int top = std::max(b.source.top_degree(), h.from_map.target.top_degree());
  for (int k = 0; k <= top; ++k)
    comps.emplace(k, compose(h.component(k), b.component(k)));
  return make_homotopy(compose_maps(h.from_map, b), compose_maps(h.to_map, b), comps);
}

BasedComplex mapping_cone(const ChainMap& f) {
  const BasedComplex& C = f.source;
  const BasedComplex& D = f.target;
  const GroupSpec& g = C.ring;
  const int top = std::max(C.top_degree() + 1, D.top_degree());
  std::vector<long> ranks;
  std::map<int, RingMat> diffs;
  for (int k = 0; k <= top; ++k) ranks.push_back(C.rank(k - 1) + D.rank(k));
  for (int k = 1; k <= top; ++k)
    diffs.emplace(k, block_matrix({{rm_neg(C.boundary(k - 1)),
                                    RingMat(g, C.rank(k - 2), D.rank(k))},
                                   {rm_neg(f.component(k - 1)), D.boundary(k)}}));
  BasedComplex cone = make_complex(g, ranks, diffs);
  validate_complex(cone);
  return cone;
}

ChainMap cone_inclusion(const ChainMap& f) {
  const BasedComplex& C = f.source;
  const BasedComplex& D = f.target;
  BasedComplex cone = mapping_cone(f);
  std::map<int, RingMat> comps;
  for (int k = 0; k <= D.top_degree(); ++k) {
    RingMat m(C.ring, cone.rank(k), D.rank(k));
    for (long i = 0; i < D.rank(k); ++i) m.at(C.rank(k - 1) + i, i) = ring_one(C.ring);
    comps.emplace(k, m);
  }
  return make_chain_map(D, cone, comps);
}

BasedComplex dualize(const BasedComplex& C, int n) {
  if (n < C.top_degree())
    throw InvalidInputError("dualizing degree is below the top degree of the complex");
  std::vector<long> ranks;
  std::map<int, RingMat> diffs;
  for (int k = 0; k <= n; ++k) ranks.push_back(C.rank(n - k));
  for (int k = 1; k <= n; ++k) diffs.emplace(k, bar_transpose(C.boundary(n - k + 1)));
  BasedComplex D = make_complex(C.ring, std::move(ranks), std::move(diffs));
  validate_complex(D);
  return D;
}

ChainMap dualize_map(const ChainMap& f, int n) {
  BasedComplex dualT = dualize(f.target, n);
  BasedComplex dualS = dualize(f.source, n);
  std::map<int, RingMat> comps;
  for (int k = 0; k <= n; ++k) comps.emplace(k, bar_transpose(f.component(n - k)));
  return make_chain_map(dualT, dualS, comps);
}

ChainHomotopy dualize_homotopy(const ChainHomotopy& h, int n) {
  std::map<int, RingMat> comps;
  for (int k = 0; k <= n; ++k) {
    RingMat m = bar_transpose(h.component(n - k - 1));
    if (!rm_is_zero(m)) comps.emplace(k, m);
  }
  ChainHomotopy out = make_homotopy(dualize_map(h.from_map, n), dualize_map(h.to_map, n), comps);
  verify_homotopy(out);
  return out;
}

BasedComplex augment_complex(const BasedComplex& C) {
  const GroupSpec t = trivial_group();
  std::map<int, RingMat> diffs;
  for (const auto& [k, m] : C.boundaries)
    diffs.emplace(k, from_int_matrix(t, augment_matrix(m)));
  return make_complex(t, C.ranks, diffs);
}

ChainMap augment_chain_map(const ChainMap& f) {
  const GroupSpec t = trivial_group();
  std::map<int, RingMat> comps;
  for (const auto& [k, m] : f.components)
    comps.emplace(k, from_int_matrix(t, augment_matrix(m)));
  return make_chain_map(augment_complex(f.source), augment_complex(f.target), comps);
}

}  // namespace spines
