#include "spines/certificate.hpp"

#include <json.hpp>

#include "spines/errors.hpp"
#include "spines/io.hpp"
#include "spines/realize.hpp"

namespace spines {

namespace {

using nlohmann::json;

json complex_to_json(const BasedComplex& C) {
  json j;
  j["ring"] = print_group(C.ring);
  j["ranks"] = C.ranks;
  json bnd = json::object();
  for (int k = 1; k <= C.top_degree(); ++k) {
    if (C.rank(k) == 0 || C.rank(k - 1) == 0) continue;
    const RingMat& m = C.boundary(k);
    json rows = json::array();
    for (long r = 0; r < m.rows; ++r) {
      json row = json::array();
      for (long c = 0; c < m.cols; ++c) row.push_back(print_ring_element(m.at(r, c)));
      rows.push_back(std::move(row));
    }
    bnd[std::to_string(k)] = std::move(rows);
  }
  j["boundaries"] = std::move(bnd);
  return j;
}

RingMat matrix_from_json(const json& rows, const GroupSpec& g, long nrows, long ncols,
                         const std::string& where) {
  if (!rows.is_array() || static_cast<long>(rows.size()) != nrows)
    throw InvalidInputError("certificate: " + where + " has the wrong row count");
  RingMat m(g, nrows, ncols);
  for (long r = 0; r < nrows; ++r) {
    const json& row = rows[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<long>(row.size()) != ncols)
      throw InvalidInputError("certificate: " + where + " has the wrong column count");
    for (long c = 0; c < ncols; ++c)
      m.at(r, c) = parse_ring_element(g, row[static_cast<size_t>(c)].get<std::string>());
  }
  return m;
}

BasedComplex complex_from_json(const json& j) {
  GroupSpec g = parse_group(j.at("ring").get<std::string>());
  std::vector<long> ranks = j.at("ranks").get<std::vector<long>>();
  std::map<int, RingMat> bnd;
  for (const auto& [key, rows] : j.at("boundaries").items()) {
    const int k = std::stoi(key);
    if (k < 1 || k >= static_cast<int>(ranks.size()))
      throw InvalidInputError("certificate: boundary degree out of range");
    bnd[k] = matrix_from_json(rows, g, ranks[static_cast<size_t>(k - 1)],
                              ranks[static_cast<size_t>(k)], "boundary " + key);
  }
  return make_complex(g, std::move(ranks), std::move(bnd));
}

json components_to_json(const std::map<int, RingMat>& comps) {
  json j = json::object();
  for (const auto& [k, m] : comps) {
    json rows = json::array();
    for (long r = 0; r < m.rows; ++r) {
      json row = json::array();
      for (long c = 0; c < m.cols; ++c) row.push_back(print_ring_element(m.at(r, c)));
      rows.push_back(std::move(row));
    }
    j[std::to_string(k)] = std::move(rows);
  }
  return j;
}

// Shapes come from the stated endpoints; shape(k) = (rows, cols).
template <typename Shape>
std::map<int, RingMat> components_from_json(const json& j, const GroupSpec& g,
                                            Shape shape, const std::string& where) {
  std::map<int, RingMat> comps;
  for (const auto& [key, rows] : j.items()) {
    const int k = std::stoi(key);
    const auto [nr, nc] = shape(k);
    comps[k] = matrix_from_json(rows, g, nr, nc, where + " component " + key);
  }
  return comps;
}

json witness_to_json(const GroupSpec& g, const SimpleWitness& w) {
  json j = json::array();
  for (const WitnessMove& m : w.moves) j.push_back(print_witness_move(g, m));
  return j;
}

SimpleWitness witness_from_json(const GroupSpec& g, const json& j) {
  SimpleWitness w;
  for (const json& line : j) w.moves.push_back(parse_witness_move(g, line.get<std::string>()));
  return w;
}

json envelope(const std::string& kind, json payload) {
  json j;
  j["format_version"] = {kFormatMajor, kFormatMinor, kFormatPatch};
  j["kind"] = kind;
  j["payload"] = std::move(payload);
  return j;
}

json open_bundle(const std::string& text, const std::string& expected_kind) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("certificate: not valid JSON: ") + e.what());
  }
  try {
    const auto ver = j.at("format_version").get<std::vector<int>>();
    if (ver.empty() || ver[0] != kFormatMajor)
      throw InvalidInputError("certificate: unsupported format version");
    if (j.at("kind").get<std::string>() != expected_kind)
      throw InvalidInputError("certificate: expected kind '" + expected_kind + "'");
    return j.at("payload");
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("certificate: malformed bundle: ") + e.what());
  }
}

// Wraps payload-field access so missing or mistyped fields report as invalid
// input rather than escaping as library exceptions.
template <typename Body>
auto guarded(Body&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("certificate: malformed bundle: ") + e.what());
  }
}

void check_equal(bool ok, const std::string& what) {
  if (!ok) throw CheckFailedError("certificate: " + what + " does not match");
}

json datum_to_json(const DualityCertificateData& data) {
  const DualityDatum& d = data.datum;
  const GroupSpec g = d.poincare.chains.ring;
  json p;
  p["chains"] = complex_to_json(d.poincare.chains);
  p["dim"] = d.poincare.dim;
  p["duality"] = components_to_json(d.poincare.duality_map.components);
  p["K"] = complex_to_json(d.K_map.source);
  p["K_map"] = components_to_json(d.K_map.components);
  p["L"] = complex_to_json(data.L_chains);
  p["L_map"] = components_to_json(d.L_map.components);
  p["s1"] = d.nullhomotopy.from_map.components.empty() ? 1 : -1;
  p["nullhomotopy"] = components_to_json(d.nullhomotopy.components);
  if (data.simple) p["simple"] = witness_to_json(g, *data.simple);
  if (data.make_dual_K && data.make_dual_L) {
    p["recompute"] = {{"mode", "make-dual"},
                      {"K", print_presentation(*data.make_dual_K)},
                      {"L", print_presentation(*data.make_dual_L)}};
  } else if (data.realize_input) {
    p["recompute"] = {{"mode", "realize"},
                      {"input", print_presentation(*data.realize_input)}};
  }
  return p;
}

struct LoadedDatum {
  DualityDatum datum;
  BasedComplex L_chains;
  std::optional<SimpleWitness> simple;
};

LoadedDatum datum_from_json(const json& p) {
  LoadedDatum out;
  const BasedComplex N = complex_from_json(p.at("chains"));
  const int dim = p.at("dim").get<int>();
  const GroupSpec g = N.ring;
  const BasedComplex dualN = dualize(N, dim);
  const ChainMap delta = make_chain_map(
      N, dualN,
      components_from_json(
          p.at("duality"), g,
          [&](int k) { return std::pair<long, long>(dualN.rank(k), N.rank(k)); },
          "duality"));
  out.datum.poincare = make_poincare_complex(N, dim, delta);

  const BasedComplex K = complex_from_json(p.at("K"));
  out.datum.K_map = make_chain_map(
      K, N,
      components_from_json(
          p.at("K_map"), g,
          [&](int k) { return std::pair<long, long>(N.rank(k), K.rank(k)); }, "K_map"));
  verify_chain_map(out.datum.K_map);

  out.L_chains = complex_from_json(p.at("L"));
  out.datum.L_map = make_chain_map(
      out.L_chains, N,
      components_from_json(
          p.at("L_map"), g,
          [&](int k) {
            return std::pair<long, long>(N.rank(k), out.L_chains.rank(k));
          },
          "L_map"));
  verify_chain_map(out.datum.L_map);

  const int s1 = p.at("s1").get<int>();
  if (s1 != 1 && s1 != -1) throw InvalidInputError("certificate: s1 must be 1 or -1");
  const ChainMap phi = compose_maps(dualize_map(out.datum.L_map, dim),
                                    compose_maps(delta, out.datum.K_map));
  const ChainMap zero = zero_map(K, phi.target);
  const BasedComplex dualL = dualize(out.L_chains, dim);
  out.datum.nullhomotopy = make_homotopy(
      s1 == 1 ? zero : phi, s1 == 1 ? phi : zero,
      components_from_json(
          p.at("nullhomotopy"), g,
          [&](int k) { return std::pair<long, long>(dualL.rank(k + 1), K.rank(k)); },
          "nullhomotopy"));

  if (p.contains("simple")) out.simple = witness_from_json(g, p.at("simple"));
  return out;
}

void compare_datum(const DualityDatum& got, const DualityDatum& stored,
                   const BasedComplex& got_L, const BasedComplex& stored_L) {
  check_equal(got.poincare.chains == stored.poincare.chains, "ambient complex");
  check_equal(got.poincare.dim == stored.poincare.dim, "ambient dimension");
  check_equal(got.poincare.duality_map == stored.poincare.duality_map, "duality map");
  check_equal(got.K_map == stored.K_map, "K side");
  check_equal(got.L_map == stored.L_map, "L side");
  check_equal(got.nullhomotopy == stored.nullhomotopy, "nullhomotopy");
  check_equal(got_L == stored_L, "L chains");
}

}  // namespace

std::string format_version_string() {
  return std::to_string(kFormatMajor) + "." + std::to_string(kFormatMinor) + "." +
         std::to_string(kFormatPatch);
}

std::string certificate_kind(const std::string& json_text) {
  try {
    return json::parse(json_text).at("kind").get<std::string>();
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("certificate: not a certificate bundle: ") + e.what());
  }
}

std::string moves_certificate(const MoveSequence& script, const MovesToChainResult& run) {
  const GroupSpec g = script.initial.pi;
  json p;
  p["script"] = print_move_sequence(script);
  p["final"] = print_presentation(run.final_presentation);
  p["fox_initial"] = complex_to_json(fox_boundary(script.initial));
  p["fox_final"] = complex_to_json(fox_boundary(run.final_presentation));
  p["witness"] = witness_to_json(g, run.witness);
  p["forward"] = components_to_json(run.forward.components);
  p["backward"] = components_to_json(run.backward.components);
  return envelope("presentation-moves", std::move(p)).dump(2) + "\n";
}

void verify_moves_certificate(const std::string& json_text) {
  const json p = open_bundle(json_text, "presentation-moves");
  guarded([&] {
    const MoveSequence s = parse_move_sequence(p.at("script").get<std::string>());
    const GroupSpec g = s.initial.pi;
    const MovesToChainResult run = moves_to_chain_equiv(s);
    check_equal(print_presentation(run.final_presentation) == p.at("final").get<std::string>(),
                "final presentation");
    const BasedComplex foxI = fox_boundary(s.initial);
    const BasedComplex foxF = fox_boundary(run.final_presentation);
    check_equal(complex_from_json(p.at("fox_initial")) == foxI, "initial chain complex");
    check_equal(complex_from_json(p.at("fox_final")) == foxF, "final chain complex");
    check_equal(witness_from_json(g, p.at("witness")) == run.witness, "chain witness");
    const auto fshape = [&](int k) {
      return std::pair<long, long>(foxF.rank(k), foxI.rank(k));
    };
    const auto bshape = [&](int k) {
      return std::pair<long, long>(foxI.rank(k), foxF.rank(k));
    };
    check_equal(components_from_json(p.at("forward"), g, fshape, "forward") ==
                    run.forward.components,
                "forward map");
    check_equal(components_from_json(p.at("backward"), g, bshape, "backward") ==
                    run.backward.components,
                "backward map");
    return 0;
  });
}

std::string chain_witness_certificate(const std::vector<ChainWitnessEntry>& entries) {
  json list = json::array();
  for (const ChainWitnessEntry& e : entries) {
    json p;
    p["label"] = e.label;
    p["start"] = complex_to_json(e.start);
    p["result"] = complex_to_json(e.result);
    p["witness"] = witness_to_json(e.start.ring, e.witness);
    p["forward"] = components_to_json(e.forward.components);
    p["backward"] = components_to_json(e.backward.components);
    list.push_back(std::move(p));
  }
  json p;
  p["entries"] = std::move(list);
  return envelope("chain-witness", std::move(p)).dump(2) + "\n";
}

void verify_chain_witness_certificate(const std::string& json_text) {
  const json p = open_bundle(json_text, "chain-witness");
  guarded([&] {
    for (const json& e : p.at("entries")) {
      const BasedComplex start = complex_from_json(e.at("start"));
      validate_complex(start);
      const BasedComplex result = complex_from_json(e.at("result"));
      const GroupSpec g = start.ring;
      const SimpleWitness w = witness_from_json(g, e.at("witness"));
      const ReplayEquivalence rep = replay_with_equivalence(start, w);
      const std::string label = e.at("label").get<std::string>();
      check_equal(rep.result == result, label + " replay endpoint");
      const auto fshape = [&](int k) {
        return std::pair<long, long>(rep.result.rank(k), start.rank(k));
      };
      const auto bshape = [&](int k) {
        return std::pair<long, long>(start.rank(k), rep.result.rank(k));
      };
      check_equal(components_from_json(e.at("forward"), g, fshape, "forward") ==
                      rep.forward.components,
                  label + " forward map");
      check_equal(components_from_json(e.at("backward"), g, bshape, "backward") ==
                      rep.backward.components,
                  label + " backward map");
    }
    return 0;
  });
}

std::string duality_certificate(const DualityCertificateData& data) {
  return envelope("duality", datum_to_json(data)).dump(2) + "\n";
}

void verify_duality_certificate(const std::string& json_text) {
  const json p = open_bundle(json_text, "duality");
  guarded([&] {
    LoadedDatum loaded = datum_from_json(p);
    verify_simple_algebraic_duality(loaded.datum, loaded.L_chains, loaded.simple);
    if (p.contains("recompute")) {
      const json& r = p.at("recompute");
      const std::string mode = r.at("mode").get<std::string>();
      if (mode == "make-dual") {
        const Presentation2Complex K = parse_presentation(r.at("K").get<std::string>());
        const Presentation2Complex L = parse_presentation(r.at("L").get<std::string>());
        const DualityDatum again = build_duality_datum_S4(K, L);
        compare_datum(again, loaded.datum, fox_boundary(L), loaded.L_chains);
      } else if (mode == "realize") {
        const Presentation2Complex in =
            parse_presentation(r.at("input").get<std::string>());
        const BasedComplex D = fox_boundary(in);
        const PoincareComplex s4 = s4_model();
        const ChainMap f = make_chain_map(
            D, s4.chains, {{0, rm_identity(D.ring, 1)}});
        const DecompositionResult res = realize_decomposition(D, s4, f);
        compare_datum(res.datum, loaded.datum, res.W_chains, loaded.L_chains);
      } else {
        throw InvalidInputError("certificate: unknown recompute mode");
      }
    }
    return 0;
  });
}

}  // namespace spines
