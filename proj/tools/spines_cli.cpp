#include <CLI11.hpp>
#include <atomic>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "spines/certificate.hpp"
#include "spines/duality.hpp"
#include "spines/errors.hpp"
#include "spines/homology.hpp"
#include "spines/io.hpp"
#include "spines/presentation.hpp"
#include "spines/realize.hpp"

namespace {

using namespace spines;

// Exit codes: 0 success / property holds, 1 checked property false,
// 2 invalid input (including undecided questions and parse errors).

struct JobResult {
  std::string out;
  std::string err;
  int code = 0;
};

enum class FileKind { Complex, Presentation, Json };

FileKind sniff_kind(const std::string& text) {
  size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && text[i] == '{') return FileKind::Json;
  if (text.compare(i, 5, "ring:") == 0) return FileKind::Complex;
  if (text.compare(i, 5, "gens:") == 0) return FileKind::Presentation;
  throw InvalidInputError(
      "cannot tell what this file is: expected 'ring:' (complex), 'gens:' "
      "(presentation) or '{' (certificate)");
}

// Loads a complex from either format; presentations go through their chain
// complex.
BasedComplex load_complex(const std::string& text) {
  if (sniff_kind(text) == FileKind::Complex) return parse_complex(text);
  return fox_boundary(parse_presentation(text));
}

HomologySummary integral_homology(const BasedComplex& C) {
  if (C.ring.kind == GroupKind::Trivial) return homology_Z(C);
  return homology_Z(augment_complex(C));
}

ChainWitnessEntry witness_entry(const std::string& label, const BasedComplex& start,
                                const SimpleWitness& w) {
  const ReplayEquivalence rep = replay_with_equivalence(start, w);
  return ChainWitnessEntry{label, start, rep.result, w, rep.forward, rep.backward};
}

struct Options {
  std::vector<std::string> files;
  std::string cert_path;
  int jobs = 1;
};

using Handler = JobResult (*)(const Options&, const std::string& path);

JobResult guarded(const std::function<std::pair<std::string, int>()>& body) {
  try {
    auto [out, code] = body();
    return {out, "", code};
  } catch (const UndecidedError& e) {
    return {"", std::string("error: ") + e.what(), 2};
  } catch (const CheckFailedError& e) {
    return {"", std::string("error: ") + e.what(), 1};
  } catch (const InvalidInputError& e) {
    return {"", std::string("error: ") + e.what(), 2};
  } catch (const std::exception& e) {
    return {"", std::string("error: ") + e.what(), 2};
  }
}

void emit_certificate(const Options& opt, const std::string& content) {
  if (!opt.cert_path.empty()) write_text_file(opt.cert_path, content);
}

// ---------------------------------------------------------------------------
// One handler per verb.  Each returns the stdout text and an exit code.

JobResult do_validate(const Options&, const std::string& path) {
  return guarded([&]() -> std::pair<std::string, int> {
    const std::string text = read_text_file(path);
    validate_complex(load_complex(text));
    return {"ok\n", 0};
  });
}

JobResult do_homology(const Options&, const std::string& path) {
  return guarded([&]() -> std::pair<std::string, int> {
    const BasedComplex C = load_complex(read_text_file(path));
    validate_complex(C);
    return {print_homology(integral_homology(C)), 0};
  });
}

JobResult do_snf(const Options&, const std::string& path) {
  return guarded([&]() -> std::pair<std::string, int> {
    const SNFResult r = snf(parse_int_matrix(read_text_file(path)));
    std::string out = "divisors:";
    for (const Int& d : r.divisors) out += " " + d.str();
    return {out + "\n", 0};
  });
}

JobResult do_fox(const Options&, const std::string& path) {
  return guarded([&]() -> std::pair<std::string, int> {
    const Presentation2Complex P = parse_presentation(read_text_file(path));
    return {print_complex(fox_boundary(P)), 0};
  });
}

JobResult do_moves_apply(const Options& opt, const std::string& path) {
  return guarded([&]() -> std::pair<std::string, int> {
    const MoveSequence s = parse_move_sequence(read_text_file(path));
    if (!opt.cert_path.empty()) {
      const MovesToChainResult run = moves_to_chain_equiv(s);
      emit_certificate(opt, moves_certificate(s, run));
      return {print_presentation(run.final_presentation), 0};
    }
    Presentation2Complex P = s.initial;
    for (const PresMove& m : s.moves) P = apply_move(P, m);
    return {print_presentation(P), 0};
  });
}

JobResult do_moves_verify(const Options& opt, const std::string& path) {
  return guarded([&]() -> std::pair<std::string, int> {
    const std::string text = read_text_file(path);
    size_t first = 0;
    while (first < text.size() &&
           std::isspace(static_cast<unsigned char>(text[first])))
      ++first;
    if (first < text.size() && text[first] == '{') {
      if (!opt.cert_path.empty())
        throw InvalidInputError("this input is already a certificate");
      const std::string kind = certificate_kind(text);
      if (kind == "presentation-moves")
        verify_moves_certificate(text);
      else if (kind == "chain-witness")
        verify_chain_witness_certificate(text);
      else
        throw InvalidInputError("certificate kind '" + kind +
                                "' is checked by verify-duality");
      return {"ok\n", 0};
    }
    const MoveSequence s = parse_move_sequence(text);
    const MovesToChainResult run = moves_to_chain_equiv(s);
    emit_certificate(opt, moves_certificate(s, run));
    return {"ok\n", 0};
  });
}

JobResult do_align(const Options& opt, const std::string& path) {
  return guarded([&]() -> std::pair<std::string, int> {
    const ChainMap f = parse_chain_map(read_text_file(path));
    verify_chain_map(f);
    const AlignedPair a0 = align_deg0(f);
    const AlignedPair a1 = align_deg1(a0.f_prime);
    if (!opt.cert_path.empty()) {
      std::vector<ChainWitnessEntry> entries;
      entries.push_back(witness_entry("source", f.source,
                                      witness_concat(a0.witness_C, a1.witness_C)));
      entries.push_back(witness_entry("target", f.target,
                                      witness_concat(a0.witness_D, a1.witness_D)));
      emit_certificate(opt, chain_witness_certificate(entries));
    }
    return {print_chain_map(a1.f_prime), 0};
  });
}

JobResult do_reduce2(const Options& opt, const std::string& path) {
  return guarded([&]() -> std::pair<std::string, int> {
    const BasedComplex C = load_complex(read_text_file(path));
    validate_complex(C);
    const Reduce2Result red = reduce_to_dim2(C);
    if (!opt.cert_path.empty())
      emit_certificate(opt, chain_witness_certificate(
                                {witness_entry("reduce2", C, red.witness)}));
    return {print_complex(red.complex), 0};
  });
}

JobResult do_split(const Options& opt, const std::string& path) {
  return guarded([&]() -> std::pair<std::string, int> {
    const ChainMap f = parse_chain_map(read_text_file(path));
    verify_chain_map(f);
    const SplitResult sp = split_summand(f);
    if (!opt.cert_path.empty())
      emit_certificate(opt, chain_witness_certificate(
                                {witness_entry("split", f.target, sp.witness)}));
    return {print_chain_map(sp.map), 0};
  });
}

JobResult do_realize(const Options& opt, const std::string& path) {
  return guarded([&]() -> std::pair<std::string, int> {
    const Presentation2Complex P = parse_presentation(read_text_file(path));
    const BasedComplex D = fox_boundary(P);
    const PoincareComplex s4 = s4_model();
    const ChainMap f = make_chain_map(D, s4.chains, {{0, rm_identity(D.ring, 1)}});
    const DecompositionResult res = realize_decomposition(D, s4, f);
    const HomologySummary hM = homology_Z(res.M_chains);
    const HomologySummary hW = homology_Z(res.W_chains);
    std::string out = "M:\n" + print_complex(res.M_chains);
    out += "W:\n" + print_complex(res.W_chains);
    out += "homology M:\n" + print_homology(hM);
    out += "homology W:\n" + print_homology(hW);
    if (!check_dual_homology_S4(hM, hW))
      throw CheckFailedError("H1(M) = H^2(W) and H2(M) = H^1(W) failed");
    out += "dual: yes\n";
    if (!opt.cert_path.empty()) {
      DualityCertificateData data;
      data.datum = res.datum;
      data.L_chains = res.W_chains;
      data.realize_input = P;
      emit_certificate(opt, duality_certificate(data));
    }
    return {out, 0};
  });
}

JobResult do_make_dual(const Options& opt, const std::string& path) {
  return guarded([&]() -> std::pair<std::string, int> {
    const Presentation2Complex K = parse_presentation(read_text_file(path));
    const HomologySummary hK = integral_homology(fox_boundary(K));
    const Presentation2Complex L = canonical_dual_spine(hK);
    if (!opt.cert_path.empty()) {
      DualityCertificateData data;
      data.datum = build_duality_datum_S4(K, L);
      data.L_chains = fox_boundary(L);
      data.make_dual_K = K;
      data.make_dual_L = L;
      emit_certificate(opt, duality_certificate(data));
    }
    return {print_presentation(L), 0};
  });
}

JobResult do_verify_duality(const Options&, const std::string& path) {
  return guarded([&]() -> std::pair<std::string, int> {
    verify_duality_certificate(read_text_file(path));
    return {"ok\n", 0};
  });
}

// Two-input verbs.

JobResult do_check_dual(const std::string& path_K, const std::string& path_L) {
  return guarded([&]() -> std::pair<std::string, int> {
    const Presentation2Complex K = parse_presentation(read_text_file(path_K));
    const Presentation2Complex L = parse_presentation(read_text_file(path_L));
    const bool ok = check_dual_homology_S4(integral_homology(fox_boundary(K)),
                                           integral_homology(fox_boundary(L)));
    return ok ? std::pair<std::string, int>{"dual: yes\n", 0}
              : std::pair<std::string, int>{"dual: no\n", 1};
  });
}

JobResult do_moves_synthesize(const Options& opt, const std::string& path_K,
                              const std::string& path_L) {
  return guarded([&]() -> std::pair<std::string, int> {
    const Presentation2Complex K = parse_presentation(read_text_file(path_K));
    const Presentation2Complex L = parse_presentation(read_text_file(path_L));
    const BasedComplex CK = fox_boundary(K);
    const BasedComplex CL = fox_boundary(L);
    const StandardFormResult sK = standard_form_Z(CK);
    const StandardFormResult sL = standard_form_Z(CL);
    if (!(sK.form == sL.form))
      throw CheckFailedError("the two complexes have different standard forms");
    const ChainMap e = compose_maps(sL.from_form, sK.to_form);
    const SynthesisResult res = synthesize_moves_from_equiv(K, L, e, std::nullopt);
    if (!opt.cert_path.empty()) {
      const MovesToChainResult run = moves_to_chain_equiv(res.moves);
      emit_certificate(opt, moves_certificate(res.moves, run));
    }
    return {print_move_sequence(res.moves), 0};
  });
}

// ---------------------------------------------------------------------------

int run_batch(const Options& opt, Handler handler) {
  const size_t n = opt.files.size();
  if (!opt.cert_path.empty() && n != 1) {
    std::cerr << "error: --emit-certificate needs exactly one input\n";
    return 2;
  }
  std::vector<JobResult> results(n);
  if (opt.jobs <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) results[i] = handler(opt, opt.files[i]);
  } else {
    std::atomic<size_t> next{0};
    const size_t workers = std::min<size_t>(static_cast<size_t>(opt.jobs), n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
          results[i] = handler(opt, opt.files[i]);
      });
    for (std::thread& t : pool) t.join();
  }
  int code = 0;
  for (size_t i = 0; i < n; ++i) {
    if (n > 1) std::cout << "== " << opt.files[i] << "\n";
    std::cout << results[i].out;
    if (!results[i].err.empty()) std::cerr << results[i].err << "\n";
    code = std::max(code, results[i].code);
  }
  return code;
}

int finish(const JobResult& r) {
  std::cout << r.out;
  if (!r.err.empty()) std::cerr << r.err << "\n";
  return r.code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact chain-level computations for 2-complexes and dual spines"};
  app.set_version_flag("--version", format_version_string());
  app.require_subcommand(1);

  Options opt;
  std::vector<std::string> pair_files;

  struct Verb {
    const char* name;
    const char* help;
    Handler handler;
  };
  const std::vector<Verb> single = {
      {"validate", "parse a complex or presentation and check d*d = 0", do_validate},
      {"homology", "integral homology of a complex or presentation", do_homology},
      {"snf", "Smith normal form divisors of an integer matrix", do_snf},
      {"fox", "chain complex of a presentation over its group ring", do_fox},
      {"moves-apply", "apply a move script and print the final presentation",
       do_moves_apply},
      {"moves-verify", "verify a move script or a certificate bundle", do_moves_verify},
      {"align", "align a chain map to the identity in degrees 0 and 1", do_align},
      {"reduce2", "reduce a homologically 2-dimensional complex to dimension 2",
       do_reduce2},
      {"split", "split an aligned chain map off as a based summand", do_split},
      {"realize", "decompose the 4-sphere model along a 2-complex", do_realize},
      {"make-dual", "canonical dual spine of a presentation", do_make_dual},
      {"verify-duality", "verify a duality certificate bundle", do_verify_duality},
  };

  std::map<std::string, Handler> handlers;
  for (const Verb& v : single) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    sub->add_option("files", opt.files, "input files")->required();
    sub->add_option("--emit-certificate", opt.cert_path, "write a certificate bundle");
    sub->add_option("--jobs", opt.jobs, "verify independent inputs concurrently");
    handlers[v.name] = v.handler;
  }

  CLI::App* synth = app.add_subcommand(
      "moves-synthesize", "synthesize a move script from a chain equivalence");
  synth->add_option("files", pair_files, "presentation files K and L")
      ->required()
      ->expected(2);
  synth->add_option("--emit-certificate", opt.cert_path, "write a certificate bundle");

  CLI::App* chk = app.add_subcommand(
      "check-dual", "test the homological duality criterion for two presentations");
  chk->add_option("files", pair_files, "presentation files K and L")
      ->required()
      ->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (app.got_subcommand(synth))
    return finish(do_moves_synthesize(opt, pair_files[0], pair_files[1]));
  if (app.got_subcommand(chk)) return finish(do_check_dual(pair_files[0], pair_files[1]));
  for (const auto& [name, handler] : handlers)
    if (app.got_subcommand(name)) return run_batch(opt, handler);
  std::cerr << "error: no verb selected\n";
  return 2;
}
