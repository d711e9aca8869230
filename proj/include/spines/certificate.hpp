#pragma once

#include <optional>
#include <string>

#include "spines/duality.hpp"
#include "spines/presentation.hpp"

namespace spines {

// The format-version triple embedded in every certificate and printed by the
// CLI's --version.  Bundles with a different major version are rejected.
inline constexpr int kFormatMajor = 1;
inline constexpr int kFormatMinor = 0;
inline constexpr int kFormatPatch = 0;

std::string format_version_string();

// Certificates are JSON bundles:
//   {"format_version": [1,0,0], "kind": "...", "payload": {...}}
// with three kinds.  All matrices ride along as ring-element strings, so a
// bundle is self-contained and re-verifiable in a fresh process.
//
//   presentation-moves: a move script, the claimed final presentation, the
//     chain complexes of both ends, the chain witness and the equivalence it
//     replays to.  Verification re-runs the script and compares everything.
//
//   chain-witness: replay certificates (start, result, witness, forward,
//     backward), one entry per verified equivalence.  Verification replays
//     each witness and compares.
//
//   duality: a duality datum (ambient chains, pairing, K, L, both structure
//     maps, the nullhomotopy) plus an optional recompute recipe.
//     Verification reconstructs the datum, runs the full duality check, and
//     re-derives the datum from the recipe when one is present.

std::string certificate_kind(const std::string& json_text);

// Emission.
std::string moves_certificate(const MoveSequence& script, const MovesToChainResult& run);

struct ChainWitnessEntry {
  std::string label;
  BasedComplex start;
  BasedComplex result;
  SimpleWitness witness;
  ChainMap forward;
  ChainMap backward;
};

std::string chain_witness_certificate(const std::vector<ChainWitnessEntry>& entries);

// `simple` is the witness handed to verify_simple_algebraic_duality (only
// meaningful over a nontrivial group).  The recompute fields, when set, name
// how to re-derive the datum: make_dual_K/make_dual_L for the spine builder,
// realize_input for the decomposition pipeline.
struct DualityCertificateData {
  DualityDatum datum;
  BasedComplex L_chains;
  std::optional<SimpleWitness> simple;
  std::optional<Presentation2Complex> make_dual_K;
  std::optional<Presentation2Complex> make_dual_L;
  std::optional<Presentation2Complex> realize_input;
};

std::string duality_certificate(const DualityCertificateData& data);

// Re-verification.  Throws CheckFailedError when a stored claim fails to
// hold and InvalidInputError (or ParseError) for malformed bundles.
void verify_moves_certificate(const std::string& json_text);
void verify_chain_witness_certificate(const std::string& json_text);
void verify_duality_certificate(const std::string& json_text);

}  // namespace spines
