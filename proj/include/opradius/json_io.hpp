#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "opradius/ensembles.hpp"
#include "opradius/linalg.hpp"
#include "opradius/term_chain.hpp"

namespace opradius {

using Json = nlohmann::json;

// {"rows": R, "cols": C, "data": [[re, im], ...]} row-major.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

// {"grid": [GR, GC], "blocks": [[<matrix>, ...], ...]}
Json block_to_json(const BlockMatrix& a);
BlockMatrix block_from_json(const Json& j);

// {"dim": n, "data": [[re, im], ...]}
Json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const Json& j);

// {"kind", "dim", "scale", "seed"} plus min_dim, grid, block_dims, inner when
// they differ from the defaults.
Json ensemble_to_json(const EnsembleSpec& e);
EnsembleSpec ensemble_from_json(const Json& j);

Json chain_to_json(const TermChain& c);
TermChain chain_from_json(const Json& j);
Json evaluation_to_json(const BoundEvaluation& e);
BoundEvaluation evaluation_from_json(const Json& j);

/// All parse failures (bad syntax, missing keys, wrong types, non-finite
/// entries) surface as Error(ParseError).
Json parse_json(const std::string& text);
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

/// Canonical text form: 2-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace opradius
