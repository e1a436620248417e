#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opradius/linalg.hpp"

namespace opradius {

enum class EnsembleKind {
  ginibre,
  hermitian,
  psd,
  unitary,
  normal,
  commuting_pair,
  commuting_pair_shared_basis,
  unit_vector,
  block,
};

std::string_view to_string(EnsembleKind k);
EnsembleKind ensemble_kind_from_string(std::string_view s);

/// Seeded description of a random input distribution.
///
/// `dim` is the matrix dimension, or the largest one when `min_dim` > 0 (the
/// dimension is then drawn per trial from [min_dim, dim]). For `block`, `grid`
/// is the (square) grid size, `block_dims` optionally pins the slot
/// dimensions (otherwise drawn per trial from [max(1, min_dim), dim]), and
/// `inner` selects the distribution of the diagonal blocks; off-diagonal
/// blocks are always ginibre.
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::ginibre;
  int dim = 2;
  double scale = 1.0;
  std::uint64_t seed = 0;
  int min_dim = 0;
  int grid = 2;
  std::vector<int> block_dims;
  EnsembleKind inner = EnsembleKind::ginibre;

  /// Throws InvalidSpec.
  void validate() const;
  bool single_matrix() const;
  bool commuting() const;

  bool operator==(const EnsembleSpec&) const = default;
};

struct Draw {
  ComplexMatrix t;                  // the matrix, or T of a pair
  ComplexMatrix s;                  // S of a commuting pair
  ComplexVector v;                  // unit_vector draws
  std::optional<BlockMatrix> blocks;
};

/// Deterministic in (spec, index). Substreams are keyed by spec.seed with
/// counter (index, lane), so trials can be drawn in any order or in
/// parallel.
Draw sample(const EnsembleSpec& spec, std::uint64_t index);

/// A second, independent matrix of the same single-matrix kind and dimension
/// as sample(spec, index).t (used by two-operand bounds).
ComplexMatrix sample_second(const EnsembleSpec& spec, std::uint64_t index);

/// Unit vector of length `dim` from lane `lane` of trial `index`. Lanes below
/// 1000 are reserved for sample().
ComplexVector sample_unit_vector(std::uint64_t seed, std::uint64_t index, std::uint32_t lane,
                                 int dim);

/// Dimension that sample(spec, index) uses (single-matrix and pair kinds).
int trial_dim(const EnsembleSpec& spec, std::uint64_t index);

}  // namespace opradius
