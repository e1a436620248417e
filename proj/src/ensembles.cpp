#include "opradius/ensembles.hpp"

#include <cmath>

#include "opradius/philox.hpp"

namespace opradius {

namespace {

// Lane layout inside one trial.
constexpr std::uint32_t kLaneDim = 0;
constexpr std::uint32_t kLaneMain = 1;
constexpr std::uint32_t kLaneAux = 2;
constexpr std::uint32_t kLanePoly = 3;
constexpr std::uint32_t kLaneSecond = 4;  // 4..7 for sample_second
constexpr std::uint32_t kLaneBlock = 8;   // blocks use their own key below

ComplexMatrix ginibre(rng::Stream& st, int rows, int cols, double scale) {
  ComplexMatrix g(rows, cols);
  // Row-major fill so the draw order matches the JSON layout.
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = scale * st.complex_normal();
  }
  return g;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

ComplexMatrix haar_unitary(rng::Stream& st, int n) {
  const ComplexMatrix g = ginibre(st, n, n, 1.0);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix& r = qr.matrixQR();
  for (int k = 0; k < n; ++k) {
    const double m = std::abs(r(k, k));
    if (m > 0.0) q.col(k) *= r(k, k) / m;
  }
  return q;
}

ComplexMatrix psd_draw(rng::Stream& st, int n, double scale) {
  const ComplexMatrix g = ginibre(st, n, n, 1.0);
  return hermitian_part(g.adjoint() * g * (scale / n));
}

ComplexMatrix single(EnsembleKind kind, int n, double scale, std::uint64_t seed,
                     std::uint64_t index, std::uint32_t lane0) {
  rng::Stream main(seed, index, lane0);
  switch (kind) {
    case EnsembleKind::ginibre: return ginibre(main, n, n, scale);
    case EnsembleKind::hermitian: return hermitian_part(ginibre(main, n, n, scale));
    case EnsembleKind::psd: return psd_draw(main, n, scale);
    case EnsembleKind::unitary: return haar_unitary(main, n);
    case EnsembleKind::normal: {
      rng::Stream aux(seed, index, lane0 + 1);
      const ComplexMatrix u = haar_unitary(aux, n);
      ComplexVector z(n);
      for (int k = 0; k < n; ++k) z(k) = scale * main.complex_normal();
      return u * z.asDiagonal() * u.adjoint();
    }
    default: break;
  }
  throw Error(ErrorKind::InvalidSpec, "not a single-matrix ensemble kind");
}

// (V P, q(P)) with q a random real cubic.
void commuting_pair(const EnsembleSpec& spec, int n, std::uint64_t index, Draw& out) {
  rng::Stream main(spec.seed, index, kLaneMain);
  rng::Stream aux(spec.seed, index, kLaneAux);
  rng::Stream poly(spec.seed, index, kLanePoly);
  const ComplexMatrix p = psd_draw(main, n, spec.scale);
  const ComplexMatrix v = haar_unitary(aux, n);
  double c[4];
  for (double& ck : c) ck = poly.uniform(-1.0, 1.0);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  // Horner in P, symmetrized so that S is exactly Hermitian.
  ComplexMatrix s = c[3] * id;
  for (int k = 2; k >= 0; --k) s = hermitian_part(s * p) + c[k] * id;
  out.t = v * p;
  out.s = s;
}

// |T| = W diag(lambda) W*, S = W diag(mu) W*, with repeated and zero
// eigenvalues of |T| occurring with positive probability.
void commuting_pair_shared(const EnsembleSpec& spec, int n, std::uint64_t index, Draw& out) {
  rng::Stream main(spec.seed, index, kLaneMain);
  rng::Stream aux(spec.seed, index, kLaneAux);
  rng::Stream poly(spec.seed, index, kLanePoly);
  const ComplexMatrix w = haar_unitary(aux, n);
  const ComplexMatrix v = haar_unitary(aux, n);
  RealVector lambda(n);
  RealVector mu(n);
  for (int k = 0; k < n; ++k) {
    const double u = main.uniform();
    if (u < 0.15) {
      lambda(k) = 0.0;
    } else if (u < 0.5 && k > 0) {
      lambda(k) = lambda(k - 1);
    } else {
      lambda(k) = spec.scale * std::abs(main.normal());
    }
    mu(k) = poly.normal();
  }
  const ComplexMatrix p = hermitian_part(w * lambda.cast<Complex>().asDiagonal() * w.adjoint());
  out.t = v * p;
  out.s = hermitian_part(w * mu.cast<Complex>().asDiagonal() * w.adjoint());
}

BlockMatrix block_draw(const EnsembleSpec& spec, std::uint64_t index) {
  rng::Stream dims(spec.seed, index, kLaneBlock);
  const int g = spec.grid;
  std::vector<int> d(g);
  for (int i = 0; i < g; ++i) {
    d[i] = spec.block_dims.empty() ? dims.uniform_int(std::max(1, spec.min_dim), spec.dim)
                                   : spec.block_dims[i];
  }
  std::vector<std::vector<ComplexMatrix>> blocks(g, std::vector<ComplexMatrix>(g));
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      const auto lane = static_cast<std::uint32_t>(16 + 2 * (i * g + j));
      if (i == j) {
        blocks[i][j] = single(spec.inner, d[i], spec.scale, spec.seed, index, lane);
      } else {
        rng::Stream st(spec.seed, index, lane);
        blocks[i][j] = ginibre(st, d[i], d[j], spec.scale);
      }
    }
  }
  return BlockMatrix(std::move(blocks));
}

}  // namespace

std::string_view to_string(EnsembleKind k) {
  switch (k) {
    case EnsembleKind::ginibre: return "ginibre";
    case EnsembleKind::hermitian: return "hermitian";
    case EnsembleKind::psd: return "psd";
    case EnsembleKind::unitary: return "unitary";
    case EnsembleKind::normal: return "normal";
    case EnsembleKind::commuting_pair: return "commuting_pair";
    case EnsembleKind::commuting_pair_shared_basis: return "commuting_pair_shared_basis";
    case EnsembleKind::unit_vector: return "unit_vector";
    case EnsembleKind::block: return "block";
  }
  return "?";
}

EnsembleKind ensemble_kind_from_string(std::string_view s) {
  for (auto k : {EnsembleKind::ginibre, EnsembleKind::hermitian, EnsembleKind::psd,
                 EnsembleKind::unitary, EnsembleKind::normal, EnsembleKind::commuting_pair,
                 EnsembleKind::commuting_pair_shared_basis, EnsembleKind::unit_vector,
                 EnsembleKind::block}) {
    if (to_string(k) == s) return k;
  }
  throw Error(ErrorKind::InvalidSpec, "unknown ensemble kind '" + std::string(s) + "'");
}

bool EnsembleSpec::single_matrix() const {
  switch (kind) {
    case EnsembleKind::ginibre:
    case EnsembleKind::hermitian:
    case EnsembleKind::psd:
    case EnsembleKind::unitary:
    case EnsembleKind::normal: return true;
    default: return false;
  }
}

bool EnsembleSpec::commuting() const {
  return kind == EnsembleKind::commuting_pair || kind == EnsembleKind::commuting_pair_shared_basis;
}

void EnsembleSpec::validate() const {
  if (dim < 1) throw Error(ErrorKind::InvalidSpec, "dim must be >= 1", dim);
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorKind::InvalidSpec, "scale must be positive", scale);
  }
  if (min_dim < 0 || min_dim > dim) {
    throw Error(ErrorKind::InvalidSpec, "min_dim must lie in [0, dim]", min_dim);
  }
  if (kind == EnsembleKind::block) {
    if (grid < 1) throw Error(ErrorKind::InvalidSpec, "grid must be >= 1", grid);
    if (!block_dims.empty()) {
      if (static_cast<int>(block_dims.size()) != grid) {
        throw Error(ErrorKind::InvalidSpec, "block_dims must have one entry per grid slot");
      }
      for (int d : block_dims) {
        if (d < 1) throw Error(ErrorKind::InvalidSpec, "block dims must be >= 1", d);
      }
    }
    EnsembleSpec in = *this;
    in.kind = inner;
    if (!in.single_matrix()) {
      throw Error(ErrorKind::InvalidSpec, "inner kind must be a single-matrix kind");
    }
  }
}

int trial_dim(const EnsembleSpec& spec, std::uint64_t index) {
  if (spec.min_dim == 0 || spec.min_dim == spec.dim) return spec.dim;
  rng::Stream st(spec.seed, index, kLaneDim);
  return st.uniform_int(spec.min_dim, spec.dim);
}

Draw sample(const EnsembleSpec& spec, std::uint64_t index) {
  spec.validate();
  Draw out;
  if (spec.kind == EnsembleKind::block) {
    out.blocks = block_draw(spec, index);
    return out;
  }
  const int n = trial_dim(spec, index);
  switch (spec.kind) {
    case EnsembleKind::commuting_pair: commuting_pair(spec, n, index, out); break;
    case EnsembleKind::commuting_pair_shared_basis: commuting_pair_shared(spec, n, index, out); break;
    case EnsembleKind::unit_vector: out.v = sample_unit_vector(spec.seed, index, kLaneMain, n); break;
    default: out.t = single(spec.kind, n, spec.scale, spec.seed, index, kLaneMain); break;
  }
  return out;
}

ComplexMatrix sample_second(const EnsembleSpec& spec, std::uint64_t index) {
  spec.validate();
  if (!spec.single_matrix()) {
    throw Error(ErrorKind::InvalidSpec, "second operand needs a single-matrix kind");
  }
  return single(spec.kind, trial_dim(spec, index), spec.scale, spec.seed, index, kLaneSecond);
}

ComplexVector sample_unit_vector(std::uint64_t seed, std::uint64_t index, std::uint32_t lane,
                                 int dim) {
  rng::Stream st(seed, index, lane);
  ComplexVector v(dim);
  for (int k = 0; k < dim; ++k) v(k) = st.complex_normal();
  return v / v.norm();
}

}  // namespace opradius
