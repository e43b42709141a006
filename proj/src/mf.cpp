#include "ctxembed/mf.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "ctxembed/errors.hpp"
#include "ctxembed/random.hpp"

namespace ctxembed {

KatzOperator::KatzOperator(const Graph& g, double beta, double tolerance)
    : a_(adjacency_matrix(g)), beta_(beta) {
  at_ = a_.transpose();
  SpectralRadiusBounds bounds = check_katz_convergence(g, beta);
  if (beta == 0.0 || a_.nonZeros() == 0) return;

  // Pick the number of terms from a probe block: the spectral bound alone
  // says nothing useful for nilpotent (acyclic) graphs.
  const double rate = beta * bounds.upper < 1.0 ? beta * bounds.upper : 0.0;
  Rng rng(0x6b61747aULL);
  Eigen::MatrixXd probe(a_.cols(), 4);
  for (Eigen::Index j = 0; j < probe.cols(); ++j) {
    for (Eigen::Index i = 0; i < probe.rows(); ++i) probe(i, j) = std::abs(rng.normal());
  }
  Eigen::MatrixXd term = beta * (a_ * probe);
  const double first = term.norm();
  double previous = first;
  constexpr std::uint32_t kMaxTerms = 100000;
  for (std::uint32_t l = 2; l <= kMaxTerms; ++l) {
    if (previous == 0.0) return;
    term = beta * (a_ * term);
    const double norm = term.norm();
    const double ratio = std::max(rate, norm / previous);
    if (norm == 0.0) return;
    terms_ = l;
    if (ratio < 1.0 && norm * ratio / (1.0 - ratio) < tolerance * first) return;
    previous = norm;
  }
  throw ConvergenceError("Katz series did not reach the requested tolerance", kMaxTerms);
}

Eigen::MatrixXd KatzOperator::apply(const Eigen::MatrixXd& x) const {
  Eigen::MatrixXd y = beta_ * (a_ * x);
  for (std::uint32_t l = 1; l < terms_; ++l) y = beta_ * (a_ * (x + y));
  return y;
}

Eigen::MatrixXd KatzOperator::apply_transpose(const Eigen::MatrixXd& x) const {
  Eigen::MatrixXd y = beta_ * (at_ * x);
  for (std::uint32_t l = 1; l < terms_; ++l) y = beta_ * (at_ * (x + y));
  return y;
}

namespace {

Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

constexpr double kRankTolerance = 1e-10;
constexpr Eigen::Index kDenseResidualLimit = 4096;

double residual_from_factors(double c_norm_sq, const Eigen::MatrixXd& cv,
                             const FactorizationResult& r) {
  // ||C - U S V^T||^2 = ||C||^2 - 2 sum s_i u_i^T C v_i + sum s_i^2
  double cross = 0.0;
  for (Eigen::Index i = 0; i < r.singular_values.size(); ++i) {
    cross += r.singular_values[i] * r.left.col(i).dot(cv.col(i));
  }
  const double sq = c_norm_sq - 2.0 * cross + r.singular_values.squaredNorm();
  return std::sqrt(std::max(0.0, sq));
}

}  // namespace

FactorizationResult factorize(const LinearOperator& c, const FactorizeOptions& options) {
  const Eigen::Index m = c.rows();
  const Eigen::Index n = c.cols();
  const Eigen::Index k = options.dim;
  if (k < 1) throw PreconditionError("factorization rank must be >= 1");
  if (k > std::min(m, n)) {
    throw PreconditionError("factorization rank " + std::to_string(k) +
                            " exceeds min(rows, cols) = " + std::to_string(std::min(m, n)));
  }
  const Eigen::Index l = std::min<Eigen::Index>(k + options.oversample, std::min(m, n));

  Rng rng(options.seed);
  Eigen::MatrixXd omega(n, l);
  for (Eigen::Index j = 0; j < l; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) omega(i, j) = rng.normal();
  }
  Eigen::MatrixXd q = orthonormal_basis(c.apply(omega));
  for (std::uint32_t it = 0; it < options.power_iterations; ++it) {
    Eigen::MatrixXd z = orthonormal_basis(c.apply_transpose(q));
    q = orthonormal_basis(c.apply(z));
  }
  // B^T = C^T Q (n x l); B^T = W S Z^T gives C ~ (Q Z) S W^T.
  Eigen::MatrixXd bt = c.apply_transpose(q);
  if (!bt.allFinite()) throw PreconditionError("context matrix has non-finite entries");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(bt, Eigen::ComputeThinU | Eigen::ComputeThinV);

  FactorizationResult r;
  r.singular_values = svd.singularValues().head(k);
  r.left = q * svd.matrixV().leftCols(k);
  r.right = svd.matrixU().leftCols(k);

  const double top = r.singular_values.size() > 0 ? r.singular_values[0] : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (r.singular_values[i] > kRankTolerance * std::max(top, 1.0)) {
      ++rank;
    } else {
      r.singular_values[i] = 0.0;
    }
  }
  if (rank < k) {
    r.warning = "requested rank " + std::to_string(k) + " exceeds numerical rank " +
                std::to_string(rank) + "; trailing columns are zero";
  }
  Eigen::VectorXd root = r.singular_values.cwiseSqrt();
  r.source = r.left * root.asDiagonal();
  r.context = r.right * root.asDiagonal();
  return r;
}

FactorizationResult factorize(const Eigen::MatrixXd& c, const FactorizeOptions& options) {
  if (!c.allFinite()) throw PreconditionError("context matrix has non-finite entries");
  FactorizationResult r = factorize(DenseOperator(c), options);
  r.residual = residual_check(c, r);
  return r;
}

FactorizationResult factorize(const ContextMatrix& c, const FactorizeOptions& options) {
  const auto& m = c.values;
  for (Eigen::Index i = 0; i < m.outerSize(); ++i) {
    for (decltype(c.values)::InnerIterator it(m, i); it; ++it) {
      if (!std::isfinite(it.value())) {
        throw PreconditionError("context matrix has non-finite entries");
      }
    }
  }
  FactorizationResult r = factorize(SparseOperator(m), options);
  if (m.rows() <= kDenseResidualLimit && m.cols() <= kDenseResidualLimit) {
    r.residual = residual_check(c, r);
  } else {
    Eigen::MatrixXd cv = m * r.right;
    r.residual = residual_from_factors(m.squaredNorm(), cv, r);
  }
  return r;
}

double residual_check(const Eigen::MatrixXd& c, const FactorizationResult& r) {
  if (r.source.rows() != c.rows() || r.context.rows() != c.cols() ||
      r.source.cols() != r.context.cols()) {
    throw PreconditionError("factor dimensions do not match the matrix");
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      double approx = 0.0;
      for (Eigen::Index t = 0; t < r.source.cols(); ++t) approx += r.source(i, t) * r.context(j, t);
      const double diff = c(i, j) - approx;
      sum += diff * diff;
    }
  }
  return std::sqrt(sum);
}

double residual_check(const ContextMatrix& c, const FactorizationResult& r) {
  return residual_check(c.dense(), r);
}

EmbeddingSet to_embeddings(const FactorizationResult& r, bool with_context) {
  const auto n = static_cast<std::size_t>(r.source.rows());
  const auto d = static_cast<std::size_t>(r.source.cols());
  EmbeddingSet e(n, d, with_context);
  for (std::size_t u = 0; u < n; ++u) {
    auto phi = e.source(static_cast<NodeId>(u));
    for (std::size_t k = 0; k < d; ++k) phi[k] = static_cast<float>(r.source(u, k));
    if (with_context) {
      auto theta = e.context(static_cast<NodeId>(u));
      for (std::size_t k = 0; k < d; ++k) theta[k] = static_cast<float>(r.context(u, k));
    }
  }
  return e;
}

}  // namespace ctxembed
