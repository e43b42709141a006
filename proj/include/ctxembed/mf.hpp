#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstdint>
#include <optional>
#include <string>

#include "ctxembed/context.hpp"
#include "ctxembed/graph.hpp"
#include "ctxembed/sgns.hpp"

namespace ctxembed {

/// Matrix accessed only through products with dense blocks.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual Eigen::Index rows() const = 0;
  virtual Eigen::Index cols() const = 0;
  virtual Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const = 0;            // C x
  virtual Eigen::MatrixXd apply_transpose(const Eigen::MatrixXd& x) const = 0;  // C^T x
};

class SparseOperator final : public LinearOperator {
 public:
  explicit SparseOperator(const Eigen::SparseMatrix<double, Eigen::RowMajor>& m) : m_(m) {}
  Eigen::Index rows() const override { return m_.rows(); }
  Eigen::Index cols() const override { return m_.cols(); }
  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const override { return m_ * x; }
  Eigen::MatrixXd apply_transpose(const Eigen::MatrixXd& x) const override {
    return m_.transpose() * x;
  }

 private:
  const Eigen::SparseMatrix<double, Eigen::RowMajor>& m_;
};

class DenseOperator final : public LinearOperator {
 public:
  explicit DenseOperator(const Eigen::MatrixXd& m) : m_(m) {}
  Eigen::Index rows() const override { return m_.rows(); }
  Eigen::Index cols() const override { return m_.cols(); }
  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const override { return m_ * x; }
  Eigen::MatrixXd apply_transpose(const Eigen::MatrixXd& x) const override {
    return m_.transpose() * x;
  }

 private:
  const Eigen::MatrixXd& m_;
};

/// Katz proximity sum_{l=1..L} beta^l A^l without forming it: products are
/// evaluated by Horner's rule with the sparse adjacency. L is chosen so the
/// dropped tail is below `tolerance` relative to the leading term.
class KatzOperator final : public LinearOperator {
 public:
  KatzOperator(const Graph& g, double beta, double tolerance = 1e-10);
  Eigen::Index rows() const override { return a_.rows(); }
  Eigen::Index cols() const override { return a_.cols(); }
  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const override;
  Eigen::MatrixXd apply_transpose(const Eigen::MatrixXd& x) const override;
  std::uint32_t terms() const noexcept { return terms_; }

 private:
  Eigen::SparseMatrix<double, Eigen::RowMajor> a_;
  Eigen::SparseMatrix<double, Eigen::RowMajor> at_;
  double beta_;
  std::uint32_t terms_ = 1;
};

struct FactorizeOptions {
  std::uint32_t dim = 128;
  std::uint32_t oversample = 10;
  std::uint32_t power_iterations = 4;
  std::uint64_t seed = 1;
};

struct FactorizationResult {
  Eigen::MatrixXd source;   ///< U sqrt(S)
  Eigen::MatrixXd context;  ///< V sqrt(S)
  Eigen::VectorXd singular_values;
  Eigen::MatrixXd left;   ///< U, orthonormal columns
  Eigen::MatrixXd right;  ///< V, orthonormal columns
  /// ||C - source context^T||_F when C was given explicitly.
  std::optional<double> residual;
  /// Set when trailing singular values vanish (dim exceeds the numerical rank).
  std::optional<std::string> warning;
};

/// Rank-`dim` truncated SVD by randomized subspace iteration. Throws
/// PreconditionError when dim exceeds min(rows, cols) or C is not finite.
FactorizationResult factorize(const LinearOperator& c, const FactorizeOptions& options);
FactorizationResult factorize(const ContextMatrix& c, const FactorizeOptions& options);
FactorizationResult factorize(const Eigen::MatrixXd& c, const FactorizeOptions& options);

/// ||C - source context^T||_F recomputed entry by entry.
double residual_check(const Eigen::MatrixXd& c, const FactorizationResult& r);
double residual_check(const ContextMatrix& c, const FactorizationResult& r);

/// Copies the factors into an EmbeddingSet (context kept when `with_context`).
EmbeddingSet to_embeddings(const FactorizationResult& r, bool with_context);

}  // namespace ctxembed
