#ifndef MOMSJUMP_LINMODEL_HPP
#define MOMSJUMP_LINMODEL_HPP

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <iosfwd>
#include <string>
#include <vector>

#include "momsjump/errors.hpp"
#include "momsjump/model_indicator.hpp"

namespace momsjump {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr double kDefaultConditionCap = 1e12;

/// Centered regression data with cached cross-products. Immutable after
/// construction; share freely across chains.
template <typename Scalar>
struct RegressionData {
  Eigen::Index n = 0;
  Eigen::Index p = 0;
  Vec<Scalar> y_centered;
  Mat<Scalar> X_centered;
  Mat<Scalar> XtX;
  Vec<Scalar> Xty;
  Scalar yty = 0;
  Scalar y_mean = 0;
  std::vector<std::string> predictor_names;
  std::string response_name;
  bool full_rank = false;
  std::vector<std::string> warnings;
};

/// OLS fit of the response on the included columns.
template <typename Scalar>
struct ModelFit {
  std::vector<Eigen::Index> included;
  Vec<Scalar> beta_hat;
  Scalar R2 = 0;
  Mat<Scalar> XtX_sub_inv;
  Scalar rss = 0;
};

/// Centers X and y and caches X'X, X'y and y'y. Raises DataError on
/// constant predictor columns or fewer than two rows.
template <typename Scalar>
RegressionData<Scalar> make_regression_data(const Mat<Scalar>& X, const Vec<Scalar>& y,
                                            std::vector<std::string> predictor_names = {},
                                            std::string response_name = "y") {
  if (X.rows() != y.size()) throw DataError("design and response have different row counts");
  if (X.rows() < 2) throw DataError("at least two observations are required");

  RegressionData<Scalar> d;
  d.n = X.rows();
  d.p = X.cols();
  if (predictor_names.empty())
    for (Eigen::Index j = 0; j < d.p; ++j) predictor_names.push_back("x" + std::to_string(j + 1));
  if (static_cast<Eigen::Index>(predictor_names.size()) != d.p)
    throw DataError("predictor name count does not match column count");
  d.predictor_names = std::move(predictor_names);
  d.response_name = std::move(response_name);

  d.y_mean = y.mean();
  d.y_centered = y.array() - d.y_mean;
  d.X_centered = X.rowwise() - X.colwise().mean();

  for (Eigen::Index j = 0; j < d.p; ++j) {
    const Scalar scale = X.col(j).cwiseAbs().maxCoeff();
    const Scalar spread = d.X_centered.col(j).cwiseAbs().maxCoeff();
    if (spread == Scalar(0) || spread <= Scalar(1e-12) * scale)
      throw DataError("predictor column '" + d.predictor_names[j] + "' is constant");
  }

  d.XtX = d.X_centered.transpose() * d.X_centered;
  d.Xty = d.X_centered.transpose() * d.y_centered;
  d.yty = d.y_centered.squaredNorm();
  if (d.yty <= Scalar(0)) throw DataError("response column is constant");

  if (d.n <= d.p + 1)
    d.warnings.push_back("n <= p + 1: the full model is under-determined; Forster proposals are unavailable");

  if (d.p == 0) {
    d.full_rank = true;
  } else {
    Eigen::SelfAdjointEigenSolver<Mat<Scalar>> eig(d.XtX, Eigen::EigenvaluesOnly);
    const Scalar lo = eig.eigenvalues().minCoeff();
    const Scalar hi = eig.eigenvalues().maxCoeff();
    d.full_rank = lo > Scalar(0) && hi / lo < Scalar(kDefaultConditionCap);
    if (!d.full_rank) d.warnings.push_back("full-model Gram matrix is not positive definite");
  }
  return d;
}

/// Gram submatrix of the included columns.
template <typename Scalar>
Mat<Scalar> sub_gram(const RegressionData<Scalar>& d, const std::vector<Eigen::Index>& idx) {
  return d.XtX(idx, idx);
}

template <typename Scalar>
std::string describe_model(const RegressionData<Scalar>& d, const ModelIndicator& gamma) {
  std::string s = "{";
  bool first = true;
  for (auto j : gamma.included()) {
    if (!first) s += ",";
    s += d.predictor_names[j];
    first = false;
  }
  return s + "}";
}

/// Least-squares fit of model `gamma`. The null model gives an empty
/// coefficient vector and R2 = 0.
template <typename Scalar>
ModelFit<Scalar> fit_model(const RegressionData<Scalar>& d, const ModelIndicator& gamma,
                           Scalar condition_cap = Scalar(kDefaultConditionCap)) {
  ModelFit<Scalar> fit;
  fit.included = gamma.included();
  const auto k = static_cast<Eigen::Index>(fit.included.size());
  if (k == 0) {
    fit.beta_hat.resize(0);
    fit.XtX_sub_inv.resize(0, 0);
    fit.rss = d.yty;
    fit.R2 = 0;
    return fit;
  }

  const Mat<Scalar> G = sub_gram(d, fit.included);
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> eig(G, Eigen::EigenvaluesOnly);
  const Scalar lo = eig.eigenvalues().minCoeff();
  const Scalar hi = eig.eigenvalues().maxCoeff();
  if (!(lo > Scalar(0)) || hi / lo > condition_cap)
    throw RankDeficiencyError("Gram submatrix of model " + describe_model(d, gamma) +
                              " is singular or ill-conditioned");

  Eigen::LLT<Mat<Scalar>> llt(G);
  const Vec<Scalar> b = d.Xty(fit.included);
  fit.beta_hat = llt.solve(b);
  fit.XtX_sub_inv = llt.solve(Mat<Scalar>::Identity(k, k));
  const Scalar explained = fit.beta_hat.dot(b);
  fit.rss = d.yty - explained;
  fit.R2 = explained / d.yty;
  return fit;
}

/// Cholesky factor of an included-column Gram submatrix. `ok` is false when
/// the submatrix is not numerically positive definite.
template <typename Scalar>
struct SubGramFactor {
  std::vector<Eigen::Index> included;
  Eigen::LLT<Mat<Scalar>> llt;
  Scalar log_det = 0;
  bool ok = true;

  SubGramFactor() = default;
  SubGramFactor(const RegressionData<Scalar>& d, std::vector<Eigen::Index> idx)
      : included(std::move(idx)) {
    if (included.empty()) return;
    llt.compute(sub_gram(d, included));
    if (llt.info() != Eigen::Success) {
      ok = false;
      return;
    }
    const auto diag = llt.matrixLLT().diagonal();
    const Scalar lo = diag.minCoeff();
    const Scalar hi = diag.maxCoeff();
    // Squared diagonal ratio bounds the condition number from below.
    if (!(lo > Scalar(0)) || (hi / lo) * (hi / lo) > Scalar(kDefaultConditionCap)) {
      ok = false;
      return;
    }
    log_det = Scalar(2) * diag.array().log().sum();
  }

  Eigen::Index size() const { return static_cast<Eigen::Index>(included.size()); }
};

// ---------------------------------------------------------------------------
// CSV ingestion

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Parses a comma-separated table with a header row. Every cell must be a
/// number; the error message names the offending row and column.
CsvTable read_csv(std::istream& in, const std::string& source = "<input>");
CsvTable read_csv_file(const std::string& path);

/// Splits `table` into response (`response_column`, or the last column when
/// empty) and predictors, then centers.
RegressionData<double> load_data(const CsvTable& table, const std::string& response_column = {});
RegressionData<double> load_data_file(const std::string& path, const std::string& response_column = {});

}  // namespace momsjump

#endif  // MOMSJUMP_LINMODEL_HPP
