#ifndef MOMSJUMP_TESTS_SUPPORT_HPP
#define MOMSJUMP_TESTS_SUPPORT_HPP

#include <Eigen/Dense>

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

#include "momsjump/linmodel.hpp"

namespace testsupport {

inline std::string diabetes_path() { return std::string(MOMSJUMP_TEST_DATA_DIR) + "/diabetes.csv"; }

inline const momsjump::RegressionData<double>& diabetes() {
  static const auto d = momsjump::load_data_file(diabetes_path(), "Y");
  return d;
}

/// Fresh scratch directory under the system temp path.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("momsjump_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

/// y = X b + e with standard-normal design and noise.
inline momsjump::RegressionData<double> synthetic(Eigen::Index n, const Eigen::VectorXd& b, std::uint64_t seed,
                                                  double noise = 1.0, double corr = 0.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  const Eigen::Index p = b.size();
  Eigen::MatrixXd X(n, p);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double common = z(rng);
    for (Eigen::Index j = 0; j < p; ++j) X(i, j) = std::sqrt(1 - corr) * z(rng) + std::sqrt(corr) * common;
  }
  for (Eigen::Index i = 0; i < n; ++i) y(i) = X.row(i).dot(b) + noise * z(rng);
  return momsjump::make_regression_data<double>(X, y);
}

/// p = 2, n = 30 dataset whose four models all carry appreciable mass.
inline momsjump::RegressionData<double> small_two_predictor() {
  return synthetic(30, Eigen::Vector2d(0.35, 0.3), 7, 1.0, 0.5);
}

}  // namespace testsupport

#endif
