#include "doctest.h"

#include <Eigen/QR>

#include <sstream>

#include "momsjump/linmodel.hpp"
#include "support.hpp"

using namespace momsjump;

TEST_SUITE("linmodel") {

TEST_CASE("centering of a three-row table") {
  std::istringstream in("x,y\n1,2\n2,4\n3,6\n");
  auto d = load_data(read_csv(in), "y");
  CHECK(d.n == 3);
  CHECK(d.p == 1);
  CHECK(d.y_centered(0) == doctest::Approx(-2));
  CHECK(d.y_centered(1) == doctest::Approx(0));
  CHECK(d.y_centered(2) == doctest::Approx(2));
  CHECK(d.X_centered(0, 0) == doctest::Approx(-1));
  CHECK(d.X_centered(2, 0) == doctest::Approx(1));
  CHECK(d.y_mean == doctest::Approx(4));
  CHECK(d.predictor_names == std::vector<std::string>{"x"});
}

TEST_CASE("default response is the last column") {
  std::istringstream in("a,b,c\n1,5,2\n2,3,4\n3,9,7\n4,1,1\n");
  auto d = load_data(read_csv(in));
  CHECK(d.response_name == "c");
  CHECK(d.predictor_names == std::vector<std::string>{"a", "b"});
}

TEST_CASE("centered columns sum to zero") {
  auto d = testsupport::synthetic(57, Eigen::Vector3d(1, -2, 0.5), 3);
  CHECK(std::abs(d.y_centered.sum()) < 1e-10);
  for (Eigen::Index j = 0; j < d.p; ++j) CHECK(std::abs(d.X_centered.col(j).sum()) < 1e-10);
}

TEST_CASE("malformed input names the row and column") {
  std::istringstream in("x,y\n1,2\n2,abc\n");
  try {
    read_csv(in, "toy.csv");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("toy.csv:3") != std::string::npos);
    CHECK(msg.find("'y'") != std::string::npos);
    CHECK(e.code() == ExitCode::data);
  }
  std::istringstream ragged("x,y\n1,2,3\n");
  CHECK_THROWS_AS(read_csv(ragged), DataError);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_csv(empty), DataError);
}

TEST_CASE("constant predictor or response is rejected") {
  std::istringstream in("x,z,y\n1,5,2\n2,5,4\n3,5,7\n");
  CHECK_THROWS_AS(load_data(read_csv(in), "y"), DataError);
  std::istringstream flat("x,y\n1,2\n2,2\n3,2\n");
  CHECK_THROWS_AS(load_data(read_csv(flat), "y"), DataError);
  std::istringstream missing("x,y\n1,2\n2,3\n");
  CHECK_THROWS_AS(load_data(read_csv(missing), "w"), DataError);
}

TEST_CASE("small n triggers a warning") {
  auto d = testsupport::synthetic(4, Eigen::Vector3d(1, 1, 1), 5);
  CHECK_FALSE(d.warnings.empty());
}

TEST_CASE("null model fit") {
  const auto& d = testsupport::diabetes();
  auto fit = fit_model(d, ModelIndicator(d.p));
  CHECK(fit.beta_hat.size() == 0);
  CHECK(fit.R2 == 0);
  CHECK(fit.rss == d.yty);
}

TEST_CASE("orthonormal single column") {
  Eigen::MatrixXd raw = Eigen::MatrixXd::Random(40, 1);
  raw.col(0).array() -= raw.col(0).mean();
  raw.col(0).normalize();
  Eigen::VectorXd y = Eigen::VectorXd::Random(40);
  auto d = make_regression_data<double>(raw, y);
  auto fit = fit_model(d, ModelIndicator(1, true));
  const double c = raw.col(0).dot(d.y_centered);
  CHECK(fit.beta_hat(0) == doctest::Approx(c).epsilon(1e-12));
  CHECK(fit.R2 == doctest::Approx(c * c / d.yty).epsilon(1e-12));
}

TEST_CASE("diabetes full model against a QR fit with intercept") {
  const auto& d = testsupport::diabetes();
  CHECK(d.n == 442);
  CHECK(d.p == 10);
  CHECK(d.full_rank);

  auto table = read_csv_file(testsupport::diabetes_path());
  Eigen::MatrixXd A(d.n, d.p + 1);
  Eigen::VectorXd y(d.n);
  const auto yc = static_cast<std::size_t>(std::find(table.header.begin(), table.header.end(), "Y") -
                                           table.header.begin());
  for (Eigen::Index i = 0; i < d.n; ++i) {
    const auto& row = table.rows[static_cast<std::size_t>(i)];
    A(i, 0) = 1;
    Eigen::Index c = 1;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j == yc)
        y(i) = row[j];
      else
        A(i, c++) = row[j];
    }
  }
  Eigen::VectorXd coef = A.colPivHouseholderQr().solve(y);
  const double rss = (y - A * coef).squaredNorm();
  const double tss = (y.array() - y.mean()).matrix().squaredNorm();

  auto fit = fit_model(d, ModelIndicator(d.p, true));
  for (Eigen::Index j = 0; j < d.p; ++j)
    CHECK(fit.beta_hat(j) == doctest::Approx(coef(j + 1)).epsilon(1e-8));
  CHECK(fit.R2 == doctest::Approx(1 - rss / tss).epsilon(1e-10));
  CHECK(fit.rss + fit.R2 * d.yty == doctest::Approx(d.yty).epsilon(1e-12));
}

TEST_CASE("R2 is monotone under nesting") {
  const auto& d = testsupport::diabetes();
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> mask(0, (1u << d.p) - 1);
  std::uniform_int_distribution<Eigen::Index> col(0, d.p - 1);
  for (int rep = 0; rep < 200; ++rep) {
    auto small = ModelIndicator::from_mask(static_cast<std::size_t>(d.p), mask(rng));
    auto big = small;
    big.set(static_cast<std::size_t>(col(rng)), true);
    CHECK(fit_model(d, big).R2 >= fit_model(d, small).R2 - 1e-12);
  }
}

TEST_CASE("fits are pure") {
  const auto& d = testsupport::diabetes();
  auto gamma = ModelIndicator::from_string("0111001001");
  auto a = fit_model(d, gamma);
  auto b = fit_model(d, gamma);
  CHECK(a.R2 == b.R2);
  CHECK(a.beta_hat == b.beta_hat);
}

TEST_CASE("singular submatrix names the model") {
  Eigen::MatrixXd X(6, 2);
  X << 1, 2, 2, 4, 3, 6, 4, 8, 5, 10, 6, 12;
  Eigen::VectorXd y(6);
  y << 1, 3, 2, 5, 4, 6;
  auto d = make_regression_data<double>(X, y);
  CHECK_FALSE(d.full_rank);
  try {
    fit_model(d, ModelIndicator(2, true));
    FAIL("expected RankDeficiencyError");
  } catch (const RankDeficiencyError& e) {
    CHECK(std::string(e.what()).find("{x1,x2}") != std::string::npos);
  }
  CHECK_NOTHROW(fit_model(d, ModelIndicator::from_string("10")));
}

TEST_CASE("model indicator ordering and round trip") {
  auto m = ModelIndicator::from_string("0110");
  CHECK(m.size() == 2);
  CHECK(m.to_string() == "0110");
  CHECK(m.included() == std::vector<Eigen::Index>{1, 2});
  CHECK(ModelIndicator::from_mask(4, 0b0110) == m);
  CHECK(ModelIndicator::from_string("0011") < m);
  CHECK(m.flipped(0).size() == 3);
}

}
