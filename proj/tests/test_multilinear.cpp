#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "thermoform/multilinear.hpp"
#include "thermoform/subspace.hpp"

using namespace thermoform;

namespace {

Matrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  Matrix a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) a(i, j) = entry(rng);
  }
  return a;
}

// Independent route to the singular values for cross-checking: Eigen's
// two-sided Jacobi SVD of a itself, never of the Gram matrix.
std::vector<double> svd_oracle(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  std::vector<double> out(static_cast<std::size_t>(svd.singularValues().size()));
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    out[static_cast<std::size_t>(i)] = svd.singularValues()[i];
  }
  return out;
}

Matrix rotation2(double theta) {
  Matrix r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

}  // namespace

TEST_CASE("operator_norm matches a direct SVD") {
  Matrix diag = Matrix::Zero(3, 3);
  diag.diagonal() << 5.0, 2.0, 1.0;
  CHECK(operator_norm(diag) == doctest::Approx(5.0).epsilon(1e-12));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 4);
    const int cols = 1 + static_cast<int>(rng() % 4);
    const Matrix a = random_matrix(rng, rows, cols);
    CHECK(operator_norm(a) ==
          doctest::Approx(svd_oracle(a).front()).epsilon(1e-10));
  }
  CHECK_THROWS_AS(operator_norm(Matrix()), InvalidInputError);
}

TEST_CASE("singular_values agree with a direct SVD and are sorted") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 4);
    const Matrix a = random_matrix(rng, d, d);
    const auto got = singular_values(a);
    const auto want = svd_oracle(a);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-9));
      if (i > 0) CHECK(got[i] <= got[i - 1] + 1e-15);
    }
    // The product of all singular values is |det|.
    double product = 1.0;
    for (double s : got) product *= s;
    CHECK(product ==
          doctest::Approx(std::abs(a.determinant())).epsilon(1e-8));
  }
}

TEST_CASE("spectral_radius on closed forms") {
  CHECK(spectral_radius(rotation2(0.9)) == doctest::Approx(1.0).epsilon(1e-12));
  Matrix shear(2, 2);
  shear << 1.0, 7.0, 0.0, 1.0;
  CHECK(spectral_radius(shear) == doctest::Approx(1.0).epsilon(1e-12));
  Matrix diag = Matrix::Zero(2, 2);
  diag.diagonal() << -4.0, 3.0;
  CHECK(spectral_radius(diag) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("is_invertible is scale free") {
  CHECK(is_invertible(Matrix::Identity(3, 3)));
  Matrix singular(2, 2);
  singular << 1.0, 2.0, 2.0, 4.0;
  CHECK_FALSE(is_invertible(singular));
  // The determinant test is relative to sigma_1^d, so scaling cannot rescue
  // a singular matrix.
  CHECK_FALSE(is_invertible(1e9 * singular));
  CHECK_FALSE(is_invertible(Matrix::Zero(2, 2)));
}

TEST_CASE("exterior_power closed forms") {
  std::mt19937_64 rng(13);
  const Matrix a = random_matrix(rng, 3, 3);
  CHECK(exterior_power(a, 0) == Matrix::Identity(1, 1));
  CHECK(exterior_power(a, 1) == a);
  const Matrix top = exterior_power(a, 3);
  REQUIRE(top.rows() == 1);
  CHECK(top(0, 0) == doctest::Approx(a.determinant()).epsilon(1e-12));
  CHECK(exterior_power(a, 2).rows() == 3);
  CHECK(exterior_power(random_matrix(rng, 4, 4), 2).rows() == 6);
  CHECK_THROWS_AS(exterior_power(a, 4), InvalidInputError);
  CHECK_THROWS_AS(exterior_power(a, -1), InvalidInputError);
}

TEST_CASE("exterior power norm equals the top singular value product") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 3);
    const Matrix a = random_matrix(rng, d, d);
    const auto sigma = singular_values(a);
    double product = 1.0;
    for (int k = 1; k <= d; ++k) {
      product *= sigma[static_cast<std::size_t>(k - 1)];
      const double norm = operator_norm(exterior_power(a, k));
      CHECK(norm == doctest::Approx(product).epsilon(1e-9));
    }
  }
}

TEST_CASE("exterior power is multiplicative") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 3);
    const Matrix a = random_matrix(rng, d, d);
    const Matrix b = random_matrix(rng, d, d);
    for (int k = 1; k <= d; ++k) {
      const Matrix lhs = exterior_power(Matrix(a * b), k);
      const Matrix rhs = exterior_power(a, k) * exterior_power(b, k);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() <=
            1e-9 * (1.0 + rhs.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("tensor_product norm and mixed product") {
  std::mt19937_64 rng(16);
  const Matrix a = random_matrix(rng, 2, 2);
  const Matrix b = random_matrix(rng, 3, 3);
  const Matrix c = random_matrix(rng, 2, 2);
  const Matrix d = random_matrix(rng, 3, 3);

  const Matrix ab = tensor_product({a, b});
  REQUIRE(ab.rows() == 6);
  CHECK(operator_norm(ab) ==
        doctest::Approx(operator_norm(a) * operator_norm(b)).epsilon(1e-9));

  const Matrix lhs = ab * tensor_product({c, d});
  const Matrix rhs = tensor_product({Matrix(a * c), Matrix(b * d)});
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10 * rhs.cwiseAbs().maxCoeff());

  CHECK(tensor_product({a}) == a);
  CHECK_THROWS_AS(tensor_product({}), InvalidInputError);
}

TEST_CASE("proximality of a dominant diagonal") {
  Matrix a = Matrix::Zero(2, 2);
  a.diagonal() << 2.0, 1.0;
  const auto report = is_proximal(a);
  CHECK(report.proximal());
  CHECK(report.leading_modulus == doctest::Approx(2.0));
  CHECK(report.modulus_ratio == doctest::Approx(2.0));
  CHECK(report.gap_ratio == doctest::Approx(2.0));
  CHECK(report.certified_by == ProximalityCertificate::kSpectralGap);
  REQUIRE(report.leading_vector.has_value());
  CHECK(std::abs((*report.leading_vector)(0)) == doctest::Approx(1.0));
  CHECK(std::abs((*report.leading_vector)(1)) == doctest::Approx(0.0));
}

TEST_CASE("rotations and shears are reported not proximal") {
  const auto rot = is_proximal(rotation2(0.7));
  CHECK(rot.status == Proximality::kNotProximal);
  CHECK(rot.modulus_ratio == 1.0);

  Matrix shear(2, 2);
  shear << 1.0, 1.0, 0.0, 1.0;
  CHECK(is_proximal(shear).status == Proximality::kNotProximal);

  Matrix nilpotent(2, 2);
  nilpotent << 0.0, 1.0, 0.0, 0.0;
  CHECK(is_proximal(nilpotent).status == Proximality::kNotProximal);
}

TEST_CASE("a ratio inside the tolerance band stays undetermined") {
  Matrix a = Matrix::Zero(2, 2);
  a.diagonal() << 1.0 + 1e-12, 1.0;
  CHECK(is_proximal(a, 1e-8).status == Proximality::kUndetermined);
  // The same gap is decisive once the tolerance is tightened below it.
  CHECK(is_proximal(a, 1e-13).status == Proximality::kProximal);
}

TEST_CASE("dimension one is always proximal") {
  Matrix a(1, 1);
  a << -3.0;
  const auto report = is_proximal(a);
  CHECK(report.proximal());
  CHECK(report.leading_modulus == doctest::Approx(3.0));
  CHECK(std::isinf(report.modulus_ratio));
  CHECK(std::isinf(report.gap_ratio));
}

TEST_CASE("eigenvalue comparison certifies when the singular gap cannot") {
  // Eigenvalue moduli (2, 1, 1) against sigma_1 sigma_2 ~ 200: the spectral
  // gap test rho^2 > sigma_1 sigma_2 fails, the eigenvalue route decides.
  Matrix a = Matrix::Zero(3, 3);
  a(0, 0) = 2.0;
  a(1, 1) = 1.0;
  a(1, 2) = 100.0;
  a(2, 2) = 1.0;
  const auto report = is_proximal(a);
  CHECK(report.proximal());
  CHECK(report.gap_ratio < 1.0);
  CHECK(report.certified_by == ProximalityCertificate::kEigenDecomposition);
}

TEST_CASE("leading_spaces splits a proximal map") {
  Matrix a(2, 2);
  a << 2.0, 1.0, 0.0, 1.0;
  const auto spaces = leading_spaces(a);
  CHECK(spaces.attracting_direction.norm() == doctest::Approx(1.0));
  CHECK(spaces.repelling_normal.norm() == doctest::Approx(1.0));
  // Attracting line: the lambda = 2 eigendirection e1.
  CHECK(std::abs(spaces.attracting_direction(0)) == doctest::Approx(1.0));
  // The invariant complement is spanned by (1, -1); the normal must kill it.
  Vector complement(2);
  complement << 1.0, -1.0;
  CHECK(std::abs(spaces.repelling_normal.dot(complement)) ==
        doctest::Approx(0.0).epsilon(1e-9));

  CHECK_THROWS_AS(leading_spaces(rotation2(0.5)), PreconditionError);
}

TEST_CASE("subspace canonicalisation is spanning-set independent") {
  Matrix span_a(3, 2);
  span_a << 1.0, 1.0, 1.0, -1.0, 0.0, 0.0;
  Matrix span_b(3, 3);
  span_b << 2.0, 0.0, 3.0, 0.0, 3.0, 3.0, 0.0, 0.0, 0.0;  // rank 2
  const Subspace a = Subspace::from_spanning(span_a);
  const Subspace b = Subspace::from_spanning(span_b);
  REQUIRE(a.dimension() == 2);
  REQUIRE(b.dimension() == 2);
  CHECK(same_subspace(a, b));
  CHECK((a.basis() - b.basis()).cwiseAbs().maxCoeff() <= 1e-9);

  CHECK_THROWS_AS(Subspace::from_spanning(Matrix::Zero(3, 2)),
                  InvalidInputError);
}

TEST_CASE("subspace_distance is the sine of the largest principal angle") {
  const Subspace e1 = Subspace::from_spanning(Vector::Unit(2, 0));
  const Subspace e2 = Subspace::from_spanning(Vector::Unit(2, 1));
  CHECK(subspace_distance(e1, e1) <= 1e-14);
  CHECK(subspace_distance(e1, e2) == doctest::Approx(1.0));

  const double theta = 0.3;
  Vector tilted(2);
  tilted << std::cos(theta), std::sin(theta);
  const Subspace t = Subspace::from_spanning(tilted);
  CHECK(subspace_distance(e1, t) == doctest::Approx(std::sin(theta)).epsilon(1e-12));
  CHECK(subspace_distance(t, e1) == doctest::Approx(std::sin(theta)).epsilon(1e-12));

  // Different dimensions are never the same span.
  const Subspace plane = Subspace::from_spanning(Matrix::Identity(2, 2));
  CHECK(subspace_distance(e1, plane) == doctest::Approx(1.0));
}

TEST_CASE("map_subspace pushes spans forward") {
  const Subspace e1 = Subspace::from_spanning(Vector::Unit(2, 0));
  const Subspace image = map_subspace(rotation2(M_PI / 2.0), e1);
  CHECK(same_subspace(image, Subspace::from_spanning(Vector::Unit(2, 1))));
}

TEST_CASE("class lookup and tuple ordering") {
  const Subspace e1 = Subspace::from_spanning(Vector::Unit(2, 0));
  const Subspace e2 = Subspace::from_spanning(Vector::Unit(2, 1));
  SubspaceClass cls;
  cls.members.push_back({e1, e1});
  cls.members.push_back({e2, e1});
  CHECK(cls.size() == 2);
  CHECK(cls.find({e1, e1}) == 0);
  CHECK(cls.find({e2, e1}) == 1);
  CHECK(cls.find({e2, e2}) == -1);

  const SubspaceTuple ta{e1, e1};
  const SubspaceTuple tb{e2, e1};
  CHECK(tuple_less(ta, tb) != tuple_less(tb, ta));
  CHECK_FALSE(tuple_less(ta, ta));
}

TEST_CASE("same_tuple compares factorwise") {
  const Subspace e1 = Subspace::from_spanning(Vector::Unit(2, 0));
  const Subspace e2 = Subspace::from_spanning(Vector::Unit(2, 1));
  CHECK(same_tuple({e1, e2}, {e1, e2}));
  CHECK_FALSE(same_tuple({e1, e2}, {e2, e1}));
  CHECK_FALSE(same_tuple({e1}, {e1, e2}));
}
