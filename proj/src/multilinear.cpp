#include "thermoform/multilinear.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace thermoform {

namespace {

constexpr double kResidualTarget = 1e-10;
constexpr int kMaxPowerIterations = 100000;

void check_finite(const Matrix& a) {
  if (a.size() == 0) throw InvalidInputError("empty matrix");
  if (!a.allFinite()) throw InvalidInputError("matrix has non-finite entries");
}

// Orientation fix shared by eigenvector outputs: the first entry that is not
// negligible relative to the largest one is made positive.
void fix_sign(Vector& v) {
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12 * scale) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

// Sorted eigenvalue moduli, largest first.
std::vector<double> eigenvalue_moduli(const Matrix& a) {
  if (a.rows() == 1) return {std::abs(a(0, 0))};
  Eigen::EigenSolver<Matrix> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailureError("eigenvalue computation did not converge",
                                std::numeric_limits<double>::quiet_NaN());
  }
  std::vector<double> moduli(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    moduli[static_cast<std::size_t>(i)] = std::abs(solver.eigenvalues()[i]);
  }
  std::sort(moduli.rbegin(), moduli.rend());
  return moduli;
}

// Power iteration for the dominant eigendirection of a proximal map, seeded
// with the dense solver's eigenvector and polished until the residual
// |a v - theta v| drops below kResidualTarget * max(1, |theta|).
Vector dominant_direction(const Matrix& a) {
  Vector v;
  if (a.rows() == 1) {
    v = Vector::Ones(1);
  } else {
    Eigen::EigenSolver<Matrix> solver(a, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success) {
      throw NumericalFailureError("eigenvalue computation did not converge",
                                  std::numeric_limits<double>::quiet_NaN());
    }
    Eigen::Index lead = 0;
    for (Eigen::Index i = 1; i < a.rows(); ++i) {
      if (std::abs(solver.eigenvalues()[i]) >
          std::abs(solver.eigenvalues()[lead])) {
        lead = i;
      }
    }
    v = solver.eigenvectors().col(lead).real();
    if (v.norm() < 1e-8) v = Vector::Ones(a.rows());
    v.normalize();
  }

  double residual = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < kMaxPowerIterations; ++iter) {
    const Vector image = a * v;
    const double theta = v.dot(image);
    residual = (image - theta * v).norm();
    if (residual < kResidualTarget * std::max(1.0, std::abs(theta))) {
      fix_sign(v);
      return v;
    }
    const double norm = image.norm();
    if (norm == 0.0) break;
    v = image / norm;
    if (theta < 0.0) v = -v;  // keep the orientation stable for negative leads
  }
  throw NumericalFailureError("power iteration stalled", residual);
}

// Increasing k-tuples from {0,...,d-1} in lexicographic order.
std::vector<std::vector<int>> increasing_tuples(int d, int k) {
  std::vector<std::vector<int>> tuples;
  std::vector<int> tuple(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) tuple[static_cast<std::size_t>(i)] = i;
  while (true) {
    tuples.push_back(tuple);
    int pos = k - 1;
    while (pos >= 0 && tuple[static_cast<std::size_t>(pos)] == d - k + pos) --pos;
    if (pos < 0) break;
    ++tuple[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < k; ++i) {
      tuple[static_cast<std::size_t>(i)] = tuple[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  return tuples;
}

}  // namespace

void check_square_finite(const Matrix& a) {
  check_finite(a);
  if (a.rows() != a.cols()) {
    throw InvalidInputError("matrix must be square, got " +
                            std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()));
  }
}

double operator_norm(const Matrix& a) {
  check_finite(a);
  // sigma_1^2 is the top eigenvalue of the smaller Gram matrix.
  const Matrix gram =
      a.rows() <= a.cols() ? Matrix(a * a.transpose()) : Matrix(a.transpose() * a);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
  const double top = solver.eigenvalues().maxCoeff();
  return std::sqrt(std::max(top, 0.0));
}

bool is_invertible(const Matrix& a, double tol) {
  check_square_finite(a);
  const double norm = operator_norm(a);
  if (norm == 0.0) return false;
  return std::abs(a.determinant()) >
         tol * std::pow(norm, static_cast<double>(a.rows()));
}

std::vector<double> singular_values(const Matrix& a) {
  check_square_finite(a);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.transpose() * a,
                                               Eigen::EigenvaluesOnly);
  std::vector<double> values(static_cast<std::size_t>(a.rows()));
  // Eigen reports ascending eigenvalues; singular values come out descending.
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    values[static_cast<std::size_t>(i)] =
        std::sqrt(std::max(solver.eigenvalues()[a.rows() - 1 - i], 0.0));
  }
  return values;
}

double spectral_radius(const Matrix& a) {
  check_square_finite(a);
  return eigenvalue_moduli(a).front();
}

Matrix exterior_power(const Matrix& a, int k) {
  check_square_finite(a);
  const int d = static_cast<int>(a.rows());
  if (k < 0 || k > d) {
    throw InvalidInputError("exterior power order " + std::to_string(k) +
                            " outside [0, " + std::to_string(d) + "]");
  }
  if (k == 0) return Matrix::Identity(1, 1);
  const auto tuples = increasing_tuples(d, k);
  const auto n = static_cast<Eigen::Index>(tuples.size());
  Matrix result(n, n);
  Matrix minor(k, k);
  for (Eigen::Index row = 0; row < n; ++row) {
    for (Eigen::Index col = 0; col < n; ++col) {
      for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) {
          minor(r, c) = a(tuples[static_cast<std::size_t>(row)][static_cast<std::size_t>(r)],
                          tuples[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)]);
        }
      }
      result(row, col) = minor.determinant();
    }
  }
  return result;
}

Matrix tensor_product(const std::vector<Matrix>& factors) {
  if (factors.empty()) {
    throw InvalidInputError("tensor product needs at least one factor");
  }
  for (const Matrix& f : factors) check_square_finite(f);
  Matrix result = factors.front();
  for (std::size_t q = 1; q < factors.size(); ++q) {
    const Matrix& f = factors[q];
    Matrix next(result.rows() * f.rows(), result.cols() * f.cols());
    for (Eigen::Index i = 0; i < result.rows(); ++i) {
      for (Eigen::Index j = 0; j < result.cols(); ++j) {
        next.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) =
            result(i, j) * f;
      }
    }
    result = std::move(next);
  }
  return result;
}

ProximalityReport is_proximal(const Matrix& a, double tol) {
  check_square_finite(a);
  if (tol < 0.0) throw InvalidInputError("proximality tolerance must be >= 0");

  ProximalityReport report;
  if (a.rows() == 1) {
    report.status = Proximality::kProximal;
    report.leading_modulus = std::abs(a(0, 0));
    report.gap_ratio = std::numeric_limits<double>::infinity();
    report.modulus_ratio = std::numeric_limits<double>::infinity();
    report.certified_by = ProximalityCertificate::kSpectralGap;
    report.leading_vector = Vector::Ones(1);
    return report;
  }

  const auto moduli = eigenvalue_moduli(a);
  const auto sigma = singular_values(a);
  report.leading_modulus = moduli[0];
  const double sigma_pair = sigma[0] * sigma[1];
  report.gap_ratio = sigma_pair > 0.0
                         ? moduli[0] * moduli[0] / sigma_pair
                         : std::numeric_limits<double>::infinity();

  if (moduli[0] == 0.0) {
    report.status = Proximality::kNotProximal;
    return report;
  }
  const double ratio = moduli[1] == 0.0
                           ? std::numeric_limits<double>::infinity()
                           : moduli[0] / moduli[1];
  report.modulus_ratio = ratio;
  if (ratio > 1.0 + tol) {
    report.status = Proximality::kProximal;
    // rho^2 > sigma_1 sigma_2 already forces a simple leading eigenvalue, so
    // that cheaper test is recorded as the certificate when it fires.
    report.certified_by = report.gap_ratio > 1.0 + tol
                              ? ProximalityCertificate::kSpectralGap
                              : ProximalityCertificate::kEigenDecomposition;
    report.leading_vector = dominant_direction(a);
  } else if (ratio == 1.0) {
    report.status = Proximality::kNotProximal;
  } else {
    report.status = Proximality::kUndetermined;
  }
  return report;
}

LeadingSpaces leading_spaces(const Matrix& a, double tol) {
  const ProximalityReport report = is_proximal(a, tol);
  if (report.status != Proximality::kProximal) {
    throw PreconditionError(
        "leading spaces are defined only for proximal maps");
  }
  LeadingSpaces spaces;
  spaces.attracting_direction = *report.leading_vector;
  spaces.repelling_normal = dominant_direction(a.transpose());
  const double overlap =
      std::abs(spaces.attracting_direction.dot(spaces.repelling_normal));
  if (overlap <= kResidualTarget) {
    throw NumericalFailureError(
        "attracting direction lies inside the repelling hyperplane", overlap);
  }
  return spaces;
}

}  // namespace thermoform
