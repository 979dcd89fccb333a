#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "thermoform/errors.hpp"

namespace thermoform {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Throws InvalidInputError unless a is square, nonempty and entrywise finite.
void check_square_finite(const Matrix& a);

// Largest singular value; accepts rectangular input with at least one column.
double operator_norm(const Matrix& a);

// Determinant test |det a| > tol * sigma_1^d used to admit generators.
bool is_invertible(const Matrix& a, double tol = 1e-12);

// All singular values in non-increasing order, via the symmetric
// eigendecomposition of a^T a (never a general SVD of a itself).
std::vector<double> singular_values(const Matrix& a);

// Largest eigenvalue modulus.
double spectral_radius(const Matrix& a);

// k-th exterior power in the basis of increasing k-index tuples ordered
// lexicographically; entries are k-by-k minors. k = 0 gives the 1x1 identity.
Matrix exterior_power(const Matrix& a, int k);

// Kronecker product of the factors, folded left to right.
Matrix tensor_product(const std::vector<Matrix>& factors);

enum class Proximality { kProximal, kNotProximal, kUndetermined };

enum class ProximalityCertificate {
  kSpectralGap,         // rho(a)^2 > sigma_1 sigma_2 alone settles it
  kEigenDecomposition,  // settled by comparing eigenvalue moduli
};

struct ProximalityReport {
  Proximality status = Proximality::kUndetermined;
  double leading_modulus = 0.0;  // rho(a)
  double gap_ratio = 0.0;        // rho(a)^2 / (sigma_1 sigma_2); +inf when d = 1
  // |lambda_1| / |lambda_2| of the two largest eigenvalue moduli; +inf when
  // d = 1 or lambda_2 = 0. The status is decided by this quantity.
  double modulus_ratio = 0.0;
  std::optional<Vector> leading_vector;  // unit; present iff proximal
  ProximalityCertificate certified_by = ProximalityCertificate::kEigenDecomposition;

  bool proximal() const { return status == Proximality::kProximal; }
};

// A map is proximal when the modulus ratio |lambda_1| / |lambda_2| of its two
// largest eigenvalue moduli exceeds 1 + tol. A ratio of exactly 1 is reported
// as not proximal; the band in between is undetermined rather than guessed.
// Dimension 1 is always proximal.
ProximalityReport is_proximal(const Matrix& a, double tol = 1e-8);

struct LeadingSpaces {
  Vector attracting_direction;  // unit vector spanning the top eigenspace
  Vector repelling_normal;      // unit normal of the invariant complement
};

// Attracting line and repelling hyperplane of a proximal map. The normal is
// the leading eigenvector of the transpose. Throws PreconditionError when the
// map is not proximal.
LeadingSpaces leading_spaces(const Matrix& a, double tol = 1e-8);

}  // namespace thermoform
