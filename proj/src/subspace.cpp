#include "thermoform/subspace.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>

namespace thermoform {

namespace {

constexpr double kRankTolerance = 1e-10;

// Orientation fix: first entry that is not negligible is made positive.
void fix_column_sign(Eigen::Ref<Vector> column) {
  const double scale = column.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < column.size(); ++i) {
    if (std::abs(column[i]) > 1e-12 * scale) {
      if (column[i] < 0.0) column = -column;
      return;
    }
  }
}

// Canonical orthonormal basis of the column span of an orthonormal input.
// Works on the projector (which depends only on the span), peeling off the
// residual column of largest norm at each step; ties go to the lowest index.
Matrix canonicalise(const Matrix& orthonormal) {
  const Eigen::Index d = orthonormal.rows();
  const Eigen::Index l = orthonormal.cols();
  Matrix residual = orthonormal * orthonormal.transpose();  // projector columns
  Matrix basis(d, l);
  for (Eigen::Index step = 0; step < l; ++step) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index c = 0; c < d; ++c) {
      const double norm = residual.col(c).norm();
      if (norm > best + 1e-12) {
        best = norm;
        pivot = c;
      }
    }
    Vector v = residual.col(pivot);
    // Re-orthogonalise against the vectors already chosen for stability.
    for (Eigen::Index prev = 0; prev < step; ++prev) {
      v -= basis.col(prev).dot(v) * basis.col(prev);
    }
    v.normalize();
    fix_column_sign(v);
    basis.col(step) = v;
    residual -= v * (v.transpose() * residual);
  }
  return basis;
}

}  // namespace

Subspace Subspace::from_spanning(const Matrix& spanning_columns) {
  if (spanning_columns.size() == 0 || !spanning_columns.allFinite()) {
    throw InvalidInputError("subspace needs a finite nonempty spanning set");
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(spanning_columns);
  qr.setThreshold(kRankTolerance);
  const Eigen::Index rank = qr.rank();
  if (rank == 0) {
    throw InvalidInputError("spanning set has rank zero");
  }
  const Matrix orthonormal =
      qr.householderQ() * Matrix::Identity(spanning_columns.rows(), rank);
  return Subspace(canonicalise(orthonormal));
}

double subspace_distance(const Subspace& a, const Subspace& b) {
  if (a.ambient_dimension() != b.ambient_dimension()) {
    throw InvalidInputError("subspace distance needs equal ambient dimensions");
  }
  if (a.dimension() != b.dimension()) return 1.0;
  // (I - P_a) B_b has singular values sin(theta_i).
  const Matrix defect =
      b.basis() - a.basis() * (a.basis().transpose() * b.basis());
  return std::min(operator_norm(defect), 1.0);
}

bool same_subspace(const Subspace& a, const Subspace& b, double tol) {
  return a.ambient_dimension() == b.ambient_dimension() &&
         a.dimension() == b.dimension() && subspace_distance(a, b) < tol;
}

Subspace map_subspace(const Matrix& a, const Subspace& s) {
  check_square_finite(a);
  if (a.rows() != s.ambient_dimension()) {
    throw InvalidInputError("map and subspace ambient dimensions differ");
  }
  return Subspace::from_spanning(a * s.basis());
}

bool same_tuple(const SubspaceTuple& a, const SubspaceTuple& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (!same_subspace(a[j], b[j], tol)) return false;
  }
  return true;
}

std::ptrdiff_t SubspaceClass::find(const SubspaceTuple& tuple, double tol) const {
  for (std::size_t r = 0; r < members.size(); ++r) {
    if (same_tuple(members[r], tuple, tol)) return static_cast<std::ptrdiff_t>(r);
  }
  return -1;
}

bool tuple_less(const SubspaceTuple& a, const SubspaceTuple& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j].dimension() != b[j].dimension()) {
      return a[j].dimension() < b[j].dimension();
    }
    const Matrix& ma = a[j].basis();
    const Matrix& mb = b[j].basis();
    for (Eigen::Index c = 0; c < ma.cols(); ++c) {
      for (Eigen::Index r = 0; r < ma.rows(); ++r) {
        if (ma(r, c) != mb(r, c)) return ma(r, c) < mb(r, c);
      }
    }
  }
  return false;
}

}  // namespace thermoform
