#pragma once

// Dense Hermitian linear algebra on bipartite spaces.
//
// Composite index convention: for an operator on H_in (dim d1) tensor H_out
// (dim d2), row/column index = input_index * d2 + output_index. kron(A, B)
// therefore places A on the input factor and B on the output factor.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "cptp/errors.hpp"

namespace cptp {

using Index = Eigen::Index;
using Complex = std::complex<double>;

/// Square matrix equal to its own conjugate transpose.
///
/// Construction checks the asymmetry ‖M − M†‖_max against
/// kAsymmetryTol·max(1, ‖M‖_max) and then replaces M by (M + M†)/2, so every
/// instance is exactly Hermitian and has a real diagonal.
template <typename Scalar>
class Hermitian {
 public:
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  static constexpr Real kAsymmetryTol = 1e-12;

  Hermitian() = default;

  explicit Hermitian(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
      throw InvalidDimension("Hermitian matrix must be square, got " +
                             std::to_string(m_.rows()) + "x" +
                             std::to_string(m_.cols()));
    }
    if (!m_.allFinite()) throw InvalidArgument("matrix has non-finite entries");
    if (m_.size() == 0) return;
    const Real scale = std::max<Real>(1, m_.cwiseAbs().maxCoeff());
    const Real asym = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kAsymmetryTol * scale) {
      throw InvalidArgument("matrix is not Hermitian (asymmetry " +
                            std::to_string(asym) + ")");
    }
    Matrix sym = (m_ + m_.adjoint()) / Real(2);
    m_ = std::move(sym);
  }

  static Hermitian identity(Index d) { return Hermitian(Matrix::Identity(d, d)); }
  static Hermitian zero(Index d) { return Hermitian(Matrix::Zero(d, d)); }

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Scalar operator()(Index i, Index j) const { return m_(i, j); }

  Real trace() const { return Eigen::numext::real(m_.trace()); }
  Real norm() const { return m_.norm(); }

  Hermitian operator+(const Hermitian& o) const { return fromExact(m_ + o.m_); }
  Hermitian operator-(const Hermitian& o) const { return fromExact(m_ - o.m_); }
  Hermitian operator-() const { return fromExact(-m_); }
  Hermitian operator*(Real t) const { return fromExact(m_ * t); }
  friend Hermitian operator*(Real t, const Hermitian& h) { return h * t; }

 private:
  // Operations that preserve Hermiticity algebraically skip validation.
  static Hermitian fromExact(Matrix m) {
    Hermitian h;
    h.m_ = std::move(m);
    return h;
  }

  Matrix m_;
};

using HermitianMatrix = Hermitian<Complex>;
using SymmetricMatrix = Hermitian<double>;

/// Eigenpairs with eigenvalues ascending; eigenvectors are the columns.
template <typename Scalar>
struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> eigenvectors;
  int sweeps = 0;
};

inline constexpr int kMaxJacobiSweeps = 100;

namespace detail {

// Cyclic Jacobi. Each rotation acts on the (p, q) plane as
//   J = [[c, s·ph], [−s·conj(ph), c]],  ph = a_pq / |a_pq|,
// which zeroes a_pq of J† A J; for real input ph = ±1 and this is the
// classical symmetric Jacobi rotation.
template <typename Scalar>
EigenDecomposition<Scalar> jacobiEigen(
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a) {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  using Eigen::numext::conj;
  using Eigen::numext::real;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  const Index n = a.rows();
  Matrix v = Matrix::Identity(n, n);
  const Real scale = a.norm();
  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real stop = std::max<Real>(Real(1e-14), Real(4 * n) * eps) * scale;

  auto offNorm = [&] {
    Real acc = 0;
    for (Index q = 1; q < n; ++q)
      for (Index p = 0; p < q; ++p) acc += 2 * std::norm(a(p, q));
    return std::sqrt(acc);
  };

  int sweep = 0;
  for (;; ++sweep) {
    if (scale == 0 || offNorm() <= stop) break;
    if (sweep >= kMaxJacobiSweeps) {
      throw NumericalFailure("Jacobi eigensolver did not converge in " +
                             std::to_string(kMaxJacobiSweeps) + " sweeps");
    }
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        const Real mag = std::abs(apq);
        if (mag <= eps * eps * scale) continue;
        const Real tau = (real(a(q, q)) - real(a(p, p))) / (2 * mag);
        const Real t = (tau >= 0 ? Real(1) : Real(-1)) /
                       (std::abs(tau) + std::sqrt(1 + tau * tau));
        const Real c = 1 / std::sqrt(1 + t * t);
        const Real s = t * c;
        const Scalar ph = apq / mag;

        for (Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * conj(ph) * akq;
          a(k, q) = s * ph * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * ph * aqk;
          a(q, k) = s * conj(ph) * apk + c * aqk;
        }
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        a(p, p) = real(a(p, p));
        a(q, q) = real(a(q, q));

        for (Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * conj(ph) * vkq;
          v(k, q) = s * ph * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) {
    return real(a(i, i)) < real(a(j, j));
  });

  EigenDecomposition<Scalar> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = static_cast<double>(real(a(order[k], order[k])));
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  out.sweeps = sweep;
  return out;
}

}  // namespace detail

template <typename Scalar>
EigenDecomposition<Scalar> eigh(const Hermitian<Scalar>& m) {
  return detail::jacobiEigen<Scalar>(m.matrix());
}

template <typename Scalar>
double min_eigenvalue(const Hermitian<Scalar>& m) {
  return eigh(m).eigenvalues(0);
}

template <typename Scalar>
double max_eigenvalue(const Hermitian<Scalar>& m) {
  const auto e = eigh(m);
  return e.eigenvalues(e.eigenvalues.size() - 1);
}

/// True iff λ_min(M) ≥ −tol·max(1, ‖M‖_F).
template <typename Scalar>
bool is_psd(const Hermitian<Scalar>& m, double tol) {
  return min_eigenvalue(m) >= -tol * std::max(1.0, static_cast<double>(m.norm()));
}

/// Kronecker product; A acts on the slow (input) index.
template <typename Scalar>
Hermitian<Scalar> kron(const Hermitian<Scalar>& a, const Hermitian<Scalar>& b) {
  const Index da = a.dim(), db = b.dim();
  typename Hermitian<Scalar>::Matrix out(da * db, da * db);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < da; ++j)
      out.block(i * db, j * db, db, db) = a(i, j) * b.matrix();
  return Hermitian<Scalar>(std::move(out));
}

inline void checkBipartite(Index dim, Index d1, Index d2) {
  if (d1 < 1 || d2 < 1 || dim != d1 * d2) {
    throw InvalidDimension("matrix dimension " + std::to_string(dim) +
                           " does not factor as " + std::to_string(d1) + "x" +
                           std::to_string(d2));
  }
}

/// Tr_out: result(i, j) = Σ_k M(i·d2 + k, j·d2 + k).
template <typename Scalar>
Hermitian<Scalar> partial_trace_out(const Hermitian<Scalar>& m, Index d1, Index d2) {
  checkBipartite(m.dim(), d1, d2);
  typename Hermitian<Scalar>::Matrix out(d1, d1);
  for (Index i = 0; i < d1; ++i)
    for (Index j = 0; j < d1; ++j)
      out(i, j) = m.matrix().block(i * d2, j * d2, d2, d2).trace();
  return Hermitian<Scalar>(std::move(out));
}

/// Tr_in: result(k, l) = Σ_i M(i·d2 + k, i·d2 + l).
template <typename Scalar>
Hermitian<Scalar> partial_trace_in(const Hermitian<Scalar>& m, Index d1, Index d2) {
  checkBipartite(m.dim(), d1, d2);
  typename Hermitian<Scalar>::Matrix out =
      Hermitian<Scalar>::Matrix::Zero(d2, d2);
  for (Index i = 0; i < d1; ++i) out += m.matrix().block(i * d2, i * d2, d2, d2);
  return Hermitian<Scalar>(std::move(out));
}

/// Hilbert–Schmidt inner product Re Tr(A B).
template <typename Scalar>
double hs_inner(const Hermitian<Scalar>& a, const Hermitian<Scalar>& b) {
  // Tr(AB) = Σ_ij A_ij B_ji = Σ_ij A_ij conj(B_ij) for Hermitian B.
  return static_cast<double>(
      Eigen::numext::real(a.matrix().cwiseProduct(b.matrix().conjugate()).sum()));
}

/// Generalized Gell-Mann basis of d×d Hermitian matrices.
///
/// Element 0 is the identity. Then, for each pair j < k in lexicographic
/// order, the symmetric E_jk + E_kj followed by the antisymmetric
/// −i(E_jk − E_kj); then the diagonal elements
/// sqrt(2/(l(l+1)))·(Σ_{j<l} E_jj − l·E_ll) for l = 1..d−1.
/// Non-identity elements satisfy Tr(σ^a σ^b) = 2δ_ab; for d = 2 this is
/// (1, σx, σy, σz).
std::vector<HermitianMatrix> hermitian_basis(Index d);

/// Hilbert–Schmidt norm squared of basis element j: d for the identity, 2 otherwise.
inline double basis_norm(Index d, Index j) {
  return j == 0 ? static_cast<double>(d) : 2.0;
}

/// Real symmetric embedding [[Re M, −Im M], [Im M, Re M]].
SymmetricMatrix real_embed(const HermitianMatrix& m);

/// Inverse of real_embed on matrices with the embedded block structure.
/// The two diagonal and two off-diagonal blocks are averaged first, which
/// is an orthogonal projection onto embedded matrices.
HermitianMatrix real_unembed(const SymmetricMatrix& m);

/// Pauli matrices, as returned by hermitian_basis(2).
HermitianMatrix pauli_x();
HermitianMatrix pauli_y();
HermitianMatrix pauli_z();

}  // namespace cptp
