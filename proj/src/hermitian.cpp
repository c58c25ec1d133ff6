#include "cptp/hermitian.hpp"

namespace cptp {

std::vector<HermitianMatrix> hermitian_basis(Index d) {
  if (d < 2) {
    throw InvalidDimension("hermitian_basis requires d >= 2, got " +
                           std::to_string(d));
  }
  using Matrix = HermitianMatrix::Matrix;
  const Complex i(0.0, 1.0);

  std::vector<HermitianMatrix> basis;
  basis.reserve(static_cast<std::size_t>(d * d));
  basis.push_back(HermitianMatrix::identity(d));

  for (Index j = 0; j < d; ++j) {
    for (Index k = j + 1; k < d; ++k) {
      Matrix sym = Matrix::Zero(d, d);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      basis.emplace_back(std::move(sym));

      Matrix anti = Matrix::Zero(d, d);
      anti(j, k) = -i;
      anti(k, j) = i;
      basis.emplace_back(std::move(anti));
    }
  }

  for (Index l = 1; l < d; ++l) {
    Matrix diag = Matrix::Zero(d, d);
    const double norm = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    for (Index j = 0; j < l; ++j) diag(j, j) = norm;
    diag(l, l) = -norm * static_cast<double>(l);
    basis.emplace_back(std::move(diag));
  }
  return basis;
}

SymmetricMatrix real_embed(const HermitianMatrix& m) {
  const Index n = m.dim();
  Eigen::MatrixXd out(2 * n, 2 * n);
  const Eigen::MatrixXd re = m.matrix().real();
  const Eigen::MatrixXd im = m.matrix().imag();
  out.topLeftCorner(n, n) = re;
  out.topRightCorner(n, n) = -im;
  out.bottomLeftCorner(n, n) = im;
  out.bottomRightCorner(n, n) = re;
  return SymmetricMatrix(std::move(out));
}

HermitianMatrix real_unembed(const SymmetricMatrix& m) {
  if (m.dim() % 2 != 0) {
    throw InvalidDimension("real_unembed requires an even dimension, got " +
                           std::to_string(m.dim()));
  }
  const Index n = m.dim() / 2;
  const auto& e = m.matrix();
  const Eigen::MatrixXd re = (e.topLeftCorner(n, n) + e.bottomRightCorner(n, n)) / 2;
  const Eigen::MatrixXd im = (e.bottomLeftCorner(n, n) - e.topRightCorner(n, n)) / 2;
  HermitianMatrix::Matrix out(n, n);
  out.real() = re;
  out.imag() = im;
  return HermitianMatrix(std::move(out));
}

HermitianMatrix pauli_x() { return hermitian_basis(2)[1]; }
HermitianMatrix pauli_y() { return hermitian_basis(2)[2]; }
HermitianMatrix pauli_z() { return hermitian_basis(2)[3]; }

}  // namespace cptp
