#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "cptp/hermitian.hpp"
#include "test_support.hpp"

namespace cptp {
namespace {

using testing::Rng;
using Matrix = HermitianMatrix::Matrix;

const Complex I(0.0, 1.0);

TEST(HermitianMatrixTest, SymmetrizesWithinTolerance) {
  Matrix m(2, 2);
  m << 1.0, Complex(2.0, 1.0), Complex(2.0, -1.0 + 5e-13), Complex(3.0, 1e-13);
  const HermitianMatrix h(m);
  EXPECT_EQ(h(0, 1), std::conj(h(1, 0)));
  EXPECT_EQ(h(1, 1).imag(), 0.0);
}

TEST(HermitianMatrixTest, RejectsNonHermitian) {
  Matrix m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  EXPECT_THROW(HermitianMatrix{m}, InvalidArgument);
  EXPECT_THROW(HermitianMatrix{Matrix(2, 3)}, InvalidDimension);
}

TEST(HermitianBasisTest, QubitIsPauli) {
  const auto b = hermitian_basis(2);
  ASSERT_EQ(b.size(), 4u);
  Matrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, -I, I, 0;
  sz << 1, 0, 0, -1;
  EXPECT_EQ(b[0].matrix(), Matrix::Identity(2, 2));
  EXPECT_EQ(b[1].matrix(), sx);
  EXPECT_EQ(b[2].matrix(), sy);
  EXPECT_EQ(b[3].matrix(), sz);
  EXPECT_DOUBLE_EQ(hs_inner(b[1], b[2]), 0.0);
  EXPECT_DOUBLE_EQ(hs_inner(b[1], b[1]), 2.0);
}

TEST(HermitianBasisTest, GramMatrixIsDiagonal) {
  for (Index d = 2; d <= 5; ++d) {
    const auto b = hermitian_basis(d);
    ASSERT_EQ(static_cast<Index>(b.size()), d * d);
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (j > 0) EXPECT_NEAR(b[j].trace(), 0.0, 1e-15);
      for (std::size_t k = 0; k < b.size(); ++k) {
        const double expected = j != k ? 0.0 : (j == 0 ? static_cast<double>(d) : 2.0);
        // Full complex trace, not just its real part.
        const Complex tr = (b[j].matrix() * b[k].matrix()).trace();
        EXPECT_NEAR(tr.real(), expected, 1e-14) << "d=" << d << " j=" << j << " k=" << k;
        EXPECT_NEAR(tr.imag(), 0.0, 1e-14);
      }
    }
  }
}

TEST(HermitianBasisTest, SpansHermitianMatrices) {
  // A Gram-orthogonal set of d² elements spans the d²-dimensional real space;
  // check directly by reconstructing random matrices.
  Rng rng(7);
  for (Index d = 2; d <= 4; ++d) {
    const auto b = hermitian_basis(d);
    const HermitianMatrix h = testing::random_hermitian(rng, d);
    Matrix rebuilt = Matrix::Zero(d, d);
    for (std::size_t j = 0; j < b.size(); ++j) {
      rebuilt += hs_inner(h, b[j]) / basis_norm(d, static_cast<Index>(j)) * b[j].matrix();
    }
    EXPECT_LT((rebuilt - h.matrix()).norm(), 1e-13);
  }
}

TEST(HermitianBasisTest, RejectsSmallDimension) {
  EXPECT_THROW(hermitian_basis(1), InvalidDimension);
  EXPECT_THROW(hermitian_basis(0), InvalidDimension);
}

TEST(KronTest, Definitions) {
  const auto id2 = HermitianMatrix::identity(2);
  EXPECT_EQ(kron(id2, id2).matrix(), Matrix::Identity(4, 4));
  const auto z1 = kron(pauli_z(), id2);
  EXPECT_EQ(z1.matrix(), Eigen::Vector4cd(1, 1, -1, -1).asDiagonal().toDenseMatrix());
  // Composite index i·d2 + k: entry ((i,k),(j,l)) = A(i,j)·B(k,l).
  Rng rng(1);
  const auto a = testing::random_hermitian(rng, 2);
  const auto b = testing::random_hermitian(rng, 3);
  const auto ab = kron(a, b);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j)
      for (Index k = 0; k < 3; ++k)
        for (Index l = 0; l < 3; ++l) EXPECT_EQ(ab(i * 3 + k, j * 3 + l), a(i, j) * b(k, l));
}

TEST(KronTest, TraceFactorizes) {
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const auto a = testing::random_hermitian(rng, 2 + t % 3);
    const auto b = testing::random_hermitian(rng, 2 + t % 2);
    EXPECT_NEAR(kron(a, b).trace(), a.trace() * b.trace(), 1e-12);
  }
}

TEST(PartialTraceTest, KnownValues) {
  EXPECT_EQ(partial_trace_out(HermitianMatrix::identity(4), 2, 2).matrix(),
            (2.0 * Matrix::Identity(2, 2)).eval());
  // Choi of the identity channel: Σ_ij |ii⟩⟨jj|. Only (0,0) and (3,3)
  // contribute to the two diagonal sums; the off-diagonal sums are empty.
  Matrix choi = Matrix::Zero(4, 4);
  for (int i : {0, 3})
    for (int j : {0, 3}) choi(i, j) = 1.0;
  EXPECT_EQ(partial_trace_out(HermitianMatrix(choi), 2, 2).matrix(), Matrix::Identity(2, 2));
}

TEST(PartialTraceTest, FactorizationIdentity) {
  Rng rng(3);
  for (int t = 0; t < 1000; ++t) {
    const Index d1 = 2 + t % 3, d2 = 2 + (t / 3) % 3;
    const auto a = testing::random_hermitian(rng, d1);
    const auto b = testing::random_hermitian(rng, d2);
    const auto ab = kron(a, b);
    EXPECT_LT((partial_trace_out(ab, d1, d2) - a * b.trace()).matrix().cwiseAbs().maxCoeff(),
              1e-12);
    EXPECT_LT((partial_trace_in(ab, d1, d2) - b * a.trace()).matrix().cwiseAbs().maxCoeff(),
              1e-12);
  }
}

TEST(PartialTraceTest, DimensionMismatch) {
  EXPECT_THROW(partial_trace_out(HermitianMatrix::identity(5), 2, 2), InvalidDimension);
}

TEST(EighTest, SmallExamples) {
  Matrix d = Eigen::Vector3cd(3, 1, 2).asDiagonal();
  const auto e = eigh(HermitianMatrix(d));
  EXPECT_NEAR(e.eigenvalues(0), 1.0, 1e-15);
  EXPECT_NEAR(e.eigenvalues(1), 2.0, 1e-15);
  EXPECT_NEAR(e.eigenvalues(2), 3.0, 1e-15);

  const auto ex = eigh(pauli_x());
  EXPECT_NEAR(ex.eigenvalues(0), -1.0, 1e-15);
  EXPECT_NEAR(ex.eigenvalues(1), 1.0, 1e-15);

  // [[a, b], [b, a]] has eigenvalues a ± b.
  Matrix m(2, 2);
  m << 1.0 / 3, 1.0 / 6, 1.0 / 6, 1.0 / 3;
  const auto em = eigh(HermitianMatrix(m));
  EXPECT_NEAR(em.eigenvalues(0), 1.0 / 6, 1e-15);
  EXPECT_NEAR(em.eigenvalues(1), 1.0 / 2, 1e-15);
}

TEST(EighTest, ZeroMatrix) {
  const auto e = eigh(HermitianMatrix::zero(3));
  EXPECT_EQ(e.eigenvalues, Eigen::VectorXd::Zero(3));
  EXPECT_EQ(e.eigenvectors, Matrix::Identity(3, 3));
}

TEST(EighTest, ResidualAndAgreementWithReferenceSolver) {
  Rng rng(4);
  for (int t = 0; t < 300; ++t) {
    const Index n = 1 + t % 16;
    const auto m = testing::random_hermitian(rng, n);
    const auto e = eigh(m);
    const Matrix& v = e.eigenvectors;
    const Matrix rebuilt = v * e.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
    EXPECT_LE((m.matrix() - rebuilt).norm(), 1e-10 * m.norm());
    EXPECT_LE((v.adjoint() * v - Matrix::Identity(n, n)).norm(), 1e-10);
    EXPECT_NEAR(e.eigenvalues.sum(), m.trace(), 1e-10 * m.norm());
    for (Index k = 1; k < n; ++k) EXPECT_LE(e.eigenvalues(k - 1), e.eigenvalues(k));

    Eigen::SelfAdjointEigenSolver<Matrix> ref(m.matrix(), Eigen::EigenvaluesOnly);
    EXPECT_LT((ref.eigenvalues() - e.eigenvalues).cwiseAbs().maxCoeff(), 1e-11 * m.norm());
  }
}

TEST(EighTest, RealScalarInstantiation) {
  Eigen::MatrixXd m(3, 3);
  m << 2, -1, 0, -1, 2, -1, 0, -1, 2;
  const auto e = eigh(SymmetricMatrix(m));
  // Path graph Laplacian-like: 2 − 2cos(kπ/4).
  EXPECT_NEAR(e.eigenvalues(0), 2 - std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(e.eigenvalues(1), 2.0, 1e-14);
  EXPECT_NEAR(e.eigenvalues(2), 2 + std::sqrt(2.0), 1e-14);
}

TEST(EighTest, DegenerateSpectrum) {
  Rng rng(5);
  // U diag(1,1,1,2) U† with random unitary.
  Eigen::HouseholderQR<Matrix> qr(testing::random_hermitian(rng, 4).matrix() +
                                  Matrix::Identity(4, 4) * Complex(0, 3));
  const Matrix u = qr.householderQ();
  const HermitianMatrix m(u * Eigen::Vector4cd(1, 1, 1, 2).asDiagonal() * u.adjoint());
  const auto e = eigh(m);
  EXPECT_NEAR(e.eigenvalues(0), 1.0, 1e-13);
  EXPECT_NEAR(e.eigenvalues(2), 1.0, 1e-13);
  EXPECT_NEAR(e.eigenvalues(3), 2.0, 1e-13);
}

TEST(PsdTest, Examples) {
  const auto id = HermitianMatrix::identity(4);
  EXPECT_DOUBLE_EQ(min_eigenvalue(id), 1.0);
  EXPECT_DOUBLE_EQ(max_eigenvalue(id), 1.0);
  EXPECT_TRUE(is_psd(id, 0.0));
  Matrix d = Eigen::Vector2cd(1.0, -1e-6).asDiagonal();
  EXPECT_FALSE(is_psd(HermitianMatrix(d), 1e-9));
  EXPECT_TRUE(is_psd(HermitianMatrix(d), 1e-5));
}

TEST(RealEmbedTest, PauliYAndIdentity) {
  Eigen::Matrix4d expected;
  expected << 0, 0, 0, 1, 0, 0, -1, 0, 0, -1, 0, 0, 1, 0, 0, 0;
  const auto e = real_embed(pauli_y());
  EXPECT_EQ(e.matrix(), expected);
  const auto ev = eigh(e).eigenvalues;
  EXPECT_NEAR(ev(0), -1, 1e-15);
  EXPECT_NEAR(ev(1), -1, 1e-15);
  EXPECT_NEAR(ev(2), 1, 1e-15);
  EXPECT_NEAR(ev(3), 1, 1e-15);
  EXPECT_EQ(real_embed(HermitianMatrix::identity(2)).matrix(), Eigen::Matrix4d::Identity());
}

TEST(RealEmbedTest, SpectrumDoublesAndPsdPreserved) {
  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    const Index n = 1 + t % 8;
    const auto m = testing::random_hermitian(rng, n);
    const auto ev = eigh(m).eigenvalues;
    const auto ee = eigh(real_embed(m)).eigenvalues;
    for (Index k = 0; k < n; ++k) {
      EXPECT_NEAR(ee(2 * k), ev(k), 1e-10);
      EXPECT_NEAR(ee(2 * k + 1), ev(k), 1e-10);
    }
    EXPECT_LT((real_unembed(real_embed(m)) - m).matrix().cwiseAbs().maxCoeff(), 1e-15);

    const auto p = testing::random_psd(rng, n, 1 + t % n);
    EXPECT_EQ(is_psd(p, 1e-12), is_psd(real_embed(p), 1e-12));
    EXPECT_EQ(is_psd(m, 1e-12), is_psd(real_embed(m), 1e-12));
  }
}

TEST(HermiticityTest, PreservedByOperations) {
  Rng rng(8);
  const auto a = testing::random_hermitian(rng, 2);
  const auto b = testing::random_hermitian(rng, 3);
  const auto k = kron(a, b);
  EXPECT_EQ(k.matrix(), k.matrix().adjoint());
  const auto pt = partial_trace_out(k, 2, 3);
  EXPECT_EQ(pt.matrix(), pt.matrix().adjoint());
  const auto lin = a * 0.3 - a * 1.7 + a;
  EXPECT_EQ(lin.matrix(), lin.matrix().adjoint());
}

}  // namespace
}  // namespace cptp
