#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mlswe/lgl.hpp"
#include "mlswe/mesh2d.hpp"

using namespace mlswe;

namespace {

/// Interior LGL nodes as eigenvalues of the Jacobi(1,1) recurrence matrix.
std::vector<double> golub_welsch_interior(int N) {
  const int m = N - 1;
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    const double b = std::sqrt(k * (k + 2.0) / ((2.0 * k + 1.0) * (2.0 * k + 3.0)));
    T(k - 1, k) = b;
    T(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  std::vector<double> x(es.eigenvalues().data(), es.eigenvalues().data() + m);
  return x;
}

}  // namespace

TEST(Lgl, DegreeOne) {
  const auto ops = build_lgl(1);
  EXPECT_DOUBLE_EQ(ops.xi[0], -1.0);
  EXPECT_DOUBLE_EQ(ops.xi[1], 1.0);
  EXPECT_DOUBLE_EQ(ops.w[0], 1.0);
  EXPECT_DOUBLE_EQ(ops.w[1], 1.0);
  EXPECT_DOUBLE_EQ(ops.d(0, 0), -0.5);
  EXPECT_DOUBLE_EQ(ops.d(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(ops.d(1, 0), -0.5);
  EXPECT_DOUBLE_EQ(ops.d(1, 1), 0.5);
}

TEST(Lgl, DegreeTwo) {
  const auto ops = build_lgl(2);
  EXPECT_NEAR(ops.xi[1], 0.0, 1e-16);
  EXPECT_NEAR(ops.w[0], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(ops.w[1], 4.0 / 3.0, 1e-15);
  const double D[3][3] = {{-1.5, 2.0, -0.5}, {-0.5, 0.0, 0.5}, {0.5, -2.0, 1.5}};
  for (int i = 0; i < 3; ++i)
    for (int l = 0; l < 3; ++l) EXPECT_NEAR(ops.d(i, l), D[i][l], 1e-14);
}

TEST(Lgl, RejectsBadDegree) {
  EXPECT_THROW(build_lgl(0), ConfigError);
  EXPECT_THROW(build_lgl(31), ConfigError);
}

TEST(Lgl, NodesMatchEigenvalueOracle) {
  for (int N = 2; N <= 30; ++N) {
    const auto ops = build_lgl(N);
    const auto ref = golub_welsch_interior(N);
    for (int j = 1; j < N; ++j) EXPECT_NEAR(ops.xi[j], ref[j - 1], 1e-13) << "N=" << N << " j=" << j;
  }
}

TEST(Lgl, SummationByParts) {
  for (int N = 1; N <= 20; ++N) {
    const auto ops = build_lgl(N);
    const auto Q = ops.Q();
    const auto B = ops.B();
    const int n = ops.n();
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        EXPECT_NEAR(Q[i * n + l] + Q[l * n + i], B[i * n + l], 1e-12 * N * N) << "N=" << N;
  }
}

TEST(Lgl, QuadratureAndDerivativeExactness) {
  for (int N = 1; N <= 16; ++N) {
    const auto ops = build_lgl(N);
    const int n = ops.n();
    for (int p = 0; p <= 2 * N - 1; ++p) {
      double q = 0.0;
      for (int i = 0; i < n; ++i) q += ops.w[i] * std::pow(ops.xi[i], p);
      const double exact = p % 2 == 1 ? 0.0 : 2.0 / (p + 1.0);
      EXPECT_NEAR(q, exact, 1e-13) << "N=" << N << " p=" << p;
    }
    for (int p = 0; p <= N; ++p)
      for (int i = 0; i < n; ++i) {
        double d = 0.0;
        for (int l = 0; l < n; ++l) d += ops.d(i, l) * std::pow(ops.xi[l], p);
        const double exact = p == 0 ? 0.0 : p * std::pow(ops.xi[i], p - 1);
        EXPECT_NEAR(d, exact, 1e-11 * N * N) << "N=" << N << " p=" << p;
      }
  }
}

TEST(Lgl, LagrangeBasisIsCardinal) {
  const auto ops = build_lgl(5);
  for (int i = 0; i < ops.n(); ++i) {
    const auto ell = ops.lagrange(ops.xi[i]);
    for (int j = 0; j < ops.n(); ++j) EXPECT_NEAR(ell[j], i == j ? 1.0 : 0.0, 1e-14);
  }
}

TEST(Geometry, AffineElement) {
  const auto ops = build_lgl(4);
  const auto g = build_geometry([](double xi, double eta) { return Point{2.0 + 0.5 * xi, -1.0 + 0.25 * eta}; }, ops);
  for (std::size_t p = 0; p < g.J.size(); ++p) {
    EXPECT_NEAR(g.J[p], 0.125, 1e-14);
    EXPECT_NEAR(g.Ja1x[p], 0.25, 1e-14);
    EXPECT_NEAR(g.Ja2y[p], 0.5, 1e-14);
  }
  for (int k = 0; k < g.n; ++k) {
    EXPECT_NEAR(g.normal[0][k].x, -0.25, 1e-14);
    EXPECT_NEAR(g.normal[3][k].y, 0.5, 1e-14);
  }
  EXPECT_LT(metric_identity_residual(g, ops), 1e-13);
}

TEST(Geometry, RotatedElementHasUnitJacobianAndRotatedNormals) {
  const auto ops = build_lgl(3);
  const double c = std::cos(0.7), s = std::sin(0.7);
  const auto g = build_geometry([&](double xi, double eta) { return Point{c * xi - s * eta, s * xi + c * eta}; }, ops);
  for (std::size_t p = 0; p < g.J.size(); ++p) EXPECT_NEAR(g.J[p], 1.0, 1e-14);
  EXPECT_NEAR(g.normal[1][0].x, c, 1e-14);
  EXPECT_NEAR(g.normal[1][0].y, s, 1e-14);
}

TEST(Geometry, InvertedElementThrows) {
  const auto ops = build_lgl(2);
  EXPECT_THROW(build_geometry([](double xi, double eta) { return Point{-xi, eta}; }, ops, 7), MeshError);
}

TEST(Geometry, WarpedMeshSatisfiesMetricIdentities) {
  for (int N : {2, 3, 6, 10}) {
    const auto ops = build_lgl(N);
    const Mesh2D m = structured_mesh(4, 4, 0.0, 1.0, 0.0, 1.0, 0.1, true, ops);
    for (const auto& g : m.geometry) EXPECT_LT(metric_identity_residual(g, ops), 1e-12);
  }
}

TEST(Geometry, WarpedMeshAreaConverges) {
  const auto ops = build_lgl(8);
  const Mesh2D m = structured_mesh(4, 4, 0.0, 2.0, -1.0, 1.0, 0.1, false, ops);
  EXPECT_NEAR(m.area, 4.0, 1e-6);
}

TEST(Geometry, ConformingFacesAreWatertight) {
  const auto ops = build_lgl(5);
  const Mesh2D m = structured_mesh(3, 4, 0.0, 1.0, 0.0, 1.0, 0.08, true, ops);
  for (int e = 0; e < m.size(); ++e)
    for (int f = 0; f < kFaces; ++f) {
      const FaceLink l = m.links[e][f];
      ASSERT_GE(l.element, 0);
      const auto& a = m.geometry[e];
      const auto& b = m.geometry[l.element];
      for (int k = 0; k < a.n; ++k) {
        const int kk = l.reversed ? a.n - 1 - k : k;
        EXPECT_NEAR(a.normal[f][k].x, -b.normal[l.face][kk].x, 1e-13);
        EXPECT_NEAR(a.normal[f][k].y, -b.normal[l.face][kk].y, 1e-13);
      }
    }
}

TEST(Geometry, WallsOnNonPeriodicMesh) {
  const auto ops = build_lgl(2);
  const Mesh2D m = structured_mesh(2, 3, 0.0, 1.0, 0.0, 1.0, 0.0, false, ops);
  EXPECT_LT(m.links[0][0].element, 0);
  EXPECT_LT(m.links[0][2].element, 0);
  EXPECT_EQ(m.links[0][1].element, 1);
  EXPECT_EQ(m.links[0][3].element, 2);
  EXPECT_THROW(structured_mesh(1, 3, 0.0, 1.0, 0.0, 1.0, 0.0, true, ops), ConfigError);
}

TEST(MeshFile, ReadsCurvedElementsAndConnectsFaces) {
  std::istringstream in(R"(# two elements sharing a curved edge
elements 2
0 0  1 0  1 1  0 1
edge 1 2
1 0
1.1 0.5
1 1
1 0  2 0  2 1  1 1
edge 0 2
1 0
1.1 0.5
1 1
)");
  const auto ops = build_lgl(4);
  const Mesh2D m = read_mesh(in, ops);
  ASSERT_EQ(m.size(), 2);
  EXPECT_EQ(m.links[0][1].element, 1);
  EXPECT_EQ(m.links[0][1].face, 0);
  EXPECT_FALSE(m.links[0][1].reversed);
  EXPECT_LT(m.links[0][0].element, 0);
  EXPECT_NEAR(m.area, 2.0, 1e-12);
  for (const auto& g : m.geometry) EXPECT_LT(metric_identity_residual(g, ops), 1e-12);
  const auto& a = m.geometry[0];
  EXPECT_NEAR(a.x[a.face_node(1, 2)], 1.1, 1e-14);
}

TEST(MeshFile, ReversedNeighbourOrientation) {
  std::istringstream in(R"(elements 2
0 0  1 0  1 1  0 1
1 2  0 2  0 1  1 1
)");
  const auto ops = build_lgl(3);
  const Mesh2D m = read_mesh(in, ops);
  EXPECT_EQ(m.links[0][3].element, 1);
  EXPECT_EQ(m.links[0][3].face, 3);
  EXPECT_TRUE(m.links[0][3].reversed);
}

TEST(MeshFile, Errors) {
  const auto ops = build_lgl(2);
  std::istringstream empty("");
  EXPECT_THROW(read_mesh(empty, ops), MeshError);
  std::istringstream bad("elements 1\n0 0 1 0 1 1\n");
  EXPECT_THROW(read_mesh(bad, ops), MeshError);
  std::istringstream cw("elements 1\n0 0 0 1 1 1 1 0\n");
  EXPECT_THROW(read_mesh(cw, ops), MeshError);
  EXPECT_THROW(read_mesh_file("/nonexistent/mesh.txt", ops), MeshError);
}
