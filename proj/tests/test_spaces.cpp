#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "poromr/assembly.hpp"
#include "poromr/spaces.hpp"
#include "support/testutil.hpp"

using namespace poromr;

TEST_CASE("taylor-hood dof counts") {
  const SpacePair sp1 = build_spaces(build_unit_square_mesh(1));
  CHECK(sp1.n_scalar == 4);
  CHECK(sp1.edges.size() == 5);
  CHECK(sp1.n_nodes == 9);
  CHECK(sp1.n_vector == 18);

  const SpacePair sp2 = build_spaces(build_unit_square_mesh(2));
  CHECK(sp2.n_scalar == 9);
  CHECK(sp2.edges.size() == 16);
  CHECK(sp2.n_vector == 50);
}

TEST_CASE("scalar dofs sit on the vertices, midside nodes on edge midpoints") {
  const SpacePair sp = build_spaces(build_unit_square_mesh(3));
  for (int i = 0; i < sp.n_scalar; ++i) {
    CHECK(sp.nodes[i][0] == sp.mesh.vertices[i][0]);
    CHECK(sp.nodes[i][1] == sp.mesh.vertices[i][1]);
  }
  for (size_t e = 0; e < sp.edges.size(); ++e) {
    const auto& a = sp.mesh.vertices[sp.edges[e][0]];
    const auto& b = sp.mesh.vertices[sp.edges[e][1]];
    const auto& mid = sp.nodes[sp.n_scalar + e];
    CHECK(mid[0] == doctest::Approx(0.5 * (a[0] + b[0])).epsilon(1e-15));
    CHECK(mid[1] == doctest::Approx(0.5 * (a[1] + b[1])).epsilon(1e-15));
  }
}

TEST_CASE("shape functions: nodal property and partition of unity") {
  const double ref_nodes[6][2] = {{0, 0}, {1, 0}, {0, 1}, {0.5, 0}, {0.5, 0.5}, {0, 0.5}};
  for (int i = 0; i < 6; ++i) {
    const P2Basis b = eval_p2(ref_nodes[i][0], ref_nodes[i][1]);
    for (int j = 0; j < 6; ++j)
      CHECK(b.val[j] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-14));
  }

  const double pts[4][2] = {{1.0 / 3, 1.0 / 3}, {0.2, 0.3}, {0.7, 0.1}, {0.05, 0.9}};
  for (const auto& p : pts) {
    const P2Basis b2 = eval_p2(p[0], p[1]);
    const P1Basis b1 = eval_p1(p[0], p[1]);
    double s2 = 0, s1 = 0, g2[2] = {0, 0}, g1[2] = {0, 0};
    for (int j = 0; j < 6; ++j) {
      s2 += b2.val[j];
      g2[0] += b2.grad[j][0];
      g2[1] += b2.grad[j][1];
    }
    for (int j = 0; j < 3; ++j) {
      s1 += b1.val[j];
      g1[0] += b1.grad[j][0];
      g1[1] += b1.grad[j][1];
    }
    CHECK(s2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(g2[0]) <= 1e-13);
    CHECK(std::abs(g2[1]) <= 1e-13);
    CHECK(std::abs(g1[0]) <= 1e-13);
    CHECK(std::abs(g1[1]) <= 1e-13);
  }
}

TEST_CASE("p2 interpolation reproduces quadratic vector fields") {
  const SpacePair sp = build_spaces(build_unit_square_mesh(2));
  const SpatialVectorFn v = [](double x, double y) {
    return std::array<double, 2>{x * x + 2 * x * y - y + 1, 3 * y * y - x};
  };
  const SpatialMatrixFn gv = [](double x, double y) {
    return std::array<std::array<double, 2>, 2>{{{2 * x + 2 * y, 2 * x - 1}, {-1, 6 * y}}};
  };
  const Eigen::VectorXd c = testutil::interp_p2_vector(sp, v);
  CHECK(testutil::p2_error_l2(sp, c, v) <= 1e-12);
  CHECK(testutil::p2_error_h1(sp, c, v, gv) <= 1e-12);
}

TEST_CASE("p1 interpolation reproduces affine scalar fields") {
  const SpacePair sp = build_spaces(build_unit_square_mesh(3));
  const SpatialScalarFn f = [](double x, double y) { return 2 * x - 3 * y + 0.5; };
  const SpatialVectorFn gf = [](double, double) { return std::array<double, 2>{2, -3}; };
  const Eigen::VectorXd c = testutil::interp_p1(sp, f);
  CHECK(testutil::p1_error_l2(sp, c, f) <= 1e-13);
  CHECK(testutil::p1_error_h1(sp, c, f, gf) <= 1e-13);
}

TEST_CASE("triangle geometry: positive determinant equals twice the area") {
  const Mesh m = build_unit_square_mesh(4);
  for (size_t t = 0; t < m.triangles.size(); ++t) {
    const TriGeom g = tri_geometry(m, static_cast<int>(t));
    CHECK(g.det > 0);
    CHECK(g.det == doctest::Approx(2.0 * 0.5 / 16.0).epsilon(1e-13));  // 2 * area
  }
}

TEST_CASE("rigid motions: interpolation, strain kernel, divergence kernel") {
  const SpacePair sp = build_spaces(build_unit_square_mesh(2));
  const auto rm = rigid_motion_basis(sp);

  for (int i = 0; i < sp.n_nodes; ++i) {
    CHECK(rm[0][2 * i] == 1.0);
    CHECK(rm[0][2 * i + 1] == 0.0);
    CHECK(rm[1][2 * i] == 0.0);
    CHECK(rm[1][2 * i + 1] == 1.0);
    CHECK(rm[2][2 * i] == doctest::Approx(-sp.nodes[i][1]).epsilon(1e-15));
    CHECK(rm[2][2 * i + 1] == doctest::Approx(sp.nodes[i][0]).epsilon(1e-15));
  }

  const SparseMat A = assemble_a(sp, 1.0);
  const SparseMat B = assemble_b(sp);
  for (const auto& r : rm) {
    CHECK(r.dot(A * r) <= 1e-12);
    CHECK((A * r).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((B * r).cwiseAbs().maxCoeff() <= 1e-12);
  }

  // linear independence via the mass Gram matrix
  const SparseMat M2 = assemble_vector_mass(sp);
  Eigen::Matrix3d gram;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) gram(i, j) = rm[i].dot(M2 * rm[j]);
  CHECK(gram.fullPivLu().rank() == 3);
}
