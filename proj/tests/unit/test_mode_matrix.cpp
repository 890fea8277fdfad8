#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "vdw/error.hpp"
#include "vdw/mode_matrix.hpp"

using namespace vdw;

namespace {

Eigen::Matrix2cd to_eigen(const Mat2& m) {
  Eigen::Matrix2cd e;
  e << m[0], m[1], m[2], m[3];
  return e;
}

// V diag(f(l)) V^{-1} through Eigen's eigensolver.
Eigen::Matrix2cd eigen_phi(int j, const Mat2& m) {
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(to_eigen(m));
  const auto& V = es.eigenvectors();
  Eigen::Matrix2cd D = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < 2; ++i) {
    const cplx l = es.eigenvalues()(i);
    cplx f;
    if (j == 0)
      f = std::exp(l);
    else if (j == 1)
      f = (std::exp(l) - 1.0) / l;
    else
      f = (std::exp(l) - 1.0 - l) / (l * l);
    D(i, i) = f;
  }
  return V * D * V.inverse();
}

double diff(const Mat2& a, const Eigen::Matrix2cd& b) { return (to_eigen(a) - b).norm() / std::max(1.0, b.norm()); }

}  // namespace

TEST_CASE("phi functions of scalars") {
  for (cplx z : {cplx(1e-9, 0), cplx(0.3, -0.2), cplx(2.0, 1.0), cplx(0.0, 50.0), cplx(-30.0, 0.0)}) {
    CHECK(std::abs(phi(0, z) - std::exp(z)) < 1e-14 * std::abs(std::exp(z)) + 1e-15);
    if (std::abs(z) > 1e-3) {
      CHECK(std::abs(phi(1, z) - (std::exp(z) - 1.0) / z) < 1e-12);
      CHECK(std::abs(phi(2, z) - (std::exp(z) - 1.0 - z) / (z * z)) < 1e-10);
    }
  }
  CHECK(std::abs(phi(1, 0.0) - 1.0) < 1e-16);
  CHECK(std::abs(phi(2, 0.0) - 0.5) < 1e-16);
  // Continuity across the series switch.
  CHECK(std::abs(phi(2, 0.4999999) - phi(2, 0.5000001)) < 1e-7);
  CHECK_THROWS_AS(phi(3, 1.0), Error);
}

TEST_CASE("phi derivative against central differences") {
  for (int j = 0; j <= 2; ++j)
    for (cplx z : {cplx(0.1, 0.2), cplx(1.5, -0.7), cplx(0.0, 3.0)}) {
      const double h = 1e-5;
      const cplx fd = (phi(j, z + h) - phi(j, z - h)) / (2.0 * h);
      CHECK(std::abs(phi_prime(j, z) - fd) < 1e-8);
    }
}

TEST_CASE("phi of random matrices against the eigendecomposition") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 200; ++i) {
    const double s = i < 100 ? 1.0 : 20.0;
    Mat2 m;
    for (auto& x : m) x = s * cplx(nd(rng), nd(rng));
    for (int j = 0; j <= 2; ++j) CHECK(diff(phi_matrix(j, m), eigen_phi(j, m)) < 1e-9);
  }
}

TEST_CASE("stiff dispersive mode blocks") {
  // Blocks of the rescaled system at eps = 0.05, k = 16, h = 1e-4.
  const double eps = 0.05, h = 1e-4;
  const int k = 16;
  const cplx I(0.0, 1.0);
  const double tau = 1.0 / (eps * eps), delta = 1.0 / std::pow(eps, 3);
  const Mat2 m = h * Mat2{0.0, -I * (k * tau), I * (k * tau), I * (double(k) * k * delta)};
  for (int j = 0; j <= 2; ++j) CHECK(diff(phi_matrix(j, m), eigen_phi(j, m)) < 1e-9);
  // Dispersion dominates (k > 2 eps): imaginary spectrum, |det e^M| = 1.
  const Eigen::Matrix2cd e = to_eigen(phi_matrix(0, m));
  CHECK(std::abs(std::abs(e.determinant()) - 1.0) < 1e-12);
}

TEST_CASE("defective and nilpotent matrices") {
  // M = [[0, 1], [0, 0]]: phi_j(M) = I/j! + M/(j+1)!
  const Mat2 n{0.0, 1.0, 0.0, 0.0};
  const double inv[] = {1.0, 1.0, 0.5, 1.0 / 6.0};
  for (int j = 0; j <= 2; ++j) {
    const Mat2 p = phi_matrix(j, n);
    CHECK(std::abs(p[0] - inv[j]) < 1e-14);
    CHECK(std::abs(p[1] - inv[j + 1]) < 1e-14);
    CHECK(std::abs(p[2]) < 1e-14);
    CHECK(std::abs(p[3] - inv[j]) < 1e-14);
  }
  // Jordan block with eigenvalue 2: e^M = e^2 [[1, 1], [0, 1]].
  const Mat2 jb{2.0, 1.0, 0.0, 2.0};
  const Mat2 e = phi_matrix(0, jb);
  CHECK(std::abs(e[0] - std::exp(2.0)) < 1e-12);
  CHECK(std::abs(e[1] - std::exp(2.0)) < 1e-9);
}

TEST_CASE("eigenvalues keep the small one accurate") {
  const Mat2 m{1e8, 1.0, 2.0, 3.0};
  const auto ev = eigenvalues(m);
  // Small root of l^2 - (1e8 + 3) l + 3e8 - 2 by Newton from 3.
  double l = 3.0;
  for (int i = 0; i < 5; ++i) l -= (l * l - (1e8 + 3.0) * l + 3e8 - 2.0) / (2.0 * l - (1e8 + 3.0));
  CHECK(std::abs(ev[1] - l) < 1e-14 * l);
  CHECK(std::abs(ev[0] - (1e8 + 3.0 - l)) < 1e-6);
}
