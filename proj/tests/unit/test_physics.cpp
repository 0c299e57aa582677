#include <doctest.h>

#include <cmath>

#include "axisym/errors.hpp"
#include "axisym/physics.hpp"
#include "support.hpp"

using namespace axisym;
using namespace testing_support;

namespace {

double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }

// Dense sup of f over [0,1] x [0,1/2]: log-refined 2048^2 sweep, then a local
// 201^2 sweep around the best sample.
template <class F>
double dense_sup(F f) {
  const int N = 2048;
  std::vector<double> rs(N), zs(N);
  for (int k = 0; k < N; ++k) {
    rs[k] = 1e-6 * std::pow(1e6, static_cast<double>(k) / (N - 1));
    zs[k] = 1e-7 * std::pow(0.5e7, static_cast<double>(k) / (N - 1));
  }
  double best = -1;
  int bi = 0, bj = 0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      double v = f(rs[i], zs[j]);
      if (v > best) best = v, bi = i, bj = j;
    }
  double r0 = rs[std::max(bi - 1, 0)], r1 = rs[std::min(bi + 1, N - 1)];
  double z0 = zs[std::max(bj - 1, 0)], z1 = zs[std::min(bj + 1, N - 1)];
  for (int i = 0; i <= 200; ++i)
    for (int j = 0; j <= 200; ++j)
      best = std::max(best, f(r0 + (r1 - r0) * i / 200, z0 + (z1 - z0) * j / 200));
  return best;
}

}  // namespace

TEST_CASE("soft cutoff") {
  CHECK(soft_cutoff(0.3, 0.3, 0.01) == 0.5);
  CHECK(std::abs(soft_cutoff(0.3 + 50 * 0.01, 0.3, 0.01) - 1.0) <= 1e-15);
  CHECK(std::abs(soft_cutoff(0.3 - 50 * 0.01, 0.3, 0.01)) <= 1e-15);
  CHECK(soft_cutoff(1e6, 0.0, 1e-9) == 1.0);
  CHECK(soft_cutoff(-1e6, 0.0, 1e-9) == 0.0);
  // Direct logistic form where it does not overflow.
  for (int t = 0; t < 20; ++t) {
    double x = uniform(-3, 3), a = uniform(-1, 1), b = uniform(0.2, 2);
    double e = std::exp((x - a) / b);
    CHECK(soft_cutoff(x, a, b) == doctest::Approx(e / (e + 1 / e)).epsilon(1e-13));
  }
}

TEST_CASE("initial data") {
  InitialDataParams p;
  CHECK(p.m_u1 == 7.6e3);
  CHECK(p.b_r2 == 3e-3);
  Mesh mesh = adaptive_mesh(initial_features(p), 128, 64);
  auto [u, w] = initial_fields(p, mesh);

  SUBCASE("symmetry and sign") {
    CHECK(u.parity_r() == Parity::Even);
    CHECK(u.parity_z() == Parity::Odd);
    CHECK(w.parity_z() == Parity::Odd);
    for (int i = 0; i <= mesh.n(); ++i) {
      CHECK(u(i, 0) == 0.0);
      CHECK(w(i, 0) == 0.0);
      CHECK(u(i, mesh.m()) == 0.0);
    }
    for (double x : u.values()) CHECK(x >= 0.0);
    for (double x : w.values()) CHECK(x >= 0.0);
    for (int t = 0; t < 50; ++t) {
      double r = uniform(0, 1), z = uniform(0, 0.5);
      CHECK(initial_u1(p, r, -z) == doctest::Approx(-initial_u1(p, r, z)));
      CHECK(initial_w1(p, r, -z) == doctest::Approx(-initial_w1(p, r, z)));
      CHECK(initial_u1(p, -r, z) == doctest::Approx(initial_u1(p, r, z)));
    }
  }
  SUBCASE("sup norms") {
    double su = dense_sup([&](double r, double z) { return initial_u1(p, r, z); });
    double sw = dense_sup([&](double r, double z) { return initial_w1(p, r, z); });
    MESSAGE("dense sup u1 " << su << " w1 " << sw);
    CHECK(su >= 7.6e3 - 13);
    CHECK(su <= 7.6e3 + 13);
    CHECK(sw / (su * su) > 0.5);
    CHECK(sw / (su * su) < 2.0);
    CHECK(u.sup_norm() <= su * (1 + 1e-12));
  }
  SUBCASE("features sit on the u1 peak") {
    ProfileFeatures f = initial_features(p);
    CHECK(f.R > 0);
    CHECK(f.Z > 0);
    CHECK(f.Rr > 0);
    CHECK(f.Rr < f.R);
    double peak = initial_u1(p, f.R, f.Z);
    for (double s : {0.98, 1.02}) {
      CHECK(initial_u1(p, f.R * s, f.Z) <= peak);
      CHECK(initial_u1(p, f.R, f.Z * s) <= peak);
    }
  }
}

TEST_CASE("viscosity examples") {
  DiffusionSpec c1;
  NuSample s = nu_eval(c1, 0, 0, 1e5);
  CHECK(s.nr == doctest::Approx(2.5e-7).epsilon(1e-14));
  CHECK(s.nz == doctest::Approx(2.5e-7).epsilon(1e-14));
  s = nu_eval(c1, 1e-2, 0, 1e5);
  CHECK(s.nr == doctest::Approx(1e-3 / (1 + 1e4) + 2.5e-7).epsilon(1e-14));
  CHECK(s.nr == doctest::Approx(3.4999e-7).epsilon(1e-4));
  CHECK_THROWS_AS(nu_eval(c1, 0.1, 0.1, 0.0), DivisionByZero);

  DiffusionSpec c2{Viscosity::Constant, 1e-5, 0.0};
  s = nu_eval(c2, 0.3, 0.2, 0.0);
  CHECK(s.nr == 1e-5);
  CHECK(s.nz == 1e-5);
  CHECK(s.nr_r == 0.0);
  CHECK(s.nz_zz == 0.0);

  DiffusionSpec c3{Viscosity::Inviscid, 0.0, 0.0};
  s = nu_eval(c3, 0.3, 0.2, 0.0);
  CHECK(s.nr == 0.0);
  CHECK(s.nz == 0.0);
}

TEST_CASE("space-dependent viscosity bound") {
  // The sup approaches 1e-7 + 1e-9 in both components.
  DiffusionSpec c1;
  double top_r = 0, top_z = 0;
  for (int i = 0; i <= 400; ++i)
    for (int j = 0; j <= 400; ++j) {
      double r = i / 400.0, z = 0.5 * j / 400.0;
      NuSample s = c1.space_part(r, z);
      CHECK(s.nr >= 0.0);
      CHECK(s.nz >= 0.0);
      top_r = std::max(top_r, s.nr);
      top_z = std::max(top_z, s.nz);
    }
  MESSAGE("space part sup " << top_r << " " << top_z);
  CHECK(top_r <= 1.01e-7);
  CHECK(top_z <= 1.01e-7);
  CHECK(top_r > 0.99e-7);
}

TEST_CASE("viscosity derivatives match central differences") {
  DiffusionSpec c1;
  auto rel = [](double fd, double an, double scale) {
    return std::abs(fd - an) / (std::abs(an) + 1e-3 * scale);
  };
  for (int t = 0; t < 100; ++t) {
    double r = log_uniform(1e-6, 1.0), z = log_uniform(1e-7, 0.49);
    CAPTURE(r);
    CAPTURE(z);
    double hr = 1e-4 * (1e-4 + r), hz = 1e-4 * (3e-6 + z);
    double Lr = 1e-4 + r, Lz = 3e-6 + z;
    NuSample c = c1.space_part(r, z);
    NuSample rp = c1.space_part(r + hr, z), rm = c1.space_part(r - hr, z);
    NuSample zp = c1.space_part(r, z + hz), zm = c1.space_part(r, z - hz);
    CHECK(rel((rp.nr - rm.nr) / (2 * hr), c.nr_r, c.nr / Lr) < 1e-6);
    CHECK(rel((rp.nz - rm.nz) / (2 * hr), c.nz_r, c.nz / Lr) < 1e-6);
    CHECK(rel((rp.nr_r - rm.nr_r) / (2 * hr), c.nr_rr, c.nr / (Lr * Lr)) < 1e-6);
    CHECK(rel((zp.nr - zm.nr) / (2 * hz), c.nr_z, c.nr / Lz) < 1e-6);
    CHECK(rel((zp.nz - zm.nz) / (2 * hz), c.nz_z, c.nz / Lz) < 1e-6);
    CHECK(rel((zp.nz_z - zm.nz_z) / (2 * hz), c.nz_zz, c.nz / (Lz * Lz)) < 1e-6);
    CHECK(rel((zp.nr_r - zm.nr_r) / (2 * hz), c.nr_rz, c.nr / (Lr * Lz)) < 1e-6);
    CHECK(c.nr_r_over_r * r == doctest::Approx(c.nr_r).epsilon(1e-12));
    CHECK(c.nz_r_over_r * r == doctest::Approx(c.nz_r).epsilon(1e-12));
  }
}

TEST_CASE("radial viscosity is nondecreasing near the axis") {
  DiffusionSpec c1;
  for (int k = 0; k <= 1000; ++k) {
    double r = 1e-2 * k / 1000.0;
    CHECK(c1.space_part(r, uniform(0, 0.5)).nr_r >= 0.0);
  }
}

TEST_CASE("viscosity is even in r") {
  DiffusionSpec c1;
  for (int t = 0; t < 20; ++t) {
    double r = uniform(0, 1), z = uniform(0, 0.5);
    CHECK(c1.space_part(-r, z).nr == c1.space_part(r, z).nr);
    CHECK(c1.space_part(-r, z).nz == c1.space_part(r, z).nz);
  }
}

TEST_CASE("circulation") {
  Mesh mesh = mild_mesh(16, 8);
  FieldGrid zero(16, 8, Parity::Even, Parity::Odd);
  CHECK(circulation(zero, mesh).sup_norm() == 0.0);
  FieldGrid one(16, 8, Parity::Even, Parity::Even, 1.0);
  CHECK(max_error(circulation(one, mesh), mesh, [](double r, double) { return r * r; }) == 0.0);
  FieldGrid pos = random_field(16, 8, Parity::Even, Parity::Odd);
  for (double& x : pos.values()) x = std::abs(x);
  FieldGrid g = circulation(pos, mesh);
  for (double x : g.values()) CHECK(x >= 0.0);
}
