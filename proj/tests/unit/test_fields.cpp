#include <doctest.h>

#include <cmath>

#include "axisym/fields.hpp"
#include "manufactured.hpp"
#include "support.hpp"

using namespace axisym;
using namespace testing_support;

namespace {

double ratio_of(const std::function<double(int)>& err_at) {
  double e1 = err_at(1), e2 = err_at(2);
  MESSAGE("errors " << e1 << " " << e2 << " ratio " << e1 / e2);
  return e1 / e2;
}

}  // namespace

TEST_CASE("ddr of r^2 on the identity map") {
  Mesh mesh = uniform_mesh(20, 10);
  FieldGrid f = sample(mesh, [](double r, double) { return r * r; }, Parity::Even, Parity::None);
  FieldGrid d = ddr(f, mesh);
  CHECK(max_error(d, mesh, [](double r, double) { return 2 * r; }) < 1e-12);
  FieldGrid d2 = d2dr2(f, mesh);
  CHECK(max_error(d2, mesh, [](double, double) { return 2.0; }) < 1e-10);
}

TEST_CASE("constants have zero second derivatives") {
  Mesh mesh = mild_mesh(24, 16);
  FieldGrid f(24, 16, Parity::Even, Parity::Even, 3.5);
  CHECK(d2dr2(f, mesh).sup_norm() < 1e-9);
  CHECK(d2dz2(f, mesh).sup_norm() < 1e-9);
  CHECK(ddr(f, mesh).sup_norm() < 1e-10);
}

TEST_CASE("ddz of an odd field uses the reflected ghost") {
  Mesh mesh = uniform_mesh(8, 16);
  FieldGrid f = sample(mesh, [](double r, double z) { return (1 + r) * std::sin(2 * kPi * z); },
                       Parity::Even, Parity::Odd);
  FieldGrid d = ddz(f, mesh);
  double h = 0.5 / 16;
  for (int i = 0; i <= 8; ++i) {
    CHECK(d(i, 0) == doctest::Approx((f(i, 1) - (-f(i, 1))) / (2 * h)));
    CHECK(d(i, 16) == doctest::Approx((-f(i, 15) - f(i, 15)) / (2 * h)));
  }
  CHECK(d.parity_z() == Parity::Even);
  CHECK(d.parity_r() == Parity::Even);
  FieldGrid dd = d2dz2(f, mesh);
  for (int i = 0; i <= 8; ++i) CHECK(dd(i, 0) == 0.0);
}

TEST_CASE("second-order convergence of the derivative kernels") {
  auto f = [](double r, double z) { return (1 - r * r) * std::sin(2 * kPi * z); };
  struct Case {
    const char* name;
    FieldGrid (*op)(const FieldGrid&, const Mesh&);
    std::function<double(double, double)> exact;
  };
  Case cases[] = {
      {"ddr", ddr, [](double r, double z) { return -2 * r * std::sin(2 * kPi * z); }},
      {"ddz", ddz, [](double r, double z) { return 2 * kPi * (1 - r * r) * std::cos(2 * kPi * z); }},
      {"d2dr2", d2dr2, [](double, double z) { return -2 * std::sin(2 * kPi * z); }},
      {"d2dz2", d2dz2,
       [](double r, double z) { return -4 * kPi * kPi * (1 - r * r) * std::sin(2 * kPi * z); }},
  };
  for (const auto& c : cases) {
    CAPTURE(c.name);
    double ratio = ratio_of([&](int k) {
      Mesh mesh = graded_r_mesh(16 << k, 16 << k);
      return max_error(c.op(sample(mesh, f, Parity::Even, Parity::Odd), mesh), mesh, c.exact);
    });
    CHECK(ratio >= 3.3);
    CHECK(ratio <= 4.8);
    // Graded in both directions with extrapolated ghosts everywhere.
    double ratio_g = ratio_of([&](int k) {
      Mesh mesh = graded_r_mesh(16 << k, 16 << k);
      return max_error(c.op(sample(mesh, f), mesh), mesh, c.exact);
    });
    CHECK(ratio_g >= 3.3);
    CHECK(ratio_g <= 4.8);
  }
  SUBCASE("sin(2 pi rho) on the identity map") {
    auto g = [](double r, double) { return std::sin(2 * kPi * r); };
    double ratio = ratio_of([&](int k) {
      Mesh mesh = uniform_mesh(16 << k, 8);
      return max_error(ddr(sample(mesh, g, Parity::Odd, Parity::None), mesh), mesh,
                       [](double r, double) { return 2 * kPi * std::cos(2 * kPi * r); });
    });
    CHECK(ratio >= 3.3);
    CHECK(ratio <= 4.8);
  }
}

TEST_CASE("velocity from stream") {
  SUBCASE("psi = z") {
    Mesh mesh = uniform_mesh(16, 16);
    Velocity v = velocity_from_stream(sample(mesh, [](double, double z) { return z; }), mesh);
    CHECK(max_error(v.ur, mesh, [](double r, double) { return -r; }, 0, 1) < 1e-12);
    CHECK(max_error(v.uz, mesh, [](double, double z) { return 2 * z; }, 0, 1) < 1e-12);
  }
  SUBCASE("psi = 0") {
    Mesh mesh = mild_mesh(16, 16);
    Velocity v = velocity_from_stream(FieldGrid(16, 16, Parity::Even, Parity::Odd), mesh);
    CHECK(v.ur.sup_norm() == 0.0);
    CHECK(v.uz.sup_norm() == 0.0);
  }
  SUBCASE("manufactured stream, order 2 and incompressibility") {
    double ru = ratio_of([&](int k) {
      Mesh mesh = graded_r_mesh(16 << k, 16 << k);
      Velocity v = velocity_from_stream(sample(mesh, Stream::psi, Parity::Even, Parity::Odd), mesh);
      CHECK(v.ur.parity_r() == Parity::Odd);
      CHECK(v.ur.parity_z() == Parity::Even);
      for (int j = 0; j <= mesh.m(); ++j) CHECK(v.ur(mesh.n(), j) == doctest::Approx(0.0));
      return std::max(max_error(v.ur, mesh, Stream::ur), max_error(v.uz, mesh, Stream::uz));
    });
    CHECK(ru >= 3.3);
    CHECK(ru <= 4.8);
    double rdiv = ratio_of([&](int k) {
      Mesh mesh = graded_r_mesh(16 << k, 16 << k);
      Velocity v = velocity_from_stream(sample(mesh, Stream::psi, Parity::Even, Parity::Odd), mesh);
      FieldGrid ur_r = ddr(v.ur, mesh), uz_z = ddz(v.uz, mesh);
      double res = 0.0;
      for (std::size_t q = 0; q < ur_r.size(); ++q)
        res = std::max(res, std::abs(ur_r.values()[q] + v.ur_over_r.values()[q] +
                                     uz_z.values()[q]));
      return res;
    });
    CHECK(rdiv >= 3.3);
    CHECK(rdiv <= 4.8);
  }
}

TEST_CASE("diffusion_u1") {
  Mesh mesh = mild_mesh(24, 16);
  FieldGrid one(24, 16, Parity::Even, Parity::Even, 1.0);
  SUBCASE("inviscid") {
    DiffusionSpec spec{Viscosity::Inviscid, 0.0, 0.0};
    CHECK(diffusion_u1(one, nu_fields(spec, mesh, 1.0), mesh).sup_norm() == 0.0);
  }
  SUBCASE("constant viscosity on a constant field") {
    DiffusionSpec spec{Viscosity::Constant, 1e-3, 0.0};
    CHECK(diffusion_u1(one, nu_fields(spec, mesh, 1.0), mesh).sup_norm() < 1e-12);
  }
  SUBCASE("degenerate viscosity, manufactured u1") {
    auto u = [](double r, double z) { return std::cos(kPi * r) * std::sin(2 * kPi * z); };
    DiffusionSpec spec = degenerate();
    double omax = 1e5;
    auto exact = [&](double r, double z) {
      NuSample v = nu_eval(spec, r, z, omax);
      double S = std::sin(2 * kPi * z), Cz = std::cos(2 * kPi * z);
      double ur_ = -kPi * std::sin(kPi * r) * S, urr = -kPi * kPi * std::cos(kPi * r) * S;
      double ur_over_r = r > 0 ? ur_ / r : urr;
      double uz_ = 2 * kPi * std::cos(kPi * r) * Cz, uzz = -4 * kPi * kPi * u(r, z);
      return v.nr * (urr + 3 * ur_over_r) + v.nz * uzz + v.nr_r_over_r * u(r, z) +
             v.nr_r * ur_ + v.nz_z * uz_;
    };
    double ratio = ratio_of([&](int k) {
      Mesh mk = graded_r_mesh(16 << k, 16 << k);
      FieldGrid f = diffusion_u1(sample(mk, u, Parity::Even, Parity::Odd),
                                 nu_fields(spec, mk, omax), mk);
      CHECK(f.parity_r() == Parity::Even);
      CHECK(f.parity_z() == Parity::Odd);
      return max_error(f, mk, exact);
    });
    CHECK(ratio >= 3.3);
    CHECK(ratio <= 4.8);
  }
}

TEST_CASE("diffusion_w1") {
  SUBCASE("inviscid") {
    Mesh mesh = graded_r_mesh(16, 16);
    FieldGrid w = sample(mesh, Vort::w, Parity::Even, Parity::Odd);
    Velocity v = velocity_from_stream(sample(mesh, Stream::psi, Parity::Even, Parity::Odd), mesh);
    DiffusionSpec spec{Viscosity::Inviscid, 0.0, 0.0};
    CHECK(diffusion_w1(w, v, nu_fields(spec, mesh, 1.0), mesh).sup_norm() == 0.0);
  }
  SUBCASE("constant viscosity reduces to the principal part") {
    DiffusionSpec spec{Viscosity::Constant, 2e-3, 0.0};
    auto exact = [](double r, double z) {
      double wr_over_r = r > 0 ? Vort::w_r(r, z) / r : Vort::w_rr(0, z);
      return 2e-3 * (Vort::w_rr(r, z) + 3 * wr_over_r + Vort::w_zz(r, z));
    };
    double ratio = ratio_of([&](int k) {
      Mesh mesh = graded_r_mesh(16 << k, 16 << k);
      FieldGrid w = sample(mesh, Vort::w, Parity::Even, Parity::Odd);
      Velocity v = velocity_from_stream(sample(mesh, Stream::psi, Parity::Even, Parity::Odd), mesh);
      return max_error(diffusion_w1(w, v, nu_fields(spec, mesh, 1.0), mesh), mesh, exact);
    });
    CHECK(ratio >= 3.3);
    CHECK(ratio <= 4.8);
  }
  SUBCASE("degenerate viscosity with velocity cross terms") {
    DiffusionSpec spec = degenerate();
    double omax = 1e5;
    double ratio = ratio_of([&](int k) {
      Mesh mesh = graded_r_mesh(16 << k, 16 << k);
      FieldGrid w = sample(mesh, Vort::w, Parity::Even, Parity::Odd);
      Velocity v = velocity_from_stream(sample(mesh, Stream::psi, Parity::Even, Parity::Odd), mesh);
      FieldGrid f = diffusion_w1(w, v, nu_fields(spec, mesh, omax), mesh);
      CHECK(f.parity_r() == Parity::Even);
      CHECK(f.parity_z() == Parity::Odd);
      CHECK(f.all_finite());
      return max_error(f, mesh, [&](double r, double z) { return f_w1_oracle(spec, r, z, omax); },
                       1);
    });
    CHECK(ratio >= 3.3);
    CHECK(ratio <= 4.8);
  }
}

TEST_CASE("enforce_boundary") {
  Mesh mesh = uniform_mesh(32, 16);
  FieldGrid psi = sample(mesh, Stream::psi, Parity::Even, Parity::Odd);
  FieldGrid u = random_field(32, 16, Parity::Even, Parity::Odd);
  FieldGrid w = random_field(32, 16, Parity::Even, Parity::Odd);
  enforce_boundary(u, w, psi, mesh);
  for (int j = 0; j <= 16; ++j) {
    CHECK(u(32, j) == 0.0);
    // psi is quadratic in r, so the one-sided stencil is exact.
    CHECK(w(32, j) == doctest::Approx(2 * Stream::S(mesh.z.node(j))).epsilon(1e-10).scale(1.0));
  }
  FieldGrid u2 = u, w2 = w;
  enforce_boundary(u2, w2, psi, mesh);
  CHECK(u2.values() == u.values());
  CHECK(w2.values() == w.values());
}

TEST_CASE("parity bookkeeping over random fields") {
  Mesh mesh = graded_r_mesh(20, 12);
  for (Parity pr : {Parity::Even, Parity::Odd})
    for (Parity pz : {Parity::Even, Parity::Odd}) {
      FieldGrid f = random_field(20, 12, pr, pz);
      CHECK(ddr(f, mesh).parity_r() == flip(pr));
      CHECK(ddr(f, mesh).parity_z() == pz);
      CHECK(ddz(f, mesh).parity_z() == flip(pz));
      CHECK(d2dr2(f, mesh).parity_r() == pr);
      CHECK(d2dz2(f, mesh).parity_z() == pz);
      if (pr == Parity::Even)
        for (int j = 0; j <= 12; ++j) CHECK(ddr(f, mesh)(0, j) == 0.0);
    }
}
