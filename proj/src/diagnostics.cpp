#include "axisym/diagnostics.hpp"

#include <cmath>
#include <memory>
#include <ostream>
#include <sstream>

#include "axisym/errors.hpp"
#include "format.hpp"

namespace axisym {

namespace {

// Vertex offset of the parabola through (-1, a), (0, b), (1, c), in [-1/2, 1/2].
double parabola_offset(double a, double b, double c) {
  double den = a - 2.0 * b + c;
  if (!(den < 0.0)) return 0.0;
  double d = 0.5 * (a - c) / den;
  return std::max(-0.5, std::min(0.5, d));
}

double sup_abs(const FieldGrid& f) { return f.sup_norm(); }

}  // namespace

MaxLocation max_location(const FieldGrid& u1, const Mesh& mesh) {
  int n = u1.n(), m = u1.m();
  MaxLocation loc;
  loc.value = u1(0, 0);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= m; ++j)
      if (u1(i, j) > loc.value) {
        loc.value = u1(i, j);
        loc.i = i;
        loc.j = j;
      }
  int i = loc.i, j = loc.j;
  double dr = 0.0, dz = 0.0;
  if (i < n) dr = parabola_offset(u1.ghost_r(i - 1, j), u1(i, j), u1.ghost_r(i + 1, j));
  if (u1.parity_z() != Parity::None || (j > 0 && j < m))
    dz = parabola_offset(u1.ghost_z(i, j - 1), u1(i, j), u1.ghost_z(i, j + 1));
  double rho = std::max(0.0, std::min(1.0, (i + dr) / n));
  double eta = std::max(0.0, std::min(1.0, (j + dz) / m));
  loc.R = mesh.r.map(rho);
  loc.Z = mesh.z.map(eta);
  return loc;
}

ProfileFeatures locate_features(const FieldGrid& u1, const Mesh& mesh) {
  MaxLocation ml = max_location(u1, mesh);
  int n = u1.n(), j = ml.j;
  const auto& J = mesh.r.jac_nodes();
  double h = 1.0 / n;
  auto slope = [&](int i) {
    return (u1.ghost_r(i + 1, j) - u1.ghost_r(i - 1, j)) / (2.0 * h * J[i]);
  };
  int best = -1;
  double sb = 0.0;
  for (int i = 1; i < ml.i; ++i) {
    double s = slope(i);
    if (best < 0 || s > sb) {
      sb = s;
      best = i;
    }
  }
  ProfileFeatures f;
  f.R = ml.R;
  f.Z = ml.Z;
  if (best < 0) throw DegenerateProfile("no radial rise before the maximum");
  double d = best + 1 < n ? parabola_offset(slope(best - 1), sb, slope(best + 1)) : 0.0;
  f.Rr = mesh.r.map((best + d) * h);
  return f;
}

VorticityVector vorticity_vector(const FieldGrid& u1, const FieldGrid& w1,
                                 const Mesh& mesh) {
  int n = u1.n(), m = u1.m();
  FieldGrid ur = ddr(u1, mesh), uz = ddz(u1, mesh);
  VorticityVector v{
      FieldGrid(n, m, flip(w1.parity_r()), w1.parity_z()),
      FieldGrid(n, m, flip(uz.parity_r()), uz.parity_z()),
      FieldGrid(n, m, u1.parity_r(), u1.parity_z())};
  for (int i = 0; i <= n; ++i) {
    double r = mesh.r.node(i);
    for (int j = 0; j <= m; ++j) {
      double a = r * w1(i, j), b = -r * uz(i, j), c = 2.0 * u1(i, j) + r * ur(i, j);
      v.theta(i, j) = a;
      v.r(i, j) = b;
      v.z(i, j) = c;
      v.magnitude_max = std::max(v.magnitude_max, std::sqrt(a * a + b * b + c * c));
    }
  }
  v.theta_max = sup_abs(v.theta);
  v.r_max = sup_abs(v.r);
  v.z_max = sup_abs(v.z);
  return v;
}

double kinetic_energy(const FieldGrid& u1, const Velocity& vel, const Mesh& mesh) {
  int n = u1.n(), m = u1.m();
  const auto& Jr = mesh.r.jac_nodes();
  const auto& Jz = mesh.z.jac_nodes();
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    double r = mesh.r.node(i);
    double wi = (i == 0 || i == n) ? 0.5 : 1.0;
    double row = 0.0;
    for (int j = 0; j <= m; ++j) {
      double wj = (j == 0 || j == m) ? 0.5 : 1.0;
      double ut = r * u1(i, j);
      row += wj * Jz[j] *
             (vel.ur(i, j) * vel.ur(i, j) + ut * ut + vel.uz(i, j) * vel.uz(i, j));
    }
    sum += wi * r * Jr[i] * row;
  }
  return 0.5 * sum / (static_cast<double>(n) * m);
}

MeshEffectiveness mesh_effectiveness(const FieldGrid& v, const Mesh& mesh) {
  (void)mesh;
  double norm = v.sup_norm();
  if (norm == 0.0) throw ZeroField("mesh effectiveness of a zero field");
  MeshEffectiveness me;
  me.rho = sup_abs(d_rho(v)) / v.n() / norm;
  me.eta = sup_abs(d_eta(v)) / v.m() / norm;
  return me;
}

double level_set_parallelism(const FieldGrid& u1, const FieldGrid& w1,
                             const Mesh& mesh, const Window& win) {
  FieldGrid ur = ddr(u1, mesh), uz = ddz(u1, mesh);
  FieldGrid wr = ddr(w1, mesh), wz = ddz(w1, mesh);
  double acc = 0.0;
  long count = 0;
  for (int i = 0; i <= u1.n(); ++i) {
    double r = mesh.r.node(i);
    if (r < win.r0 || r > win.r1) continue;
    for (int j = 0; j <= u1.m(); ++j) {
      double z = mesh.z.node(j);
      if (z < win.z0 || z > win.z1) continue;
      double cross = std::abs(ur(i, j) * wz(i, j) - uz(i, j) * wr(i, j));
      double mag = std::hypot(ur(i, j), uz(i, j)) * std::hypot(wr(i, j), wz(i, j));
      double q = cross / (mag + 1e-300);
      acc += q * q;
      ++count;
    }
  }
  if (count == 0) throw DomainError("parallelism window contains no nodes");
  return std::sqrt(acc / count);
}

Raster rescaled_profile(const FieldGrid& f, const Mesh& mesh, double R, double Z,
                        const RasterBox& box) {
  if (box.nxi < 1 || box.nzeta < 1) throw DomainError("empty raster");
  if (Z * std::min(box.xi0, box.xi1) + R < 0.0)
    throw OutOfDomain("rescaled box crosses the axis");
  Raster out;
  auto axis = [](double a, double b, int k) {
    std::vector<double> v(k);
    for (int q = 0; q < k; ++q) v[q] = k == 1 ? a : a + (b - a) * q / (k - 1);
    return v;
  };
  out.xi = axis(box.xi0, box.xi1, box.nxi);
  out.zeta = axis(box.zeta0, box.zeta1, box.nzeta);
  PointInterpolator ip(f, mesh);
  for (double xi : out.xi)
    for (double ze : out.zeta) out.values.push_back(ip(Z * xi + R, Z * ze));
  return out;
}

void write_raster_csv(std::ostream& os, const Raster& raster) {
  os << "xi\\zeta";
  for (double z : raster.zeta) os << ',' << detail::g17(z);
  os << '\n';
  std::size_t nz = raster.zeta.size();
  for (std::size_t a = 0; a < raster.xi.size(); ++a) {
    os << detail::g17(raster.xi[a]);
    for (std::size_t b = 0; b < nz; ++b) os << ',' << detail::g17(raster.values[a * nz + b]);
    os << '\n';
  }
}

Streamline streamline(const VelocityFn& u, const Vec3& start, double s_max, double ds) {
  if (!(ds > 0.0)) throw DomainError("streamline step must be positive");
  Streamline out;
  out.points.push_back(start);
  Vec3 y = start;
  auto axpy = [](const Vec3& a, double s, const Vec3& b) {
    return Vec3{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
  };
  double s = 0.0;
  while (s < s_max - 1e-15 * s_max) {
    double h = std::min(ds, s_max - s);
    auto k1 = u(y);
    auto k2 = k1 ? u(axpy(y, 0.5 * h, *k1)) : std::nullopt;
    auto k3 = k2 ? u(axpy(y, 0.5 * h, *k2)) : std::nullopt;
    auto k4 = k3 ? u(axpy(y, h, *k3)) : std::nullopt;
    if (!k4) {
      out.left_domain = true;
      break;
    }
    for (int c = 0; c < 3; ++c)
      y[c] += h / 6.0 * ((*k1)[c] + 2.0 * (*k2)[c] + 2.0 * (*k3)[c] + (*k4)[c]);
    s += h;
    out.points.push_back(y);
  }
  return out;
}

VelocityFn grid_velocity(const FieldGrid& ur, const FieldGrid& u1,
                         const FieldGrid& uz, const Mesh& mesh) {
  struct Data {
    FieldGrid ur, u1, uz;
    Mesh mesh;
  };
  auto d = std::make_shared<Data>(Data{ur, u1, uz, mesh});
  return [d](const Vec3& p) -> std::optional<Vec3> {
    double r = std::hypot(p[0], p[1]);
    if (r > 1.0 || p[2] < 0.0 || p[2] > 0.5) return std::nullopt;
    double ct = r > 0 ? p[0] / r : 1.0, st = r > 0 ? p[1] / r : 0.0;
    double vr = PointInterpolator(d->ur, d->mesh)(r, p[2]);
    double vt = r * PointInterpolator(d->u1, d->mesh)(r, p[2]);
    double vz = PointInterpolator(d->uz, d->mesh)(r, p[2]);
    return Vec3{vr * ct - vt * st, vr * st + vt * ct, vz};
  };
}

Vec3 cylindrical_point(double r, double theta, double z) {
  return {r * std::cos(theta), r * std::sin(theta), z};
}

DiagnosticsRecord record_diagnostics(double t, const FieldGrid& u1,
                                     const FieldGrid& w1, const FieldGrid& psi,
                                     const Mesh& mesh) {
  DiagnosticsRecord rec;
  rec.t = t;
  rec.u1_max = u1.sup_norm();
  rec.w1_max = w1.sup_norm();
  VorticityVector vv = vorticity_vector(u1, w1, mesh);
  rec.omega_theta_max = vv.theta_max;
  rec.omega_r_max = vv.r_max;
  rec.omega_z_max = vv.z_max;
  rec.omega_max = vv.magnitude_max;
  FieldGrid pr = ddr(psi, mesh), pz = ddz(psi, mesh);
  rec.psi_r_max = pr.sup_norm();
  rec.psi_z_max = pz.sup_norm();
  rec.u1_r_max = ddr(u1, mesh).sup_norm();
  rec.u1_z_max = ddz(u1, mesh).sup_norm();
  MaxLocation ml = max_location(u1, mesh);
  rec.R = ml.R;
  rec.Z = ml.Z;
  Velocity vel = velocity_from_derivatives(psi, pr, pz, mesh);
  rec.energy = kinetic_energy(u1, vel, mesh);
  double r = mesh.r.node(ml.i);
  double uval = u1(ml.i, ml.j);
  rec.alignment = uval != 0.0 ? pz(ml.i, ml.j) / uval : 0.0;
  rec.circulation = r * r * uval;
  if (rec.u1_max > 0) {
    MeshEffectiveness me = mesh_effectiveness(u1, mesh);
    rec.me_rho_u1 = me.rho;
    rec.me_eta_u1 = me.eta;
  }
  if (rec.w1_max > 0) {
    MeshEffectiveness me = mesh_effectiveness(w1, mesh);
    rec.me_rho_w1 = me.rho;
    rec.me_eta_w1 = me.eta;
  }
  return rec;
}

std::vector<std::string> csv_columns() {
  return {"t",          "u1_max",      "w1_max",     "omega_theta_max",
          "omega_r_max", "omega_z_max", "omega_max",  "psi_r_max",
          "psi_z_max",  "u1_r_max",    "u1_z_max",   "R",
          "Z",          "energy",      "alignment",  "circulation",
          "me_rho_u1",  "me_eta_u1",   "me_rho_w1",  "me_eta_w1",
          "dt",         "mesh_updated"};
}

std::string csv_header() {
  std::string s;
  for (const auto& c : csv_columns()) s += (s.empty() ? "" : ",") + c;
  return s;
}

std::string csv_row(const DiagnosticsRecord& r) {
  using detail::g17;
  std::ostringstream os;
  for (double x : {r.t, r.u1_max, r.w1_max, r.omega_theta_max, r.omega_r_max,
                   r.omega_z_max, r.omega_max, r.psi_r_max, r.psi_z_max, r.u1_r_max,
                   r.u1_z_max, r.R, r.Z, r.energy, r.alignment, r.circulation,
                   r.me_rho_u1, r.me_eta_u1, r.me_rho_w1, r.me_eta_w1, r.dt})
    os << g17(x) << ',';
  os << (r.mesh_updated ? 1 : 0);
  return os.str();
}

}  // namespace axisym
