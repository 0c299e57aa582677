#include "axisym/meshmap.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "axisym/errors.hpp"
#include "format.hpp"
#include "quadrature.hpp"

namespace axisym {

namespace {

constexpr int kCellsPerUnit = 512;

std::atomic<std::uint64_t> g_next_id{1};

double ipow(double x, int b) {
  double r = 1.0;
  while (b > 0) {
    if (b & 1) r *= x;
    x *= x;
    b >>= 1;
  }
  return r;
}

// Unchecked sigmoid; the density needs arguments slightly beyond [-1, 1].
double q_raw(double x, int b) {
  double u = ipow(1.0 + x, b);
  if (u == 0.0) return 0.0;
  // 1/(1 + 1/u) rounds monotonically in u
  return 1.0 / (1.0 + 1.0 / u);
}

double dq_raw(double x, int b) {
  double t = 1.0 + x;
  double u = ipow(t, b);
  if (std::isinf(u)) return 0.0;
  double den = 1.0 + u;
  return b * ipow(t, b - 1) / (den * den);
}

// Clamp round-off negatives; reject real ones.
double nonneg(double a, double scale, const char* name) {
  if (a >= 0.0) return a;
  if (a > -1e-12 * scale) return 0.0;
  throw NonPositiveDensity(std::string("negative density coefficient ") + name);
}

}  // namespace

void PhaseKnots::validate() const {
  if (!(0.0 <= s1 && s1 < s2 && s2 < s3 && s3 < 1.0))
    throw DomainError("phase knots must satisfy 0 <= s1 < s2 < s3 < 1");
}

void DensityCoeffs::validate() const {
  if (!(a0 >= 0 && a2 >= 0 && a3 >= 0 && a1 > 0))
    throw NonPositiveDensity("density coefficients must be >= 0 with a1 > 0");
  if (b < 2 || b % 2 != 0) throw DomainError("sigmoid exponent must be even");
}

double eval_q(double x, int b) {
  if (!(std::abs(x) <= 1.0)) throw DomainError("q_b argument outside [-1,1]");
  if (b < 2 || b % 2 != 0) throw DomainError("sigmoid exponent must be even");
  return q_raw(x, b);
}

DensityCoeffs solve_phase_coeffs(const PhaseKnots& k, const MeshTargets& t,
                                 int b) {
  k.validate();
  DensityCoeffs c;
  c.b = b;
  double scale = std::max(t.L, t.y3);
  c.a1 = (t.y2 - t.y1) / (k.s2 - k.s1);
  if (!(c.a1 > 0)) throw NonPositiveDensity("phase-2 targets not increasing");
  if (k.s1 > 0.0) {
    c.a0 = nonneg(t.y1 / k.s1 - c.a1, scale, "a0");
  } else {
    if (t.y1 != 0.0) throw NonPositiveDensity("y1 must vanish when s1 = 0");
    c.a0 = 0.0;
  }
  double slope23 = (t.y3 - t.y2) / (k.s3 - k.s2);
  c.a2 = nonneg(slope23 - c.a1, scale, "a2");
  c.a3 = nonneg((t.L - t.y3) / (1.0 - k.s3) - slope23, scale, "a3");
  c.validate();
  return c;
}

MeshTargets derive_targets(const ProfileFeatures& f, Axis axis,
                           const PhaseKnots& k) {
  k.validate();
  MeshTargets t;
  if (axis == Axis::R) {
    double d = f.R - f.Rr;
    if (!(d > 0.0) || !(f.Rr > 0.0))
      throw DegenerateProfile("need 0 < R_r < R for the radial mesh");
    t.L = 1.0;
    t.y2 = f.R + 3.0 * d;
    t.y1 = std::max(f.Rr - 4.0 * d, (k.s1 / k.s2) * t.y2);
    t.y3 = std::max(3.0 * f.R,
                    t.y2 + (k.s3 - k.s2) / (k.s2 - k.s1) * (t.y2 - t.y1));
  } else {
    if (!(f.Z > 0.0)) throw DegenerateProfile("need Z > 0 for the axial mesh");
    if (k.s1 != 0.0) throw DomainError("axial knots need s1 = 0");
    t.L = 0.5;
    t.y1 = 0.0;
    t.y2 = 1.5 * f.Z;
    t.y3 = 15.0 * f.Z;
  }
  if (!(t.y3 < t.L)) throw DegenerateProfile("profile too wide for the domain");
  return t;
}

MeshMap MeshMap::build(const PhaseKnots& knots, const DensityCoeffs& coeffs,
                       double L, int resolution) {
  knots.validate();
  coeffs.validate();
  if (!(L > 0)) throw DomainError("map extent must be positive");
  if (resolution < 4) throw DomainError("map resolution must be >= 4");

  MeshMap mm;
  mm.knots_ = knots;
  mm.coeffs_ = coeffs;
  mm.L_ = L;
  mm.n_ = resolution;
  mm.id_ = g_next_id.fetch_add(1);

  double breaks[5] = {0.0, knots.s1, knots.s2, knots.s3, 1.0};
  for (int s = 0; s < 4; ++s) {
    double a = breaks[s], b = breaks[s + 1];
    if (b <= a) continue;
    int cells = std::max(1, static_cast<int>(std::ceil((b - a) * kCellsPerUnit)));
    for (int c = 0; c < cells; ++c) mm.cell_lo_.push_back(a + (b - a) * c / cells);
  }
  mm.cell_lo_.push_back(1.0);

  mm.cum_.assign(mm.cell_lo_.size(), 0.0);
  for (std::size_t c = 0; c + 1 < mm.cell_lo_.size(); ++c) {
    double a = mm.cell_lo_[c], b = mm.cell_lo_[c + 1];
    double half = 0.5 * (b - a), mid = 0.5 * (a + b), s = 0.0;
    for (int g = 0; g < detail::kGaussPoints; ++g)
      s += detail::kGaussW[g] * mm.density(mid + half * detail::kGaussX[g]);
    mm.cum_[c + 1] = mm.cum_[c] + half * s;
  }
  for (std::size_t c = 0; c < mm.cell_lo_.size(); ++c) {
    if (mm.density(mm.cell_lo_[c]) <= 0.0)
      throw NonPositiveDensity("mesh density not positive");
  }
  mm.rescale_ = L / mm.cum_.back();

  mm.nodes_.resize(resolution + 1);
  mm.jac_.resize(resolution + 1);
  mm.jac2_.resize(resolution + 1);
  for (int i = 0; i <= resolution; ++i) {
    double x = static_cast<double>(i) / resolution;
    mm.nodes_[i] = mm.map(x);
    mm.jac_[i] = mm.jacobian(x);
    mm.jac2_[i] = mm.jacobian_derivative(x);
  }
  return mm;
}

MeshMap MeshMap::uniform(double L, int resolution) {
  DensityCoeffs c;
  c.a1 = L;
  return build(PhaseKnots::r_default(), c, L, resolution);
}

double MeshMap::density(double s) const {
  const auto& c = coeffs_;
  double p = c.a1;
  if (c.a2 != 0.0) p += c.a2 * q_raw(s - knots_.s2, c.b);
  if (c.a3 != 0.0) p += c.a3 * q_raw(s - knots_.s3, c.b);
  if (c.a0 != 0.0)
    p += c.a0 * (q_raw(knots_.s1 - s, c.b) + q_raw(knots_.s1 + s, c.b) - 1.0);
  return p;
}

double MeshMap::density_derivative(double s) const {
  const auto& c = coeffs_;
  double d = 0.0;
  if (c.a2 != 0.0) d += c.a2 * dq_raw(s - knots_.s2, c.b);
  if (c.a3 != 0.0) d += c.a3 * dq_raw(s - knots_.s3, c.b);
  if (c.a0 != 0.0)
    d += c.a0 * (dq_raw(knots_.s1 + s, c.b) - dq_raw(knots_.s1 - s, c.b));
  return d;
}

double MeshMap::raw_integral(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return cum_.back();
  auto it = std::upper_bound(cell_lo_.begin(), cell_lo_.end(), x);
  std::size_t c = static_cast<std::size_t>(it - cell_lo_.begin()) - 1;
  double a = cell_lo_[c];
  if (x == a) return cum_[c];
  double half = 0.5 * (x - a), mid = 0.5 * (x + a), s = 0.0;
  for (int g = 0; g < detail::kGaussPoints; ++g)
    s += detail::kGaussW[g] * density(mid + half * detail::kGaussX[g]);
  return cum_[c] + half * s;
}

double MeshMap::map(double x) const {
  if (x >= 1.0) return L_;
  return rescale_ * raw_integral(x);
}

double MeshMap::inverse(double y) const {
  double tol = 1e-14 * L_;
  if (y < -tol || y > L_ + tol) throw OutOfDomain("inverse map argument outside [0,L]");
  if (y <= 0.0) return 0.0;
  if (y >= L_) return 1.0;
  double yr = y / rescale_;
  auto it = std::upper_bound(cum_.begin(), cum_.end(), yr);
  std::size_t c = static_cast<std::size_t>(it - cum_.begin()) - 1;
  if (c + 1 >= cum_.size()) return 1.0;
  double a = cell_lo_[c], b = cell_lo_[c + 1];
  double x = a + (yr - cum_[c]) / (cum_[c + 1] - cum_[c]) * (b - a);
  for (int it2 = 0; it2 < 60; ++it2) {
    double F = raw_integral(x) - yr;
    if (F > 0) b = x; else a = x;
    double step = F / density(x);
    double xn = x - step;
    if (!(xn > a && xn < b)) xn = 0.5 * (a + b);
    if (std::abs(xn - x) <= 1e-16 || b - a <= 1e-16) {
      x = xn;
      break;
    }
    x = xn;
  }
  return x;
}

int MeshMap::count_nodes_in(double lo, double hi) const {
  auto a = std::lower_bound(nodes_.begin(), nodes_.end(), lo);
  auto b = std::upper_bound(nodes_.begin(), nodes_.end(), hi);
  return b > a ? static_cast<int>(b - a) : 0;
}

void MeshMap::dump(std::ostream& os) const {
  using detail::g17;
  os << "knots " << g17(knots_.s1) << ' ' << g17(knots_.s2) << ' '
     << g17(knots_.s3) << '\n';
  os << "coeffs " << g17(coeffs_.a0) << ' ' << g17(coeffs_.a1) << ' '
     << g17(coeffs_.a2) << ' ' << g17(coeffs_.a3) << '\n';
  os << "b " << coeffs_.b << '\n';
  os << "L " << g17(L_) << '\n';
  os << "rescale " << g17(rescale_) << '\n';
  os << "n " << n_ << '\n';
  os << "nodes\n";
  for (double x : nodes_) os << g17(x) << '\n';
}

MeshMap MeshMap::parse(std::istream& is) {
  PhaseKnots k;
  DensityCoeffs c;
  double L = 0, rescale = 0;
  int n = 0;
  std::string key;
  auto need = [&](bool ok) {
    if (!ok) throw IoError("malformed mesh dump near '" + key + "'");
  };
  for (const char* expect : {"knots", "coeffs", "b", "L", "rescale", "n", "nodes"}) {
    need(static_cast<bool>(is >> key) && key == expect);
    if (key == "knots") need(static_cast<bool>(is >> k.s1 >> k.s2 >> k.s3));
    else if (key == "coeffs") need(static_cast<bool>(is >> c.a0 >> c.a1 >> c.a2 >> c.a3));
    else if (key == "b") need(static_cast<bool>(is >> c.b));
    else if (key == "L") need(static_cast<bool>(is >> L));
    else if (key == "rescale") need(static_cast<bool>(is >> rescale));
    else if (key == "n") need(static_cast<bool>(is >> n));
  }
  std::vector<double> nodes(n + 1);
  for (double& x : nodes) need(static_cast<bool>(is >> x));
  MeshMap mm = build(k, c, L, n);
  if (mm.rescale_ != rescale || mm.nodes_ != nodes)
    throw IoError("mesh dump does not reproduce its stored nodes");
  return mm;
}

Mesh uniform_mesh(int n, int m) {
  return {MeshMap::uniform(1.0, n), MeshMap::uniform(0.5, m)};
}

Mesh adaptive_mesh(const ProfileFeatures& f, int n, int m, const PhaseKnots& kr,
                   const PhaseKnots& kz, int b) {
  MeshTargets tr = derive_targets(f, Axis::R, kr);
  MeshTargets tz = derive_targets(f, Axis::Z, kz);
  return {MeshMap::build(kr, solve_phase_coeffs(kr, tr, b), tr.L, n),
          MeshMap::build(kz, solve_phase_coeffs(kz, tz, b), tz.L, m)};
}

void dump_mesh(std::ostream& os, const Mesh& mesh) {
  os << "axis r\n";
  mesh.r.dump(os);
  os << "axis z\n";
  mesh.z.dump(os);
}

Mesh parse_mesh(std::istream& is) {
  std::string a, name;
  Mesh mesh;
  if (!(is >> a >> name) || a != "axis" || name != "r")
    throw IoError("mesh dump must start with 'axis r'");
  mesh.r = MeshMap::parse(is);
  if (!(is >> a >> name) || a != "axis" || name != "z")
    throw IoError("mesh dump missing 'axis z'");
  mesh.z = MeshMap::parse(is);
  return mesh;
}

UpdateDecision needs_update(const ProfileFeatures& f, const Mesh& mesh,
                            const UpdateThresholds& th) {
  double d = f.R - f.Rr;
  const auto& kr = mesh.r.knots();
  const auto& on = th.enabled;
  if (on[0] && (f.Rr - d < mesh.r.map(kr.s1) || f.R + d > mesh.r.map(kr.s2)))
    return {true, 1};
  if (on[1] && 1.5 * f.Z > mesh.z.map(mesh.z.knots().s2)) return {true, 2};
  if (on[2] && mesh.r.count_nodes_in(f.Rr, f.R) < th.n_min_r) return {true, 3};
  if (on[3] && mesh.z.count_nodes_in(0.0, f.Z) < th.n_min_z) return {true, 4};
  return {};
}

}  // namespace axisym
