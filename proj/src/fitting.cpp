#include "axisym/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "axisym/errors.hpp"
#include "format.hpp"

namespace axisym {

namespace {

constexpr int kCandidates = 101;  // 100 intervals, spacing 2e-3 over the width
constexpr double kHalfWidth = 0.1;
constexpr int kMaxRounds = 50;
constexpr std::size_t kMinSamples = 8;

// Second-order derivative of v at sample k from three (possibly uneven)
// neighbours; one-sided at the ends.
double three_point(const std::vector<double>& t, const std::vector<double>& v,
                   std::size_t k) {
  std::size_t n = t.size();
  std::size_t i0 = k == 0 ? 0 : (k == n - 1 ? n - 3 : k - 1);
  double x0 = t[i0], x1 = t[i0 + 1], x2 = t[i0 + 2], x = t[k];
  // Derivative of the Lagrange interpolant through the three samples.
  double l0 = ((x - x1) + (x - x2)) / ((x0 - x1) * (x0 - x2));
  double l1 = ((x - x0) + (x - x2)) / ((x1 - x0) * (x1 - x2));
  double l2 = ((x - x0) + (x - x1)) / ((x2 - x0) * (x2 - x1));
  return l0 * v[i0] + l1 * v[i0 + 1] + l2 * v[i0 + 2];
}

TimeSeries checked_window(const TimeSeries& s, const FitWindow& w) {
  if (!(w.t2 > w.t1)) throw DomainError("fit window is empty");
  s.validate();
  TimeSeries sub = s.window(w.t1, w.t2);
  if (sub.size() < kMinSamples)
    throw DomainError("fit window holds " + std::to_string(sub.size()) +
                      " samples, need at least 8");
  return sub;
}

}  // namespace

void TimeSeries::validate() const {
  if (t.size() != v.size()) throw DomainError("time series length mismatch");
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!std::isfinite(t[k]) || !std::isfinite(v[k]))
      throw DomainError("time series holds non-finite values");
    if (!(v[k] > 0.0)) throw DomainError("time series values must be positive");
    if (k > 0 && !(t[k] > t[k - 1]))
      throw DomainError("time series times must increase strictly");
  }
}

TimeSeries TimeSeries::window(double t1, double t2) const {
  TimeSeries out;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] >= t1 && t[k] <= t2) {
      out.t.push_back(t[k]);
      out.v.push_back(v[k]);
    }
  }
  return out;
}

LinearFit linear_regression(const std::vector<double>& x, const std::vector<double>& y) {
  std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw DomainError("regression needs two or more points");
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  if (!(sxx > 0.0)) throw DegenerateFit("regression abscissae are all equal");
  LinearFit f;
  f.a = sxy / sxx;
  f.b = my - f.a * mx;
  for (std::size_t k = 0; k < n; ++k) {
    double r = y[k] - (f.a * x[k] + f.b);
    f.ss_err += r * r;
    f.ss_tot += (y[k] - my) * (y[k] - my);
  }
  f.r2 = f.ss_tot > 0.0 ? 1.0 - f.ss_err / f.ss_tot : (f.ss_err == 0.0 ? 1.0 : 0.0);
  return f;
}

FitResult fit_model1(const TimeSeries& s, const FitWindow& w) {
  TimeSeries sub = checked_window(s, w);
  std::vector<double> y(sub.size());
  for (std::size_t k = 0; k < sub.size(); ++k) {
    double dv = three_point(sub.t, sub.v, k);
    if (dv == 0.0) throw DegenerateFit("zero time derivative in window");
    y[k] = sub.v[k] / dv;
  }
  LinearFit lf = linear_regression(sub.t, y);
  // v/v' drifting by under 0.1% of its size across the window is no trend
  // either; end stencils alone produce that much on an exponential.
  double ybar = 0.0;
  for (double q : y) ybar += std::abs(q) / static_cast<double>(y.size());
  double drift = lf.a * (sub.t.back() - sub.t.front());
  if (!(lf.a < 0.0) || -drift <= 1e-3 * ybar)
    throw DegenerateFit("no blowup trend: v/v' does not decrease");
  FitResult r;
  r.model = 1;
  r.window = w;
  r.a = lf.a;
  r.b = lf.b;
  r.r2 = lf.r2;
  r.c = -1.0 / lf.a;
  r.T = -lf.b / lf.a;
  return r;
}

LinearFit model2_regression(const TimeSeries& sub, double c) {
  std::vector<double> g(sub.size());
  // log form keeps v^(-1/c) finite for large v and small c
  for (std::size_t k = 0; k < sub.size(); ++k) g[k] = std::exp(-std::log(sub.v[k]) / c);
  return linear_regression(sub.t, g);
}

FitResult fit_model2(const TimeSeries& s, const FitWindow& w, double c_init) {
  if (!(c_init > 0.0) || !std::isfinite(c_init))
    throw DomainError("model 2 needs a positive initial rate");
  TimeSeries sub = checked_window(s, w);
  double centre = c_init;
  for (int round = 1; round <= kMaxRounds; ++round) {
    double lo = std::max(centre - kHalfWidth, 1e-3);
    double hi = lo + 2.0 * kHalfWidth;
    int best = -1;
    LinearFit best_fit;
    double best_c = 0.0;
    for (int k = 0; k < kCandidates; ++k) {
      double c = lo + (hi - lo) * k / (kCandidates - 1);
      LinearFit lf = model2_regression(sub, c);
      // v^(-1/c) underflowing to a constant column fits trivially; skip it.
      if (!std::isfinite(lf.r2) || !(lf.ss_tot > 0.0)) continue;
      if (best < 0 || lf.r2 > best_fit.r2) {
        best = k;
        best_fit = lf;
        best_c = c;
      }
    }
    if (best < 0) throw DegenerateFit("model 2 regression failed for every candidate");
    bool at_end = best == kCandidates - 1 || (best == 0 && lo > 1e-3);
    if (!at_end) {
      if (!(best_fit.a < 0.0)) throw DegenerateFit("no blowup trend in v^(-1/c)");
      FitResult r;
      r.model = 2;
      r.window = w;
      r.c = best_c;
      r.a = best_fit.a;
      r.b = best_fit.b;
      r.r2 = best_fit.r2;
      r.T = -best_fit.b / best_fit.a;
      r.rounds = round;
      return r;
    }
    centre = best_c;
  }
  throw NonConvergent("model 2 search kept hitting the grid edge after 50 rounds");
}

FitPair fit_pipeline(const TimeSeries& s, const FitWindow& w) {
  FitPair out;
  std::vector<double> seeds;
  try {
    out.model1 = fit_model1(s, w);
    seeds.push_back(out.model1->c);
  } catch (const DegenerateFit& e) {
    out.model1_error = e.what();
  }
  if (seeds.empty() || seeds.front() != 1.0) seeds.push_back(1.0);
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    try {
      out.model2 = fit_model2(s, w, seeds[k]);
      out.seed = seeds[k];
      return out;
    } catch (const NonConvergent&) {
      if (k + 1 == seeds.size()) throw;
    }
  }
  return out;
}

Exponents exponents_from_tuple(double c_u, double c_omega, double c_psi, double c_l,
                               double c_s) {
  return {{"u", c_u}, {"omega", c_omega}, {"psi", c_psi}, {"l", c_l}, {"s", c_s}};
}

bool ScalingReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const RelationCheck& c) { return c.pass; });
}

const RelationCheck& ScalingReport::at(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw MissingExponent("no relation named " + name);
}

std::string ScalingReport::text() const {
  std::ostringstream os;
  os << "relation        formula                       residual          result\n";
  for (const auto& c : checks) {
    char line[160];
    std::snprintf(line, sizeof line, "%-15s %-29s %+.6e    %s\n", c.name.c_str(),
                  c.formula.c_str(), c.residual, c.pass ? "pass" : "FAIL");
    os << line;
  }
  os << "tolerance " << detail::g17(tol) << ", " << (all_pass() ? "all pass" : "failures")
     << "\n";
  return os.str();
}

ScalingReport check_scaling_relations(const Exponents& e, double tol) {
  auto get = [&](const char* k) {
    auto it = e.find(k);
    if (it == e.end()) throw MissingExponent(std::string("missing exponent c_") + k);
    return it->second;
  };
  auto has = [&](std::initializer_list<const char*> ks) {
    return std::all_of(ks.begin(), ks.end(), [&](const char* k) { return e.count(k) > 0; });
  };
  double cu = get("u"), cw = get("omega"), cp = get("psi"), cl = get("l"), cs = get("s");

  ScalingReport rep;
  rep.tol = tol;
  auto add = [&](std::string name, std::string formula, double res) {
    rep.checks.push_back({std::move(name), std::move(formula), res, std::abs(res) < tol});
  };
  add("u", "c_u - 1", cu - 1.0);
  add("omega", "c_omega - (1 + c_l)", cw - (1.0 + cl));
  add("psi", "c_psi - (1 - c_l)", cp - (1.0 - cl));
  add("s", "c_s - 1/2", cs - 0.5);
  add("l", "c_l - 1", cl - 1.0);
  if (has({"psi_r"})) add("psi_r", "c_psi_r - (c_psi + c_l)", get("psi_r") - (cp + cl));
  if (has({"psi_z"})) add("psi_z", "c_psi_z - (c_psi + c_l)", get("psi_z") - (cp + cl));
  if (has({"u1_r"})) add("u1_r", "c_u1_r - (c_u + c_l)", get("u1_r") - (cu + cl));
  if (has({"u1_z"})) add("u1_z", "c_u1_z - (c_u + c_l)", get("u1_z") - (cu + cl));
  if (has({"omega_theta"}))
    add("omega_theta", "c_omega_theta - (c_omega - c_s)", get("omega_theta") - (cw - cs));
  if (has({"omega_r", "u1_z"}))
    add("omega_r", "c_omega_r - (c_u1_z - c_s)", get("omega_r") - (get("u1_z") - cs));
  if (has({"omega_z", "u1_r"}))
    add("omega_z", "c_omega_z - (c_u1_r - c_s)", get("omega_z") - (get("u1_r") - cs));
  return rep;
}

}  // namespace axisym
