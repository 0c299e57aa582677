#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace axisym {

// Samples (t_i, v_i) with strictly increasing t and positive v.
struct TimeSeries {
  std::vector<double> t, v;

  std::size_t size() const { return t.size(); }
  // Throws DomainError on unsorted times, non-positive or non-finite values.
  void validate() const;
  // Samples with t1 <= t <= t2.
  TimeSeries window(double t1, double t2) const;
};

struct FitWindow {
  double t1 = 1.60e-4, t2 = 1.75e-4;
};

struct LinearFit {
  double a = 0.0, b = 0.0;  // y ~ a x + b
  double r2 = 0.0;
  double ss_err = 0.0, ss_tot = 0.0;
};

// Ordinary least squares. r2 is 1 when ss_tot vanishes and the fit is exact.
LinearFit linear_regression(const std::vector<double>& x, const std::vector<double>& y);

struct FitResult {
  double c = 0.0;  // blowup rate
  double T = 0.0;  // blowup time
  double r2 = 0.0;
  int model = 0;
  FitWindow window;
  double a = 0.0, b = 0.0;
  int rounds = 0;  // re-centering rounds used by model 2
};

// Log-derivative model: v/v' ~ a t + b, c = -1/a, T = -b/a.
// Needs at least 8 samples in the window. Throws DegenerateFit when a >= 0.
FitResult fit_model1(const TimeSeries& s, const FitWindow& w = {});

// Power-transform model: v^(-1/c) ~ a t + b over a 101-point grid (spacing 2e-3) of c on
// [c_init - 0.1, c_init + 0.1], re-centred while the best c sits on an end.
// Throws NonConvergent after 50 rounds.
FitResult fit_model2(const TimeSeries& s, const FitWindow& w, double c_init);

struct FitPair {
  std::optional<FitResult> model1;
  std::string model1_error;  // why model 1 gave no result
  FitResult model2;
  double seed = 0.0;  // starting rate that model 2 converged from
};

// Model 1 seeds model 2. If model 1 finds no trend, or its rate sends the
// model-2 search past the round cap, the search starts again from c = 1.
FitPair fit_pipeline(const TimeSeries& s, const FitWindow& w = {});

// R^2 of the power-transform regression for one candidate rate.
LinearFit model2_regression(const TimeSeries& windowed, double c);

// Exponent names: u, omega, psi, l, s (required) and optionally
// psi_r, psi_z, u1_r, u1_z, omega_theta, omega_r, omega_z.
using Exponents = std::map<std::string, double>;

Exponents exponents_from_tuple(double c_u, double c_omega, double c_psi, double c_l,
                               double c_s);

struct RelationCheck {
  std::string name;
  std::string formula;
  double residual = 0.0;  // signed; pass when |residual| < tol
  bool pass = false;
};

struct ScalingReport {
  double tol = 0.1;
  std::vector<RelationCheck> checks;

  bool all_pass() const;
  const RelationCheck& at(const std::string& name) const;
  std::string text() const;
};

// Throws MissingExponent when a required exponent is absent. Derived
// relations are checked only when their exponents are present.
ScalingReport check_scaling_relations(const Exponents& e, double tol = 0.1);

}  // namespace axisym
