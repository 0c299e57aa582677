#include "axisym/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "axisym/diagnostics.hpp"
#include "axisym/errors.hpp"
#include "axisym/runner.hpp"
#include "format.hpp"

namespace axisym {

namespace fs = std::filesystem;

void StudySpec::validate() const {
  if (p.size() < 2) throw ConfigError(0, "study needs at least two mesh levels");
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] < 1) throw ConfigError(0, "study levels must be positive");
    if (k > 0 && p[k] <= p[k - 1]) throw ConfigError(0, "study levels must increase");
  }
  if (times.empty()) throw ConfigError(0, "study needs comparison instants");
  for (double t : times)
    if (!(t > 0.0)) throw ConfigError(0, "study instants must be positive");
  if (base_n < 8 || base_m < 8) throw ConfigError(0, "study base mesh too small");
}

double relative_error(const FieldGrid& f, const Mesh& mesh, const FieldGrid& ref,
                      const Mesh& ref_mesh) {
  double scale = ref.sup_norm();
  if (!(scale > 0.0)) throw ZeroField("reference field vanishes");
  FieldGrid g = interpolate_ip4(ref, ref_mesh, mesh);
  double e = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k)
    e = std::max(e, std::abs(f.values()[k] - g.values()[k]));
  return e / scale;
}

double relative_error_vorticity(const StudySample& s, const StudySample& ref) {
  VorticityVector a = vorticity_vector(s.u1, s.w1, s.mesh);
  VorticityVector b = vorticity_vector(ref.u1, ref.w1, ref.mesh);
  if (!(b.magnitude_max > 0.0)) throw ZeroField("reference vorticity vanishes");
  FieldGrid bt = interpolate_ip4(b.theta, ref.mesh, s.mesh);
  FieldGrid br = interpolate_ip4(b.r, ref.mesh, s.mesh);
  FieldGrid bz = interpolate_ip4(b.z, ref.mesh, s.mesh);
  double e = 0.0;
  for (std::size_t k = 0; k < bt.size(); ++k) {
    double dt = a.theta.values()[k] - bt.values()[k];
    double dr = a.r.values()[k] - br.values()[k];
    double dz = a.z.values()[k] - bz.values()[k];
    e = std::max(e, std::sqrt(dt * dt + dr * dr + dz * dz));
  }
  return e / b.magnitude_max;
}

double study_order(int q, double e_q, int p, double e_p) {
  if (!(e_q > 0.0) || !(e_p > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::log(e_q / e_p) / std::log(static_cast<double>(p) / q);
}

StudyTable compute_study(const StudySpec& spec,
                         const std::map<double, std::map<int, StudySample>>& samples) {
  spec.validate();
  StudyTable table;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double t : spec.times) {
    auto it = samples.find(t);
    if (it == samples.end())
      throw IoError("study has no samples at t = " + detail::g17(t));
    const auto& level = it->second;
    auto sample = [&](int p) -> const StudySample& {
      auto s = level.find(p);
      if (s == level.end())
        throw IoError("study is missing level p = " + std::to_string(p) + " at t = " +
                      detail::g17(t));
      return s->second;
    };
    std::optional<StudyRow> prev;
    for (std::size_t k = 0; k + 1 < spec.p.size(); ++k) {
      int p = spec.p[k];
      int rp = spec.reference == StudyReference::NextFiner ? spec.p[k + 1] : spec.p.back();
      const StudySample& s = sample(p);
      const StudySample& r = sample(rp);
      StudyRow row{t, p, s.mesh.n(), s.mesh.m(), rp, 0, 0, 0, nan, nan, nan};
      row.e_u1 = relative_error(s.u1, s.mesh, r.u1, r.mesh);
      row.e_w1 = relative_error(s.w1, s.mesh, r.w1, r.mesh);
      row.e_omega = relative_error_vorticity(s, r);
      if (prev) {
        row.beta_u1 = study_order(prev->p, prev->e_u1, p, row.e_u1);
        row.beta_w1 = study_order(prev->p, prev->e_w1, p, row.e_w1);
        row.beta_omega = study_order(prev->p, prev->e_omega, p, row.e_omega);
      }
      table.rows.push_back(row);
      prev = row;
    }
  }
  return table;
}

namespace {

std::string order_text(double b) {
  if (std::isnan(b)) return "   -";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%5.2f", b);
  return buf;
}

}  // namespace

std::string StudyTable::text() const {
  std::ostringstream os;
  double t_prev = std::numeric_limits<double>::quiet_NaN();
  char buf[256];
  for (const auto& r : rows) {
    if (!(r.t == t_prev)) {
      std::snprintf(buf, sizeof buf, "t = %.6e\n", r.t);
      os << buf;
      os << "mesh         reference    e(u1)        order  e(omega1)    order  e(omega)     order\n";
      t_prev = r.t;
    }
    std::string mesh = std::to_string(r.n) + "x" + std::to_string(r.m);
    std::string ref = "p=" + std::to_string(r.ref_p);
    std::snprintf(buf, sizeof buf, "%-12s %-12s %.4e   %s  %.4e   %s  %.4e   %s\n",
                  mesh.c_str(), ref.c_str(), r.e_u1, order_text(r.beta_u1).c_str(), r.e_w1,
                  order_text(r.beta_w1).c_str(), r.e_omega, order_text(r.beta_omega).c_str());
    os << buf;
  }
  return os.str();
}

std::string StudyTable::csv() const {
  using detail::g17;
  std::ostringstream os;
  os << "t,p,n,m,ref_p,e_u1,beta_u1,e_w1,beta_w1,e_omega,beta_omega\n";
  for (const auto& r : rows)
    os << g17(r.t) << ',' << r.p << ',' << r.n << ',' << r.m << ',' << r.ref_p << ','
       << g17(r.e_u1) << ',' << g17(r.beta_u1) << ',' << g17(r.e_w1) << ','
       << g17(r.beta_w1) << ',' << g17(r.e_omega) << ',' << g17(r.beta_omega) << '\n';
  return os.str();
}

StudyTable cmd_study(const StudySpec& spec, const RunConfig& base, const fs::path& out) {
  spec.validate();
  std::map<double, std::map<int, StudySample>> samples;
  double t_end = *std::max_element(spec.times.begin(), spec.times.end());
  for (int p : spec.p) {
    fs::path dir = out / ("p" + std::to_string(p));
    auto ckpt = [&](double t) {
      return dir / "checkpoints" / ("ckpt_" + time_tag(t) + ".bin");
    };
    bool have = std::all_of(spec.times.begin(), spec.times.end(),
                            [&](double t) { return fs::exists(ckpt(t)); });
    if (!have) {
      RunConfig cfg = base;
      cfg.n = spec.base_n * p;
      cfg.m = spec.base_m * p;
      cfg.t_end = t_end;
      cfg.output_times = spec.times;
      RunResult res = cmd_run(cfg, dir);
      if (res.reason != HaltReason::Completed)
        throw IoError("study run p = " + std::to_string(p) + " stopped: " +
                      to_string(res.reason) + " " + res.message);
    }
    for (double t : spec.times) {
      if (!fs::exists(ckpt(t))) throw IoError("missing run artifact " + ckpt(t).string());
      Checkpoint c = load_checkpoint(ckpt(t));
      samples[t][p] = StudySample{p, c.t, std::move(c.mesh), std::move(c.u1), std::move(c.w1)};
    }
  }
  StudyTable table = compute_study(spec, samples);
  fs::create_directories(out);
  std::ofstream txt(out / "study_errors.txt");
  txt << table.text();
  std::ofstream csv(out / "study_errors.csv");
  csv << table.csv();
  if (!txt || !csv) throw IoError("cannot write study tables under " + out.string());
  return table;
}

}  // namespace axisym
