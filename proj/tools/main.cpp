#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "axisym/config.hpp"
#include "axisym/errors.hpp"
#include "axisym/fitting.hpp"
#include "axisym/io.hpp"
#include "axisym/physics.hpp"
#include "axisym/runner.hpp"
#include "axisym/study.hpp"

namespace fs = std::filesystem;
using namespace axisym;

namespace {

struct Overrides {
  std::string config;
  std::optional<int> case_id, rlpf_k, n, m;
  std::optional<double> mu, t_end, cfl;

  void add_to(CLI::App* app) {
    app->add_option("--config", config, "key = value configuration file");
    app->add_option("--case", case_id, "1 degenerate, 2 constant mu, 3 inviscid, 4 filtered")
        ->check(CLI::Range(1, 4));
    app->add_option("--mu", mu, "constant viscosity for case 2");
    app->add_option("--rlpf-k", rlpf_k, "re-meshed filter passes for case 4");
    app->add_option("--n", n, "radial mesh intervals");
    app->add_option("--m", m, "axial mesh intervals");
    app->add_option("--t-end", t_end, "final time");
    app->add_option("--cfl", cfl, "CFL number");
  }

  Config resolve() const {
    Config c = config.empty() ? Config{} : load_config(config);
    if (case_id) c.run.case_id = *case_id;
    if (rlpf_k) c.run.rlpf_k = *rlpf_k;
    if (n) c.run.n = *n;
    if (m) c.run.m = *m;
    if (mu) c.run.mu = *mu;
    if (t_end) c.run.t_end = *t_end;
    if (cfl) c.run.cfl = *cfl;
    return c;
  }
};

void print_fit(std::ostream& os, const std::string& column, const FitResult& r) {
  char buf[200];
  std::snprintf(buf, sizeof buf, "%-16s model %d  c = %.4f  T = %.4e  R^2 = %.8f  [%.4e, %.4e]\n",
                column.c_str(), r.model, r.c, r.T, r.r2, r.window.t1, r.window.t2);
  os << buf;
}

int cmd_fit(const std::string& csv_path, const std::vector<std::string>& columns,
            const FitWindow& w, const std::string& out) {
  CsvTable table = read_csv(csv_path);
  auto tcol = table.find("t");
  if (tcol == table.end()) throw IoError("CSV has no 't' column");
  std::ofstream csv;
  if (!out.empty()) {
    csv.open(out);
    if (!csv) throw IoError("cannot write " + out);
    csv << "column,model,c,T,r2,t1,t2\n";
  }
  for (const auto& col : columns) {
    auto it = table.find(col);
    if (it == table.end()) throw IoError("CSV has no column '" + col + "'");
    // Mesh-update rows can repeat a time; keep the last sample of each.
    TimeSeries s;
    for (std::size_t k = 0; k < it->second.size(); ++k) {
      double t = tcol->second[k];
      if (!s.t.empty() && t <= s.t.back()) {
        if (t == s.t.back()) s.v.back() = it->second[k];
        continue;
      }
      s.t.push_back(t);
      s.v.push_back(it->second[k]);
    }
    FitPair fp = fit_pipeline(s, w);
    if (fp.model1)
      print_fit(std::cout, col, *fp.model1);
    else
      std::cout << col << "  model 1  no fit: " << fp.model1_error << '\n';
    print_fit(std::cout, col, fp.model2);
    if (csv) {
      std::vector<const FitResult*> rows{&fp.model2};
      if (fp.model1) rows.insert(rows.begin(), &*fp.model1);
      for (const FitResult* r : rows) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "%s,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", col.c_str(),
                      r->model, r->c, r->T, r->r2, r->window.t1, r->window.t2);
        csv << buf;
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Axisymmetric vorticity / stream-function solver"};
  app.require_subcommand(1);

  Overrides run_opts, study_opts, mesh_opts;
  std::string run_out = "run", study_out = "study", mesh_out, mesh_ckpt;
  bool verbose = false;

  auto* run = app.add_subcommand("run", "Integrate one configuration into a run directory");
  run_opts.add_to(run);
  run->add_option("--out", run_out, "run directory");
  run->add_flag("-v,--verbose", verbose, "print each diagnostics record");

  auto* study = app.add_subcommand("study", "Resolution study over mesh levels");
  study_opts.add_to(study);
  study->add_option("--out", study_out, "study directory");

  std::string fit_csv, fit_out;
  std::vector<std::string> fit_columns{"u1_max"};
  FitWindow window;
  auto* fit = app.add_subcommand("fit", "Inverse power-law fits of diagnostics columns");
  fit->add_option("csv", fit_csv, "diagnostics CSV")->required();
  fit->add_option("--column", fit_columns, "columns to fit");
  fit->add_option("--t1", window.t1, "window start");
  fit->add_option("--t2", window.t2, "window end");
  fit->add_option("--out", fit_out, "CSV report path");

  auto* mesh = app.add_subcommand("mesh-dump", "Write the initial adaptive mesh or a checkpoint mesh");
  mesh_opts.add_to(mesh);
  mesh->add_option("--checkpoint", mesh_ckpt, "take the mesh from this checkpoint");
  mesh->add_option("--out", mesh_out, "output file (stdout when absent)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      Config c = run_opts.resolve();
      RunResult r = cmd_run(c.run, run_out, verbose ? &std::cout : nullptr);
      std::cout << "halt " << to_string(r.reason) << " at t = " << r.state.t << " after "
                << r.steps << " steps, " << r.mesh_updates << " mesh updates\n";
      if (!r.message.empty()) std::cout << r.message << '\n';
      return r.reason == HaltReason::Completed ? 0 : 3;
    }
    if (*study) {
      Config c = study_opts.resolve();
      StudyTable t = cmd_study(c.study, c.run, study_out);
      std::cout << t.text();
      return 0;
    }
    if (*fit) return cmd_fit(fit_csv, fit_columns, window, fit_out);
    if (*mesh) {
      Mesh m;
      if (!mesh_ckpt.empty()) {
        m = load_checkpoint(mesh_ckpt).mesh;
      } else {
        Config c = mesh_opts.resolve();
        m = adaptive_mesh(initial_features(c.run.init), c.run.n, c.run.m);
      }
      if (mesh_out.empty()) {
        dump_mesh(std::cout, m);
      } else {
        save_mesh(mesh_out, m);
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
