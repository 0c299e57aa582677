#include "axisym/runner.hpp"

#include <ostream>
#include <sstream>

#include "axisym/config.hpp"
#include "axisym/io.hpp"
#include "format.hpp"

namespace axisym {

RunResult cmd_run(const RunConfig& cfg, const std::filesystem::path& out, std::ostream* log) {
  cfg.validate();
  RunDirectory dir(out);
  AsyncCsvWriter csv(dir.file("diagnostics.csv"), csv_header());

  PoissonSolver poisson;
  SolutionState s0 = initial_state(cfg, poisson);
  save_mesh(dir.file("meshes/mesh_" + time_tag(s0.t) + ".txt"), s0.mesh);

  NuFields nu0 = nu_fields_space(cfg.diffusion(), s0.mesh);
  double nr_max = nu0.zero ? 0.0 : nu0.nr.sup_norm();
  double nz_max = nu0.zero ? 0.0 : nu0.nz.sup_norm();

  RunObserver obs;
  obs.on_record = [&](const DiagnosticsRecord& rec) {
    csv.push(csv_row(rec));
    if (log)
      *log << "t=" << detail::g17(rec.t) << " u1_max=" << detail::g17(rec.u1_max)
           << " omega_max=" << detail::g17(rec.omega_max) << '\n';
  };
  obs.on_checkpoint = [&](const SolutionState& s) {
    save_checkpoint(dir.file("checkpoints/ckpt_" + time_tag(s.t) + ".bin"), s, cfg.case_id);
  };
  obs.on_mesh_update = [&](const SolutionState& s) {
    save_mesh(dir.file("meshes/mesh_" + time_tag(s.t) + ".txt"), s.mesh);
  };

  RunResult res = run_from(cfg, std::move(s0), obs);
  csv.close();

  std::istringstream echo(echo_config(cfg));
  std::string line;
  while (std::getline(echo, line)) {
    auto eq = line.find(" = ");
    dir.set("config." + line.substr(0, eq), line.substr(eq + 3));
  }
  dir.set("nu_space_r_max", detail::g17(nr_max));
  dir.set("nu_space_z_max", detail::g17(nz_max));
  dir.set("nu_identically_zero", nr_max == 0.0 && nz_max == 0.0 ? "true" : "false");
  dir.set("halt", to_string(res.reason));
  if (!res.message.empty()) dir.set("halt_message", res.message);
  dir.set("t_final", detail::g17(res.state.t));
  dir.set("steps", std::to_string(res.steps));
  dir.set("records", std::to_string(res.records.size()));
  dir.set("mesh_updates", std::to_string(res.mesh_updates));
  dir.set("rlpf_applications", std::to_string(res.rlpf_applications));
  dir.set("poisson_assemblies", std::to_string(res.poisson_assemblies));
  dir.write_manifest();
  return res;
}

}  // namespace axisym
