#pragma once

#include <filesystem>
#include <iosfwd>

#include "axisym/stepper.hpp"

namespace axisym {

// Executes one run into a run directory:
//   manifest.txt, diagnostics.csv, checkpoints/ckpt_<t>.bin, meshes/mesh_<t>.txt.
// Progress lines go to log when given.
RunResult cmd_run(const RunConfig& cfg, const std::filesystem::path& out,
                  std::ostream* log = nullptr);

}  // namespace axisym
