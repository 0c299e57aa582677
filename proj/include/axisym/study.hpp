#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "axisym/io.hpp"
#include "axisym/stepper.hpp"

namespace axisym {

enum class StudyReference { NextFiner, Finest };

// Meshes (base_n p, base_m p) for each p, compared at the listed instants.
struct StudySpec {
  std::vector<int> p{2, 3, 4};
  std::vector<double> times{1e-5};
  int base_n = 256, base_m = 128;
  StudyReference reference = StudyReference::NextFiner;

  // Throws ConfigError on an empty or unsorted p list or missing instants.
  void validate() const;
};

// Solution of one mesh at one instant.
struct StudySample {
  int p = 0;
  double t = 0.0;
  Mesh mesh;
  FieldGrid u1, w1;
};

struct StudyRow {
  double t = 0.0;
  int p = 0, n = 0, m = 0, ref_p = 0;
  double e_u1 = 0, e_w1 = 0, e_omega = 0;
  // NaN on the first row of each instant.
  double beta_u1, beta_w1, beta_omega;
};

struct StudyTable {
  std::vector<StudyRow> rows;
  std::string text() const;
  std::string csv() const;
};

// ||f - IP4(ref -> f's mesh)||_inf / ||ref||_inf.
double relative_error(const FieldGrid& f, const Mesh& mesh, const FieldGrid& ref,
                      const Mesh& ref_mesh);
// Same with |.| the Euclidean norm of the vorticity vector.
double relative_error_vorticity(const StudySample& s, const StudySample& ref);

// log_{p/q}(e_q / e_p) for consecutive levels q < p.
double study_order(int q, double e_q, int p, double e_p);

// samples[t][p] must hold every spec.p at every spec.times entry.
StudyTable compute_study(const StudySpec& spec,
                         const std::map<double, std::map<int, StudySample>>& samples);

// Runs missing levels into out/p<p>/ (reusing existing checkpoints), then
// writes study_errors.txt and study_errors.csv under out.
StudyTable cmd_study(const StudySpec& spec, const RunConfig& base,
                     const std::filesystem::path& out);

}  // namespace axisym
