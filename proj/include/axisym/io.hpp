#pragma once

#include <condition_variable>
#include <deque>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "axisym/meshmap.hpp"
#include "axisym/stepper.hpp"

namespace axisym {

// Stored state without psi, which is recomputed from omega1 on load.
struct Checkpoint {
  double t = 0.0;
  int case_id = 1;
  Mesh mesh;
  FieldGrid u1, w1;
};

// Text header followed by the raw row-major doubles of u1 then omega1.
void write_checkpoint(std::ostream& os, const SolutionState& s, int case_id);
Checkpoint read_checkpoint(std::istream& is);
void save_checkpoint(const std::filesystem::path& path, const SolutionState& s,
                     int case_id);
Checkpoint load_checkpoint(const std::filesystem::path& path);

// Fixed-width time tag for file names, e.g. 1.000000e-05.
std::string time_tag(double t);

void save_mesh(const std::filesystem::path& path, const Mesh& mesh);
Mesh load_mesh(const std::filesystem::path& path);

// Column-name -> values of a numeric CSV with a header row.
using CsvTable = std::map<std::string, std::vector<double>>;
CsvTable read_csv(const std::filesystem::path& path);

// Consumes lines on a worker thread so the stepper never waits on disk.
class AsyncCsvWriter {
 public:
  AsyncCsvWriter(const std::filesystem::path& path, const std::string& header);
  ~AsyncCsvWriter();
  AsyncCsvWriter(const AsyncCsvWriter&) = delete;
  AsyncCsvWriter& operator=(const AsyncCsvWriter&) = delete;

  void push(std::string line);
  // Flushes every queued line and joins the worker. Rethrows write failures.
  void close();

 private:
  void work();

  std::ofstream out_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::string> queue_;
  bool closing_ = false;
  bool failed_ = false;
  std::thread worker_;
};

// Tracks the files of a run directory and writes manifest.txt.
class RunDirectory {
 public:
  explicit RunDirectory(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  // Path for a file relative to the root; creates parent directories and
  // records it in the manifest.
  std::filesystem::path file(const std::string& relative);
  void set(const std::string& key, const std::string& value);
  void write_manifest() const;
  const std::vector<std::string>& files() const { return files_; }

 private:
  std::filesystem::path root_;
  std::vector<std::string> files_;
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace axisym
