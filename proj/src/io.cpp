#include "axisym/io.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "axisym/errors.hpp"
#include "format.hpp"

namespace axisym {

namespace fs = std::filesystem;

namespace {

constexpr const char* kMagic = "axisym-checkpoint 1";

void write_raw(std::ostream& os, const FieldGrid& f) {
  os.write(reinterpret_cast<const char*>(f.values().data()),
           static_cast<std::streamsize>(f.size() * sizeof(double)));
}

void read_raw(std::istream& is, FieldGrid& f) {
  is.read(reinterpret_cast<char*>(f.values().data()),
          static_cast<std::streamsize>(f.size() * sizeof(double)));
  if (!is) throw IoError("checkpoint ends before the field data");
}

std::ifstream open_in(const fs::path& p, std::ios::openmode mode = std::ios::in) {
  std::ifstream is(p, mode);
  if (!is) throw IoError("cannot open " + p.string());
  return is;
}

std::ofstream open_out(const fs::path& p, std::ios::openmode mode = std::ios::out) {
  std::ofstream os(p, mode | std::ios::trunc);
  if (!os) throw IoError("cannot write " + p.string());
  return os;
}

}  // namespace

void write_checkpoint(std::ostream& os, const SolutionState& s, int case_id) {
  os << kMagic << '\n';
  os << "t " << detail::g17(s.t) << '\n';
  os << "case " << case_id << '\n';
  os << "n " << s.mesh.n() << '\n';
  os << "m " << s.mesh.m() << '\n';
  dump_mesh(os, s.mesh);
  os << "data\n";
  write_raw(os, s.u1);
  write_raw(os, s.w1);
  if (!os) throw IoError("checkpoint write failed");
}

Checkpoint read_checkpoint(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kMagic) throw IoError("not a checkpoint file");
  Checkpoint c;
  int n = 0, m = 0;
  std::string key;
  auto expect = [&](const char* k) {
    if (!(is >> key) || key != k) throw IoError(std::string("checkpoint missing '") + k + "'");
  };
  expect("t");
  if (!(is >> c.t)) throw IoError("bad checkpoint time");
  expect("case");
  if (!(is >> c.case_id)) throw IoError("bad checkpoint case");
  expect("n");
  if (!(is >> n)) throw IoError("bad checkpoint n");
  expect("m");
  if (!(is >> m)) throw IoError("bad checkpoint m");
  c.mesh = parse_mesh(is);
  if (c.mesh.n() != n || c.mesh.m() != m) throw IoError("checkpoint mesh size mismatch");
  expect("data");
  if (is.get() != '\n') throw IoError("checkpoint data marker malformed");
  c.u1 = FieldGrid(n, m, Parity::Even, Parity::Odd);
  c.w1 = FieldGrid(n, m, Parity::Even, Parity::Odd);
  read_raw(is, c.u1);
  read_raw(is, c.w1);
  return c;
}

void save_checkpoint(const fs::path& path, const SolutionState& s, int case_id) {
  auto os = open_out(path, std::ios::binary);
  write_checkpoint(os, s, case_id);
}

Checkpoint load_checkpoint(const fs::path& path) {
  auto is = open_in(path, std::ios::binary);
  return read_checkpoint(is);
}

std::string time_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", t);
  return buf;
}

void save_mesh(const fs::path& path, const Mesh& mesh) {
  auto os = open_out(path);
  dump_mesh(os, mesh);
  if (!os) throw IoError("mesh write failed: " + path.string());
}

Mesh load_mesh(const fs::path& path) {
  auto is = open_in(path);
  return parse_mesh(is);
}

CsvTable read_csv(const fs::path& path) {
  auto is = open_in(path);
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty CSV " + path.string());
  std::vector<std::string> names;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) names.push_back(cell);
  }
  CsvTable table;
  for (const auto& n : names) table[n];
  int row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(ss, cell, ',')) {
      if (col >= names.size()) throw IoError("too many cells on CSV row " + std::to_string(row));
      char* end = nullptr;
      double x = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) throw IoError("non-numeric cell on CSV row " + std::to_string(row));
      table[names[col++]].push_back(x);
    }
    if (col != names.size()) throw IoError("short CSV row " + std::to_string(row));
  }
  return table;
}

AsyncCsvWriter::AsyncCsvWriter(const fs::path& path, const std::string& header)
    : out_(open_out(path)) {
  out_ << header << '\n';
  worker_ = std::thread([this] { work(); });
}

AsyncCsvWriter::~AsyncCsvWriter() {
  try {
    close();
  } catch (...) {
  }
}

void AsyncCsvWriter::push(std::string line) {
  {
    std::lock_guard lock(mu_);
    queue_.push_back(std::move(line));
  }
  cv_.notify_one();
}

void AsyncCsvWriter::work() {
  std::unique_lock lock(mu_);
  for (;;) {
    cv_.wait(lock, [this] { return closing_ || !queue_.empty(); });
    while (!queue_.empty()) {
      std::string line = std::move(queue_.front());
      queue_.pop_front();
      lock.unlock();
      out_ << line << '\n';
      bool bad = !out_;
      lock.lock();
      failed_ = failed_ || bad;
    }
    if (closing_) return;
  }
}

void AsyncCsvWriter::close() {
  {
    std::lock_guard lock(mu_);
    if (closing_ && !worker_.joinable()) return;
    closing_ = true;
  }
  cv_.notify_one();
  if (worker_.joinable()) worker_.join();
  out_.flush();
  if (failed_ || !out_) throw IoError("diagnostics CSV write failed");
}

RunDirectory::RunDirectory(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec) throw IoError("cannot create run directory " + root_.string() + ": " + ec.message());
}

fs::path RunDirectory::file(const std::string& relative) {
  fs::path p = root_ / relative;
  std::error_code ec;
  fs::create_directories(p.parent_path(), ec);
  if (ec) throw IoError("cannot create " + p.parent_path().string());
  if (std::find(files_.begin(), files_.end(), relative) == files_.end())
    files_.push_back(relative);
  return p;
}

void RunDirectory::set(const std::string& key, const std::string& value) {
  for (auto& kv : entries_) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

void RunDirectory::write_manifest() const {
  auto os = open_out(root_ / "manifest.txt");
  for (const auto& [k, v] : entries_) os << k << " = " << v << '\n';
  os << "files = " << files_.size() << '\n';
  for (const auto& f : files_) os << "file " << f << '\n';
  if (!os) throw IoError("manifest write failed");
}

}  // namespace axisym
