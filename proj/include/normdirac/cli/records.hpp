#pragma once

#include <string>
#include <utility>
#include <vector>

#include "normdirac/solver.hpp"
#include "normdirac/subspaces.hpp"

namespace normdirac::cli {

/// Minimal JSON emitter with insertion-ordered keys and reals as "%.17g".
/// Non-finite reals become null. Output is byte-stable for equal inputs.
class JsonWriter {
public:
  JsonWriter& begin_object(const std::string& key = {});
  JsonWriter& end_object();
  JsonWriter& begin_array(const std::string& key = {});
  JsonWriter& end_array();
  JsonWriter& field(const std::string& key, double v);
  JsonWriter& field(const std::string& key, int v);
  JsonWriter& field(const std::string& key, std::size_t v);
  JsonWriter& field(const std::string& key, bool v);
  JsonWriter& field(const std::string& key, const std::string& v);
  JsonWriter& field(const std::string& key, const char* v) { return field(key, std::string(v)); }
  JsonWriter& value(double v);
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& v);
  std::string str() const { return out_ + "\n"; }

private:
  void prefix(const std::string& key);
  void newline();
  std::string out_;
  std::vector<bool> first_;
};

std::string format_real(double v);
std::string json_escape(const std::string& s);

void write_record_json(JsonWriter& w, const SolutionRecord& r, double mass);
std::string solution_json(const SolutionRecord& r, double mass);

/// 64-byte ASCII header, '\n'-terminated, then 4 complex doubles per point,
/// little-endian, points x-fastest.
struct SnapshotHeader {
  int n_per_axis = 0;
  double box_length = 0.0;
  double mass = 0.0;
  double a = 0.0;
};
std::string snapshot_bytes(const SpinorField& u, double mass, double a);
void write_snapshot(const std::string& path, const SpinorField& u, double mass, double a);
std::pair<SnapshotHeader, SpinorField> read_snapshot(const std::string& path);
std::pair<SnapshotHeader, SpinorField> parse_snapshot(const std::string& bytes);

std::string sweep_csv(const SweepResult& s, double mass);
std::string subspace_csv(const std::vector<SubspaceReport>& rows);

/// Writes `content` to `path` in one shot; throws std::runtime_error on failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace normdirac::cli
