#include "normdirac/cli/records.hpp"

#include <fmt/format.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace normdirac::cli {

std::string format_real(double v) {
  if (!std::isfinite(v)) return "null";
  return fmt::format("{:.17g}", v);
}

std::string json_escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) out += fmt::format("\\u{:04x}", static_cast<int>(c));
        else out += c;
    }
  }
  return out + "\"";
}

void JsonWriter::newline() {
  out_ += '\n';
  out_.append(2 * first_.size(), ' ');
}

void JsonWriter::prefix(const std::string& key) {
  if (!first_.empty()) {
    if (!first_.back()) out_ += ',';
    first_.back() = false;
    newline();
  }
  if (!key.empty()) out_ += json_escape(key) + ": ";
}

JsonWriter& JsonWriter::begin_object(const std::string& key) {
  prefix(key);
  out_ += '{';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  const bool empty = first_.back();
  first_.pop_back();
  if (!empty) newline();
  out_ += '}';
  return *this;
}

JsonWriter& JsonWriter::begin_array(const std::string& key) {
  prefix(key);
  out_ += '[';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  const bool empty = first_.back();
  first_.pop_back();
  if (!empty) newline();
  out_ += ']';
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, double v) {
  prefix(key);
  out_ += format_real(v);
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, int v) {
  prefix(key);
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, std::size_t v) {
  prefix(key);
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, bool v) {
  prefix(key);
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, const std::string& v) {
  prefix(key);
  out_ += json_escape(v);
  return *this;
}

JsonWriter& JsonWriter::value(double v) { return field(std::string(), v); }
JsonWriter& JsonWriter::value(bool v) { return field(std::string(), v); }
JsonWriter& JsonWriter::value(const std::string& v) { return field(std::string(), v); }

void write_record_json(JsonWriter& w, const SolutionRecord& r, double mass) {
  w.field("model", r.model_tag)
      .field("n_per_axis", r.u.grid().n_per_axis())
      .field("box_length", r.u.grid().box_length())
      .field("mass", mass)
      .field("a", r.a)
      .field("omega", r.omega)
      .field("m_minus_omega", mass - r.omega)
      .field("j_level", r.j_level)
      .field("j_minus_half_ma2", r.j_shift)
      .field("residual_l2", r.residual_l2)
      .field("residual_rel", r.residual_rel)
      .field("u_l2", r.u_l2)
      .field("u_hhalf", r.u_hhalf)
      .field("u_e", r.u_e)
      .field("v_e2_ratio", r.v_e2_ratio)
      .field("in_x_a", r.in_x_a)
      .field("iterations", r.iterations)
      .field("grad_norm", r.grad_norm)
      .field("gap_constant", r.gap_constant)
      .field("status", to_string(r.status))
      .field("converged", r.converged);
}

std::string solution_json(const SolutionRecord& r, double mass) {
  JsonWriter w;
  w.begin_object().field("format_version", 1);
  write_record_json(w, r, mass);
  w.end_object();
  return w.str();
}

namespace {

constexpr std::size_t header_size = 64;
constexpr const char* magic = "DIRACNORM v1";

void put_le(std::string& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out += static_cast<char>((bits >> (8 * i)) & 0xff);
}

double get_le(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

std::string snapshot_bytes(const SpinorField& u, double mass, double a) {
  const Grid& g = u.grid();
  // Shortest round-trip formatting, so the header restores the values exactly.
  std::string head = fmt::format("{} n={} L={} m={} a={}", magic, g.n_per_axis(), g.box_length(), mass, a);
  if (head.size() > header_size - 1) throw std::runtime_error("snapshot header exceeds 64 bytes: " + head);
  head.resize(header_size - 1, ' ');
  head += '\n';
  std::string out = std::move(head);
  out.reserve(header_size + 16 * u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    put_le(out, u[i].real());
    put_le(out, u[i].imag());
  }
  return out;
}

void write_snapshot(const std::string& path, const SpinorField& u, double mass, double a) {
  write_file(path, snapshot_bytes(u, mass, a));
}

std::pair<SnapshotHeader, SpinorField> parse_snapshot(const std::string& bytes) {
  if (bytes.size() < header_size || bytes.compare(0, std::strlen(magic), magic) != 0 || bytes[header_size - 1] != '\n')
    throw std::runtime_error("snapshot: bad header");
  SnapshotHeader h;
  std::istringstream is(bytes.substr(std::strlen(magic), header_size - 1 - std::strlen(magic)));
  std::string tok;
  int seen = 0;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::runtime_error("snapshot: bad header token '" + tok + "'");
    const std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
    if (k == "n") h.n_per_axis = std::stoi(v);
    else if (k == "L") h.box_length = std::stod(v);
    else if (k == "m") h.mass = std::stod(v);
    else if (k == "a") h.a = std::stod(v);
    else throw std::runtime_error("snapshot: unknown header key '" + k + "'");
    ++seen;
  }
  if (seen != 4) throw std::runtime_error("snapshot: incomplete header");
  const Grid g(h.n_per_axis, h.box_length);
  SpinorField u(g);
  if (bytes.size() != header_size + 16 * u.size()) throw std::runtime_error("snapshot: payload size mismatch");
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data()) + header_size;
  for (std::size_t i = 0; i < u.size(); ++i, p += 16) u[i] = cplx(get_le(p), get_le(p + 8));
  return {h, std::move(u)};
}

std::pair<SnapshotHeader, SpinorField> read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_snapshot(ss.str());
}

std::string sweep_csv(const SweepResult& s, double mass) {
  std::string out = "a,omega,m_minus_omega,u_l2,u_hhalf,j_level,residual,iterations,converged\n";
  for (const auto& r : s.rows)
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", format_real(r.a), format_real(r.omega),
                       format_real(mass - r.omega), format_real(r.u_l2), format_real(r.u_hhalf),
                       format_real(r.j_level), format_real(r.residual_rel), r.iterations, r.converged ? 1 : 0);
  return out;
}

std::string subspace_csv(const std::vector<SubspaceReport>& rows) {
  std::string out = "k,n,sup_quad,inf_psi,ratio,injective,level_bound,below_half_ma2,warning\n";
  for (const auto& r : rows) {
    std::string warn;
    if (r.leak_warning) warn = fmt::format("mass leak: box captures {:.6f}", r.captured_mass);
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", r.k, r.n, format_real(r.sup_quad), format_real(r.inf_psi),
                       format_real(r.ratio), r.injective ? 1 : 0, r.a ? format_real(r.level_bound) : "",
                       r.a ? (r.below_half_ma2 ? "1" : "0") : "", warn);
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace normdirac::cli
