#include "grnn/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace grnn {

namespace {

struct Header {
  std::string kind;
  std::map<std::string, std::string> fields;
};

Header parse_header(const std::string& line, const std::string& expected_kind) {
  std::istringstream ss(line);
  Header h;
  std::string version;
  ss >> h.kind >> version;
  if (h.kind != expected_kind || version != "v1") {
    throw ParseError("expected '" + expected_kind + " v1' header", 1);
  }
  std::string token;
  while (ss >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw ParseError("bad header token '" + token + "'", 1);
    h.fields[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return h;
}

double to_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("bad number '" + s + "'", line);
  }
  return v;
}

std::size_t to_size(const std::string& s, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("bad integer '" + s + "'", line);
  }
  return v;
}

const std::string& require(const Header& h, const std::string& key) {
  const auto it = h.fields.find(key);
  if (it == h.fields.end()) throw ParseError("header is missing '" + key + "'", 1);
  return it->second;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

Vector numbers(const std::vector<std::string>& cells, std::size_t first, std::size_t line) {
  Vector v;
  for (std::size_t i = first; i < cells.size(); ++i) v.push_back(to_double(cells[i], line));
  return v;
}

void write_row(std::ostream& out, std::string_view label, std::span<const double> values) {
  out << label;
  for (double v : values) out << ',' << format_exact(v);
  out << '\n';
}

bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return true;
  }
  return false;
}

}  // namespace

std::string format_exact(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_grnn(std::ostream& out, const GrnnModel& model,
                const std::optional<GrowthPolicy>& policy) {
  out << "grnn v1 d_in=" << model.input_dim() << " d_out=" << model.output_dim()
      << " sigma=" << format_exact(model.sigma()) << " n=" << model.size();
  if (policy) {
    out << " novelty_radius=" << format_exact(policy->novelty_radius)
        << " error_gate=" << format_exact(policy->error_gate)
        << " max_patterns=" << policy->max_patterns;
  }
  out << '\n';
  for (std::size_t i = 0; i < model.size(); ++i) {
    bool first = true;
    for (double v : model.stored_input(i)) {
      out << (first ? "" : ",") << format_exact(v);
      first = false;
    }
    for (double v : model.stored_output(i)) out << ',' << format_exact(v);
    out << '\n';
  }
  if (const auto& norm = model.norm_stats()) {
    write_row(out, "norm_mean", norm->mean);
    write_row(out, "norm_std", norm->stddev);
    if (norm->any_constant()) {
      Vector flags;
      for (bool c : norm->constant_column) flags.push_back(c ? 1.0 : 0.0);
      write_row(out, "norm_constant", flags);
    }
  }
}

StoredGrnn read_grnn(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) throw ParseError("empty model file");
  const Header h = parse_header(line, "grnn");
  const std::size_t d_in = to_size(require(h, "d_in"), 1);
  const std::size_t d_out = to_size(require(h, "d_out"), 1);
  const double sigma = to_double(require(h, "sigma"), 1);
  const std::size_t n = to_size(require(h, "n"), 1);

  StoredGrnn stored{GrnnModel(d_in, d_out, sigma), std::nullopt};
  if (h.fields.count("novelty_radius") || h.fields.count("error_gate") ||
      h.fields.count("max_patterns")) {
    GrowthPolicy p;
    p.novelty_radius = to_double(require(h, "novelty_radius"), 1);
    p.error_gate = to_double(require(h, "error_gate"), 1);
    p.max_patterns = to_size(require(h, "max_patterns"), 1);
    p.validate();
    stored.policy = p;
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!next_line(in, line, line_no)) throw ParseError("expected " + std::to_string(n) + " pattern rows", line_no);
    const Vector v = numbers(fields_of(line), 0, line_no);
    if (v.size() != d_in + d_out) throw ParseError("pattern row has wrong width", line_no);
    stored.model.add_pattern(std::span(v).first(d_in), std::span(v).subspan(d_in));
  }

  NormStats norm;
  while (next_line(in, line, line_no)) {
    const auto cells = fields_of(line);
    const Vector v = numbers(cells, 1, line_no);
    if (v.size() != d_in) throw ParseError("norm row has wrong width", line_no);
    if (cells[0] == "norm_mean") {
      norm.mean = v;
    } else if (cells[0] == "norm_std") {
      norm.stddev = v;
    } else if (cells[0] == "norm_constant") {
      for (double f : v) norm.constant_column.push_back(f != 0.0);
    } else {
      throw ParseError("unexpected row '" + cells[0] + "'", line_no);
    }
  }
  if (!norm.mean.empty() || !norm.stddev.empty()) {
    if (norm.mean.empty() || norm.stddev.empty()) throw ParseError("incomplete norm block", line_no);
    if (norm.constant_column.empty()) norm.constant_column.assign(d_in, false);
    stored.model.set_norm_stats(std::move(norm));
  }
  return stored;
}

void write_bpnn(std::ostream& out, const bp::Network& net) {
  out << "bpnn v1 d_in=" << net.input_dim() << " hidden=" << net.hidden()
      << " d_out=" << net.output_dim() << '\n';
  write_row(out, "w1", net.w1.flat());
  write_row(out, "b1", net.b1);
  write_row(out, "w2", net.w2.flat());
  write_row(out, "b2", net.b2);
}

bp::Network read_bpnn(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) throw ParseError("empty network file");
  const Header h = parse_header(line, "bpnn");
  bp::Network net = bp::zeros(to_size(require(h, "d_in"), 1), to_size(require(h, "hidden"), 1),
                              to_size(require(h, "d_out"), 1));
  auto read_block = [&](std::string_view label, std::span<double> dest) {
    if (!next_line(in, line, line_no)) throw ParseError("missing " + std::string(label) + " row", line_no);
    const auto cells = fields_of(line);
    if (cells.empty() || cells[0] != label) throw ParseError("expected " + std::string(label) + " row", line_no);
    const Vector v = numbers(cells, 1, line_no);
    if (v.size() != dest.size()) throw ParseError(std::string(label) + " row has wrong width", line_no);
    std::copy(v.begin(), v.end(), dest.begin());
  };
  read_block("w1", net.w1.flat());
  read_block("b1", net.b1);
  read_block("w2", net.w2.flat());
  read_block("b2", net.b2);
  return net;
}

void save_grnn(const std::filesystem::path& path, const GrnnModel& model,
               const std::optional<GrowthPolicy>& policy) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_grnn(out, model, policy);
}

StoredGrnn load_grnn(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_grnn(in);
}

}  // namespace grnn
