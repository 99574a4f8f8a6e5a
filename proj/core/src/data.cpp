#include "grnn/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace grnn {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_number(const std::string& field, std::size_t line) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc() || ptr != last) {
    throw ParseError("non-numeric field '" + field + "'", line);
  }
  if (!std::isfinite(value)) throw ParseError("non-finite field '" + field + "'", line);
  return value;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool parse_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw ParseError("expected boolean, got '" + v + "'");
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const char* to_string(TaskKind task) noexcept {
  return task == TaskKind::classification ? "classification" : "fitting";
}

TaskKind parse_task(const std::string& text) {
  if (text == "fitting") return TaskKind::fitting;
  if (text == "classification") return TaskKind::classification;
  throw ParseError("unknown task '" + text + "'");
}

std::vector<Pattern> Dataset::patterns() const {
  std::vector<Pattern> out;
  out.reserve(rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    out.push_back({to_vector(inputs.row(r)), to_vector(targets.row(r))});
  }
  return out;
}

void Dataset::validate() const {
  if (inputs.rows() != targets.rows()) throw DimensionError(name + ": input/target row counts differ");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(inputs.flat().begin(), inputs.flat().end(), finite) ||
      !std::all_of(targets.flat().begin(), targets.flat().end(), finite)) {
    throw InvalidArgument(name + ": non-finite entry");
  }
  if (task != TaskKind::classification) return;
  for (std::size_t r = 0; r < targets.rows(); ++r) {
    const auto row = targets.row(r);
    const auto ones = std::count(row.begin(), row.end(), 1.0);
    const auto zeros = std::count(row.begin(), row.end(), 0.0);
    if (ones != 1 || zeros + 1 != static_cast<std::ptrdiff_t>(row.size())) {
      throw InvalidArgument(name + ": target row " + std::to_string(r) + " is not one-hot");
    }
  }
}

CsvSpec parse_csv_spec(const std::string& text) {
  CsvSpec spec;
  bool have_inputs = false;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value", line_no);
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "n_inputs") {
      spec.n_inputs = static_cast<std::size_t>(parse_number(value, line_no));
      have_inputs = true;
    } else if (key == "task") {
      spec.task = parse_task(value);
    } else if (key == "has_header") {
      spec.has_header = parse_bool(value);
    } else if (key == "name") {
      spec.name = value;
    } else if (key == "note") {
      spec.notes.push_back(value);
    } else {
      throw ParseError("unknown spec key '" + key + "'", line_no);
    }
  }
  if (!have_inputs || spec.n_inputs == 0) throw ParseError("spec needs n_inputs >= 1");
  return spec;
}

CsvSpec read_csv_spec(const std::filesystem::path& path) { return parse_csv_spec(read_file(path)); }

std::string format_csv_spec(const CsvSpec& spec) {
  std::ostringstream out;
  if (!spec.name.empty()) out << "name=" << spec.name << '\n';
  out << "n_inputs=" << spec.n_inputs << '\n';
  out << "task=" << to_string(spec.task) << '\n';
  out << "has_header=" << (spec.has_header ? "true" : "false") << '\n';
  for (const auto& n : spec.notes) out << "note=" << n << '\n';
  return out.str();
}

Dataset parse_csv(const std::string& text, const CsvSpec& spec, const std::string& name) {
  Dataset ds;
  ds.name = spec.name.empty() ? name : spec.name;
  ds.task = spec.task;

  std::vector<std::vector<double>> rows;
  std::vector<std::string> header;
  std::size_t width = 0;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  bool header_pending = spec.has_header;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (line_no == 1 && raw.rfind("\xEF\xBB\xBF", 0) == 0) raw.erase(0, 3);
    if (trim(raw).empty()) continue;
    auto fields = split_fields(raw);
    if (header_pending) {
      header = std::move(fields);
      header_pending = false;
      continue;
    }
    if (width == 0) {
      width = fields.size();
      if (width <= spec.n_inputs) {
        throw ParseError("row has " + std::to_string(width) + " fields but n_inputs=" +
                             std::to_string(spec.n_inputs),
                         line_no);
      }
    } else if (fields.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    std::vector<double> values;
    values.reserve(width);
    for (const auto& f : fields) values.push_back(parse_number(f, line_no));
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ParseError("dataset '" + ds.name + "' has no data rows");

  const std::size_t n_in = spec.n_inputs;
  const std::size_t n_raw_out = width - n_in;
  const bool label_column = spec.task == TaskKind::classification && n_raw_out == 1;

  std::size_t n_out = n_raw_out;
  if (label_column) {
    std::size_t max_label = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const double label = rows[r].back();
      if (label < 0 || label != std::floor(label)) {
        throw ParseError("class label must be a non-negative integer", r + 1 + (spec.has_header ? 1 : 0));
      }
      max_label = std::max(max_label, static_cast<std::size_t>(label));
    }
    n_out = max_label + 1;
  }

  ds.inputs = Matrix(0, n_in);
  ds.targets = Matrix(0, n_out);
  Vector target(n_out);
  for (const auto& row : rows) {
    ds.inputs.append_row(std::span(row).first(n_in));
    if (label_column) {
      std::fill(target.begin(), target.end(), 0.0);
      target[static_cast<std::size_t>(row.back())] = 1.0;
      ds.targets.append_row(target);
    } else {
      ds.targets.append_row(std::span(row).subspan(n_in));
    }
  }

  if (header.size() == width) {
    ds.input_names.assign(header.begin(), header.begin() + static_cast<std::ptrdiff_t>(n_in));
    if (!label_column) {
      ds.target_names.assign(header.begin() + static_cast<std::ptrdiff_t>(n_in), header.end());
    }
  }
  if (ds.input_names.empty()) {
    for (std::size_t j = 0; j < n_in; ++j) ds.input_names.push_back("x" + std::to_string(j + 1));
  }
  if (ds.target_names.empty()) {
    const std::string stem = label_column ? (header.size() == width ? header.back() : "class") : "y";
    for (std::size_t j = 0; j < n_out; ++j) {
      ds.target_names.push_back(label_column ? stem + "_" + std::to_string(j) : stem + std::to_string(j + 1));
    }
  }
  ds.validate();
  return ds;
}

Dataset load_csv(const std::filesystem::path& path, const CsvSpec& spec) {
  const std::string text = read_file(path);
  try {
    return parse_csv(text, spec, path.stem().string());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Dataset load_dataset(const std::filesystem::path& csv_path) {
  auto spec_path = csv_path;
  spec_path.replace_extension(".spec");
  return load_csv(csv_path, read_csv_spec(spec_path));
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& csv_path,
                   const std::vector<std::string>& notes) {
  std::ofstream out(csv_path);
  if (!out) throw Error("cannot write " + csv_path.string());
  std::vector<std::string> header = dataset.input_names;
  header.insert(header.end(), dataset.target_names.begin(), dataset.target_names.end());
  for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
  out << '\n';
  for (std::size_t r = 0; r < dataset.rows(); ++r) {
    bool first = true;
    for (double v : dataset.inputs.row(r)) out << (std::exchange(first, false) ? "" : ",") << fmt17(v);
    for (double v : dataset.targets.row(r)) out << ',' << fmt17(v);
    out << '\n';
  }
  if (!out) throw Error("write failed for " + csv_path.string());

  CsvSpec spec;
  spec.name = dataset.name;
  spec.n_inputs = dataset.input_dim();
  spec.task = dataset.task;
  spec.has_header = true;
  spec.notes = notes;
  auto spec_path = csv_path;
  spec_path.replace_extension(".spec");
  std::ofstream sout(spec_path);
  if (!sout) throw Error("cannot write " + spec_path.string());
  sout << format_csv_spec(spec);
}

NormStats compute_norm_stats(const Matrix& inputs) {
  if (inputs.empty()) throw InvalidArgument("normalization needs at least one row");
  const std::size_t d = inputs.cols();
  const double n = static_cast<double>(inputs.rows());
  NormStats s{Vector(d, 0.0), Vector(d, 0.0), std::vector<bool>(d, false)};
  for (std::size_t r = 0; r < inputs.rows(); ++r) {
    for (std::size_t j = 0; j < d; ++j) s.mean[j] += inputs(r, j);
  }
  for (double& m : s.mean) m /= n;
  for (std::size_t r = 0; r < inputs.rows(); ++r) {
    for (std::size_t j = 0; j < d; ++j) {
      const double e = inputs(r, j) - s.mean[j];
      s.stddev[j] += e * e;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    s.stddev[j] = std::sqrt(s.stddev[j] / n);
    if (!(s.stddev[j] > 0.0)) {
      s.stddev[j] = 1.0;
      s.constant_column[j] = true;
    }
  }
  return s;
}

void apply_norm_inplace(const NormStats& stats, std::span<double> x) {
  if (x.size() != stats.dims()) throw DimensionError("apply_norm: dimension mismatch");
  for (std::size_t j = 0; j < x.size(); ++j) {
    // constant columns are left untouched
    if (!stats.constant_column.empty() && stats.constant_column[j]) continue;
    x[j] = (x[j] - stats.mean[j]) / stats.stddev[j];
  }
}

Vector apply_norm(const NormStats& stats, std::span<const double> x) {
  Vector out(x.begin(), x.end());
  apply_norm_inplace(stats, out);
  return out;
}

Dataset apply_norm(const NormStats& stats, const Dataset& dataset) {
  Dataset out = dataset;
  for (std::size_t r = 0; r < out.rows(); ++r) apply_norm_inplace(stats, out.inputs.row(r));
  return out;
}

std::pair<Dataset, NormStats> normalize(const Dataset& dataset) {
  NormStats stats = compute_norm_stats(dataset.inputs);
  Dataset out = apply_norm(stats, dataset);
  return {std::move(out), std::move(stats)};
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::size_t rows, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw InvalidArgument("train fraction must lie strictly between 0 and 1");
  }
  if (rows < 2) throw InvalidArgument("split needs at least two rows");
  std::vector<std::size_t> order(rows);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(rows)));
  n_train = std::clamp<std::size_t>(n_train, 1, rows - 1);
  std::vector<std::size_t> test(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  order.resize(n_train);
  return {std::move(order), std::move(test)};
}

Dataset select_rows(const Dataset& dataset, const std::vector<std::size_t>& rows) {
  Dataset out;
  out.name = dataset.name;
  out.task = dataset.task;
  out.input_names = dataset.input_names;
  out.target_names = dataset.target_names;
  out.inputs = Matrix(0, dataset.input_dim());
  out.targets = Matrix(0, dataset.output_dim());
  for (std::size_t r : rows) {
    out.inputs.append_row(dataset.inputs.row(r));
    out.targets.append_row(dataset.targets.row(r));
  }
  return out;
}

std::pair<Dataset, Dataset> split(const Dataset& dataset, double train_fraction,
                                  std::uint64_t seed) {
  auto [train_rows, test_rows] = split_indices(dataset.rows(), train_fraction, seed);
  return {select_rows(dataset, train_rows), select_rows(dataset, test_rows)};
}

}  // namespace grnn
