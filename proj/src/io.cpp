#include "psig/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "psig/error.hpp"

namespace psig::io {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Non-blank, non-comment lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> significant_lines(std::istream& in) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.emplace_back(number, std::move(t));
  }
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  if (sep == ' ') {
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
  }
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(std::string_view(line).substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

bool try_parse_double(const std::string& s, double& v) {
  if (s.empty()) return false;
  // strtod accepts inf/nan and hex floats, which from_chars for double on
  // older libstdc++ may lack.
  char* end = nullptr;
  v = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  if (!try_parse_double(s, v)) fail(ErrorCode::Parse, "line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

std::size_t parse_index(const std::string& s, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(ErrorCode::Parse, "line " + std::to_string(line) + ": bad index '" + s + "'");
  }
  return v;
}

std::vector<double> parse_row(const std::string& line, std::size_t number) {
  std::vector<double> row;
  for (const auto& tok : split(line, ',')) row.push_back(parse_double(tok, number));
  return row;
}

bool is_numeric_row(const std::string& line) {
  double v = 0.0;
  for (const auto& tok : split(line, ',')) {
    if (!try_parse_double(tok, v)) return false;
  }
  return true;
}

void write_comment(std::ostream& out, const std::string& comment) {
  if (!comment.empty()) out << "# " << comment << '\n';
}

void write_row(std::ostream& out, const Matrix& m, Eigen::Index r) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    if (c) out << ',';
    out << format_double(m(r, c));
  }
  out << '\n';
}

Matrix rows_to_matrix(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return Matrix(0, 0);
  const auto cols = rows.front().size();
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) fail(ErrorCode::Parse, "ragged rows: expected " + std::to_string(cols) + " columns");
    for (std::size_t c = 0; c < cols; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  }
  return m;
}

template <typename T>
T json_get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::Parse, std::string("missing JSON key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("JSON key '") + key + "': " + e.what());
  }
}

}  // namespace

std::string format_double(double v) { return fmt::format("{}", v); }

Graph read_edge_list(std::istream& in) {
  std::optional<std::size_t> declared;
  std::vector<Edge> edges;
  std::size_t max_index = 0;
  bool any = false;
  for (const auto& [number, line] : significant_lines(in)) {
    const auto tok = split(line, ' ');
    if (tok.front() == "n") {
      if (tok.size() != 2) fail(ErrorCode::Parse, "line " + std::to_string(number) + ": expected 'n <count>'");
      declared = parse_index(tok[1], number);
      continue;
    }
    if (tok.size() != 2 && tok.size() != 3) {
      fail(ErrorCode::Parse, "line " + std::to_string(number) + ": expected 'i j [w]'");
    }
    Edge e{parse_index(tok[0], number), parse_index(tok[1], number), 1.0};
    if (tok.size() == 3) e.weight = parse_double(tok[2], number);
    max_index = std::max({max_index, e.i, e.j});
    any = true;
    edges.push_back(e);
  }
  const std::size_t n = declared.value_or(any ? max_index + 1 : 0);
  return Graph(n, std::move(edges));
}

void write_edge_list(std::ostream& out, const Graph& g, const std::string& comment) {
  write_comment(out, comment);
  out << "n " << g.size() << '\n';
  for (const auto& e : g.edges()) out << e.i << ' ' << e.j << ' ' << format_double(e.weight) << '\n';
}

Matrix read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  for (const auto& [number, line] : significant_lines(in)) rows.push_back(parse_row(line, number));
  return rows_to_matrix(rows);
}

void write_matrix_csv(std::ostream& out, const Matrix& m, const std::string& comment) {
  write_comment(out, comment);
  for (Eigen::Index r = 0; r < m.rows(); ++r) write_row(out, m, r);
}

Json matrix_to_json(const Matrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::DimensionMismatch, "JSON matrix format holds square matrices");
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  return Json{{"n", m.rows()}, {"data", data}};
}

Matrix matrix_from_json(const Json& j) {
  const auto n = json_get<std::size_t>(j, "n");
  const auto data = json_get<std::vector<double>>(j, "data");
  if (data.size() != n * n) fail(ErrorCode::Parse, "matrix data holds " + std::to_string(data.size()) + " entries, expected n*n");
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = data[r * n + c];
  return m;
}

Matrix read_matrix(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return matrix_from_json(Json::parse(text));
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::Parse, std::string("matrix JSON: ") + e.what());
    }
  }
  std::istringstream ss(text);
  Matrix m = read_matrix_csv(ss);
  if (m.rows() != m.cols()) fail(ErrorCode::DimensionMismatch, "expected a square matrix");
  return m;
}

Json decomposition_to_json(const SpectralDecomposition& d) {
  const Matrix& q = d.eigenvectors();
  std::vector<double> values(d.eigenvalues().data(), d.eigenvalues().data() + d.eigenvalues().size());
  std::vector<double> vectors;
  for (Eigen::Index r = 0; r < q.rows(); ++r)
    for (Eigen::Index c = 0; c < q.cols(); ++c) vectors.push_back(q(r, c));
  return Json{{"n", d.dimension()},
              {"group_tol", d.group_tolerance()},
              {"eigenvalues", values},
              {"distinct_eigenvalues", d.distinct_eigenvalues()},
              {"multiplicities", d.multiplicities()},
              {"group_offsets", d.group_offsets()},
              {"eigenvectors", vectors}};
}

Json measure_to_json(const DiscreteMeasure& mu) { return Json{{"atoms", mu.atoms()}, {"masses", mu.masses()}}; }

DiscreteMeasure probability_measure_from_json(const Json& j) {
  return make_probability_measure(json_get<std::vector<double>>(j, "atoms"), json_get<std::vector<double>>(j, "masses"));
}

void write_measure_csv(std::ostream& out, const DiscreteMeasure& mu, const std::string& comment) {
  write_comment(out, comment);
  for (std::size_t i = 0; i < mu.size(); ++i) out << format_double(mu.atoms()[i]) << ',' << format_double(mu.masses()[i]) << '\n';
}

DiscreteMeasure read_probability_measure_csv(std::istream& in) {
  std::vector<double> atoms;
  std::vector<double> masses;
  for (const auto& [number, line] : significant_lines(in)) {
    const auto row = parse_row(line, number);
    if (row.size() != 2) fail(ErrorCode::Parse, "line " + std::to_string(number) + ": expected 'atom,mass'");
    atoms.push_back(row[0]);
    masses.push_back(row[1]);
  }
  return make_probability_measure(std::move(atoms), std::move(masses));
}

Json quantiles_to_json(const QuantileVector& q) { return Json(q.values); }

QuantileVector quantiles_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::Parse, "quantile vector must be a JSON array");
  try {
    return QuantileVector{j.get<std::vector<double>>()};
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("quantile vector: ") + e.what());
  }
}

Json spectrum_to_json(const DiscreteMeasure& mu) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < mu.size(); ++i) arr.push_back(Json{{"atom", mu.atoms()[i]}, {"mass", mu.masses()[i]}});
  return arr;
}

DiscreteMeasure spectrum_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::Parse, "spectrum must be a JSON array");
  std::vector<double> atoms;
  std::vector<double> masses;
  for (const auto& e : j) {
    atoms.push_back(json_get<double>(e, "atom"));
    masses.push_back(json_get<double>(e, "mass"));
  }
  return make_probability_measure(std::move(atoms), std::move(masses));
}

Json vertex_spectra_to_json(const std::vector<PowerSpectrum>& spectra) {
  Json vertices = Json::array();
  for (std::size_t x = 0; x < spectra.size(); ++x) {
    vertices.push_back(Json{{"vertex", x}, {"spectrum", spectrum_to_json(spectra[x].measure)}});
  }
  return Json{{"n", spectra.size()}, {"vertices", vertices}};
}

std::vector<PowerSpectrum> vertex_spectra_from_json(const Json& j) {
  const auto n = json_get<std::size_t>(j, "n");
  const auto vertices = json_get<Json>(j, "vertices");
  std::vector<PowerSpectrum> out(n);
  std::vector<bool> seen(n, false);
  for (const auto& v : vertices) {
    const auto x = json_get<std::size_t>(v, "vertex");
    if (x >= n) fail(ErrorCode::Parse, "vertex index " + std::to_string(x) + " out of range");
    out[x] = PowerSpectrum{spectrum_from_json(json_get<Json>(v, "spectrum")), 1.0};
    seen[x] = true;
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (!seen[x]) fail(ErrorCode::Parse, "missing spectrum for vertex " + std::to_string(x));
  }
  return out;
}

Json pair_spectra_to_json(const PairSpectra& spectra) {
  Json pairs = Json::array();
  for (std::size_t x = 0; x < spectra.size(); ++x) {
    for (std::size_t y = x; y < spectra.size(); ++y) {
      if (!spectra.contains(x, y)) continue;
      pairs.push_back(Json{{"x", x}, {"y", y}, {"spectrum", spectrum_to_json(spectra.get(x, y).measure)}});
    }
  }
  return Json{{"n", spectra.size()}, {"pairs", pairs}};
}

PairSpectra pair_spectra_from_json(const Json& j) {
  PairSpectra out(json_get<std::size_t>(j, "n"));
  for (const auto& p : json_get<Json>(j, "pairs")) {
    const auto x = json_get<std::size_t>(p, "x");
    const auto y = json_get<std::size_t>(p, "y");
    out.set(x, y, PowerSpectrum{spectrum_from_json(json_get<Json>(p, "spectrum")), 1.0});
  }
  return out;
}

PointCloud read_point_cloud_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  bool first = true;
  for (const auto& [number, line] : significant_lines(in)) {
    if (first && !is_numeric_row(line)) {
      first = false;
      continue;
    }
    first = false;
    rows.push_back(parse_row(line, number));
  }
  return PointCloud(rows_to_matrix(rows));
}

void write_point_cloud_csv(std::ostream& out, const PointCloud& pc, const std::string& comment) {
  write_matrix_csv(out, pc.points(), comment);
}

void write_table_csv(std::ostream& out, const std::vector<std::string>& header, const Matrix& m,
                     const std::string& comment) {
  if (static_cast<Eigen::Index>(header.size()) != m.cols()) {
    fail(ErrorCode::DimensionMismatch, "header width differs from column count");
  }
  write_comment(out, comment);
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) write_row(out, m, r);
}

Matrix read_table_csv(std::istream& in, std::vector<std::string>* header) {
  std::vector<std::vector<double>> rows;
  bool first = true;
  for (const auto& [number, line] : significant_lines(in)) {
    if (first && !is_numeric_row(line)) {
      if (header) *header = split(line, ',');
      first = false;
      continue;
    }
    first = false;
    rows.push_back(parse_row(line, number));
  }
  return rows_to_matrix(rows);
}

void write_labels_csv(std::ostream& out, const std::vector<int>& labels, const std::string& comment) {
  write_comment(out, comment);
  out << "label\n";
  for (int l : labels) out << l << '\n';
}

std::vector<int> read_labels_csv(std::istream& in) {
  std::vector<int> labels;
  for (const auto& [number, line] : significant_lines(in)) {
    if (line == "label") continue;
    int v = 0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc() || ptr != line.data() + line.size()) {
      fail(ErrorCode::Parse, "line " + std::to_string(number) + ": bad label '" + line + "'");
    }
    labels.push_back(v);
  }
  return labels;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records, const std::string& comment) {
  write_comment(out, comment);
  out << "dim,t,delta_norm,w1,bound,ratio,seed\n";
  for (const auto& r : records) {
    out << r.dim << ',' << format_double(r.t) << ',' << format_double(r.delta_norm) << ',' << format_double(r.w1)
        << ',' << format_double(r.bound) << ',' << format_double(r.ratio) << ',' << r.seed << '\n';
  }
}

std::vector<TrialRecord> read_trials_csv(std::istream& in) {
  std::vector<TrialRecord> out;
  for (const auto& [number, line] : significant_lines(in)) {
    if (line.rfind("dim,", 0) == 0) continue;
    const auto tok = split(line, ',');
    if (tok.size() != 7) fail(ErrorCode::Parse, "line " + std::to_string(number) + ": expected 7 fields");
    TrialRecord r;
    r.dim = parse_index(tok[0], number);
    r.t = parse_double(tok[1], number);
    r.delta_norm = parse_double(tok[2], number);
    r.w1 = parse_double(tok[3], number);
    r.bound = parse_double(tok[4], number);
    r.ratio = parse_double(tok[5], number);
    const auto [ptr, ec] = std::from_chars(tok[6].data(), tok[6].data() + tok[6].size(), r.seed);
    if (ec != std::errc()) fail(ErrorCode::Parse, "line " + std::to_string(number) + ": bad seed");
    out.push_back(r);
  }
  return out;
}

Json summary_to_json(const EnsembleSummary& s) {
  return Json{{"trials", s.trials}, {"max_ratio", s.max_ratio}, {"mean_ratio", s.mean_ratio}, {"violations", s.violations}};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  out << contents;
  if (!out) fail(ErrorCode::Io, "write to '" + path.string() + "' failed");
}

}  // namespace psig::io
