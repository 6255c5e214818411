#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "psig/analysis.hpp"
#include "psig/diffusion.hpp"
#include "psig/error.hpp"
#include "psig/graph.hpp"
#include "psig/io.hpp"
#include "psig/signatures.hpp"
#include "psig/spectral.hpp"
#include "psig/stability.hpp"

namespace psig::cli {

namespace {

using io::format_double;

std::istringstream open_input(const std::filesystem::path& path) { return std::istringstream(io::read_file(path)); }

bool wants_json(const std::filesystem::path& path) { return path.extension() == ".json"; }

void write_matrix(const std::filesystem::path& path, const Matrix& m, const std::string& header) {
  if (wants_json(path)) {
    auto j = io::matrix_to_json(m);
    j["config"] = header;
    io::write_file(path, j.dump(1) + "\n");
    return;
  }
  std::ostringstream out;
  io::write_matrix_csv(out, m, header);
  io::write_file(path, out.str());
}

Matrix read_operator(const std::filesystem::path& path) {
  auto in = open_input(path);
  return io::read_matrix(in);
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io:
    case ErrorCode::Parse:
      return kIoError;
    case ErrorCode::SolverFailure:
    case ErrorCode::DegenerateWeight:
      return kSolver;
    default:
      return kValidation;
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

void require_input(const RunConfig& c) {
  if (c.input.empty()) fail(ErrorCode::InvalidArgument, "--input is required for " + to_string(c.command));
  std::error_code ec;
  if (!std::filesystem::is_regular_file(c.input, ec)) {
    fail(ErrorCode::Io, "input '" + c.input.string() + "' is not a readable file");
  }
}

void require_parent(const std::filesystem::path& p) {
  const auto parent = p.parent_path();
  std::error_code ec;
  if (!parent.empty() && !std::filesystem::is_directory(parent, ec)) {
    fail(ErrorCode::Io, "directory '" + parent.string() + "' does not exist");
  }
}

int run_laplacian(const RunConfig& c, const std::string& header) {
  auto in = open_input(c.input);
  write_matrix(c.output, normalized_laplacian(io::read_edge_list(in)), header);
  return kOk;
}

PointCloud read_cloud(const std::filesystem::path& path) {
  auto in = open_input(path);
  return io::read_point_cloud_csv(in);
}

int run_diffusion(const RunConfig& c, const std::string& header) {
  write_matrix(c.output, diffusion_operator(read_cloud(c.input), {c.epsilon, c.alpha}), header);
  return kOk;
}

int run_spectra(const RunConfig& c, const std::string& header) {
  const auto d = decompose(read_operator(c.input));
  io::Json j = c.pairs ? io::pair_spectra_to_json(all_pair_spectra(d)) : io::vertex_spectra_to_json(vertex_spectra(d));
  j["config"] = header;
  io::write_file(c.output, j.dump(1) + "\n");
  return kOk;
}

int run_quantiles(const RunConfig& c, const std::string& header) {
  const auto q = quantile_matrix(decompose(read_operator(c.input)), c.quantiles);
  std::ostringstream out;
  io::write_matrix_csv(out, q.rows, header);
  io::write_file(c.output, out.str());
  return kOk;
}

int run_distances(const RunConfig& c, const std::string& header) {
  std::ostringstream out;
  io::write_matrix_csv(out, signature_distance_matrix(decompose(read_operator(c.input))).dist, header);
  io::write_file(c.output, out.str());
  return kOk;
}

int run_reconstruct(const RunConfig& c, const std::string& header, std::ostream& report) {
  // A pair-spectra JSON is reconstructed directly; a matrix is round-tripped
  // through its own pair spectra.
  const std::string text = io::read_file(c.input);
  const auto first = text.find_first_not_of(" \t\r\n");
  Matrix result;
  bool from_spectra = false;
  if (first != std::string::npos && text[first] == '{') {
    io::Json j;
    try {
      j = io::Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::Parse, std::string("input JSON: ") + e.what());
    }
    from_spectra = j.contains("pairs");
    if (from_spectra) result = reconstruct_matrix(io::pair_spectra_from_json(j));
  }
  if (!from_spectra) {
    auto in = std::istringstream(text);
    const Matrix H = io::read_matrix(in);
    result = reconstruct_matrix(all_pair_spectra(decompose(H)));
    report << "max_abs_error " << format_double(max_abs(result - H)) << '\n';
  }
  write_matrix(c.output, result, header);
  return kOk;
}

int run_stability(const RunConfig& c, const std::string& header, std::ostream& report) {
  EnsembleConfig e;
  e.trials = c.trials;
  e.min_dim = c.dim;
  e.max_dim = c.max_dim.value_or(c.dim);
  e.seed = c.seed;
  const auto records = run_lipschitz_ensemble(e);
  std::ostringstream out;
  io::write_trials_csv(out, records, header);
  io::write_file(c.output, out.str());
  const auto s = summarize(records);
  auto j = io::summary_to_json(s);
  j["config"] = header;
  const auto summary = c.summary.empty() ? std::filesystem::path(c.output.string() + ".summary.json") : c.summary;
  io::write_file(summary, j.dump(1) + "\n");
  report << "trials " << s.trials << " max_ratio " << format_double(s.max_ratio) << " violations " << s.violations
         << '\n';
  return s.violations == 0 ? kOk : kViolation;
}

int run_cluster(const RunConfig& c, const std::string& header, std::ostream& report) {
  std::error_code ec;
  std::filesystem::create_directories(c.output, ec);
  if (ec) fail(ErrorCode::Io, "cannot create directory '" + c.output.string() + "'");

  const auto pc = read_cloud(c.input);
  const auto d = decompose(diffusion_operator(pc, {c.epsilon, c.alpha}));
  const auto q = quantile_matrix(d, c.quantiles);
  const auto p = pca(q.rows, c.pca_k);
  const double eps = c.dbscan_eps.value_or(default_dbscan_eps(p.scores));
  const auto clusters = dbscan(p.scores, eps, c.min_pts);

  std::ostringstream qs;
  io::write_matrix_csv(qs, q.rows, header);
  io::write_file(c.output / "quantiles.csv", qs.str());

  std::vector<std::string> names;
  for (Eigen::Index k = 0; k < p.scores.cols(); ++k) names.push_back(fmt::format("pc{}", k + 1));
  std::ostringstream ps;
  io::write_table_csv(ps, names, p.scores, header);
  io::write_file(c.output / "pca.csv", ps.str());

  std::ostringstream ls;
  io::write_labels_csv(ls, clusters.labels, header);
  io::write_file(c.output / "labels.csv", ls.str());

  // Descending, the order in which spectra plots usually read.
  const Vector ev = d.eigenvalues().reverse();
  std::ostringstream es;
  io::write_table_csv(es, {"eigenvalue"}, ev, header);
  io::write_file(c.output / "eigenvalues.csv", es.str());

  const auto above = (ev.array() > 0.01).count();
  report << "points " << pc.size() << " clusters " << clusters.clusters << " dbscan_eps " << format_double(eps)
         << " eigenvalues_above_0.01 " << above << '\n';
  return kOk;
}

int run_gen_torus(const RunConfig& c, const std::string& header) {
  std::ostringstream out;
  io::write_point_cloud_csv(out, sample_torus(c.n, c.R, c.r, c.seed), header);
  io::write_file(c.output, out.str());
  return kOk;
}

}  // namespace

std::string to_string(Subcommand c) {
  switch (c) {
    case Subcommand::Laplacian: return "laplacian";
    case Subcommand::Diffusion: return "diffusion";
    case Subcommand::Spectra: return "spectra";
    case Subcommand::Quantiles: return "quantiles";
    case Subcommand::Distances: return "distances";
    case Subcommand::Reconstruct: return "reconstruct";
    case Subcommand::Stability: return "stability";
    case Subcommand::Cluster: return "cluster";
    case Subcommand::GenTorus: return "gen-torus";
  }
  return "unknown";
}

std::string describe(const RunConfig& c) {
  std::string s = "spectra-sig " + to_string(c.command);
  auto add = [&](const std::string& key, const std::string& value) { s += " " + key + "=" + value; };
  if (!c.input.empty()) add("input", c.input.string());
  switch (c.command) {
    case Subcommand::Diffusion:
      add("epsilon", format_double(c.epsilon));
      add("alpha", format_double(c.alpha));
      break;
    case Subcommand::Spectra:
      add("pairs", c.pairs ? "true" : "false");
      break;
    case Subcommand::Quantiles:
      add("quantiles", std::to_string(c.quantiles));
      break;
    case Subcommand::Stability:
      add("trials", std::to_string(c.trials));
      add("dim", std::to_string(c.dim));
      add("max_dim", std::to_string(c.max_dim.value_or(c.dim)));
      add("seed", std::to_string(c.seed));
      break;
    case Subcommand::Cluster:
      add("epsilon", format_double(c.epsilon));
      add("alpha", format_double(c.alpha));
      add("quantiles", std::to_string(c.quantiles));
      add("pca_k", std::to_string(c.pca_k));
      add("dbscan_eps", c.dbscan_eps ? format_double(*c.dbscan_eps) : "auto");
      add("min_pts", std::to_string(c.min_pts));
      break;
    case Subcommand::GenTorus:
      add("n", std::to_string(c.n));
      add("R", format_double(c.R));
      add("r", format_double(c.r));
      add("seed", std::to_string(c.seed));
      break;
    default:
      break;
  }
  return s;
}

void validate(const RunConfig& c) {
  if (c.output.empty()) fail(ErrorCode::InvalidArgument, "--output is required");
  switch (c.command) {
    case Subcommand::GenTorus:
      require(c.n >= 2, "--n must be >= 2");
      require(c.r > 0.0 && c.r < c.R, "need 0 < --r < --R");
      break;
    case Subcommand::Stability:
      require(c.trials >= 1, "--trials must be >= 1");
      require(c.dim >= 2, "--dim must be >= 2");
      require(!c.max_dim || *c.max_dim >= c.dim, "--max-dim must be >= --dim");
      break;
    default:
      require_input(c);
  }
  if (c.command == Subcommand::Diffusion || c.command == Subcommand::Cluster) {
    require(c.epsilon > 0.0 && std::isfinite(c.epsilon), "--epsilon must be > 0");
    require(c.alpha >= 0.0 && c.alpha <= 1.0, "--alpha must lie in [0, 1]");
  }
  if (c.command == Subcommand::Quantiles || c.command == Subcommand::Cluster) {
    require(c.quantiles >= 1, "--quantiles must be >= 1");
  }
  if (c.command == Subcommand::Cluster) {
    require(c.pca_k >= 1, "--pca-k must be >= 1");
    require(c.min_pts >= 1, "--min-pts must be >= 1");
    require(!c.dbscan_eps || *c.dbscan_eps > 0.0, "--dbscan-eps must be > 0");
    std::error_code ec;
    if (std::filesystem::exists(c.output, ec) && !std::filesystem::is_directory(c.output, ec)) {
      fail(ErrorCode::Io, "output '" + c.output.string() + "' exists and is not a directory");
    }
    auto dir = c.output.lexically_normal();
    if (!dir.has_filename()) dir = dir.parent_path();
    require_parent(dir);
  } else {
    require_parent(c.output);
    if (!c.summary.empty()) require_parent(c.summary);
  }
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    const std::string header = describe(c);
    switch (c.command) {
      case Subcommand::Laplacian: return run_laplacian(c, header);
      case Subcommand::Diffusion: return run_diffusion(c, header);
      case Subcommand::Spectra: return run_spectra(c, header);
      case Subcommand::Quantiles: return run_quantiles(c, header);
      case Subcommand::Distances: return run_distances(c, header);
      case Subcommand::Reconstruct: return run_reconstruct(c, header, out);
      case Subcommand::Stability: {
        const int code = run_stability(c, header, out);
        if (code == kViolation) err << "error: Lipschitz bound violated in at least one trial\n";
        return code;
      }
      case Subcommand::Cluster: return run_cluster(c, header, out);
      case Subcommand::GenTorus: return run_gen_torus(c, header);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kSolver;
  }
  return kValidation;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Spectral power-spectrum signatures for graphs and point clouds"};
  app.require_subcommand(1);

  auto io_flags = [&](CLI::App* sub, const std::string& input_help, const std::string& output_help) {
    sub->add_option("-i,--input", c.input, input_help);
    sub->add_option("-o,--output", c.output, output_help)->required();
  };
  auto kernel_flags = [&](CLI::App* sub) {
    sub->add_option("--epsilon", c.epsilon, "Gaussian kernel bandwidth, exp(-|x-y|^2 / (2 eps^2))")
        ->capture_default_str();
    sub->add_option("--alpha", c.alpha, "density normalization exponent in [0, 1]")->capture_default_str();
  };

  auto* lap = app.add_subcommand("laplacian", "edge list -> normalized Laplacian I - D^-1/2 A D^-1/2");
  io_flags(lap, "edge list: 'i j [w]' per line, optional 'n <count>' header", "matrix (.json for JSON, else CSV)");

  auto* dif = app.add_subcommand("diffusion", "point cloud CSV -> symmetric diffusion operator");
  io_flags(dif, "point cloud CSV, one point per line", "matrix (.json for JSON, else CSV)");
  kernel_flags(dif);

  auto* spe = app.add_subcommand("spectra", "matrix -> power spectra of vertex (or pair) indicators as JSON");
  io_flags(spe, "symmetric matrix, CSV or JSON", "JSON file");
  spe->add_flag("--pairs", c.pairs, "emit spectra of all pair indicators (delta_x + delta_y)/sqrt(2)");

  auto* qua = app.add_subcommand("quantiles", "matrix -> per-vertex quantile vectors (n x m CSV)");
  io_flags(qua, "symmetric matrix, CSV or JSON", "CSV file");
  qua->add_option("--quantiles", c.quantiles, "quantile vector length m (midpoint grid)")->capture_default_str();

  auto* dis = app.add_subcommand("distances", "matrix -> pairwise W1 distances between vertex spectra (CSV)");
  io_flags(dis, "symmetric matrix, CSV or JSON", "CSV file");

  auto* rec = app.add_subcommand("reconstruct", "pair spectra JSON (or a matrix, round-tripped) -> matrix");
  io_flags(rec, "pair spectra JSON from 'spectra --pairs', or a matrix", "matrix (.json for JSON, else CSV)");
  rec->add_option("--spectra", c.input, "alias of --input for pair spectra JSON");

  auto* sta = app.add_subcommand("stability", "randomized Lipschitz-bound trials -> trial CSV + summary JSON");
  sta->add_option("-o,--output", c.output, "trial CSV: dim,t,delta_norm,w1,bound,ratio,seed")->required();
  sta->add_option("--summary", c.summary, "summary JSON (default <output>.summary.json)");
  sta->add_option("--dim", c.dim, "matrix dimension (lower end when --max-dim is given)")->capture_default_str();
  sta->add_option("--max-dim", c.max_dim, "upper end of the dimension range");
  sta->add_option("--trials", c.trials, "number of trials")->capture_default_str();
  sta->add_option("--seed", c.seed, "ensemble seed")->capture_default_str();

  auto* clu = app.add_subcommand("cluster", "point cloud -> quantiles.csv, pca.csv, labels.csv, eigenvalues.csv");
  io_flags(clu, "point cloud CSV", "output directory");
  kernel_flags(clu);
  clu->add_option("--quantiles", c.quantiles, "quantile vector length m")->capture_default_str();
  clu->add_option("--pca-k", c.pca_k, "number of principal components kept")->capture_default_str();
  clu->add_option("--dbscan-eps", c.dbscan_eps, "DBSCAN radius (default 5% of the max pairwise score distance)");
  clu->add_option("--min-pts", c.min_pts, "DBSCAN core size, the point itself included")->capture_default_str();

  auto* tor = app.add_subcommand("gen-torus", "sample a torus uniformly in area -> point cloud CSV");
  tor->add_option("-o,--output", c.output, "CSV file")->required();
  tor->add_option("--n", c.n, "number of points")->capture_default_str();
  tor->add_option("--R", c.R, "major radius")->capture_default_str();
  tor->add_option("--r", c.r, "minor radius")->capture_default_str();
  tor->add_option("--seed", c.seed, "random seed")->capture_default_str();

  const std::vector<std::pair<CLI::App*, Subcommand>> table{
      {lap, Subcommand::Laplacian}, {dif, Subcommand::Diffusion},     {spe, Subcommand::Spectra},
      {qua, Subcommand::Quantiles}, {dis, Subcommand::Distances},     {rec, Subcommand::Reconstruct},
      {sta, Subcommand::Stability}, {clu, Subcommand::Cluster},       {tor, Subcommand::GenTorus}};

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }
  for (const auto& [sub, cmd] : table) {
    if (sub->parsed()) c.command = cmd;
  }
  return run(c, out, err);
}

}  // namespace psig::cli
