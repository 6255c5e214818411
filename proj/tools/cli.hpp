#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace psig::cli {

enum class Subcommand { Laplacian, Diffusion, Spectra, Quantiles, Distances, Reconstruct, Stability, Cluster, GenTorus };

std::string to_string(Subcommand c);

struct RunConfig {
  Subcommand command = Subcommand::Laplacian;
  std::filesystem::path input;    // edge list, matrix, point cloud, or pair spectra
  std::filesystem::path output;   // file; a directory for `cluster`
  std::filesystem::path summary;  // stability summary JSON (default: <output>.summary.json)

  double epsilon = 1.0;
  double alpha = 0.5;
  std::size_t quantiles = 1000;
  std::size_t pca_k = 2;
  std::optional<double> dbscan_eps;
  std::size_t min_pts = 10;
  bool pairs = false;

  std::uint64_t seed = 1;
  std::size_t trials = 1000;
  std::size_t dim = 8;
  std::optional<std::size_t> max_dim;  // stability: dims in [dim, max_dim]

  std::size_t n = 1000;
  double R = 1.0;
  double r = 0.25;
};

enum ExitCode : int { kOk = 0, kIoError = 1, kValidation = 2, kSolver = 3, kViolation = 4 };

/// One-line rendering of every field that affects the output.
std::string describe(const RunConfig& config);

/// Throws psig::Error (InvalidArgument / Io) on bad flags or paths.
void validate(const RunConfig& config);

/// Executes the subcommand; diagnostics go to `err`, short reports to `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and runs; returns the process exit code.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psig::cli
