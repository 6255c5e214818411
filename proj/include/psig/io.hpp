#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "psig/analysis.hpp"
#include "psig/diffusion.hpp"
#include "psig/graph.hpp"
#include "psig/measures.hpp"
#include "psig/signatures.hpp"
#include "psig/spectral.hpp"
#include "psig/stability.hpp"
#include "psig/types.hpp"

namespace psig::io {

using Json = nlohmann::json;

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

// Text files. Every reader skips blank lines and lines starting with '#'.
// Writers put `comment` (when non-empty) on a leading "# " line.

/// Edge list: "i j [w]" per line, optional "n <count>" header; otherwise the
/// vertex count is the largest index + 1.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g, const std::string& comment = {});

/// Dense matrix, one comma-separated row per line.
Matrix read_matrix_csv(std::istream& in);
void write_matrix_csv(std::ostream& out, const Matrix& m, const std::string& comment = {});

/// {"n": n, "data": [row-major entries]} for a square matrix.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// Reads a square matrix from either format, chosen by content: JSON when
/// the first significant character is '{', CSV otherwise.
Matrix read_matrix(std::istream& in);

Json decomposition_to_json(const SpectralDecomposition& d);

/// {"atoms": [...], "masses": [...]}
Json measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure probability_measure_from_json(const Json& j);
/// "atom,mass" per line.
void write_measure_csv(std::ostream& out, const DiscreteMeasure& mu, const std::string& comment = {});
DiscreteMeasure read_probability_measure_csv(std::istream& in);

Json quantiles_to_json(const QuantileVector& q);
QuantileVector quantiles_from_json(const Json& j);

/// [{"atom": a, "mass": m}, ...]
Json spectrum_to_json(const DiscreteMeasure& mu);
DiscreteMeasure spectrum_from_json(const Json& j);

/// {"n": n, "vertices": [{"vertex": x, "spectrum": [...]}, ...]}
Json vertex_spectra_to_json(const std::vector<PowerSpectrum>& spectra);
std::vector<PowerSpectrum> vertex_spectra_from_json(const Json& j);

/// {"n": n, "pairs": [{"x": x, "y": y, "spectrum": [...]}, ...]} for x <= y.
Json pair_spectra_to_json(const PairSpectra& spectra);
PairSpectra pair_spectra_from_json(const Json& j);

/// One point per line, comma-separated coordinates. A first line that does
/// not parse as numbers is treated as a header.
PointCloud read_point_cloud_csv(std::istream& in);
void write_point_cloud_csv(std::ostream& out, const PointCloud& pc, const std::string& comment = {});

/// Matrix with a column-name header line ("pc1,pc2" for PCA scores).
void write_table_csv(std::ostream& out, const std::vector<std::string>& header, const Matrix& m,
                     const std::string& comment = {});
Matrix read_table_csv(std::istream& in, std::vector<std::string>* header = nullptr);

/// One label per line.
void write_labels_csv(std::ostream& out, const std::vector<int>& labels, const std::string& comment = {});
std::vector<int> read_labels_csv(std::istream& in);

/// Header "dim,t,delta_norm,w1,bound,ratio,seed".
void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records, const std::string& comment = {});
std::vector<TrialRecord> read_trials_csv(std::istream& in);

Json summary_to_json(const EnsembleSummary& s);

// File helpers: Io errors on open failure.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace psig::io
