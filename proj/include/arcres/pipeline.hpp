#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arcres/arcs.hpp"
#include "arcres/design.hpp"
#include "arcres/geometry.hpp"
#include "arcres/resolve.hpp"

namespace arcres {

/// A pipeline stage failed; `stage` names it.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what, bool validation)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)), validation_(validation) {}
  const std::string& stage() const { return stage_; }
  /// True for axiom/validation failures, false for I/O or parse failures.
  bool validation() const { return validation_; }

 private:
  std::string stage_;
  bool validation_;
};

struct ReportRow {
  std::string hyperoval_id;
  std::string plane_label;
  std::size_t rank2 = 0;
  std::size_t n_parallel_classes = 0;
  std::size_t n_resolutions = 0;
  std::size_t n_max_compatible_sets = 0;
  std::optional<bool> embed_valid;                // set only when a full compatible set exists
  std::optional<std::size_t> rank_bound;          // 3^t - 2^t when the design has that shape
  std::vector<std::pair<std::string, double>> timings;  // seconds per stage, in run order
};

struct PipelineOptions {
  std::string hyperoval_id = "regular";
  unsigned jobs = 1;
};

struct PipelineResult {
  Arc hyperoval;
  Arc arc;  // dual arc in the dual plane
  Design design;
  std::vector<ParallelClass> classes;
  std::vector<Resolution> resolutions;
  std::vector<CompatibleSet> compatible_sets;
  std::optional<Embedding> embedding;
  ReportRow row;
};

/// dual_arc -> extract_design -> rank2 -> parallel_classes -> resolutions ->
/// max_compatible_sets -> embed (first set, with a round-trip check).
PipelineResult run_pipeline(const Arc& hyperoval, const PipelineOptions& opt = {});

/// Returns `plane` with PG(2,q) coordinates attached when its lines equal the
/// canonical build_pg2 output for its order (default modulus); nullopt otherwise.
std::optional<ProjectivePlane> attach_pg2_coordinates(const ProjectivePlane& plane);

/// The hyperoval for a pipeline run: "regular" builds the conic plus nucleus,
/// anything else is read as an arc file with k = 2.
Arc resolve_hyperoval(std::shared_ptr<const ProjectivePlane> plane, const std::string& spec,
                      std::optional<std::uint32_t> index_base = std::nullopt);

/// Writes every intermediate artifact plus report.json into `dir`.
/// Stage timings go to timings.json so the rest is reproducible byte for byte.
void write_pipeline_outputs(const std::filesystem::path& dir, const PipelineResult& result);

std::map<std::size_t, std::size_t> rank_histogram(const std::vector<ReportRow>& rows);

// ---- batch ------------------------------------------------------------------

struct ManifestRow {
  std::string hyperoval_id;
  std::string plane_label;
  std::string plane_path;
  std::string hyperoval_path;  // or "regular"
};

/// CSV with header hyperoval_id,plane_label,plane_path,hyperoval_path.
std::vector<ManifestRow> read_manifest(std::istream& in);

struct BatchOptions {
  unsigned jobs = 1;                     // rows processed concurrently
  std::uint32_t order = 16;              // plane order expected in every row
  std::filesystem::path data_dir;        // base for relative paths, if set
  std::optional<std::uint32_t> index_base;
};

struct BatchRow {
  ManifestRow input;
  std::optional<ReportRow> report;
  std::string error;    // empty on success
  bool resumed = false;  // loaded from an earlier run
};

/// Runs every manifest row; per-row failures are recorded, not thrown.
/// Rows whose outputs already exist under out_dir (keyed on a hash of the
/// input contents) are loaded instead of recomputed.
std::vector<BatchRow> run_batch(const std::vector<ManifestRow>& manifest, const std::filesystem::path& out_dir,
                                const BatchOptions& opt = {});

void write_table_csv(std::ostream& out, const std::vector<BatchRow>& rows);
void write_table_json(std::ostream& out, const std::vector<BatchRow>& rows);

/// Reads report rows back from a table written by either writer.
std::vector<ReportRow> read_table(std::istream& in);

}  // namespace arcres
