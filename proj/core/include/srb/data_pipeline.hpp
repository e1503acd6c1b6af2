#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace srb {

enum class ColumnType { numeric, binary };

// Rectangular numeric table backed by per-column vectors. Rows with missing
// cells are dropped at ingestion (and counted); there are no NA values
// inside a constructed dataset.
struct TabularDataset {
  std::vector<std::string> names;
  std::vector<ColumnType> types;
  std::vector<Eigen::VectorXd> columns;
  std::optional<std::size_t> response;  // index into columns
  std::size_t dropped_rows = 0;

  std::size_t rows() const { return columns.empty() ? 0 : static_cast<std::size_t>(columns[0].size()); }
  std::size_t n_columns() const { return columns.size(); }

  std::size_t column_index(const std::string& name) const;  // throws DataError

  // All non-response columns, in order, as a dense matrix.
  Eigen::MatrixXd feature_matrix() const;
  std::vector<std::string> feature_names() const;
};

struct CsvSchema {
  std::string response_column;  // empty: no response designated
  // Explicit per-column types; unlisted columns are inferred (binary when
  // every value is 0/1, numeric otherwise).
  std::map<std::string, ColumnType> declared_types;
};

// RFC 4180 CSV reader: quoted fields, embedded commas/quotes/newlines,
// CRLF line ends. A header row is required; empty cells mark the row as
// missing and drop it (counted in dropped_rows); any non-numeric cell is an
// error naming the (row, column) location.
TabularDataset load_csv(const std::filesystem::path& path, const CsvSchema& schema = {});
TabularDataset read_csv(std::istream& in, const CsvSchema& schema = {});

void write_csv(const TabularDataset& ds, const std::filesystem::path& path);
void write_csv(const TabularDataset& ds, std::ostream& out);

// Keeps the rows whose response equals class_a or class_b (in input order)
// and recodes the response to 0/1 (class_a -> 0). Errors when the classes
// coincide or either is absent.
TabularDataset subset_binary(const TabularDataset& ds, double class_a, double class_b);

struct PruneEntry {
  std::string column;
  std::optional<double> vif;  // unset for constant-column removals
  enum class Reason { constant, vif } reason = Reason::vif;
};

struct PruneLog {
  std::vector<PruneEntry> entries;
  bool stopped_early = false;  // pruning halted with fewer than 2 columns left

  std::string to_json() const;
};

// Removes zero-variance feature columns. The response is never dropped.
std::pair<TabularDataset, PruneLog> drop_constant_columns(const TabularDataset& ds);

// Variance inflation factors: VIF_j = 1 / (1 - R^2_j), with R^2_j from the
// intercept-augmented regression of column j on all other columns. An
// auxiliary R^2 within 1e-12 of 1 reports +infinity. Operates on a raw
// feature matrix because its whole purpose is to diagnose (near-)collinear
// inputs that a validated design would reject.
Eigen::VectorXd vif(const Eigen::MatrixXd& features);

struct VifPruneResult {
  Eigen::MatrixXd features;
  std::vector<std::size_t> kept_columns;  // indices into the input matrix
  PruneLog log;
};

// One column per pass: while the largest VIF is >= threshold, drop that
// column (ties: lowest index) and recompute. Stops with a warning flag when
// fewer than two columns remain.
VifPruneResult iterative_vif_prune(const Eigen::MatrixXd& features,
                                   double threshold = 2.0,
                                   const std::vector<std::string>* names = nullptr);

// Dataset-level wrapper over the feature columns; the response column is
// carried through untouched.
std::pair<TabularDataset, PruneLog> iterative_vif_prune(const TabularDataset& ds,
                                                        double threshold = 2.0);

}  // namespace srb
