#include "srb/data_pipeline.hpp"

#include <Eigen/Dense>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "srb/errors.hpp"

namespace srb {

namespace {

// One CSV record, RFC 4180 quoting. Returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  int c = in.get();
  if (c == EOF) return false;

  std::string field;
  bool quoted = false;
  while (true) {
    if (c == EOF) {
      if (quoted) throw DataError("unterminated quoted field at end of file");
      fields.push_back(std::move(field));
      return true;
    }
    char ch = static_cast<char>(c);
    if (quoted) {
      if (ch == '"') {
        int next = in.get();
        if (next == '"') {
          field.push_back('"');
        } else {
          quoted = false;
          c = next;
          continue;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"' && field.empty()) {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n') {
      fields.push_back(std::move(field));
      return true;
    } else if (ch == '\r') {
      int next = in.peek();
      if (next == '\n') in.get();
      fields.push_back(std::move(field));
      return true;
    } else {
      field.push_back(ch);
    }
    c = in.get();
  }
}

bool parse_number(const std::string& text, double& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  while (last > first && (*(last - 1) == ' ' || *(last - 1) == '\t')) --last;
  if (first == last) return false;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool needs_quoting(const std::string& s) {
  return s.find_first_of(",\"\n\r") != std::string::npos;
}

void write_field(std::ostream& out, const std::string& s) {
  if (!needs_quoting(s)) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

std::string format_value(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    std::ostringstream os;
    os << static_cast<long long>(v);
    return os.str();
  }
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

bool is_binary_column(const Eigen::VectorXd& col) {
  for (Eigen::Index i = 0; i < col.size(); ++i) {
    if (col[i] != 0.0 && col[i] != 1.0) return false;
  }
  return true;
}

}  // namespace

std::size_t TabularDataset::column_index(const std::string& name) const {
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (names[j] == name) return j;
  }
  throw DataError("no column named '" + name + "'");
}

Eigen::MatrixXd TabularDataset::feature_matrix() const {
  std::size_t n_features = columns.size() - (response ? 1 : 0);
  Eigen::MatrixXd m(rows(), n_features);
  Eigen::Index out = 0;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (response && *response == j) continue;
    m.col(out++) = columns[j];
  }
  return m;
}

std::vector<std::string> TabularDataset::feature_names() const {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (response && *response == j) continue;
    out.push_back(names[j]);
  }
  return out;
}

TabularDataset read_csv(std::istream& in, const CsvSchema& schema) {
  std::vector<std::string> fields;
  if (!read_record(in, fields) || fields.empty() || (fields.size() == 1 && fields[0].empty()))
    throw DataError("CSV is empty or has no header row");

  // A header row must not be all-numeric; that indicates a headerless file.
  bool all_numeric = true;
  for (const auto& f : fields) {
    double dummy;
    if (!parse_number(f, dummy)) {
      all_numeric = false;
      break;
    }
  }
  if (all_numeric) throw DataError("CSV appears to have no header row");

  TabularDataset ds;
  ds.names = fields;
  const std::size_t width = ds.names.size();

  std::vector<std::vector<double>> cols(width);
  std::vector<double> row(width);
  std::size_t record = 1;  // header was record 1
  while (read_record(in, fields)) {
    ++record;
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (fields.size() != width) {
      throw DataError("row " + std::to_string(record) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(width));
    }
    bool missing = false;
    for (std::size_t j = 0; j < width; ++j) {
      if (fields[j].empty()) {
        missing = true;
        break;
      }
      if (!parse_number(fields[j], row[j])) {
        throw DataError("malformed cell at row " + std::to_string(record) +
                        ", column '" + ds.names[j] + "': '" + fields[j] + "'");
      }
    }
    if (missing) {
      ++ds.dropped_rows;
      continue;
    }
    for (std::size_t j = 0; j < width; ++j) cols[j].push_back(row[j]);
  }
  if (cols[0].empty()) throw DataError("CSV contains no data rows");

  ds.columns.resize(width);
  ds.types.resize(width);
  for (std::size_t j = 0; j < width; ++j) {
    ds.columns[j] = Eigen::Map<Eigen::VectorXd>(cols[j].data(),
                                                static_cast<Eigen::Index>(cols[j].size()));
    auto declared = schema.declared_types.find(ds.names[j]);
    if (declared != schema.declared_types.end()) {
      if (declared->second == ColumnType::binary && !is_binary_column(ds.columns[j]))
        throw DataError("column '" + ds.names[j] + "' declared binary but has non-0/1 values");
      ds.types[j] = declared->second;
    } else {
      ds.types[j] = is_binary_column(ds.columns[j]) ? ColumnType::binary
                                                    : ColumnType::numeric;
    }
  }
  if (!schema.response_column.empty()) {
    ds.response = ds.column_index(schema.response_column);
  }
  return ds;
}

TabularDataset load_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return read_csv(in, schema);
}

void write_csv(const TabularDataset& ds, std::ostream& out) {
  for (std::size_t j = 0; j < ds.names.size(); ++j) {
    if (j) out << ',';
    write_field(out, ds.names[j]);
  }
  out << '\n';
  const std::size_t n = ds.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < ds.columns.size(); ++j) {
      if (j) out << ',';
      out << format_value(ds.columns[j][static_cast<Eigen::Index>(i)]);
    }
    out << '\n';
  }
}

void write_csv(const TabularDataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  write_csv(ds, out);
}

TabularDataset subset_binary(const TabularDataset& ds, double class_a, double class_b) {
  if (!ds.response) throw DataError("subset_binary needs a designated response column");
  if (class_a == class_b) throw DataError("subset classes must differ");

  const Eigen::VectorXd& resp = ds.columns[*ds.response];
  std::vector<Eigen::Index> keep;
  std::size_t count_a = 0, count_b = 0;
  for (Eigen::Index i = 0; i < resp.size(); ++i) {
    if (resp[i] == class_a) {
      ++count_a;
      keep.push_back(i);
    } else if (resp[i] == class_b) {
      ++count_b;
      keep.push_back(i);
    }
  }
  if (count_a == 0)
    throw DataError("class " + format_value(class_a) + " absent from response");
  if (count_b == 0)
    throw DataError("class " + format_value(class_b) + " absent from response");

  TabularDataset out;
  out.names = ds.names;
  out.types = ds.types;
  out.response = ds.response;
  out.dropped_rows = ds.dropped_rows;
  out.columns.resize(ds.columns.size());
  for (std::size_t j = 0; j < ds.columns.size(); ++j) {
    Eigen::VectorXd col(static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) col[static_cast<Eigen::Index>(i)] = ds.columns[j][keep[i]];
    out.columns[j] = std::move(col);
  }
  Eigen::VectorXd& recoded = out.columns[*out.response];
  for (Eigen::Index i = 0; i < recoded.size(); ++i) {
    recoded[i] = recoded[i] == class_a ? 0.0 : 1.0;
  }
  out.types[*out.response] = ColumnType::binary;
  return out;
}

std::pair<TabularDataset, PruneLog> drop_constant_columns(const TabularDataset& ds) {
  PruneLog log;
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < ds.columns.size(); ++j) {
    bool is_response = ds.response && *ds.response == j;
    const Eigen::VectorXd& col = ds.columns[j];
    if (!is_response && col.maxCoeff() == col.minCoeff()) {
      PruneEntry entry;
      entry.column = ds.names[j];
      entry.reason = PruneEntry::Reason::constant;
      log.entries.push_back(std::move(entry));
      continue;
    }
    keep.push_back(j);
  }

  TabularDataset out;
  out.dropped_rows = ds.dropped_rows;
  for (std::size_t j : keep) {
    if (ds.response && *ds.response == j) out.response = out.columns.size();
    out.names.push_back(ds.names[j]);
    out.types.push_back(ds.types[j]);
    out.columns.push_back(ds.columns[j]);
  }
  return {std::move(out), std::move(log)};
}

Eigen::VectorXd vif(const Eigen::MatrixXd& features) {
  const Eigen::Index n = features.rows();
  const Eigen::Index p = features.cols();
  if (p < 2) throw DataError("VIF needs at least 2 columns");
  if (n <= p) throw DataError("VIF needs more rows than columns");

  Eigen::VectorXd out(p);
  Eigen::MatrixXd aux(n, p);  // [1, other columns]
  aux.col(0).setOnes();
  for (Eigen::Index j = 0; j < p; ++j) {
    Eigen::Index k = 1;
    for (Eigen::Index c = 0; c < p; ++c) {
      if (c == j) continue;
      aux.col(k++) = features.col(c);
    }
    const Eigen::VectorXd& target = features.col(j);
    double centered_ss = (target.array() - target.mean()).square().sum();
    if (!(centered_ss > 0))
      throw DataError("column " + std::to_string(j) + " is constant; VIF undefined");

    // Rank-revealing solve: exact collinearity shows up as R^2 -> 1 rather
    // than a failure.
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(aux);
    Eigen::VectorXd coef = qr.solve(target);
    double residual_ss = (target - aux * coef).squaredNorm();
    double r2 = 1.0 - residual_ss / centered_ss;
    if (r2 >= 1.0 - 1e-12) {
      out[j] = std::numeric_limits<double>::infinity();
    } else {
      out[j] = 1.0 / (1.0 - r2);
    }
  }
  return out;
}

VifPruneResult iterative_vif_prune(const Eigen::MatrixXd& features, double threshold,
                                   const std::vector<std::string>* names) {
  if (!(threshold > 1.0)) throw DataError("VIF threshold must exceed 1");
  if (names && static_cast<Eigen::Index>(names->size()) != features.cols())
    throw DataError("names length does not match feature count");

  VifPruneResult result;
  result.features = features;
  result.kept_columns.resize(static_cast<std::size_t>(features.cols()));
  for (std::size_t j = 0; j < result.kept_columns.size(); ++j) result.kept_columns[j] = j;

  auto label = [&](std::size_t original) {
    return names ? (*names)[original] : "c" + std::to_string(original);
  };

  while (true) {
    if (result.features.cols() < 2) {
      result.log.stopped_early = true;
      break;
    }
    Eigen::VectorXd v = vif(result.features);
    Eigen::Index worst = 0;
    for (Eigen::Index j = 1; j < v.size(); ++j) {
      if (v[j] > v[worst]) worst = j;  // ties keep the lowest index
    }
    if (!(v[worst] >= threshold)) break;

    PruneEntry entry;
    entry.column = label(result.kept_columns[static_cast<std::size_t>(worst)]);
    entry.vif = v[worst];
    entry.reason = PruneEntry::Reason::vif;
    result.log.entries.push_back(std::move(entry));

    Eigen::MatrixXd next(result.features.rows(), result.features.cols() - 1);
    Eigen::Index k = 0;
    for (Eigen::Index c = 0; c < result.features.cols(); ++c) {
      if (c == worst) continue;
      next.col(k++) = result.features.col(c);
    }
    result.features = std::move(next);
    result.kept_columns.erase(result.kept_columns.begin() + worst);
  }
  return result;
}

std::pair<TabularDataset, PruneLog> iterative_vif_prune(const TabularDataset& ds,
                                                        double threshold) {
  Eigen::MatrixXd features = ds.feature_matrix();
  std::vector<std::string> fnames = ds.feature_names();
  VifPruneResult pruned = iterative_vif_prune(features, threshold, &fnames);

  // Map kept feature positions back to dataset column indices.
  std::vector<std::size_t> feature_to_column;
  for (std::size_t j = 0; j < ds.columns.size(); ++j) {
    if (ds.response && *ds.response == j) continue;
    feature_to_column.push_back(j);
  }

  TabularDataset out;
  out.dropped_rows = ds.dropped_rows;
  for (std::size_t f : pruned.kept_columns) {
    std::size_t j = feature_to_column[f];
    out.names.push_back(ds.names[j]);
    out.types.push_back(ds.types[j]);
    out.columns.push_back(ds.columns[j]);
  }
  if (ds.response) {
    out.response = out.columns.size();
    out.names.push_back(ds.names[*ds.response]);
    out.types.push_back(ds.types[*ds.response]);
    out.columns.push_back(ds.columns[*ds.response]);
  }
  return {std::move(out), std::move(pruned.log)};
}

std::string PruneLog::to_json() const {
  nlohmann::json j;
  j["stopped_early"] = stopped_early;
  nlohmann::json removed = nlohmann::json::array();
  for (const auto& entry : entries) {
    nlohmann::json je;
    je["column"] = entry.column;
    if (entry.vif) {
      if (std::isinf(*entry.vif)) {
        je["vif"] = "inf";
      } else {
        je["vif"] = *entry.vif;
      }
    } else {
      je["vif"] = nullptr;
    }
    je["reason"] = entry.reason == PruneEntry::Reason::constant ? "constant" : "vif";
    removed.push_back(std::move(je));
  }
  j["removed"] = std::move(removed);
  return j.dump(2);
}

}  // namespace srb
