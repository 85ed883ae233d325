#pragma once

#include <string>
#include <vector>

#include "grid.hpp"
#include "limits_mc.hpp"
#include "modelsim.hpp"
#include "stats.hpp"

namespace cusplim {

// All writers emit 17-significant-digit values, enough for lossless
// double round-trips, so equal runs produce byte-identical files.

void write_limits_summary(const std::string& path, const McSummary& s);
void write_limits_table(const std::string& path, const std::vector<McSummary>& rows);
void write_limits_raw(const std::string& path, const std::vector<LimitSample>& samples);
void write_model_summary(const std::string& path, const ModelMcSummary& s);
void write_model_raw(const std::string& path, const std::vector<EstimateResult>& samples);
void write_density(const std::string& path, const DensityCurve& curve);
void write_fbm_path(const std::string& path, const FbmGrid& grid);
void write_pairs(const std::string& path, const std::string& header,
                 const std::vector<std::pair<double, double>>& rows);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns[0].size(); }
  const std::vector<double>& column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

}  // namespace cusplim
