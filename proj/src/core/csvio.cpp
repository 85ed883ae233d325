#include "csvio.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>

#include "errors.hpp"

namespace cusplim {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_for_write(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw ConfigError("cannot open for writing: " + path);
  return FilePtr(f);
}

}  // namespace

namespace {

void print_limits_row(std::FILE* f, const McSummary& s) {
  std::fprintf(f, "%.17g,%zu,%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.hurst, s.n_reps,
               s.m, s.span, s.zeta.variance(), s.zeta.se_variance(), s.xi.variance(),
               s.xi.se_variance(), s.zeta.mean(), s.xi.mean());
}

}  // namespace

void write_limits_summary(const std::string& path, const McSummary& s) {
  FilePtr f = open_for_write(path);
  std::fprintf(f.get(), "H,N,m,T,var_zeta,se_var_zeta,var_xi,se_var_xi,mean_zeta,mean_xi\n");
  print_limits_row(f.get(), s);
}

void write_limits_table(const std::string& path, const std::vector<McSummary>& rows) {
  FilePtr f = open_for_write(path);
  std::fprintf(f.get(), "H,N,m,T,var_zeta,se_var_zeta,var_xi,se_var_xi,mean_zeta,mean_xi\n");
  for (const McSummary& s : rows) print_limits_row(f.get(), s);
}

void write_limits_raw(const std::string& path, const std::vector<LimitSample>& samples) {
  FilePtr f = open_for_write(path);
  std::fprintf(f.get(), "replicate,zeta_hat,xi_hat\n");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::fprintf(f.get(), "%zu,%.17g,%.17g\n", i, samples[i].zeta_hat, samples[i].xi_hat);
  }
}

void write_model_summary(const std::string& path, const ModelMcSummary& s) {
  FilePtr f = open_for_write(path);
  std::fprintf(f.get(),
               "H,N,n_t,n_u,var_pitman,se_var_pitman,var_mle,se_var_mle,mean_pitman,mean_mle\n");
  std::fprintf(f.get(), "%.17g,%zu,%zu,%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.hurst,
               s.n_reps, s.n_t, s.n_u, s.pitman.variance(), s.pitman.se_variance(),
               s.mle.variance(), s.mle.se_variance(), s.pitman.mean(), s.mle.mean());
}

void write_model_raw(const std::string& path, const std::vector<EstimateResult>& samples) {
  FilePtr f = open_for_write(path);
  std::fprintf(f.get(), "replicate,mle,pitman,normalized_mle,normalized_pitman\n");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::fprintf(f.get(), "%zu,%.17g,%.17g,%.17g,%.17g\n", i, samples[i].mle, samples[i].pitman,
                 samples[i].normalized_mle, samples[i].normalized_pitman);
  }
}

void write_density(const std::string& path, const DensityCurve& curve) {
  FilePtr f = open_for_write(path);
  std::fprintf(f.get(), "x,density\n");
  for (std::size_t i = 0; i < curve.x.size(); ++i) {
    std::fprintf(f.get(), "%.17g,%.17g\n", curve.x[i], curve.density[i]);
  }
}

void write_fbm_path(const std::string& path, const FbmGrid& grid) {
  FilePtr f = open_for_write(path);
  std::fprintf(f.get(), "u,w\n");
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    std::fprintf(f.get(), "%.17g,%.17g\n", grid.spec.node(i), grid.values[i]);
  }
}

void write_pairs(const std::string& path, const std::string& header,
                 const std::vector<std::pair<double, double>>& rows) {
  FilePtr f = open_for_write(path);
  std::fprintf(f.get(), "%s\n", header.c_str());
  for (const auto& [x, y] : rows) {
    std::fprintf(f.get(), "%.17g,%.17g\n", x, y);
  }
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return columns[i];
  }
  throw ConfigError("csv column not found: " + name);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open for reading: " + path);
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty csv: " + path);
  {
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) table.header.push_back(field);
  }
  table.columns.resize(table.header.size());
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::size_t col = 0;
    const char* p = line.c_str();
    while (true) {
      char* end = nullptr;
      const double v = std::strtod(p, &end);
      if (end == p || col >= table.columns.size()) {
        throw ConfigError("bad csv row at line " + std::to_string(line_no) + " in " + path);
      }
      table.columns[col].push_back(v);
      ++col;
      if (*end == ',') {
        p = end + 1;
      } else {
        break;
      }
    }
    if (col != table.columns.size()) {
      throw ConfigError("short csv row at line " + std::to_string(line_no) + " in " + path);
    }
  }
  return table;
}

}  // namespace cusplim
