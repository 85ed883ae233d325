#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "csvio.hpp"
#include "cusplim.h"
#include "doctest.h"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const fs::path kScratch = "capi_scratch";

struct ScratchDir {
  ScratchDir() {
    fs::remove_all(kScratch);
    fs::create_directories(kScratch);
  }
};

ScratchDir& scratch() {
  static ScratchDir s;
  return s;
}

}  // namespace

TEST_CASE("version and error strings") {
  REQUIRE(cusplim_version() != nullptr);
  CHECK(std::strlen(cusplim_version()) > 0);
  REQUIRE(cusplim_last_error() != nullptr);
}

TEST_CASE("gamma entry points") {
  double closed = 0.0;
  REQUIRE(cusplim_gamma_sq_closed(0.25, 1.0, 1.0, &closed) == CUSPLIM_OK);
  CHECK(closed == doctest::Approx(0.51198858466049859).epsilon(1e-12));

  double quad = 0.0;
  REQUIRE(cusplim_gamma_sq_quad(0.25, 1.0, 1.0, &quad) == CUSPLIM_OK);
  CHECK(quad == doctest::Approx(closed).epsilon(1e-8));

  CHECK(cusplim_gamma_sq_closed(0.6, 1.0, 1.0, &closed) == CUSPLIM_ERR_CONFIG);
  CHECK(std::strlen(cusplim_last_error()) > 0);

  CHECK(cusplim_gamma_sq_closed(0.0, 1.0, 1.0, &closed) == CUSPLIM_ERR_CONFIG);
  CHECK(std::string(cusplim_last_error()).find("degenerate") != std::string::npos);

  CHECK(cusplim_gamma_sq_closed(0.25, 1.0, 1.0, nullptr) == CUSPLIM_ERR_CONFIG);
}

TEST_CASE("argmax tail law entry point") {
  double p = 0.0;
  REQUIRE(cusplim_brownian_argmax_tail(1.0, &p) == CUSPLIM_OK);
  CHECK(p == doctest::Approx(0.60229217516929357).epsilon(1e-9));
  CHECK(cusplim_brownian_argmax_tail(-1.0, &p) == CUSPLIM_ERR_CONFIG);
}

TEST_CASE("fbm sampler lifecycle") {
  cusplim_fbm_sampler* sampler = nullptr;
  REQUIRE(cusplim_fbm_sampler_create(0.7, 16, 1.0, &sampler) == CUSPLIM_OK);
  REQUIRE(sampler != nullptr);
  REQUIRE(cusplim_fbm_node_count(sampler) == 33);

  std::vector<double> a(33), b(33), c(33);
  REQUIRE(cusplim_fbm_sample(sampler, 9, 0, a.data()) == CUSPLIM_OK);
  REQUIRE(cusplim_fbm_sample(sampler, 9, 0, b.data()) == CUSPLIM_OK);
  REQUIRE(cusplim_fbm_sample(sampler, 9, 1, c.data()) == CUSPLIM_OK);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(a[16] == 0.0);
  cusplim_fbm_sampler_destroy(sampler);

  cusplim_fbm_sampler* bad = nullptr;
  CHECK(cusplim_fbm_sampler_create(1.5, 16, 1.0, &bad) == CUSPLIM_ERR_CONFIG);
  CHECK(bad == nullptr);
  CHECK(cusplim_fbm_node_count(nullptr) == 0);
  CHECK(cusplim_fbm_sample(nullptr, 0, 0, a.data()) == CUSPLIM_ERR_CONFIG);
  cusplim_fbm_sampler_destroy(nullptr);
}

TEST_CASE("fbm path csv") {
  scratch();
  const fs::path path = kScratch / "fbm.csv";
  REQUIRE(cusplim_fbm_write_csv(0.7, 16, 1.0, 9, 0, 0, path.string().c_str()) == CUSPLIM_OK);
  const cusplim::CsvTable t = cusplim::read_csv(path.string());
  REQUIRE(t.header.size() == 2);
  CHECK(t.header[0] == "u");
  CHECK(t.header[1] == "w");
  REQUIRE(t.rows() == 33);
  CHECK(t.column("u").front() == -1.0);
  CHECK(t.column("u").back() == 1.0);
  CHECK(t.column("w")[16] == 0.0);

  // oracle variant also writes, and differs from the circulant draw
  const fs::path oracle = kScratch / "fbm_oracle.csv";
  REQUIRE(cusplim_fbm_write_csv(0.7, 16, 1.0, 9, 0, 1, oracle.string().c_str()) == CUSPLIM_OK);
  CHECK(slurp(path) != slurp(oracle));
}

TEST_CASE("limits run writes deterministic files") {
  scratch();
  const fs::path dir1 = kScratch / "limits1";
  const fs::path dir2 = kScratch / "limits2";

  cusplim_limits_summary s1{};
  REQUIRE(cusplim_limits_run(0.9, 256, 30.0, 200, 5, 1, dir1.string().c_str(), 1, 0, &s1) ==
          CUSPLIM_OK);
  CHECK(s1.hurst == 0.9);
  CHECK(s1.n_reps == 200);
  CHECK(s1.m == 256);
  CHECK(s1.var_zeta > 0.0);
  CHECK(s1.var_xi > s1.var_zeta);

  cusplim_limits_summary s2{};
  REQUIRE(cusplim_limits_run(0.9, 256, 30.0, 200, 5, 2, dir2.string().c_str(), 1, 0, &s2) ==
          CUSPLIM_OK);
  CHECK(slurp(dir1 / "summary.csv") == slurp(dir2 / "summary.csv"));
  CHECK(slurp(dir1 / "raw.csv") == slurp(dir2 / "raw.csv"));

  const cusplim::CsvTable raw = cusplim::read_csv((dir1 / "raw.csv").string());
  REQUIRE(raw.header.size() == 3);
  CHECK(raw.header[0] == "replicate");
  CHECK(raw.header[1] == "zeta_hat");
  CHECK(raw.header[2] == "xi_hat");
  CHECK(raw.rows() == 200);

  double ks = 1.0;
  REQUIRE(cusplim_ks_csv((dir1 / "raw.csv").string().c_str(), "zeta_hat",
                         (dir2 / "raw.csv").string().c_str(), "zeta_hat", &ks) == CUSPLIM_OK);
  CHECK(ks == 0.0);
}

TEST_CASE("table run aggregates rows and reports per-row status") {
  scratch();
  const fs::path dir = kScratch / "table";
  const double hursts[2] = {0.6, 0.9};
  cusplim_limits_summary rows[2];
  int status[2] = {-1, -1};
  REQUIRE(cusplim_table_run(hursts, 2, 128, 20.0, 120, 11, 1, dir.string().c_str(), 0, 0, rows,
                            status) == CUSPLIM_OK);
  CHECK(status[0] == CUSPLIM_OK);
  CHECK(status[1] == CUSPLIM_OK);
  CHECK(rows[0].hurst == 0.6);
  CHECK(rows[1].hurst == 0.9);

  const cusplim::CsvTable table = cusplim::read_csv((dir / "table.csv").string());
  REQUIRE(table.rows() == 2);
  CHECK(table.column("H")[0] == 0.6);
  CHECK(table.column("H")[1] == 0.9);
  CHECK(table.column("var_zeta")[0] > table.column("var_zeta")[1]);

  const cusplim::CsvTable fig1b = cusplim::read_csv((dir / "fig1b.csv").string());
  REQUIRE(fig1b.rows() == 2);
  CHECK(fig1b.column("var_ratio")[0] > 1.0);

  // an invalid hurst poisons only its own row
  const double mixed[2] = {0.7, 1.7};
  int mixed_status[2] = {-1, -1};
  CHECK(cusplim_table_run(mixed, 2, 128, 20.0, 120, 11, 1, (kScratch / "table_mixed").string().c_str(),
                          0, 0, nullptr, mixed_status) == CUSPLIM_ERR_NUMERIC);
  CHECK(mixed_status[0] == CUSPLIM_OK);
  CHECK(mixed_status[1] == CUSPLIM_ERR_CONFIG);
  const cusplim::CsvTable mixed_table =
      cusplim::read_csv((kScratch / "table_mixed" / "table.csv").string());
  CHECK(mixed_table.rows() == 1);
}

TEST_CASE("model run end to end") {
  scratch();
  const fs::path dir = kScratch / "model";
  cusplim_model_config cfg{};
  cfg.alpha = 0.25;
  cfg.a = 1.0;
  cfg.b = 1.0;
  cfg.theta_true = 1.0;
  cfg.theta_lo = 0.5;
  cfg.theta_hi = 1.5;
  cfg.t_obs = 2.0;
  cfg.eps = 0.1;
  cfg.n_t = 1024;
  cfg.n_u = 128;

  cusplim_model_summary s{};
  REQUIRE(cusplim_model_run(&cfg, 50, 21, 1, dir.string().c_str(), &s) == CUSPLIM_OK);
  CHECK(s.hurst == 0.75);
  CHECK(s.n_reps == 50);
  CHECK(s.phi_eps > 0.0);
  CHECK(s.var_mle > 0.0);

  const cusplim::CsvTable raw = cusplim::read_csv((dir / "raw.csv").string());
  REQUIRE(raw.header.size() == 5);
  CHECK(raw.header[1] == "mle");
  CHECK(raw.header[4] == "normalized_pitman");
  CHECK(raw.rows() == 50);

  cfg.theta_true = 0.2;
  CHECK(cusplim_model_run(&cfg, 50, 21, 1, nullptr, &s) == CUSPLIM_ERR_CONFIG);
  CHECK(std::string(cusplim_last_error()).find("theta_true") != std::string::npos);

  CHECK(cusplim_model_run(nullptr, 50, 21, 1, nullptr, &s) == CUSPLIM_ERR_CONFIG);
}
