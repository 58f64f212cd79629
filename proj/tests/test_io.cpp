#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include "qtau/io.hpp"
#include "support.hpp"

using namespace qtau;

static const TruncationBudget b{};

TEST_CASE("format_double: shortest round-trip strings") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(0.5) == "0.5");
  for (double v : {1.0 / 3.0, 1e-13, 2.2250738585072014e-308, 0.1 + 0.2,
                   123456.789, -0.25}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("sample_scaled_density: grid, breakpoint pairs, ordering") {
  QParam qp(0.5);
  const double L = qp.log_inv_q();
  const double x_max = 3.0 * L;
  const ConvPowerTable t(build_mu(qp, b), piece_index(x_max, qp));
  const auto rows = sample_scaled_density(qp, t, x_max, 101);

  // first row is the origin with the exact intercept
  CHECK(rows.front().x == 0.0);
  CHECK(rows.front().value == 1.0);
  CHECK(rows.front().piece == 0);

  // sorted by (x, piece)
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const bool ordered = rows[i - 1].x < rows[i].x ||
                         (rows[i - 1].x == rows[i].x &&
                          rows[i - 1].piece < rows[i].piece);
    CHECK(ordered);
  }

  // each interior breakpoint appears exactly twice, as pieces n-1 / n,
  // with equal values
  for (std::size_t n = 1; n <= 3; ++n) {
    const double xb = static_cast<double>(n) * L;
    std::vector<const DensitySample*> at;
    for (const auto& r : rows) {
      if (r.x == xb) at.push_back(&r);
    }
    REQUIRE(at.size() == 2);
    CHECK(at[0]->piece == n - 1);
    CHECK(at[1]->piece == n);
    CHECK(at[0]->value == at[1]->value);
  }

  CHECK_THROWS_AS(sample_scaled_density(qp, t, x_max, 1), std::domain_error);
  CHECK_THROWS_AS(sample_scaled_density(qp, t, -1.0, 10), std::domain_error);
}

TEST_CASE("density_csv round-trips through text exactly") {
  QParam qp(0.9);
  const double x_max = 3.0 * qp.log_inv_q();
  const ConvPowerTable t(build_mu(qp, b), piece_index(x_max, qp));
  const auto rows = sample_scaled_density(qp, t, x_max, 50);
  const std::string csv = density_csv(rows);

  const auto parsed = testsupport::parse_csv(csv);
  REQUIRE(parsed.size() == rows.size() + 1);
  CHECK(parsed[0] == std::vector<std::string>{"x", "tau_scaled", "piece_index"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& rec = parsed[i + 1];
    REQUIRE(rec.size() == 3);
    const double x = std::strtod(rec[0].c_str(), nullptr);
    const double v = std::strtod(rec[1].c_str(), nullptr);
    const auto piece = static_cast<std::size_t>(std::atoll(rec[2].c_str()));
    CHECK(x == rows[i].x);
    CHECK(v == rows[i].value);
    CHECK(piece == rows[i].piece);
    // and the value re-evaluates from (x, piece) to the same double
    CHECK(v == tau_scaled_on_piece(x, piece, qp, t));
  }
}

TEST_CASE("density_svg: deterministic, vertices in data coordinates") {
  QParam qp(0.5);
  const double x_max = 3.0 * qp.log_inv_q();
  const ConvPowerTable t(build_mu(qp, b), piece_index(x_max, qp));
  const auto rows = sample_scaled_density(qp, t, x_max, 87);

  const std::string svg1 = density_svg(qp, rows, x_max);
  const std::string svg2 = density_svg(qp, rows, x_max);
  CHECK(svg1 == svg2);
  CHECK(svg1.find("<svg") != std::string::npos);
  CHECK(svg1.find("<polyline") != std::string::npos);
  CHECK(svg1.find("vector-effect=\"non-scaling-stroke\"") != std::string::npos);

  const auto pts = testsupport::parse_svg_polyline(svg1);
  REQUIRE(!pts.empty());
  // intercept is exactly 1
  CHECK(pts.front().first == 0.0);
  CHECK(pts.front().second == 1.0);

  // every vertex is one of the sampled (x, value) pairs, bit for bit
  std::size_t ri = 0;
  for (const auto& [x, y] : pts) {
    // advance over duplicate-x rows collapsed in the polyline
    while (ri < rows.size() && (rows[ri].x != x || rows[ri].value != y)) ++ri;
    REQUIRE(ri < rows.size());
  }

  CHECK_THROWS_AS(density_svg(qp, {}, x_max), std::domain_error);
}

TEST_CASE("write_file reports failures as IoError") {
  CHECK_THROWS_AS(write_file("/nonexistent-dir/x/y.txt", "data"), IoError);
  const std::string path = "/tmp/qtau_io_test.txt";
  write_file(path, "payload");
  FILE* f = std::fopen(path.c_str(), "rb");
  REQUIRE(f != nullptr);
  char buf[32] = {};
  const std::size_t got = std::fread(buf, 1, sizeof buf, f);
  std::fclose(f);
  std::remove(path.c_str());
  CHECK(std::string(buf, got) == "payload");
}
