#include <bit>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "greedy_energy/asymptotics.hpp"
#include "greedy_energy/io.hpp"

namespace {

namespace io = greedy::io;
using greedy::Lambda;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "greedy_energy_io_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

TEST(FormatDouble, RoundTrips) {
  for (double x : {0.1, 1.0 / 3, -2.5e-300, 6.02214076e23, 4.0 / std::numbers::pi}) {
    EXPECT_EQ(std::strtod(io::format_double(x).c_str(), nullptr), x);
  }
}

TEST(Csv, RoundTrip) {
  const auto t = io::exact_sequence_table(Lambda(0.5), 40);
  std::stringstream ss;
  io::write_csv(ss, t);
  const auto back = io::read_csv(ss);
  ASSERT_EQ(back.columns, t.columns);
  ASSERT_EQ(back.rows.size(), t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      if (t.columns[c] == "turn") EXPECT_EQ(std::get<std::string>(back.rows[r][c]), std::get<std::string>(t.rows[r][c]));
      else EXPECT_EQ(io::as_double(back.rows[r][c]), io::as_double(t.rows[r][c]));
    }
  }
}

TEST(Csv, RejectsRaggedAndEmpty) {
  std::stringstream ragged("a,b\n1,2\n3\n");
  EXPECT_THROW(io::read_csv(ragged), std::runtime_error);
  std::stringstream empty;
  EXPECT_THROW(io::read_csv(empty), std::runtime_error);
  EXPECT_THROW(io::as_double(io::Cell(std::string("1/2"))), std::runtime_error);
}

TEST(ExactTable, Columns) {
  const auto t = io::exact_sequence_table(Lambda(1.0), 8);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"index", "x0", "x1", "turn", "potential", "energy"}));
  EXPECT_EQ(std::get<std::string>(t.rows[6][io::column(t, "turn")]), "3/8");
  EXPECT_EQ(io::as_double(t.rows[0][io::column(t, "energy")]), 0.0);
  EXPECT_NEAR(io::as_double(t.rows[1][io::column(t, "energy")]), 4.0, 1e-15);
  EXPECT_NEAR(io::as_double(t.rows[1][io::column(t, "potential")]), 2.0, 1e-15);
  EXPECT_THROW(io::column(t, "nope"), std::out_of_range);
}

TEST(NumericTable, ColumnsAndCumulativeEnergy) {
  const Lambda lambda(1.0);
  const auto pts = greedy::generate(greedy::GreedyConfig(2, lambda, 6));
  const auto t = io::numeric_sequence_table(pts, lambda);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"index", "x0", "x1", "x2", "potential", "energy"}));
  EXPECT_NEAR(io::as_double(t.rows[5][io::column(t, "energy")]), greedy::energy(pts, lambda), 1e-12);
}

TEST(SecondOrderTable, Columns) {
  const auto t = io::second_order_table(greedy::second_order_series(Lambda(1.5), 20));
  EXPECT_EQ(t.columns, (std::vector<std::string>{"N", "H_minus", "H_normalized", "U_minus"}));
  EXPECT_EQ(t.rows.size(), 19u);
}

TEST(Json, Shape) {
  const auto t = io::second_order_table(greedy::second_order_series(Lambda(0.5), 5));
  const auto j = nlohmann::json::parse(io::render(t, io::Format::json));
  EXPECT_EQ(j["columns"][0], "N");
  ASSERT_EQ(j["rows"].size(), 4u);
  EXPECT_TRUE(j["rows"][0][0].is_number_unsigned());
  EXPECT_TRUE(j["rows"][0][1].is_number_float());
}

TEST(Sha256, KnownVector) {
  EXPECT_EQ(io::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Manifest, DeterministicAndMatchesBytes) {
  const auto t = io::exact_sequence_table(Lambda(0.7), 33);
  io::RunManifest m;
  m.command = "generate";
  m.parameters = {{"lambda", 0.7}, {"n", 33}};
  m.version = "test";
  std::string first;
  for (int run = 0; run < 2; ++run) {
    const auto path = scratch("seq.csv").string();
    const auto out = io::write_with_manifest(path, t, io::Format::csv, m);
    const auto body = slurp(path);
    EXPECT_EQ(out.checksum, io::sha256_hex(body));
    const auto side = nlohmann::json::parse(slurp(path + ".manifest.json"));
    EXPECT_EQ(side["sha256"], out.checksum);
    EXPECT_EQ(side["command"], "generate");
    EXPECT_EQ(side["parameters"]["n"], 33);
    EXPECT_EQ(side["output"], path);
    const auto all = slurp(path) + slurp(path + ".manifest.json");
    if (run == 0) first = all;
    else EXPECT_EQ(all, first);
  }
}

TEST(SecondOrderTable, LambdaOneRange) {
  // The lower envelope creeps up to -pi/(9 log 2) like 1/log N, so small N sit
  // well below it; check the upper edge and that each octave's minimum rises.
  const auto t = io::second_order_table(greedy::second_order_series(Lambda(1.0), 1 << 15));
  const auto n_col = io::column(t, "N");
  const auto col = io::column(t, "H_normalized");
  std::vector<double> octave_min(16, 0.0);
  for (const auto& row : t.rows) {
    const double v = io::as_double(row[col]);
    EXPECT_LE(v, 0.05);
    const auto k = std::bit_width(static_cast<std::uint64_t>(io::as_double(row[n_col]))) - 1;
    octave_min[k] = std::min(octave_min[k], v);
  }
  const double liminf = -std::numbers::pi / (9 * std::numbers::ln2);
  for (int k = 2; k < 15; ++k) {
    EXPECT_GT(octave_min[k], octave_min[k - 1]) << k;
    EXPECT_LT(octave_min[k], liminf) << k;
  }
}

TEST(SecondOrderTable, OneToTwoRange) {
  const Lambda lambda(1.5);
  const double s = greedy::s_lambda(lambda, 1e-10).value;
  const auto t = io::second_order_table(greedy::second_order_series(lambda, 4000));
  const auto col = io::column(t, "H_minus");
  for (const auto& row : t.rows) {
    const double v = io::as_double(row[col]);
    EXPECT_GE(v, s - 1e-6);
    EXPECT_LE(v, 0.0);
  }
}

TEST(Json, RoundTripsSeriesValues) {
  const auto t = io::second_order_table(greedy::second_order_series(Lambda(0.3), 500));
  const auto j = nlohmann::json::parse(io::render(t, io::Format::json));
  ASSERT_EQ(j["rows"].size(), t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      const double want = io::as_double(t.rows[r][c]);
      EXPECT_NEAR(j["rows"][r][c].get<double>(), want, 1e-12 * (1 + std::abs(want)));
    }
  }
}

}  // namespace
