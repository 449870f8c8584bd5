#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "dataset.hpp"
#include "error.hpp"

using namespace amsvrg;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("amsvrg_ds_" + name);
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

}  // namespace

TEST_CASE("parse a line") {
  const auto ex = parse_libsvm_line("1 3:0.5 7:1.25");
  CHECK(ex.label == 1.0);
  REQUIRE(ex.features.size() == 2);
  CHECK(ex.features[0] == Feature{2, 0.5});
  CHECK(ex.features[1] == Feature{6, 1.25});

  const auto empty = parse_libsvm_line("-1 ");
  CHECK(empty.label == -1.0);
  CHECK(empty.features.empty());

  CHECK(parse_libsvm_line("2 1:3 # trailing comment 9:9").features.size() == 1);
  CHECK(parse_libsvm_line("+1\t2:1e-3").features[0].value == 1e-3);
}

TEST_CASE("line errors") {
  CHECK_THROWS_AS(parse_libsvm_line("2 5:1 2:1"), ValidationError);
  CHECK_THROWS_AS(parse_libsvm_line("2 5:1 5:2"), ValidationError);
  CHECK_THROWS_AS(parse_libsvm_line("x 1:1"), ParseError);
  CHECK_THROWS_AS(parse_libsvm_line("1 0:1"), ParseError);
  CHECK_THROWS_AS(parse_libsvm_line("1 3"), ParseError);
  CHECK_THROWS_AS(parse_libsvm_line("1 3:abc"), ParseError);
  CHECK_THROWS_AS(parse_libsvm_line("1 3:inf"), ParseError);
  try {
    parse_libsvm_line("1 2:x", 17);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("17") != std::string::npos);
  }
}

TEST_CASE("load counts rows and dim") {
  const auto path = temp_file("three.svm", "1 1:1 10:2\n\n-1 3:1\n1 2:0.5\n");
  const Dataset ds = load_libsvm(path);
  CHECK(ds.size() == 3);
  CHECK(ds.dim() == 10);
  CHECK(ds.class_labels() == std::vector<double>{-1.0, 1.0});

  LoadOptions wide;
  wide.min_dim = 15;
  CHECK(load_libsvm(path, wide).dim() == 15);
  std::filesystem::remove(path);
}

TEST_CASE("binary label mapping") {
  LoadOptions opts;
  opts.binary_label_map = LabelMap{{0.0, -1.0}, {1.0, 1.0}};
  const Dataset ds = parse_libsvm("0 1:1\n1 1:2\n0 2:1\n", opts);
  CHECK(ds.class_labels() == std::vector<double>{-1.0, 1.0});
  CHECK(ds[0].label == -1.0);
  CHECK(ds[1].label == 1.0);

  CHECK(binary_label_map_for({0.0, 1.0}) == LabelMap{{0.0, -1.0}, {1.0, 1.0}});
  CHECK_THROWS_AS(binary_label_map_for({1.0, 2.0, 3.0}), ValidationError);
  CHECK_THROWS_AS(parse_libsvm("1 1:1\n2 1:1\n3 1:1\n", opts), ValidationError);
}

TEST_CASE("load errors") {
  CHECK_THROWS_AS(parse_libsvm(""), ValidationError);
  CHECK_THROWS_AS(parse_libsvm("\n# only a comment\n"), ValidationError);
  CHECK_THROWS_AS(load_libsvm("/nonexistent/dir/file.svm"), IoError);
  try {
    parse_libsvm("1 1:1\n1 2:oops\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
}

TEST_CASE("text round trip") {
  const Dataset ds = parse_libsvm("1 1:0.1 4:-2.5e-7\n-1\n2 2:3.141592653589793 3:1e300\n");
  CHECK(parse_libsvm(to_libsvm_text(ds)) == ds);
  const auto path = std::filesystem::temp_directory_path() / "amsvrg_ds_roundtrip.svm";
  write_libsvm(ds, path);
  CHECK(load_libsvm(path) == ds);
  std::filesystem::remove(path);
}

TEST_CASE("feature scaling") {
  const Dataset ds = parse_libsvm("1 1:3 2:4\n1\n-1 3:2\n");
  CHECK(scale_features(ds, ScaleMode::none) == ds);
  const Dataset unit = scale_features(ds, ScaleMode::unit_row_norm);
  CHECK(unit[0].features[0].value == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(unit[0].features[1].value == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(unit[1].features.empty());
  for (const auto& ex : unit.examples()) {
    if (!ex.features.empty()) CHECK(std::abs(std::sqrt(ex.squared_norm()) - 1.0) <= 1e-12);
  }
  CHECK(parse_scale_mode("unit_row_norm") == ScaleMode::unit_row_norm);
  CHECK_THROWS_AS(parse_scale_mode("zscore"), InvalidArgument);
}

TEST_CASE("dataset invariants") {
  CHECK_THROWS_AS(Dataset({}, 3), ValidationError);
  std::vector<SparseExample> rows(1);
  rows[0].features.push_back({4, 1.0});
  CHECK_THROWS_AS(Dataset(rows, 4), ValidationError);
  const Dataset ok(rows, 5);
  CHECK(ok.max_squared_row_norm() == 1.0);
}
