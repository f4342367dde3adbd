#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "wavexp/config.hpp"
#include "wavexp/io.hpp"

using namespace wavexp;

TEST_SUITE_BEGIN("io_config");

TEST_CASE("sha256 known vectors") {
  CHECK(io::sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(io::sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(io::sha256_hex(
            "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
  // 1,000,000 repetitions of 'a'
  CHECK(io::sha256_hex(std::string(1000000, 'a')) ==
        "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST_CASE("atomic write creates parents and round-trips") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "wavexp_io_test";
  fs::remove_all(dir);
  const fs::path file = dir / "a" / "b.txt";
  io::atomic_write(file, "hello\n");
  std::ifstream in(file);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(text == "hello\n");
  // overwrite
  io::atomic_write(file, "world");
  std::ifstream in2(file);
  std::string text2((std::istreambuf_iterator<char>(in2)),
                    std::istreambuf_iterator<char>());
  CHECK(text2 == "world");
  fs::remove_all(dir);
}

TEST_CASE("format_double round-trips exactly") {
  for (double x : {0.0, 1.0, -1.5, 0.1, 1e-300, 1e300, 3.141592653589793,
                   -2.2250738585072014e-308, 123456789.123456789}) {
    const std::string s = io::format_double(x);
    CHECK(std::stod(s) == x);
  }
  CHECK(io::format_double(0.5) == "0.5");
  CHECK(io::format_double(2.0) == "2");
}

TEST_CASE("csv round trip and strictness") {
  io::CsvTable t;
  t.header = {"a", "b"};
  t.rows = {{"1", "2"}, {"x", "0.5"}};
  const std::string text = t.to_string();
  const auto back = io::parse_csv(text);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);

  io::CsvTable ragged;
  ragged.header = {"a", "b"};
  ragged.rows = {{"1"}};
  CHECK_THROWS_AS(ragged.to_string(), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_csv("a,b\n1\n"), std::invalid_argument);
}

TEST_CASE("svg rendering is deterministic and tolerates empty tables") {
  io::CsvTable t;
  t.header = {"n", "k", "t", "mse"};
  t.rows = {{"1", "8", "0", "0.5"},
            {"1", "8", "5", "0.25"},
            {"2", "16", "0", "0.1"},
            {"2", "16", "5", "0.05"}};
  const std::string a = io::render_mse_svg(t);
  const std::string b = io::render_mse_svg(t);
  CHECK(a == b);
  CHECK(a.find("<svg") != std::string::npos);

  io::CsvTable empty;
  empty.header = t.header;
  const std::string e = io::render_mse_svg(empty);
  CHECK(e.find("<svg") != std::string::npos);

  io::CsvTable sup;
  sup.header = {"n", "k", "eps", "p_hat", "ci_lo", "ci_hi", "replicates",
                "seed"};
  sup.rows = {{"1", "8", "0.5", "0.2", "0.15", "0.25", "2000", "1"},
              {"2", "16", "0.5", "0.1", "0.08", "0.13", "2000", "1"}};
  CHECK(io::render_sup_prob_svg(sup).find("<svg") != std::string::npos);

  io::CsvTable mod;
  mod.header = {"n", "k", "t", "s", "lhs", "bound", "margin"};
  mod.rows = {{"1", "8", "0", "1", "0.3", "3.0", "10.0"}};
  CHECK(io::render_modulus_svg(mod).find("<svg") != std::string::npos);
}

TEST_CASE("default config parses and validates") {
  const auto cfg = parse_config(default_config_json());
  CHECK(cfg.aux_order == 3);
  CHECK(cfg.kernel == "squared_exponential");
  CHECK(cfg.schedule.size() == 4);
  CHECK(cfg.T == 10.0);
  CHECK(cfg.grid_points == 257);
  CHECK(cfg.replicates == 2000);
  CHECK(cfg.eps == std::vector<double>{0.5});
}

TEST_CASE("config rejections name the offending field") {
  CHECK_THROWS_WITH_AS(parse_config("{\"bogus_key\": 1}"),
                       doctest::Contains("bogus_key"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("not json"), std::invalid_argument);

  // matern smoothness below the fourth-moment threshold
  const std::string matern = R"({
    "model": {"kernel": "matern", "variance": 1.0, "length": 1.0, "nu": 2.0},
    "schedule": [{"n": 1, "k0": 4, "kj": 4}]
  })";
  CHECK_THROWS_WITH_AS(parse_config(matern), doctest::Contains("nu"),
                       std::invalid_argument);

  const std::string bad_alpha = R"({
    "parameters": {"alpha": 0.4},
    "schedule": [{"n": 1, "k0": 4, "kj": 4}]
  })";
  CHECK_THROWS_WITH_AS(parse_config(bad_alpha), doctest::Contains("alpha"),
                       std::invalid_argument);

  const std::string no_schedule = R"({"wavelet": {"aux_order": 3}})";
  CHECK_THROWS_WITH_AS(parse_config(no_schedule),
                       doctest::Contains("schedule"), std::invalid_argument);
}

TEST_SUITE_END();
