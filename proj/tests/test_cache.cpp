#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "cohen/cache.hpp"

using namespace cohen;
using words::parse;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/cohen_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("cache round trip preserves every pair and every result") {
  TempFile file("cache_roundtrip.json");
  auto mode = CoeffMode::mod_prime_power(3, 2);
  auto warm = make_context(3, mode);

  // populate by doing real work
  NormalForm a = collect(parse("(x1 x2 x3)^9", 3), *warm);
  for (std::uint32_t i = 0; i < warm->basis_size(); ++i)
    for (std::uint32_t j = 0; j < i; ++j) structure_constant(i, j, *warm);
  save_structure_cache(*warm, file.path);

  auto cold = make_context(3, mode);
  std::size_t loaded = load_structure_cache(*cold, file.path);
  CHECK(loaded == warm->pair_cache_snapshot().size());
  CHECK(cold->pair_cache_snapshot() == warm->pair_cache_snapshot());

  // results are bit-identical with and without the cache
  CHECK(collect(parse("(x1 x2 x3)^9", 3), *cold) == a);
  auto fresh = make_context(3, mode);
  CHECK(collect(parse("(x1 x2 x3)^9", 3), *fresh) == a);
}

TEST_CASE("mismatching headers are refused") {
  TempFile file("cache_mismatch.json");
  auto ctx = make_context(2, CoeffMode::mod_prime_power(3, 2));
  structure_constant(2, 0, *ctx);
  save_structure_cache(*ctx, file.path);

  auto other_rank = make_context(3, CoeffMode::mod_prime_power(3, 2));
  CHECK_THROWS_AS(load_structure_cache(*other_rank, file.path), cache_mismatch_error);
  auto other_mode = make_context(2, CoeffMode::mod_prime_power(5, 2));
  CHECK_THROWS_AS(load_structure_cache(*other_mode, file.path), cache_mismatch_error);
  auto other_class = make_context(2, CoeffMode::mod_prime_power(3, 2), 1);
  CHECK_THROWS_AS(load_structure_cache(*other_class, file.path), cache_mismatch_error);
}

TEST_CASE("unreadable and malformed files") {
  auto ctx = make_context(2, CoeffMode::mod_prime_power(3, 2));
  CHECK_THROWS_AS(load_structure_cache(*ctx, "/nonexistent/dir/cache.json"),
                  std::runtime_error);
  TempFile file("cache_malformed.json");
  std::ofstream(file.path) << "{\"not\": \"a cache\"}\n";
  CHECK_THROWS_AS(load_structure_cache(*ctx, file.path), cache_mismatch_error);
}

TEST_CASE("file names are context specific") {
  auto a = make_context(2, CoeffMode::mod_prime_power(3, 2));
  auto b = make_context(2, CoeffMode::integers());
  auto c = make_context(3, CoeffMode::mod_prime_power(3, 2));
  CHECK(cache_file_name(*a) != cache_file_name(*b));
  CHECK(cache_file_name(*a) != cache_file_name(*c));
}
