#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>

#include "weaverhard/errors.hpp"
#include "weaverhard/generate.hpp"
#include "weaverhard/io.hpp"
#include "weaverhard/reduce4.hpp"

using namespace wh;
using io::json;

TEST_CASE("instances and assignments round-trip") {
  const auto inst = gen::forced_triple_instance();
  const auto back = io::instance_from_json(json::parse(io::to_json(inst).dump()));
  CHECK(back.n_vars == inst.n_vars);
  CHECK(back.sets == inst.sets);
  const setsplit::Assignment x{{1, -1, 1}};
  CHECK(io::assignment_from_json(io::to_json(x)).values == x.values);
  const weaver::Signing s{{-1, 1}};
  CHECK(io::signing_from_json(io::to_json(s)).signs == s.signs);
}

TEST_CASE("Weaver instances round-trip dense and sparse") {
  const auto red = reduce4::reduce_quarter(setsplit::SetSplitInstance{4, {{1, 2, 3, 4}}});
  for (bool sparse : {false, true}) {
    const auto j = json::parse(io::to_json(red.instance, sparse).dump());
    CHECK(j.contains("sparse_vectors") == sparse);
    const auto back = io::weaver_from_json(j);
    CHECK(back.dim == red.instance.dim);
    CHECK(back.alpha == red.instance.alpha);
    CHECK(back.tags == red.instance.tags);
    REQUIRE(back.size() == red.instance.size());
    for (int i = 0; i < back.size(); ++i) {
      CHECK(back.vectors[i].index == red.instance.vectors[i].index);
      CHECK(back.vectors[i].value == red.instance.vectors[i].value);
    }
  }
  CHECK_FALSE(io::needs_sparse(red.instance));
}

TEST_CASE("parsers name the bad field") {
  CHECK_THROWS_WITH_AS(io::instance_from_json(json{{"sets", json::array()}}), doctest::Contains("n_vars"),
                       ArgumentError);
  CHECK_THROWS_AS(io::instance_from_json(json{{"n_vars", 4}, {"sets", {{1, 2, 3}}}}), ArgumentError);
  CHECK_THROWS_AS(io::instance_from_json(json{{"n_vars", 3}, {"sets", {{1, 2, 3, 4}}}}), ArgumentError);
  CHECK_THROWS_AS(io::assignment_from_json(json{{"values", {1, 0}}}), ArgumentError);
  CHECK_THROWS_AS(io::weaver_from_json(json{{"dim", 2}, {"alpha", 1}, {"vectors", {{1.0}}}}), ArgumentError);
  CHECK_THROWS_AS(io::weaver_from_json(json{{"dim", 2}, {"alpha", 1},
                                            {"sparse_vectors", {{{"index", {1, 0}}, {"value", {1.0, 1.0}}}}}}),
                  ArgumentError);
  CHECK_THROWS_AS(io::signing_from_json(json::array()), ArgumentError);
}

TEST_CASE("file helpers") {
  const auto dir = std::filesystem::temp_directory_path() / "weaverhard_test_io";
  std::filesystem::remove_all(dir);
  const auto path = dir / "nested" / "x.json";
  io::write_json(path, json{{"a", 1}});
  CHECK(io::read_json(path)["a"] == 1);
  io::write_text(dir / "bad.json", "{not json");
  CHECK_THROWS_AS(io::read_json(dir / "bad.json"), ArgumentError);
  CHECK_THROWS_AS(io::read_text(dir / "missing.json"), std::runtime_error);
  std::filesystem::remove_all(dir);
}
