#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "rbn/io.hpp"

using namespace rbn;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("rbnlab_test_" + name);
}

}  // namespace

TEST_CASE("fixture file is NET_T2") {
  CHECK(load_network(RBN_TEST_DATA "/net_t2.json") == test::net_t2());
  CHECK(slurp(RBN_TEST_DATA "/net_t2.json") == write_network(test::net_t2()));
}

TEST_CASE("save load save is byte identical") {
  RandomStream rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng.uniform_below(12);
    const Network net = generate_network(n, rng.uniform_below(std::min<std::size_t>(n, 5) + 1),
                                         4, rng, {TranslationMode::uniform});
    const auto a = temp_file("a.json");
    const auto b = temp_file("b.json");
    save_network(a, net);
    const Network loaded = load_network(a);
    CHECK(loaded == net);
    save_network(b, loaded);
    CHECK(slurp(a) == slurp(b));
    std::filesystem::remove(a);
    std::filesystem::remove(b);
  }
}

TEST_CASE("malformed network documents") {
  const std::string good = write_network(test::net_t2());
  CHECK_THROWS_AS(read_network("{"), FormatError);
  CHECK_THROWS_AS(read_network("[]"), FormatError);

  auto mutate = [&](auto&& edit) {
    Json doc = Json::parse(good);
    edit(doc);
    return doc.dump();
  };
  CHECK_THROWS_AS(read_network(mutate([](Json& d) { d.erase("tables"); })), FormatError);
  CHECK_THROWS_AS(read_network(mutate([](Json& d) { d["version"] = 99; })), FormatError);
  CHECK_THROWS_AS(read_network(mutate([](Json& d) { d["tables"][0] = "10x1"; })), FormatError);
  CHECK_THROWS_AS(read_network(mutate([](Json& d) { d["tables"][0] = "101"; })), FormatError);
  CHECK_THROWS_AS(read_network(mutate([](Json& d) { d["inputs"][0][1] = 5; })), FormatError);
  CHECK_THROWS_AS(read_network(mutate([](Json& d) { d["q"][1] = 2; })), FormatError);
  CHECK_THROWS_AS(read_network(mutate([](Json& d) { d["n"] = "two"; })), FormatError);
  CHECK_THROWS_AS(load_network(temp_file("does_not_exist.json")), FormatError);
}

TEST_CASE("report documents") {
  const Network net = test::net_t2();
  const Json doc = attractors_to_json(net, Scheme::dgarbn, enumerate_attractors(net, Scheme::dgarbn));
  CHECK(doc.at("scheme") == "DGARBN");
  CHECK(doc.at("phase_modulus") == 2);
  CHECK(doc.at("count") == 3);
  const Json& cycle = doc.at("attractors").at(1);
  CHECK(cycle.at("kind") == "cycle");
  CHECK(cycle.at("period") == 4);
  CHECK(cycle.at("states").at(0).at("state") == "00");
  CHECK(cycle.at("states").at(0).at("phase") == 1);
}
