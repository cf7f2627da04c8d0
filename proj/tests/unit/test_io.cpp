#include <catch2/catch_amalgamated.hpp>

#include "unit/scenes.hpp"

#include "flatchain/io.hpp"

#include <filesystem>
#include <fstream>
#include <random>

using namespace flatchain;
using flatchain::io::json;
using scenes::pt;

TEST_CASE("group tags", "[io]") {
    for (const Group& g : {Group::integers(), Group::reals(), Group::cyclic(2), Group::cyclic(7)})
        CHECK(io::group_from_json(io::group_to_json(g)) == g);
    CHECK(io::group_to_json(Group::integers()) == "Z");
    CHECK(io::group_to_json(Group::cyclic(3)) == json{{"Zmod", 3}});
    CHECK(io::group_from_json("Z_5") == Group::cyclic(5));
    CHECK_THROWS(io::group_from_json("Q"));
    CHECK_THROWS(io::group_from_json(json{{"Zmod", 1}}));
}

TEST_CASE("scene round trip keeps indices", "[io]") {
    const auto k = iterated_subdivision(scenes::grid(2, 1, 0.5), 1);
    const auto back = io::scene_from_json(io::scene_to_json(*k));
    REQUIRE(back->num_vertices() == k->num_vertices());
    for (int d = 0; d <= 2; ++d) {
        REQUIRE(back->count(d) == k->count(d));
        for (std::size_t i = 0; i < k->count(d); ++i)
            CHECK(back->simplex(d, static_cast<int>(i)).vertices == k->simplex(d, static_cast<int>(i)).vertices);
    }
    for (std::size_t v = 0; v < k->num_vertices(); ++v)
        CHECK(back->vertex(static_cast<int>(v)) == k->vertex(static_cast<int>(v)));
}

TEST_CASE("scene errors", "[io]") {
    CHECK_THROWS(io::scene_from_json(json{{"n", 2}, {"vertices", {{0, 0, 0}}}, {"simplices", json::object()}}));
    CHECK_THROWS(io::scene_from_json(
        json{{"n", 2}, {"vertices", {{0, 0}, {1, 0}}}, {"simplices", {{"1", {{0, 1, 1}}}}}}));
    CHECK_THROWS(
        io::scene_from_json(json{{"n", 2}, {"vertices", {{0, 0}, {1, 0}}}, {"simplices", {{"x", {{0, 1}}}}}}));
}

TEST_CASE("chain round trip", "[io]") {
    std::mt19937_64 rng(5);
    const auto k = scenes::grid(2, 2, 0.5);
    for (const Group& g : {Group::integers(), Group::reals(), Group::cyclic(3)}) {
        const Chain p = scenes::random_chain(k, 1, g, rng);
        CHECK(io::chain_from_json(io::chain_to_json(p), k) == p);
        const Chain q = io::chain_from_json(io::chain_to_json(p, true), nullptr);
        CHECK(q.group() == g);
        CHECK(mass(q) == mass(p));
    }
    const json missing = io::chain_to_json(Chain(k, 1, Group::integers()));
    CHECK_THROWS(io::chain_from_json(missing, nullptr));
    json bad = missing;
    bad["coeffs"] = {{999, 1}};
    CHECK_THROWS_AS(io::chain_from_json(bad, k), std::out_of_range);
}

TEST_CASE("varifold round trip", "[io]") {
    const Chain p = Chain::fundamental(scenes::unit_square(), 2, Group::reals());
    const auto v = var_of_chain(boundary(p), 2);
    const auto back = io::varifold_from_json(io::varifold_to_json(v));
    REQUIRE(back.size() == v.size());
    const auto dict = TestDictionary::standard(2, 1);
    CHECK(var_weak_distance(v, back, dict) <= 1e-14);
    const auto empty = io::varifold_from_json(io::varifold_to_json(Varifold(3, 2)));
    CHECK(empty.ambient_dim() == 3);
    CHECK(empty.plane_dim() == 2);
}

TEST_CASE("results serialize NaN as null", "[io]") {
    SolverReport r;
    r.lower_bound = std::numeric_limits<double>::quiet_NaN();
    CHECK(io::solver_report_to_json(r)["lower_bound"].is_null());
    const auto k = scenes::unit_square();
    const auto res = flat_norm(boundary(Chain::fundamental(k, 2, Group::cyclic(2))));
    const json j = io::flat_result_to_json(res);
    CHECK(j["value"] == 1.0);
    CHECK(j.contains("Q"));
    CHECK(j.contains("R"));
}

TEST_CASE("run configuration", "[io]") {
    CHECK(io::parse_m_range("2..7") == std::pair{2, 7});
    CHECK(io::parse_m_range("4") == std::pair{4, 4});
    CHECK_THROWS(io::parse_m_range("2..x"));
    CHECK_THROWS(io::parse_m_range(""));

    RunConfig c;
    c.scenario = "polygonal_square";
    c.m_first = 3;
    c.m_last = 5;
    c.depth = 4;
    c.dictionary = "tents";
    const RunConfig back = io::config_from_json(io::config_to_json(c));
    CHECK(back.scenario == c.scenario);
    CHECK(back.m_first == 3);
    CHECK(back.m_last == 5);
    CHECK(back.depth == 4);
    CHECK(back.dictionary == "tents");

    CHECK(io::config_from_json(json{{"m", json::array({3, 4})}}).m_last == 4);
    CHECK(io::config_from_json(json{{"m", 6}}).m_first == 6);
    CHECK(io::config_from_json(json{{"out", "x.csv"}}).scenario == "annulus");
    CHECK_THROWS(io::config_from_json(json{{"colour", "red"}}));
    CHECK_THROWS(io::config_from_json(json{{"m", true}}));
    CHECK_THROWS(io::config_from_json(json::array()));
}

TEST_CASE("file helpers", "[io]") {
    const auto dir = std::filesystem::temp_directory_path() / "flatchain_io_test";
    std::filesystem::create_directories(dir);
    io::write_text(dir / "a.json", "{\"x\": 1}\n");
    CHECK(io::read_json(dir / "a.json")["x"] == 1);
    io::write_text(dir / "b.json", "{not json");
    CHECK_THROWS_AS(io::read_json(dir / "b.json"), std::runtime_error);
    CHECK_THROWS_AS(io::read_json(dir / "missing.json"), std::runtime_error);
    std::filesystem::remove_all(dir);

    const auto scene = io::scene_from_json(io::read_json(FLATCHAIN_TEST_DATA "/square.json"));
    CHECK(scene->count(2) == 2);
    const auto t = io::chain_from_json(io::read_json(FLATCHAIN_TEST_DATA "/square_boundary_z2.json"), scene);
    CHECK(mass(t) == 4.0);
}
