#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ltdps/mobility.hpp"
#include "ltdps/path.hpp"

using namespace ltdps;

TEST_CASE("format_path writes ap(region) tokens") {
    const MobilePath path{{{19, 22}, {13, 15}, {8, 9}}};
    CHECK(format_path(path) == "19(22),13(15),8(9)");
}

TEST_CASE("parse_path inverts format_path") {
    const MobilePath path{{{19, 22}, {13, 15}, {8, 9}}};
    CHECK(parse_path(format_path(path)) == path);
    CHECK(parse_path(" 19 ( 22 ) , 13(15) ") ==
          MobilePath{{{19, 22}, {13, 15}}});
}

TEST_CASE("round trip holds for generated paths") {
    GridTopology grid;
    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        const MobilePath path = gen_region_path(grid, 3, 6, rng);
        CHECK(parse_path(format_path(path)) == path);
    }
}

TEST_CASE("parse_path rejects malformed lines") {
    CHECK_THROWS_AS(parse_path(""), ParseError);
    CHECK_THROWS_AS(parse_path("19"), ParseError);
    CHECK_THROWS_AS(parse_path("19(22"), ParseError);
    CHECK_THROWS_AS(parse_path("19(22),"), ParseError);
    CHECK_THROWS_AS(parse_path("19(22)13(15)"), ParseError);
    CHECK_THROWS_AS(parse_path("x(22)"), ParseError);
}

TEST_CASE("path_valid enforces consistency and adjacency") {
    GridTopology grid;
    CHECK(path_valid(MobilePath{{{19, 22}, {13, 15}, {8, 9}}}, grid));
    // AP not a corner of its region.
    CHECK_FALSE(path_valid(MobilePath{{{19, 22}, {12, 15}}}, grid));
    // Non-adjacent AP hop.
    CHECK_FALSE(path_valid(MobilePath{{{19, 22}, {7, 8}}}, grid));
    // Out-of-range ids.
    CHECK_FALSE(path_valid(MobilePath{{{40, 22}}}, grid));
    CHECK_FALSE(path_valid(MobilePath{{{19, 99}}}, grid));
    CHECK(path_valid(MobilePath{}, grid));
}

TEST_CASE("history files round trip and report bad lines") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "ltdps_path_test";
    fs::create_directories(dir);
    const std::string file = (dir / "history.txt").string();

    GridTopology grid;
    Rng rng(7);
    std::vector<MobilePath> paths;
    for (int i = 0; i < 50; ++i) paths.push_back(gen_region_path(grid, 3, 6, rng));
    save_path_history(file, paths);
    CHECK(load_path_history(file) == paths);

    append_path_history(file, paths.front());
    CHECK(load_path_history(file).size() == 51);

    {
        std::ofstream out(file, std::ios::app);
        out << "19(22),oops\n";
    }
    try {
        load_path_history(file);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        // The failing line is the 52nd.
        CHECK(std::string(e.what()).find(":52:") != std::string::npos);
    }
    fs::remove_all(dir);
}
