#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "heptagrid/cli.hpp"
#include "heptagrid/grid.hpp"

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result cli(std::vector<const char*> args) {
    args.insert(args.begin(), "hepta");
    std::ostringstream out, err;
    const int code = hepta::run_cli(static_cast<int>(args.size()), args.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST_CASE("path prints the route and its length") {
    const auto r = cli({"path", "1:1", "4:1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("length: 2\n") != std::string::npos);
    CHECK(r.out.find("tiles: 1:1 0:1 4:1\n") != std::string::npos);
}

TEST_CASE("neighbors of the central tile are the roots") {
    const auto r = cli({"neighbors", "0:1"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    CHECK(line == "0:1 central centre");
    for (int g = 1; g <= 7; ++g) {
        std::getline(is, line);
        CHECK(line == std::to_string(g) + " " + std::to_string(g) + ":1 1");
    }
}

TEST_CASE("printed coordinates parse back") {
    const auto r = cli({"neighbors", "3:10010"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        std::istringstream row(line);
        int gate;
        std::string coord;
        row >> gate >> coord;
        CHECK(hepta::TileCoord::parse(coord).to_string() == coord);
        CHECK(line.find("outer") == std::string::npos);
    }
}

TEST_CASE("run reports the tile count") {
    const auto r = cli({"run", "--depth", "5", "--iterations", "168", "--lambda-radius", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("tiles: 1625\n") != std::string::npos);
    CHECK(r.out.find("time: 168\n") != std::string::npos);
}

TEST_CASE("run --format both splits csv and summary") {
    const std::string path = "cli_test_run.csv";
    const auto r = cli({"run", "--depth", "3", "--iterations", "50", "--format", "both", "--out", path.c_str()});
    REQUIRE(r.code == 0);
    std::istringstream csv(slurp(path));
    std::string line;
    std::getline(csv, line);
    std::uint64_t sent = 0;
    while (std::getline(csv, line)) {
        std::istringstream row(line);
        std::string cell;
        std::vector<std::uint64_t> v;
        for (int k = 0; k < 4 && std::getline(row, cell, ','); ++k)
            v.push_back(std::stoull(cell));
        sent += v[1] + v[2] + v[3];
    }
    CHECK(slurp(path + ".summary").find("total: " + std::to_string(sent) + "\n") != std::string::npos);
    std::remove(path.c_str());
    std::remove((path + ".summary").c_str());
}

TEST_CASE("trace lines") {
    const std::string path = "cli_test_trace.log";
    const auto r = cli({"run", "--depth", "2", "--iterations", "30", "--lambda-public", "0.2", "--trace",
                        "--trace-out", path.c_str()});
    REQUIRE(r.code == 0);
    std::istringstream is(slurp(path));
    std::string line;
    std::size_t n = 0;
    while (std::getline(is, line)) {
        CHECK(line.rfind("t=", 0) == 0);
        CHECK(line.find(" action=") != std::string::npos);
        ++n;
    }
    CHECK(n > 0);
    std::remove(path.c_str());
}

TEST_CASE("exit status") {
    CHECK(cli({"run", "--bogus"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"run", "--format", "xml"}).code == 2);
    CHECK(cli({"path", "1:11", "2:1"}).code == 1);
    CHECK(cli({"path", "9:1", "2:1"}).code == 1);
    CHECK(cli({"neighbors", "1:1000", "--depth", "1"}).code == 1);
    const auto h = cli({"--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("path") != std::string::npos);
}
