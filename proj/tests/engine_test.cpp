#include "doctest.h"

#include <map>
#include <sstream>
#include <stdexcept>

#include "heptagrid/engine.hpp"
#include "oracles.hpp"

using namespace hepta;

namespace {

SimConfig quiet(int depth) {
    SimConfig c;
    c.depth = depth;
    c.lambda_public = c.lambda_border = c.lambda_reply = c.lambda_write = 0.0;
    return c;
}

std::string csv_of(const SimConfig& c) {
    std::ostringstream os;
    write_csv(os, execute(c));
    return os.str();
}

} // namespace

TEST_CASE("poisson_draw") {
    KeyedStream zero(1, 2, 3, Purpose::free);
    for (int i = 0; i < 1000; ++i)
        CHECK(poisson_draw(zero, 0.0) == 0);

    KeyedStream s(1, 0, 0, Purpose::free);
    double sum = 0;
    const int n = 200000;
    std::size_t positive = 0;
    for (int i = 0; i < n; ++i)
        sum += poisson_draw(s, 5.0);
    CHECK(sum / n == doctest::Approx(5.0).epsilon(0.01));
    for (int i = 0; i < n; ++i)
        positive += poisson_draw(s, 0.005) > 0;
    CHECK(static_cast<double>(positive) / n == doctest::Approx(0.004988).epsilon(0.15));
}

TEST_CASE("keyed streams depend on the key only") {
    KeyedStream a(7, 10, 4, Purpose::write), b(7, 10, 4, Purpose::write), c(7, 10, 5, Purpose::write);
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
    KeyedStream r(3, 3, 3, Purpose::write_target);
    for (int i = 0; i < 1000; ++i) {
        const auto v = r.next_range(7);
        CHECK((v >= 1 && v <= 7));
    }
}

TEST_CASE("config validation") {
    SimConfig c;
    c.lambda_reply = -1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.depth = 13;
    CHECK_THROWS_AS(Simulation{c}, std::invalid_argument);
}

TEST_CASE("a quiet space stays empty") {
    const RunReport r = execute(quiet(3));
    REQUIRE(r.snapshots.size() == 169);
    for (const auto& s : r.snapshots) {
        CHECK(s.in_flight == 0);
        CHECK(s.max_per_tile == 0);
        CHECK(s.argmax == TileCoord::central());
    }
    SimConfig none = quiet(2);
    none.iterations = 0;
    CHECK(execute(none).snapshots.size() == 1);
}

TEST_CASE("parity of public messages and erasing delays") {
    Simulation sim(quiet(4));
    const TileIndex c = Space::central_index();
    const auto id = sim.inject_public(c, 2);
    // even time: the unsent message is only carried over
    sim.step();
    REQUIRE(sim.stack(c).size() == 1);
    CHECK(sim.stack(c)[0].id == id);
    CHECK(sim.stack(c)[0].fresh_public());
    // odd time: sent to the seven roots, the eraser stays
    sim.step();
    REQUIRE(sim.stack(c).size() == 1);
    CHECK(sim.stack(c)[0].kind == MessageKind::erasing);
    CHECK(sim.stack(c)[0].wait == 2);
    for (int s = 1; s <= 7; ++s)
        CHECK(sim.stack(sim.space().index_of(s, 1)).size() == 1);
    const auto before = sim.stack(sim.space().index_of(3, 1))[0];
    sim.step();
    CHECK(sim.stack(c)[0].wait == 1);
    const auto after = sim.stack(sim.space().index_of(3, 1))[0];
    CHECK(after.wayback == before.wayback);
    CHECK(after.entry == before.entry);
    CHECK(after.id == before.id);
    const auto copy = sim.stack(sim.space().index_of(3, 1))[0];
    sim.step();
    // the copies have moved on and the launched erasers took their place
    REQUIRE(sim.stack(sim.space().index_of(3, 1)).size() == 1);
    CHECK(sim.stack(sim.space().index_of(3, 1))[0].kind == MessageKind::erasing);
    const auto snap = sim.collect();
    // ring 2 holds 7 * f_3 tiles, plus the seven erasers on ring 1
    CHECK(snap.in_flight == 21 + 7);
    CHECK(copy.wayback.size() == 2);
}

TEST_CASE("private message delivered after its route length") {
    Simulation sim(quiet(5));
    const TileIndex a = sim.space().index_of(1, 4);
    const TileCoord b = TileCoord::make(5, 30);
    std::map<std::uint64_t, std::vector<Event>> seen;
    sim.set_sink([&](const Event& e) { seen[e.id].push_back(e); });
    const auto n = static_cast<int>(route_length(shortest(sim.space().coord(a), b)));
    const auto id = sim.inject_write(a, b);
    for (int i = 0; i < 2 * n + 2; ++i)
        sim.step();
    int delivered = -1;
    for (const auto& e : seen[id])
        if (e.action == Action::deliver) {
            delivered = e.t;
            CHECK(sim.space().coord(e.at) == b);
        }
    CHECK(delivered == n);
    // the answer carries the next id and returns home at 2n
    int back = -1;
    for (const auto& e : seen[id + 1])
        if (e.action == Action::deliver && e.at == a)
            back = e.t;
    CHECK(back == 2 * n);
    CHECK(sim.dropped() == 0);
}

TEST_CASE("runs are reproducible and independent of the schedule") {
    SimConfig c;
    c.depth = 4;
    c.iterations = 60;
    c.lambda_write = 0.01;
    c.lambda_reply = 0.02;
    const std::string serial = csv_of(c);
    CHECK(serial == csv_of(c));
    c.threads = 3;
    CHECK(serial == csv_of(c));
    c.seed += 1;
    CHECK(serial != csv_of(c));
}

TEST_CASE("summary and csv agree") {
    SimConfig c;
    c.iterations = 40;
    const RunReport r = execute(c);
    std::ostringstream csv, sum;
    write_csv(csv, r);
    write_summary(sum, r);
    CHECK(sum.str().find("tiles: 1625\n") != std::string::npos);
    std::istringstream is(csv.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "t,n_public,n_reply,n_write,n_erase,in_flight,max_per_tile,argmax");
    std::uint64_t total = 0;
    while (std::getline(is, line)) {
        std::istringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ','))
            cells.push_back(cell);
        REQUIRE(cells.size() == 8);
        total += std::stoull(cells[1]) + std::stoull(cells[2]) + std::stoull(cells[3]);
        CHECK(TileCoord::parse(cells[7]).to_string() == cells[7]);
    }
    CHECK(total == sent_total(r.last().cumulative));
    CHECK(sum.str().find("total: " + std::to_string(total) + "\n") != std::string::npos);
}

TEST_CASE("trace line format") {
    const Space sp = Space::build(2);
    const Event e{12, MessageKind::public_, Tag::none, 4, sp.index_of(2, 3), Action::relay};
    CHECK(trace_line(sp, e) == "t=12 kind=public id=4 at=2:100 action=relay");
}
