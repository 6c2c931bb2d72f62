#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "heptagrid/grid.hpp"
#include "heptagrid/protocol.hpp"

namespace hepta {

struct SimConfig {
    int depth = 5;
    int iterations = 168;
    double lambda_public = 0.005;
    double lambda_border = 0.0025;
    double lambda_reply = 0.0025;
    double lambda_write = 0.001;
    double lambda_radius = 5.0;
    std::uint64_t seed = 20100401;
    bool trace = false;
    /// Worker threads for a transition; 1 runs serially.
    int threads = 1;

    /// Throws std::invalid_argument on a negative lambda, a depth outside
    /// 1..12 or fewer than one worker.
    void validate() const;
};

enum class Purpose : std::uint32_t { public_, border, radius, border_radius, write, write_target, reply, free };

/// Counter-based stream: every draw is a hash of its key and its rank, so a
/// draw never depends on which tile was processed first.
class KeyedStream {
public:
    KeyedStream(std::uint64_t seed, std::uint64_t tile, std::uint64_t tick, Purpose purpose,
                std::uint64_t extra = 0);
    std::uint64_t next_u64();
    /// Uniform on the open interval (0, 1).
    double next_unit();
    /// Uniform on 1..n.
    std::uint64_t next_range(std::uint64_t n);

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Poisson(lambda) by multiplying uniforms until the product drops below
/// exp(-lambda).
unsigned poisson_draw(KeyedStream& s, double lambda);

enum class Counted : std::uint8_t { public_, reply, write, erase };
constexpr std::size_t kCounted = 4;
using Counts = std::array<std::uint64_t, kCounted>;

inline std::uint64_t sent_total(const Counts& c) {
    return c[static_cast<std::size_t>(Counted::public_)] + c[static_cast<std::size_t>(Counted::reply)] +
           c[static_cast<std::size_t>(Counted::write)];
}

struct StatsSnapshot {
    int t = 0;
    /// Emitted during the transition that produced time t.
    Counts emitted{};
    Counts cumulative{};
    std::uint64_t in_flight = 0;
    std::uint64_t max_per_tile = 0;
    TileCoord argmax;
    std::array<std::uint64_t, 3> max_by_kind{};
    std::array<TileCoord, 3> argmax_by_kind{};
};

enum class Action : std::uint8_t { emit, relay, convey, deliver, erase, cancel, drop };
const char* to_string(Action a);

struct Event {
    int t = 0;
    MessageKind kind = MessageKind::public_;
    Tag tag = Tag::none;
    std::uint64_t id = 0;
    TileIndex at = 0;
    Action action = Action::emit;
};

using EventSink = std::function<void(const Event&)>;

class Simulation {
public:
    explicit Simulation(const SimConfig& config);
    Simulation(const SimConfig& config, std::shared_ptr<const Space> space);

    const SimConfig& config() const { return config_; }
    const Space& space() const { return *space_; }
    int time() const { return time_; }

    /// Messages present at `tile` now, in canonical order.
    const std::vector<Message>& stack(TileIndex tile) const { return stack0_[static_cast<std::size_t>(tile)]; }

    /// Puts a message on a tile now; it takes part in the next transition.
    /// An id of 0 is replaced by a fresh one, which is returned.
    std::uint64_t inject(TileIndex tile, Message m);
    /// An unsent public message of the given radius at `tile`.
    std::uint64_t inject_public(TileIndex tile, int radius);
    /// A write from a tile to another; throws when the target is outside.
    std::uint64_t inject_write(TileIndex from, const TileCoord& target);

    void set_sink(EventSink sink) { sink_ = std::move(sink); }

    /// One application of the transition: time t -> t+1.
    void step();
    StatsSnapshot collect() const;

    std::uint64_t dropped() const { return dropped_; }

private:
    struct Delivery {
        TileIndex to;
        Message msg;
    };
    struct Scratch {
        std::vector<Delivery> out;
        std::vector<Event> events;
        Counts emitted{};
        std::uint64_t dropped = 0;
    };

    void action_in(TileIndex tile, Scratch& s) const;
    void send(TileIndex from, Outbound o, Scratch& s) const;
    void convey(TileIndex tile, Message m, Scratch& s, std::uint32_t& seq) const;
    void record(Scratch& s, TileIndex tile, const Message& m, Action a) const;
    std::uint64_t next_provisional(TileIndex tile, std::uint32_t& seq) const;

    SimConfig config_;
    std::shared_ptr<const Space> space_;
    std::vector<std::vector<Message>> stack0_;
    std::vector<std::vector<Message>> stack1_;
    int time_ = 0;
    std::uint64_t next_id_ = 1;
    Counts cumulative_{};
    Counts last_emitted_{};
    std::uint64_t dropped_ = 0;
    EventSink sink_;
};

struct RunReport {
    SimConfig config;
    std::size_t tiles = 0;
    std::vector<StatsSnapshot> snapshots; // index = t, from 0
    /// Mean over t of cumulative sent / t.
    double mean = 0.0;
    std::uint64_t max_per_tile = 0;
    int max_time = 0;
    TileCoord max_tile;

    const StatsSnapshot& last() const { return snapshots.back(); }
    /// Snapshot at t, or the last one when the run is shorter.
    const StatsSnapshot& at(int t) const;
};

/// Builds the space and runs config.iterations transitions.
RunReport execute(const SimConfig& config, const EventSink& sink = {});

void write_csv(std::ostream& os, const RunReport& report);
void write_summary(std::ostream& os, const RunReport& report);
/// "t=<tick> kind=<k> id=<n> at=<sector:num> action=<a>"
std::string trace_line(const Space& space, const Event& e);

} // namespace hepta
