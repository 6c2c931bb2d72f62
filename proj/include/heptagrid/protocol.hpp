#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heptagrid/grid.hpp"
#include "heptagrid/routing.hpp"

namespace hepta {

enum class MessageKind : std::uint8_t { public_, nonpublic, erasing };
/// Why a nonpublic message exists. Answers keep a conversation going and
/// are not new emissions.
enum class Tag : std::uint8_t { none, reply, write, answer };

const char* to_string(MessageKind k);
const char* to_string(Tag t);

/// A route held as a stack: back() is the step to take at the current tile.
using RouteStack = std::vector<GatePair>;

RouteStack to_stack(const Route& r);
Route from_stack(const RouteStack& s);

struct Message {
    std::uint64_t id = 0;
    MessageKind kind = MessageKind::public_;
    Tag tag = Tag::none;
    /// Propagation radius on a public message not yet sent; delay left on an
    /// erasing message held by its emitter, 0 once it floods.
    int wait = 0;
    /// Absolute side by which the message entered the tile, 0 at its origin.
    /// For broadcast copies this is the side of the relative father.
    int entry = 0;
    Status relative_status = Status::central;
    RouteStack direct;
    /// Route back to the origin; on a public copy, the way it came.
    RouteStack wayback;
    /// Public message a reply answers.
    std::uint64_t origin = 0;

    bool fresh_public() const { return kind == MessageKind::public_ && wayback.empty(); }
};

/// A message leaving a tile through an absolute side.
struct Outbound {
    int gate = 0;
    Message msg;
};

/// Absolute side of relative side s for a tile entered through side en1.
constexpr int relative_exit(int en1, int s) { return 1 + ((en1 - 1) + (s - 1)) % kGates; }

struct Emission {
    std::vector<Outbound> copies;
    Message eraser;
};

/// First sending of a fresh public message: one relative root per side,
/// and the eraser kept at the sender for `radius` ticks.
Emission emit_public(const TileRecord& sender, const Message& fresh);

/// Copies of a broadcast copy (public or erasing) for the relative sons.
std::vector<Outbound> relay_public(const TileRecord& t, const Message& m);

struct ErasingStep {
    std::optional<Message> held;
    std::vector<Outbound> flood;
    bool launched = false;
};

ErasingStep step_erasing(const TileRecord& t, const Message& m);

struct Conveyance {
    enum class Result { forwarded, delivered, dropped } result = Result::dropped;
    Outbound out;       // forwarded
    Message delivered;  // delivered: direct empty, wayback complete
    std::string why;    // dropped
};

Conveyance convey_private(const TileRecord& t, Message m);

Message make_answer(const Message& delivered, std::uint64_t id);
/// Reply to a public copy, routed back to the broadcaster. Empty for the
/// broadcaster itself.
std::optional<Message> make_reply(const Message& public_m, std::uint64_t id);
/// Throws std::invalid_argument when the target is outside the space; no
/// message when it is the source.
std::optional<Message> make_write(const Space& space, const TileCoord& from, const TileCoord& target,
                                  std::uint64_t id);

} // namespace hepta
