#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "heptagrid/grid.hpp"

namespace hepta {

/// One step of an address: the side a tile is entered by and the side it is
/// left by. 0 marks the start (en) or the end (ex).
struct GatePair {
    int en = 0;
    int ex = 0;
    friend bool operator==(const GatePair&, const GatePair&) = default;
};

using Route = std::vector<GatePair>;

/// Number of moves of a route.
inline std::size_t route_length(const Route& r) { return r.empty() ? 0 : r.size() - 1; }

/// "(en,ex)(en,ex)..."
std::string route_to_string(const Route& r);
Route parse_route(std::string_view text);

/// Elementary steps spent by the routing functions, for complexity checks.
struct Work {
    std::size_t steps = 0;
};

/// Route from the central tile to t along the tree branch, by a scan of
/// the digit pairs of [t]. Throws std::invalid_argument on the central tile.
Route pathroot(const TileCoord& t, Work* work = nullptr);

/// The same route read from the other end.
Route reverse_route(const Route& r);

/// Follows r from `from`, checking that every exit side lands on the stated
/// entry side. Returns the arrival tile; throws std::invalid_argument when
/// the route is inconsistent.
TileCoord route_target(const TileCoord& from, const Route& r);

/// Tiles visited by r from `from`, both ends included.
std::vector<TileCoord> route_tiles(const TileCoord& from, const Route& r);

/// Route following consecutive adjacent tiles.
Route route_through(const std::vector<TileCoord>& tiles);

/// The one of two distinct non-central tiles which is on the left when
/// looking from the central tile.
TileCoord theleftmost(const TileCoord& t1, const TileCoord& t2);

enum class Side { equal, normal, opposite };

struct MeasureState {
    Side side = Side::equal;
    int distance = 0;
};

/// What measure needs to know about the tile under a cursor.
struct Mark {
    int en = 0;
    int ex = 0;
    Status status = Status::central;
};

/// Distance between the successors of two marks on the same ring, given the
/// state reached for the marks themselves (distance at most 1).
void measure(MeasureState& state, const Mark& lmark, const Mark& rmark);

/// Leftmost shortest route from the central tile to the target of r.
Route leftmost(const Route& r, Work* work = nullptr);

/// Shortest route from t1 to t2. Throws std::invalid_argument when equal.
Route shortest(const TileCoord& t1, const TileCoord& t2, Work* work = nullptr);

/// Tiles strictly between two cursors, found by a bounded local search:
/// a path of exactly `moves` (<= 2) adjacent steps from a to b.
std::vector<TileCoord> bridge(const TileCoord& a, const TileCoord& b, int moves);

} // namespace hepta
