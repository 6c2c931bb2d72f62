#include "heptagrid/routing.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace hepta {

namespace {

void tick(Work* w, std::size_t n = 1) {
    if (w)
        w->steps += n;
}

int gate_to(const TileCoord& from, const TileCoord& to) {
    const auto nb = neighbors_of(from);
    for (int g = 0; g < kGates; ++g)
        if (nb[g] == to)
            return g + 1;
    return 0;
}

int ring_of(const TileCoord& t) { return t.is_central() ? 0 : static_cast<int>(level_of(t.num)) + 1; }

Status status_at(const TileCoord& t) { return t.is_central() ? Status::central : status_of(t.num); }

struct Chain {
    std::vector<TileCoord> tiles;
    Route route;
    Mark mark(std::size_t i) const { return {route[i].en, route[i].ex, status_at(tiles[i])}; }
};

Chain make_chain(const Route& r) { return {route_tiles(TileCoord::central(), r), r}; }

bool gate_is_left(int a, int b, bool at_centre) {
    if (at_centre) {
        const int d = ((b - a) % kSectors + kSectors) % kSectors;
        return d >= 1 && d <= 3;
    }
    return a < b;
}

} // namespace

std::string route_to_string(const Route& r) {
    std::string s;
    for (const auto& p : r)
        s += "(" + std::to_string(p.en) + "," + std::to_string(p.ex) + ")";
    return s;
}

Route parse_route(std::string_view text) {
    Route r;
    std::size_t i = 0;
    const auto bad = [&] { return std::invalid_argument("malformed route '" + std::string(text) + "'"); };
    const auto number = [&](int& out) {
        const auto res = std::from_chars(text.data() + i, text.data() + text.size(), out);
        if (res.ec != std::errc() || out < 0 || out > kGates)
            throw bad();
        i = static_cast<std::size_t>(res.ptr - text.data());
    };
    while (i < text.size()) {
        GatePair p;
        if (text[i++] != '(')
            throw bad();
        number(p.en);
        if (i >= text.size() || text[i++] != ',')
            throw bad();
        number(p.ex);
        if (i >= text.size() || text[i++] != ')')
            throw bad();
        r.push_back(p);
    }
    return r;
}

Route pathroot(const TileCoord& t, Work* work) {
    if (t.is_central())
        throw std::invalid_argument("pathroot: the central tile has no path to a root");
    const std::size_t last = t.num.size();
    std::vector<int> digit(last + 3, 0);
    for (std::size_t p = 1; p <= last; ++p)
        digit[p] = t.num.digit(p);

    // built from the target upwards, lowest digit pair first
    Route up{{1, 0}};
    for (std::size_t cursor = 1; cursor < last; cursor += 2) {
        tick(work);
        up.push_back({1, 4 - digit[cursor + 1] + digit[cursor]});
        // a left son: its father is read on succ of the word, a carry
        if (digit[cursor + 1] == 1 && cursor + 2 <= last)
            digit[cursor + 2] = 1;
    }
    up.push_back({0, t.sector});
    std::reverse(up.begin(), up.end());
    return up;
}

Route reverse_route(const Route& r) {
    Route out;
    out.reserve(r.size());
    for (auto it = r.rbegin(); it != r.rend(); ++it)
        out.push_back({it->ex, it->en});
    return out;
}

std::vector<TileCoord> route_tiles(const TileCoord& from, const Route& r) {
    if (r.empty())
        throw std::invalid_argument("route_tiles: empty route");
    if (r.front().en != 0)
        throw std::invalid_argument("route_tiles: a route starts with entry side 0");
    std::vector<TileCoord> tiles{from};
    for (std::size_t k = 0; k < r.size(); ++k) {
        const TileCoord& cur = tiles.back();
        if (k > 0 && gate_to(cur, tiles[tiles.size() - 2]) != r[k].en)
            throw std::invalid_argument("route_tiles: entry side mismatch at step " + std::to_string(k) +
                                        " on " + cur.to_string());
        if (r[k].ex == 0) {
            if (k + 1 != r.size())
                throw std::invalid_argument("route_tiles: exit side 0 before the end");
            return tiles;
        }
        if (r[k].ex < 1 || r[k].ex > kGates)
            throw std::invalid_argument("route_tiles: side out of range");
        tiles.push_back(neighbors_of(cur)[r[k].ex - 1]);
    }
    throw std::invalid_argument("route_tiles: a route ends with exit side 0");
}

TileCoord route_target(const TileCoord& from, const Route& r) { return route_tiles(from, r).back(); }

Route route_through(const std::vector<TileCoord>& tiles) {
    Route r(tiles.size());
    for (std::size_t k = 0; k < tiles.size(); ++k) {
        if (k > 0)
            r[k].en = gate_to(tiles[k], tiles[k - 1]);
        if (k + 1 < tiles.size())
            r[k].ex = gate_to(tiles[k], tiles[k + 1]);
        if ((k > 0 && r[k].en == 0) || (k + 1 < tiles.size() && r[k].ex == 0))
            throw std::logic_error("route_through: tiles are not adjacent at " + tiles[k].to_string());
    }
    return r;
}

TileCoord theleftmost(const TileCoord& t1, const TileCoord& t2) {
    if (t1.is_central() || t2.is_central())
        throw std::invalid_argument("theleftmost: the central tile has no side");
    if (t1 == t2)
        throw std::invalid_argument("theleftmost: tiles must differ");
    if (t1.sector != t2.sector)
        return gate_is_left(t1.sector, t2.sector, true) ? t1 : t2;
    const Route a = pathroot(t1);
    const Route b = pathroot(t2);
    for (std::size_t k = 1; k < std::min(a.size(), b.size()); ++k) {
        // one tile is an ancestor of the other: the deeper one goes left,
        // so that the lower tile's branch is the left chain
        if (a[k].ex == 0)
            return t2;
        if (b[k].ex == 0)
            return t1;
        if (a[k].ex != b[k].ex)
            return a[k].ex < b[k].ex ? t1 : t2;
    }
    throw std::logic_error("theleftmost: chains do not diverge");
}

void measure(MeasureState& state, const Mark& l, const Mark& r) {
    const int distance0 = state.distance;
    const bool both = l.ex != 0 && r.ex != 0;
    switch (state.side) {
    case Side::equal:
        if (l.en == 0) {
            const int hi = std::max(l.ex, r.ex);
            const int lo = std::min(l.ex, r.ex);
            state.distance = std::min(hi - lo, lo + kSectors - hi);
        } else {
            state.distance = both ? std::abs(l.ex - r.ex) : distance0;
        }
        if (both && l.ex != r.ex)
            state.side = gate_is_left(l.ex, r.ex, l.en == 0) ? Side::normal : Side::opposite;
        break;
    case Side::normal:
        if (both) {
            // sons of l to its right, then the sons of r up to r.ex
            state.distance = 5 - l.ex + r.ex - 3 + (r.status == Status::white ? 1 : 0);
            if (state.distance == 0)
                state.side = Side::equal;
        }
        break;
    case Side::opposite:
        if (both) {
            // mirror image: r is now the left one
            state.distance = 5 - r.ex + l.ex - 3 + (l.status == Status::white ? 1 : 0);
            if (state.distance == 0)
                state.side = Side::equal;
        }
        break;
    }
}

Route leftmost(const Route& r, Work* work) {
    const TileCoord target = route_target(TileCoord::central(), r);
    tick(work, r.size());
    std::vector<TileCoord> up{target};
    while (!up.back().is_central()) {
        tick(work);
        const TileCoord& x = up.back();
        // a black tile has a second tile above it, on its left, behind side 2
        const bool black = x.num.size() > 1 && status_of(x.num) == Status::black;
        up.push_back(neighbors_of(x)[black ? 1 : 0]);
    }
    std::reverse(up.begin(), up.end());
    return route_through(up);
}

std::vector<TileCoord> bridge(const TileCoord& a, const TileCoord& b, int moves) {
    switch (moves) {
    case 0:
        if (!(a == b))
            break;
        return {};
    case 1:
        if (gate_to(a, b) == 0)
            break;
        return {};
    case 2: {
        // keep the detour as close to the centre as possible
        const auto nb = neighbors_of(a);
        const TileCoord* best = nullptr;
        for (const auto& c : nb)
            if (gate_to(c, b) != 0 && (!best || ring_of(c) < ring_of(*best)))
                best = &c;
        if (!best)
            break;
        return {*best};
    }
    default:
        break;
    }
    throw std::logic_error("bridge: no " + std::to_string(moves) + "-move link from " + a.to_string() +
                           " to " + b.to_string());
}

Route shortest(const TileCoord& t1, const TileCoord& t2, Work* work) {
    if (t1 == t2)
        throw std::invalid_argument("shortest: source and target coincide");
    if (t1.is_central())
        return pathroot(t2, work);
    if (t2.is_central())
        return reverse_route(pathroot(t1, work));

    const TileCoord ltile = theleftmost(t1, t2);
    const TileCoord rtile = ltile == t1 ? t2 : t1;
    const Chain lc = make_chain(pathroot(ltile, work));
    const Chain rc = make_chain(leftmost(pathroot(rtile, work), work));
    tick(work, lc.tiles.size() + rc.tiles.size());

    MeasureState state;
    std::size_t i = 0;
    int here = 0; // distance at ring i
    bool diverged = false;
    for (;;) {
        tick(work);
        measure(state, lc.mark(i), rc.mark(i));
        if (i + 1 == lc.tiles.size() || i + 1 == rc.tiles.size())
            break;
        if (state.distance > 1) {
            diverged = true;
            break;
        }
        here = state.distance;
        ++i;
    }

    // connect: up the left chain, across, down the right chain
    std::size_t k = i;
    int moves = here;
    if (diverged && here == 1 && state.distance == 2) {
        k = i + 1;
        moves = 2;
    }
    std::vector<TileCoord> tiles(lc.tiles.rbegin(), lc.tiles.rend() - static_cast<std::ptrdiff_t>(k));
    const auto mid = bridge(lc.tiles[k], rc.tiles[k], moves);
    tiles.insert(tiles.end(), mid.begin(), mid.end());
    tiles.insert(tiles.end(), rc.tiles.begin() + static_cast<std::ptrdiff_t>(k) + (moves == 0 ? 1 : 0),
                 rc.tiles.end());
    tick(work, tiles.size());
    const Route r = route_through(tiles);
    return ltile == t1 ? r : reverse_route(r);
}

} // namespace hepta
