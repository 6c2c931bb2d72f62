#pragma once

// Independent reference computations used only by the tests.

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "heptagrid/grid.hpp"

namespace oracle {

/// Fibonacci tree built node by node from the rules W -> BWW, B -> BW.
struct TreeNode {
    std::uint64_t number;
    std::uint64_t father; // 0 for the root
    bool white;
    int level;
    int gate; // gate of the father leading here, 0 for the root
    bool first_on_level;
    bool last_on_level;
};

inline std::vector<TreeNode> build_tree(int max_level) {
    std::vector<TreeNode> nodes{{1, 0, true, 0, 0, true, true}};
    std::size_t level_begin = 0;
    for (int lv = 1; lv <= max_level; ++lv) {
        const std::size_t level_end = nodes.size();
        const std::size_t first_child = nodes.size();
        for (std::size_t i = level_begin; i < level_end; ++i) {
            const TreeNode p = nodes[i];
            if (p.white) {
                for (int g : {3, 4, 5})
                    nodes.push_back({nodes.size() + 1, p.number, g != 3, lv, g, false, false});
            } else {
                for (int g : {4, 5})
                    nodes.push_back({nodes.size() + 1, p.number, g != 4, lv, g, false, false});
            }
        }
        nodes[first_child].first_on_level = true;
        nodes.back().last_on_level = true;
        level_begin = level_end;
    }
    return nodes; // nodes[k] has number k + 1
}

/// Value of a binary digit string under weights 1, 2, 3, 5, ...
inline std::uint64_t weigh(const std::string& msb_first) {
    std::uint64_t a = 1, b = 2, sum = 0;
    for (auto it = msb_first.rbegin(); it != msb_first.rend(); ++it) {
        if (*it == '1')
            sum += a;
        const std::uint64_t c = a + b;
        a = b;
        b = c;
    }
    return sum;
}

/// Every word of length <= len without adjacent 1s and with leading 1.
inline std::vector<std::string> all_words(int len) {
    std::vector<std::string> out;
    for (std::uint32_t m = 1; m < (1u << len); ++m) {
        if (m & (m >> 1))
            continue;
        std::string s;
        for (int p = 31; p >= 0; --p)
            if (!s.empty() || (m >> p & 1u))
                s.push_back((m >> p & 1u) ? '1' : '0');
        out.push_back(s);
    }
    return out;
}

/// BFS distances over in-space tiles.
inline std::vector<int> bfs(const hepta::Space& sp, hepta::TileIndex src) {
    std::vector<int> d(sp.size(), -1);
    std::deque<hepta::TileIndex> q{src};
    d[static_cast<std::size_t>(src)] = 0;
    while (!q.empty()) {
        const auto u = q.front();
        q.pop_front();
        for (int g = 1; g <= hepta::kGates; ++g) {
            const auto v = sp[u].next(g);
            if (v != hepta::kNoTile && d[static_cast<std::size_t>(v)] < 0) {
                d[static_cast<std::size_t>(v)] = d[static_cast<std::size_t>(u)] + 1;
                q.push_back(v);
            }
        }
    }
    return d;
}

/// Position of a non-central tile along its ring, counted from level start
/// of sector 1; the ring holds 7 * f_{2n+1} tiles.
struct RingPos {
    int ring;
    std::int64_t pos;
    std::int64_t width;
};

inline RingPos ring_pos(const hepta::Space& sp, hepta::TileIndex i) {
    const auto& r = sp[i];
    const auto n = static_cast<std::size_t>(r.level);
    const auto w = static_cast<std::int64_t>(hepta::fib(2 * n + 1));
    const auto first = static_cast<std::int64_t>(hepta::fib(2 * n));
    return {r.ring(), (r.sector - 1) * w + (static_cast<std::int64_t>(r.number) - first), 7 * w};
}

/// Signed ring offset from a to b (both on the same ring), shortest way round.
inline std::int64_t ring_offset(const hepta::Space& sp, hepta::TileIndex a, hepta::TileIndex b) {
    const auto pa = ring_pos(sp, a), pb = ring_pos(sp, b);
    std::int64_t d = ((pb.pos - pa.pos) % pa.width + pa.width) % pa.width;
    if (d > pa.width / 2)
        d -= pa.width;
    return d;
}

} // namespace oracle
