#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "heptagrid/fibcode.hpp"

namespace hepta {

enum class Status : std::uint8_t { central, white, black };
enum class Branch : std::uint8_t { centre, root, left, right, middle };

const char* to_string(Status s);
const char* to_string(Branch b);

constexpr int kSectors = 7;
constexpr int kGates = 7;

/// Sector arithmetic on 1..7 with wraparound.
constexpr int sector_plus(int s) { return s == kSectors ? 1 : s + 1; }
constexpr int sector_minus(int s) { return s == 1 ? kSectors : s - 1; }

/// Location of a tile: sector 0 is the central tile, otherwise a node of the
/// Fibonacci tree spanning the sector (root = 1).
struct TileCoord {
    int sector = 0;
    FibWord num = FibWord::encode(1);

    static TileCoord central() { return {}; }
    static TileCoord make(int sector, std::uint64_t number) { return {sector, FibWord::encode(number)}; }

    bool is_central() const { return sector == 0; }

    /// "sector:fibword"; the central tile renders as "0:1".
    std::string to_string() const;
    /// Accepts "sector:fibword" and a bare "0" for the central tile.
    static TileCoord parse(std::string_view text);

    friend bool operator==(const TileCoord& a, const TileCoord& b) {
        if (a.sector != b.sector)
            return false;
        return a.sector == 0 || a.num == b.num;
    }
};

std::ostream& operator<<(std::ostream& os, const TileCoord& c);

// Tree navigation on node coordinates. All of them work digit-wise on the
// word and are linear in its length.

/// Tree depth of a node: the root is on level 0.
std::size_t level_of(const FibWord& v);
/// [f(v)] for a node other than the root.
FibWord father(const FibWord& v);
/// [v]00.
FibWord preferred_son(const FibWord& v);
/// Gate of father(v) through which v is reached (3, 4 or 5).
int son_gate(const FibWord& v);
Status status_of(const FibWord& v);
Branch branch_of(const FibWord& v);

/// The seven neighbours of a tile, index 0 holding gate 1.
std::array<TileCoord, kGates> neighbors_of(const TileCoord& t);

/// Realized side pairs (i, j): side i of a tile is side j of the neighbour.
bool is_side_pair(int i, int j);

using TileIndex = std::int32_t;
constexpr TileIndex kNoTile = -1;

struct TileRecord {
    std::uint32_t number = 1;
    std::uint8_t sector = 0;
    Status status = Status::central;
    Branch branch = Branch::centre;
    std::uint8_t level = 0;
    bool border = false;
    /// Pool index of neighbour i+1, kNoTile when it lies outside the space.
    std::array<TileIndex, kGates> neighbour{};
    /// Number of side i+1 inside neighbour i+1.
    std::array<std::uint8_t, kGates> associate{};

    bool outer(int gate) const { return neighbour[gate - 1] == kNoTile; }
    TileIndex next(int gate) const { return neighbour[gate - 1]; }
    int associate_of(int gate) const { return associate[gate - 1]; }
    /// Distance to the central tile.
    int ring() const { return sector == 0 ? 0 : level + 1; }
};

/// The simulation space: the central tile and seven sectors of all tree
/// nodes with level <= depth, held in an indexed pool. Immutable once built.
class Space {
public:
    static constexpr int kMaxDepth = 12;

    /// Throws std::out_of_range unless 1 <= depth <= kMaxDepth.
    static Space build(int depth);

    int depth() const { return depth_; }
    std::size_t size() const { return tiles_.size(); }
    /// Tiles per sector: f_{2 depth + 2} - 1.
    std::uint32_t sector_size() const { return sector_size_; }

    const TileRecord& operator[](TileIndex i) const { return tiles_[static_cast<std::size_t>(i)]; }
    const std::vector<TileRecord>& tiles() const { return tiles_; }

    static constexpr TileIndex central_index() { return 0; }
    TileIndex index_of(int sector, std::uint64_t number) const;
    /// kNoTile when the coordinate lies outside the space.
    TileIndex index_of(const TileCoord& c) const;
    bool contains(const TileCoord& c) const { return index_of(c) != kNoTile; }

    TileCoord coord(TileIndex i) const;
    /// Coordinate of neighbour `gate` of tile i, computed even for outer gates.
    TileCoord neighbour_coord(TileIndex i, int gate) const;
    int associate_of(const TileCoord& t, int gate) const;
    /// Gate of tile `from` leading to tile `to`, 0 when they are not adjacent.
    int gate_towards(TileIndex from, TileIndex to) const;

    /// Diagnostic dump: "sector:num status branch n1..n7 a1..a7" per line.
    void dump(std::ostream& os) const;

private:
    int depth_ = 0;
    std::uint32_t sector_size_ = 0;
    std::vector<TileRecord> tiles_;
};

} // namespace hepta
