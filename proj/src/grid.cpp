#include "heptagrid/grid.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace hepta {

const char* to_string(Status s) {
    switch (s) {
    case Status::central: return "central";
    case Status::white: return "white";
    case Status::black: return "black";
    }
    return "?";
}

const char* to_string(Branch b) {
    switch (b) {
    case Branch::centre: return "centre";
    case Branch::root: return "root";
    case Branch::left: return "left";
    case Branch::right: return "right";
    case Branch::middle: return "middle";
    }
    return "?";
}

std::string TileCoord::to_string() const {
    if (sector == 0)
        return "0:1";
    return std::to_string(sector) + ":" + num.to_string();
}

TileCoord TileCoord::parse(std::string_view text) {
    if (text == "0")
        return central();
    const auto colon = text.find(':');
    if (colon == std::string_view::npos || colon == 0)
        throw std::invalid_argument("coordinate must read sector:fibword, got '" + std::string(text) + "'");
    const auto sect = text.substr(0, colon);
    if (sect.size() != 1 || sect[0] < '0' || sect[0] > '7')
        throw std::invalid_argument("sector must be 0..7 in '" + std::string(text) + "'");
    TileCoord c;
    c.sector = sect[0] - '0';
    const FibWord w = FibWord::parse(text.substr(colon + 1));
    if (c.sector == 0)
        return c;
    if (w.is_zero())
        throw std::invalid_argument("tree numbers start at 1 in '" + std::string(text) + "'");
    c.num = w;
    return c;
}

std::ostream& operator<<(std::ostream& os, const TileCoord& c) { return os << c.to_string(); }

std::size_t level_of(const FibWord& v) { return v.size() / 2; }

FibWord father(const FibWord& v) {
    if (v.size() < 2)
        throw std::domain_error("father: the root has no father in its tree");
    // [v] = [f]00 or [f]01 name the preferred son and its right brother;
    // [v] ending in 10 is the left son of the node succ([v]) >> 2.
    if (v.digit(1) == 0 && v.digit(2) == 1)
        return v.succ().shifted_down(2);
    return v.shifted_down(2);
}

FibWord preferred_son(const FibWord& v) { return v.shifted_up(2); }

int son_gate(const FibWord& v) { return 4 - v.digit(2) + v.digit(1); }

Status status_of(const FibWord& v) {
    if (v.is_zero())
        throw std::domain_error("status_of: zero is not a tree node");
    // stripping trailing 00 pairs keeps the status; the remaining 01 is a
    // right (white) son and 10 a left (black) son
    return v.lowest_set() % 2 == 1 ? Status::white : Status::black;
}

Branch branch_of(const FibWord& v) {
    const std::size_t n = v.size();
    if (n == 0)
        throw std::domain_error("branch_of: zero is not a tree node");
    if (n == 1)
        return Branch::root;
    // first of level k is f_{2k}, last is f_{2k+2} - 1 = 1010...101
    if (n % 2 == 0 && v.lowest_set() == n)
        return Branch::left;
    if (n % 2 == 1) {
        bool alternating = true;
        for (std::size_t p = 1; p <= n && alternating; ++p)
            alternating = v.digit(p) == static_cast<int>(p % 2);
        if (alternating)
            return Branch::right;
    }
    return Branch::middle;
}

std::array<TileCoord, kGates> neighbors_of(const TileCoord& t) {
    std::array<TileCoord, kGates> n;
    if (t.is_central()) {
        for (int i = 1; i <= kGates; ++i)
            n[i - 1] = TileCoord::make(i, 1);
        return n;
    }
    const int s = t.sector;
    const FibWord& v = t.num;
    const Branch br = branch_of(v);
    if (br == Branch::root) {
        n = {TileCoord::central(),
             TileCoord::make(sector_minus(s), 1),
             TileCoord::make(s, 2),
             TileCoord::make(s, 3),
             TileCoord::make(s, 4),
             TileCoord::make(sector_plus(s), 2),
             TileCoord::make(sector_plus(s), 1)};
        return n;
    }
    const FibWord f = father(v);
    const FibWord son = preferred_son(v);
    const FibWord son_plus = son.succ();
    const auto at = [&](int sector, const FibWord& w) { return TileCoord{sector, w}; };
    switch (br) {
    case Branch::left:
        n = {at(s, f), at(sector_minus(s), v.pred()), at(sector_minus(s), son.pred()), at(s, son),
             at(s, son_plus), at(s, son_plus.succ()), at(s, v.succ())};
        break;
    case Branch::right:
        n = {at(s, f), at(s, v.pred()), at(s, son.pred()), at(s, son),
             at(s, son_plus), at(sector_plus(s), v.succ()), at(sector_plus(s), f.succ())};
        break;
    default:
        if (status_of(v) == Status::black)
            n = {at(s, f), at(s, f.pred()), at(s, v.pred()), at(s, son),
                 at(s, son_plus), at(s, son_plus.succ()), at(s, v.succ())};
        else
            n = {at(s, f), at(s, v.pred()), at(s, son.pred()), at(s, son),
                 at(s, son_plus), at(s, son_plus.succ()), at(s, v.succ())};
        break;
    }
    return n;
}

bool is_side_pair(int i, int j) {
    switch (i) {
    case 1: return j == 3 || j == 4 || j == 5;
    case 2: return j == 6 || j == 7;
    case 3: return j == 7 || j == 1;
    case 4: return j == 1;
    case 5: return j == 1;
    case 6: return j == 2;
    case 7: return j == 2 || j == 3;
    default: return false;
    }
}

Space Space::build(int depth) {
    if (depth < 1 || depth > kMaxDepth)
        throw std::out_of_range("Space::build: depth must lie in 1.." + std::to_string(kMaxDepth));
    Space sp;
    sp.depth_ = depth;
    sp.sector_size_ = static_cast<std::uint32_t>(fib(2 * static_cast<std::size_t>(depth) + 2) - 1);
    sp.tiles_.resize(1 + static_cast<std::size_t>(kSectors) * sp.sector_size_);

    const std::size_t per = sp.sector_size_;
    // the central tile and sector 1 are computed, the other sectors are
    // sector 1 turned by whole sectors
    const std::size_t computed = 1 + per;
    for (std::size_t i = 0; i < computed; ++i) {
        TileRecord& rec = sp.tiles_[i];
        const TileCoord c = sp.coord(static_cast<TileIndex>(i));
        rec.sector = static_cast<std::uint8_t>(c.sector);
        if (c.is_central()) {
            rec.number = 1;
            rec.status = Status::central;
            rec.branch = Branch::centre;
            rec.level = 0;
        } else {
            rec.number = static_cast<std::uint32_t>(c.num.decode());
            rec.status = status_of(c.num);
            rec.branch = branch_of(c.num);
            rec.level = static_cast<std::uint8_t>(level_of(c.num));
            rec.border = rec.level == depth;
        }
        const auto nb = neighbors_of(c);
        for (int g = 0; g < kGates; ++g)
            rec.neighbour[g] = sp.index_of(nb[g]);
    }
    const auto turn = [&](TileIndex n, int by) {
        if (n == kNoTile || n == central_index())
            return n;
        const auto k = static_cast<std::size_t>(n - 1);
        const std::size_t sector = (k / per + static_cast<std::size_t>(by)) % kSectors;
        return static_cast<TileIndex>(1 + sector * per + k % per);
    };
    for (std::size_t i = computed; i < sp.tiles_.size(); ++i) {
        const int by = static_cast<int>((i - 1) / per);
        TileRecord& rec = sp.tiles_[i];
        rec = sp.tiles_[1 + (i - 1) % per];
        rec.sector = static_cast<std::uint8_t>(by + 1);
        for (auto& n : rec.neighbour)
            n = turn(n, by);
    }

    // associates: read back from the neighbour's own record
    for (std::size_t i = 0; i < computed; ++i) {
        TileRecord& rec = sp.tiles_[i];
        const auto self = static_cast<TileIndex>(i);
        for (int g = 1; g <= kGates; ++g) {
            const TileIndex n = rec.next(g);
            int back = 0;
            if (n != kNoTile) {
                back = sp.gate_towards(n, self);
            } else {
                const TileCoord me = sp.coord(self);
                const auto far = neighbors_of(sp.neighbour_coord(self, g));
                for (int h = 0; h < kGates && back == 0; ++h)
                    if (far[h] == me)
                        back = h + 1;
            }
            if (back == 0)
                throw std::logic_error("Space::build: neighbour relation is not symmetric at " +
                                       sp.coord(self).to_string() + " gate " + std::to_string(g));
            rec.associate[g - 1] = static_cast<std::uint8_t>(back);
        }
    }
    for (std::size_t i = computed; i < sp.tiles_.size(); ++i) {
        TileRecord& rec = sp.tiles_[i];
        rec.associate = sp.tiles_[1 + (i - 1) % per].associate;
        // the central tile's sides turn with the sector
        for (int g = 0; g < kGates; ++g)
            if (rec.neighbour[g] == central_index())
                rec.associate[g] = static_cast<std::uint8_t>(1 + (rec.associate[g] - 1 + rec.sector - 1) % kSectors);
    }
    return sp;
}

TileIndex Space::index_of(int sector, std::uint64_t number) const {
    if (sector == 0)
        return central_index();
    if (sector < 1 || sector > kSectors || number < 1 || number > sector_size_)
        return kNoTile;
    return static_cast<TileIndex>(1 + static_cast<std::uint64_t>(sector - 1) * sector_size_ + (number - 1));
}

TileIndex Space::index_of(const TileCoord& c) const {
    if (c.is_central())
        return central_index();
    // words longer than the deepest level cannot be in the space
    if (c.num.size() > 2 * static_cast<std::size_t>(depth_) + 1)
        return kNoTile;
    return index_of(c.sector, c.num.decode());
}

TileCoord Space::coord(TileIndex i) const {
    if (i == central_index())
        return TileCoord::central();
    const auto k = static_cast<std::uint32_t>(i - 1);
    return TileCoord::make(static_cast<int>(k / sector_size_) + 1, k % sector_size_ + 1);
}

TileCoord Space::neighbour_coord(TileIndex i, int gate) const {
    const TileIndex n = (*this)[i].next(gate);
    if (n != kNoTile)
        return coord(n);
    return neighbors_of(coord(i))[gate - 1];
}

int Space::associate_of(const TileCoord& t, int gate) const {
    const TileIndex i = index_of(t);
    if (i == kNoTile)
        throw std::out_of_range("associate_of: " + t.to_string() + " is outside the space");
    return (*this)[i].associate_of(gate);
}

int Space::gate_towards(TileIndex from, TileIndex to) const {
    const auto& nb = (*this)[from].neighbour;
    const auto it = std::find(nb.begin(), nb.end(), to);
    return it == nb.end() ? 0 : static_cast<int>(it - nb.begin()) + 1;
}

void Space::dump(std::ostream& os) const {
    for (std::size_t i = 0; i < tiles_.size(); ++i) {
        const auto idx = static_cast<TileIndex>(i);
        const TileRecord& r = tiles_[i];
        os << coord(idx) << ' ' << to_string(r.status) << ' ' << to_string(r.branch);
        for (int g = 1; g <= kGates; ++g)
            os << ' ' << neighbour_coord(idx, g);
        for (int g = 1; g <= kGates; ++g)
            os << ' ' << r.associate_of(g);
        os << '\n';
    }
}

} // namespace hepta
