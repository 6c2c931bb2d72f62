#include "heptagrid/protocol.hpp"

#include <algorithm>
#include <stdexcept>

namespace hepta {

const char* to_string(MessageKind k) {
    switch (k) {
    case MessageKind::public_: return "public";
    case MessageKind::nonpublic: return "nonpublic";
    case MessageKind::erasing: return "erasing";
    }
    return "?";
}

const char* to_string(Tag t) {
    switch (t) {
    case Tag::none: return "none";
    case Tag::reply: return "reply";
    case Tag::write: return "write";
    case Tag::answer: return "answer";
    }
    return "?";
}

RouteStack to_stack(const Route& r) { return RouteStack(r.rbegin(), r.rend()); }
Route from_stack(const RouteStack& s) { return Route(s.rbegin(), s.rend()); }

namespace {

// A copy crossing side `gate` of t: the arrival side is read from the
// associate table, and a public copy learns one more step of its way back.
Outbound cross(const TileRecord& t, const Message& m, int gate, Status son) {
    Outbound o{gate, m};
    o.msg.entry = t.associate_of(gate);
    o.msg.relative_status = son;
    if (m.kind == MessageKind::public_) {
        if (o.msg.wayback.empty())
            o.msg.wayback.push_back({gate, 0});
        else
            o.msg.wayback.back() = {gate, m.entry};
        o.msg.wayback.push_back({0, o.msg.entry});
    }
    return o;
}

std::vector<Outbound> roots(const TileRecord& t, const Message& m) {
    std::vector<Outbound> out;
    for (int g = 1; g <= kGates; ++g)
        if (!t.outer(g))
            out.push_back(cross(t, m, g, Status::white));
    return out;
}

} // namespace

Emission emit_public(const TileRecord& sender, const Message& fresh) {
    Message base = fresh;
    base.wait = 0;
    base.wayback.clear();
    Emission e{roots(sender, base), {}};
    e.eraser.id = fresh.id;
    e.eraser.kind = MessageKind::erasing;
    e.eraser.wait = std::max(1, fresh.wait);
    return e;
}

std::vector<Outbound> relay_public(const TileRecord& t, const Message& m) {
    std::vector<Outbound> out;
    const bool white = m.relative_status == Status::white;
    // rule (3) read left to right: W -> B W W, B -> B W
    const int first = white ? 3 : 4;
    for (int s = first; s <= 5; ++s) {
        const int ex = relative_exit(m.entry, s);
        if (t.outer(ex))
            continue;
        out.push_back(cross(t, m, ex, s == first ? Status::black : Status::white));
    }
    return out;
}

ErasingStep step_erasing(const TileRecord& t, const Message& m) {
    ErasingStep st;
    if (m.wait > 1) {
        st.held = m;
        --st.held->wait;
    } else if (m.wait == 1) {
        Message flood = m;
        flood.wait = 0;
        st.flood = roots(t, flood);
        st.launched = true;
    } else {
        st.flood = relay_public(t, m);
    }
    return st;
}

Conveyance convey_private(const TileRecord& t, Message m) {
    Conveyance c;
    if (m.direct.empty()) {
        c.why = "empty route";
        return c;
    }
    const GatePair top = m.direct.back();
    if (top.en != m.entry) {
        c.why = "entered by side " + std::to_string(m.entry) + ", route says " + std::to_string(top.en);
        return c;
    }
    m.direct.pop_back();
    m.wayback.push_back({top.ex, top.en});
    if (top.ex == 0) {
        if (!m.direct.empty()) {
            c.why = "route goes on past its end";
            return c;
        }
        c.result = Conveyance::Result::delivered;
        c.delivered = std::move(m);
        return c;
    }
    if (top.ex < 1 || top.ex > kGates || t.outer(top.ex)) {
        c.why = "exit side " + std::to_string(top.ex) + " leaves the space";
        return c;
    }
    m.entry = t.associate_of(top.ex);
    c.result = Conveyance::Result::forwarded;
    c.out = {top.ex, std::move(m)};
    return c;
}

Message make_answer(const Message& delivered, std::uint64_t id) {
    Message a;
    a.id = id;
    a.kind = MessageKind::nonpublic;
    a.tag = Tag::answer;
    a.direct = delivered.wayback;
    return a;
}

std::optional<Message> make_reply(const Message& public_m, std::uint64_t id) {
    if (public_m.wayback.empty())
        return std::nullopt;
    Message r;
    r.id = id;
    r.kind = MessageKind::nonpublic;
    r.tag = Tag::reply;
    r.origin = public_m.id;
    r.direct = public_m.wayback;
    return r;
}

std::optional<Message> make_write(const Space& space, const TileCoord& from, const TileCoord& target,
                                  std::uint64_t id) {
    if (!space.contains(target))
        throw std::invalid_argument("make_write: " + target.to_string() + " is outside the space");
    if (from == target)
        return std::nullopt;
    Message w;
    w.id = id;
    w.kind = MessageKind::nonpublic;
    w.tag = Tag::write;
    w.direct = to_stack(shortest(from, target));
    return w;
}

} // namespace hepta
