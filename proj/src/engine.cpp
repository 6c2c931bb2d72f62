#include "heptagrid/engine.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace hepta {

namespace {

constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kProvisional = 1ULL << 63;

constexpr std::size_t idx(Counted c) { return static_cast<std::size_t>(c); }

bool canonical_less(const Message& a, const Message& b) {
    if (a.id != b.id)
        return a.id < b.id;
    if (a.kind != b.kind)
        return a.kind < b.kind;
    if (a.entry != b.entry)
        return a.entry < b.entry;
    return a.wait < b.wait;
}

void sort_canonical(std::vector<Message>& v) { std::stable_sort(v.begin(), v.end(), canonical_less); }

bool present(const std::vector<Message>& st, std::uint64_t id, MessageKind kind) {
    return std::any_of(st.begin(), st.end(), [&](const Message& m) { return m.id == id && m.kind == kind; });
}

} // namespace

void SimConfig::validate() const {
    if (depth < 1 || depth > Space::kMaxDepth)
        throw std::invalid_argument("depth must lie in 1.." + std::to_string(Space::kMaxDepth));
    if (iterations < 0)
        throw std::invalid_argument("iterations must be non-negative");
    for (double l : {lambda_public, lambda_border, lambda_reply, lambda_write, lambda_radius})
        if (!(l >= 0.0) || !std::isfinite(l))
            throw std::invalid_argument("Poisson coefficients must be finite and non-negative");
    if (threads < 1)
        throw std::invalid_argument("at least one worker thread is needed");
}

KeyedStream::KeyedStream(std::uint64_t seed, std::uint64_t tile, std::uint64_t tick, Purpose purpose,
                         std::uint64_t extra)
    : key_(mix(mix(mix(mix(mix(seed) ^ tile) ^ tick) ^ static_cast<std::uint64_t>(purpose)) ^ extra)) {}

std::uint64_t KeyedStream::next_u64() { return mix(key_ + 0xd1b54a32d192ed03ULL * ++counter_); }

double KeyedStream::next_unit() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

std::uint64_t KeyedStream::next_range(std::uint64_t n) {
    if (n == 0)
        throw std::invalid_argument("next_range: empty range");
    // rejection keeps the draw exactly uniform
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do
        x = next_u64();
    while (x >= limit);
    return 1 + x % n;
}

unsigned poisson_draw(KeyedStream& s, double lambda) {
    const double floor = std::exp(-lambda);
    unsigned k = 0;
    double prod = 1.0;
    for (;;) {
        prod *= s.next_unit();
        if (prod < floor)
            return k;
        ++k;
    }
}

const char* to_string(Action a) {
    switch (a) {
    case Action::emit: return "emit";
    case Action::relay: return "relay";
    case Action::convey: return "convey";
    case Action::deliver: return "deliver";
    case Action::erase: return "erase";
    case Action::cancel: return "cancel";
    case Action::drop: return "drop";
    }
    return "?";
}

Simulation::Simulation(const SimConfig& config)
    : Simulation(config, nullptr) {}

Simulation::Simulation(const SimConfig& config, std::shared_ptr<const Space> space)
    : config_(config), space_(std::move(space)) {
    config_.validate();
    if (!space_)
        space_ = std::make_shared<const Space>(Space::build(config_.depth));
    else if (space_->depth() != config_.depth)
        throw std::invalid_argument("Simulation: the space depth differs from the configuration");
    stack0_.resize(space_->size());
    stack1_.resize(space_->size());
}

std::uint64_t Simulation::inject(TileIndex tile, Message m) {
    if (tile < 0 || static_cast<std::size_t>(tile) >= space_->size())
        throw std::out_of_range("inject: no such tile");
    if (m.id == 0)
        m.id = next_id_++;
    const std::uint64_t id = m.id;
    auto& st = stack0_[static_cast<std::size_t>(tile)];
    st.push_back(std::move(m));
    sort_canonical(st);
    return id;
}

std::uint64_t Simulation::inject_public(TileIndex tile, int radius) {
    if (radius < 1)
        throw std::invalid_argument("inject_public: the radius is at least 1");
    Message m;
    m.kind = MessageKind::public_;
    m.wait = radius;
    return inject(tile, std::move(m));
}

std::uint64_t Simulation::inject_write(TileIndex from, const TileCoord& target) {
    auto w = make_write(*space_, space_->coord(from), target, 0);
    if (!w)
        throw std::invalid_argument("inject_write: a tile does not write to itself");
    return inject(from, std::move(*w));
}

std::uint64_t Simulation::next_provisional(TileIndex tile, std::uint32_t& seq) const {
    return kProvisional | (static_cast<std::uint64_t>(tile) << 24) | seq++;
}

void Simulation::record(Scratch& s, TileIndex tile, const Message& m, Action a) const {
    if (sink_)
        s.events.push_back({time_, m.kind, m.tag, m.id, tile, a});
}

void Simulation::send(TileIndex from, Outbound o, Scratch& s) const {
    const TileIndex to = (*space_)[from].next(o.gate);
    if (to != kNoTile)
        s.out.push_back({to, std::move(o.msg)});
}

void Simulation::convey(TileIndex tile, Message m, Scratch& s, std::uint32_t& seq) const {
    const std::uint64_t id = m.id;
    const Tag tag = m.tag;
    Conveyance c = convey_private((*space_)[tile], std::move(m));
    switch (c.result) {
    case Conveyance::Result::forwarded:
        record(s, tile, c.out.msg, Action::convey);
        send(tile, std::move(c.out), s);
        break;
    case Conveyance::Result::delivered: {
        record(s, tile, c.delivered, Action::deliver);
        // the answer is immediate and keeps the exchange going
        convey(tile, make_answer(c.delivered, next_provisional(tile, seq)), s, seq);
        break;
    }
    case Conveyance::Result::dropped:
        if (sink_)
            s.events.push_back({time_, MessageKind::nonpublic, tag, id, tile, Action::drop});
        ++s.dropped;
        break;
    }
}

void Simulation::action_in(TileIndex tile, Scratch& s) const {
    const TileRecord& rec = (*space_)[tile];
    const auto& st = stack0_[static_cast<std::size_t>(tile)];
    const bool odd = time_ % 2 != 0;
    const auto t = static_cast<std::uint64_t>(time_);
    const auto key = static_cast<std::uint64_t>(tile);
    std::uint32_t seq = 0;

    for (const Message& m : st) {
        switch (m.kind) {
        case MessageKind::public_:
            if (present(st, m.id, MessageKind::erasing)) {
                record(s, tile, m, Action::cancel);
                break;
            }
            if (odd) {
                if (m.fresh_public()) {
                    Emission e = emit_public(rec, m);
                    ++s.emitted[idx(Counted::public_)];
                    record(s, tile, m, Action::emit);
                    for (auto& c : e.copies)
                        send(tile, std::move(c), s);
                    s.out.push_back({tile, std::move(e.eraser)});
                } else {
                    record(s, tile, m, Action::relay);
                    for (auto& c : relay_public(rec, m))
                        send(tile, std::move(c), s);
                }
            } else {
                s.out.push_back({tile, m});
                KeyedStream rs(config_.seed, key, t, Purpose::reply, m.id);
                if (!m.fresh_public() && poisson_draw(rs, config_.lambda_reply) > 0) {
                    auto r = make_reply(m, next_provisional(tile, seq));
                    ++s.emitted[idx(Counted::reply)];
                    record(s, tile, *r, Action::emit);
                    convey(tile, std::move(*r), s, seq);
                }
            }
            break;
        case MessageKind::nonpublic:
            convey(tile, m, s, seq);
            break;
        case MessageKind::erasing: {
            if (present(st, m.id, MessageKind::public_)) {
                record(s, tile, m, Action::cancel);
                break;
            }
            ErasingStep e = step_erasing(rec, m);
            if (e.held)
                s.out.push_back({tile, std::move(*e.held)});
            if (e.launched) {
                ++s.emitted[idx(Counted::erase)];
                record(s, tile, m, Action::erase);
            } else if (m.wait == 0) {
                record(s, tile, m, Action::relay);
            }
            for (auto& c : e.flood)
                send(tile, std::move(c), s);
            break;
        }
        }
    }

    KeyedStream ws(config_.seed, key, t, Purpose::write);
    if (poisson_draw(ws, config_.lambda_write) > 0) {
        KeyedStream pick(config_.seed, key, t, Purpose::write_target);
        const TileCoord self = space_->coord(tile);
        TileCoord target;
        do
            target = TileCoord::make(static_cast<int>(pick.next_range(kSectors)),
                                     pick.next_range(space_->sector_size()));
        while (target == self);
        auto w = make_write(*space_, self, target, next_provisional(tile, seq));
        ++s.emitted[idx(Counted::write)];
        record(s, tile, *w, Action::emit);
        convey(tile, std::move(*w), s, seq);
    }

    if (!odd) {
        const auto schedule = [&](Purpose draw, Purpose radius, double lambda) {
            KeyedStream ps(config_.seed, key, t, draw);
            if (poisson_draw(ps, lambda) == 0)
                return;
            KeyedStream rs(config_.seed, key, t, radius);
            Message m;
            m.id = next_provisional(tile, seq);
            m.kind = MessageKind::public_;
            m.wait = std::max(1u, poisson_draw(rs, config_.lambda_radius));
            s.out.push_back({tile, std::move(m)});
        };
        schedule(Purpose::public_, Purpose::radius, config_.lambda_public);
        if (rec.border)
            schedule(Purpose::border, Purpose::border_radius, config_.lambda_border);
    }
}

void Simulation::step() {
    const std::size_t n = space_->size();
    const auto workers = static_cast<std::size_t>(std::min<int>(config_.threads, static_cast<int>(n)));
    std::vector<Scratch> parts(workers);
    const auto run = [&](std::size_t w) {
        const std::size_t lo = n * w / workers, hi = n * (w + 1) / workers;
        for (std::size_t i = lo; i < hi; ++i)
            action_in(static_cast<TileIndex>(i), parts[w]);
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(run, w);
        for (auto& th : pool)
            th.join();
    }

    Counts emitted{};
    std::vector<Event> events;
    for (auto& p : parts) {
        for (auto& d : p.out)
            stack1_[static_cast<std::size_t>(d.to)].push_back(std::move(d.msg));
        for (std::size_t k = 0; k < kCounted; ++k)
            emitted[k] += p.emitted[k];
        dropped_ += p.dropped;
        events.insert(events.end(), p.events.begin(), p.events.end());
    }

    // provisional ids become final in order of (tile, creation rank)
    std::vector<std::uint64_t> fresh;
    for (const auto& st : stack1_)
        for (const auto& m : st)
            if (m.id & kProvisional)
                fresh.push_back(m.id);
    for (const auto& e : events)
        if (e.id & kProvisional)
            fresh.push_back(e.id);
    std::sort(fresh.begin(), fresh.end());
    fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
    std::unordered_map<std::uint64_t, std::uint64_t> final_id;
    final_id.reserve(fresh.size());
    for (auto p : fresh)
        final_id.emplace(p, next_id_++);
    for (auto& st : stack1_) {
        for (auto& m : st)
            if (m.id & kProvisional)
                m.id = final_id.at(m.id);
        sort_canonical(st);
    }
    for (auto& e : events)
        if (e.id & kProvisional)
            e.id = final_id.at(e.id);

    stack0_.swap(stack1_);
    for (auto& st : stack1_)
        st.clear();
    ++time_;
    for (std::size_t k = 0; k < kCounted; ++k)
        cumulative_[k] += emitted[k];
    last_emitted_ = emitted;
    if (sink_)
        for (const auto& e : events)
            sink_(e);
}

StatsSnapshot Simulation::collect() const {
    StatsSnapshot s;
    s.t = time_;
    s.emitted = last_emitted_;
    s.cumulative = cumulative_;
    s.argmax = space_->coord(0);
    for (std::size_t i = 0; i < stack0_.size(); ++i) {
        const auto& st = stack0_[i];
        const TileIndex ti = static_cast<TileIndex>(i);
        s.in_flight += st.size();
        // strict comparison: ties stay with the lowest sector and number
        if (st.size() > s.max_per_tile) {
            s.max_per_tile = st.size();
            s.argmax = space_->coord(ti);
        }
        std::array<std::uint64_t, 3> by{};
        for (const auto& m : st)
            ++by[static_cast<std::size_t>(m.kind)];
        for (std::size_t k = 0; k < 3; ++k)
            if (by[k] > s.max_by_kind[k]) {
                s.max_by_kind[k] = by[k];
                s.argmax_by_kind[k] = space_->coord(ti);
            }
    }
    return s;
}

const StatsSnapshot& RunReport::at(int t) const {
    const auto k = static_cast<std::size_t>(std::max(0, t));
    return snapshots[std::min(k, snapshots.size() - 1)];
}

RunReport execute(const SimConfig& config, const EventSink& sink) {
    Simulation sim(config);
    if (sink)
        sim.set_sink(sink);
    RunReport r;
    r.config = config;
    r.tiles = sim.space().size();
    r.snapshots.reserve(static_cast<std::size_t>(config.iterations) + 1);
    r.snapshots.push_back(sim.collect());
    double acc = 0.0;
    for (int t = 1; t <= config.iterations; ++t) {
        sim.step();
        r.snapshots.push_back(sim.collect());
        acc += static_cast<double>(sent_total(r.snapshots.back().cumulative)) / t;
    }
    if (config.iterations > 0)
        r.mean = acc / config.iterations;
    for (const auto& s : r.snapshots)
        if (s.max_per_tile > r.max_per_tile) {
            r.max_per_tile = s.max_per_tile;
            r.max_time = s.t;
            r.max_tile = s.argmax;
        }
    return r;
}

void write_csv(std::ostream& os, const RunReport& report) {
    os << "t,n_public,n_reply,n_write,n_erase,in_flight,max_per_tile,argmax\n";
    for (const auto& s : report.snapshots)
        os << s.t << ',' << s.emitted[0] << ',' << s.emitted[1] << ',' << s.emitted[2] << ',' << s.emitted[3]
           << ',' << s.in_flight << ',' << s.max_per_tile << ',' << s.argmax << '\n';
}

void write_summary(std::ostream& os, const RunReport& report) {
    const auto& c = report.config;
    const auto& last = report.last();
    const auto total = sent_total(last.cumulative);
    const auto ratio = [&](std::uint64_t x) {
        std::ostringstream r;
        r << std::fixed << std::setprecision(3) << (total ? static_cast<double>(x) / total : 0.0);
        return r.str();
    };
    const auto& cum = last.cumulative;
    os << "depth: " << c.depth << '\n'
       << "tiles: " << report.tiles << '\n'
       << "radius: " << c.lambda_radius << '\n'
       << "seed: " << c.seed << '\n'
       << "time: " << last.t << '\n'
       << "sent: " << total << '\n'
       << "mean: " << std::fixed << std::setprecision(5) << report.mean << '\n'
       << std::defaultfloat
       << "max: " << report.max_per_tile << " at " << report.max_tile << " t=" << report.max_time << '\n'
       << "public: " << cum[idx(Counted::public_)] << " ratio " << ratio(cum[idx(Counted::public_)]) << '\n'
       << "reply: " << cum[idx(Counted::reply)] << " ratio " << ratio(cum[idx(Counted::reply)]) << '\n'
       << "write: " << cum[idx(Counted::write)] << " ratio " << ratio(cum[idx(Counted::write)]) << '\n'
       << "total: " << total << '\n'
       << "erase: " << cum[idx(Counted::erase)] << '\n';
    if (last.t >= 24) {
        const auto& s = report.at(24);
        os << "time 24 sent: " << sent_total(s.cumulative) << '\n'
           << "time 24 max: " << s.max_per_tile << " at " << s.argmax << '\n'
           << "time 24 public: " << s.cumulative[idx(Counted::public_)] << '\n'
           << "time 24 reply: " << s.cumulative[idx(Counted::reply)] << '\n'
           << "time 24 write: " << s.cumulative[idx(Counted::write)] << '\n';
    }
}

std::string trace_line(const Space& space, const Event& e) {
    std::ostringstream os;
    os << "t=" << e.t << " kind=" << (e.kind == MessageKind::nonpublic ? to_string(e.tag) : to_string(e.kind))
       << " id=" << e.id << " at=" << space.coord(e.at) << " action=" << to_string(e.action);
    return os.str();
}

} // namespace hepta
