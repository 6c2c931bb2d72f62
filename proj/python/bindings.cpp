#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "heptagrid/engine.hpp"
#include "heptagrid/routing.hpp"

namespace py = pybind11;
using namespace hepta;

namespace {

using PyRoute = std::vector<std::pair<int, int>>;

PyRoute to_py(const Route& r) {
    PyRoute out;
    for (const auto& p : r)
        out.emplace_back(p.en, p.ex);
    return out;
}

Route from_py(const PyRoute& r) {
    Route out;
    for (const auto& [en, ex] : r)
        out.push_back({en, ex});
    return out;
}

TileCoord coord(const std::string& s) { return TileCoord::parse(s); }

std::vector<std::string> texts(const std::vector<TileCoord>& tiles) {
    std::vector<std::string> out;
    for (const auto& t : tiles)
        out.push_back(t.to_string());
    return out;
}

py::dict snapshot_dict(const StatsSnapshot& s) {
    py::dict d;
    d["t"] = s.t;
    d["public"] = s.emitted[static_cast<std::size_t>(Counted::public_)];
    d["reply"] = s.emitted[static_cast<std::size_t>(Counted::reply)];
    d["write"] = s.emitted[static_cast<std::size_t>(Counted::write)];
    d["erase"] = s.emitted[static_cast<std::size_t>(Counted::erase)];
    d["sent"] = sent_total(s.cumulative);
    d["in_flight"] = s.in_flight;
    d["max_per_tile"] = s.max_per_tile;
    d["argmax"] = s.argmax.to_string();
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cellular automaton on the heptagrid {7,3}";

    py::register_exception<std::invalid_argument>(m, "InvalidArgument", PyExc_ValueError);

    m.def("encode", [](std::uint64_t n) { return encode(n).to_string(); }, py::arg("n"));
    m.def("decode", [](const std::string& w) { return FibWord::parse(w).decode(); }, py::arg("word"));
    m.def("succ", [](const std::string& w) { return FibWord::parse(w).succ().to_string(); }, py::arg("word"));
    m.def("pred", [](const std::string& w) { return FibWord::parse(w).pred().to_string(); }, py::arg("word"));
    m.def("fib", [](std::size_t j) { return fib(j); }, py::arg("j"));

    m.def("neighbors", [](const std::string& c) {
        const auto nb = neighbors_of(coord(c));
        return texts({nb.begin(), nb.end()});
    }, py::arg("tile"));
    m.def("pathroot", [](const std::string& c) { return to_py(pathroot(coord(c))); }, py::arg("tile"));
    m.def("leftmost", [](const PyRoute& r) { return to_py(leftmost(from_py(r))); }, py::arg("route"));
    m.def("shortest", [](const std::string& a, const std::string& b) { return to_py(shortest(coord(a), coord(b))); },
          py::arg("source"), py::arg("target"));
    m.def("route_tiles", [](const std::string& from, const PyRoute& r) { return texts(route_tiles(coord(from), from_py(r))); },
          py::arg("source"), py::arg("route"));
    m.def("route_text", [](const PyRoute& r) { return route_to_string(from_py(r)); }, py::arg("route"));

    py::class_<Space>(m, "Space")
        .def(py::init([](int depth) {
            py::gil_scoped_release unlock;
            return Space::build(depth);
        }), py::arg("depth"))
        .def_property_readonly("depth", &Space::depth)
        .def_property_readonly("sector_size", &Space::sector_size)
        .def("__len__", &Space::size)
        .def("coord", [](const Space& sp, TileIndex i) { return sp.coord(i).to_string(); }, py::arg("index"))
        .def("index", [](const Space& sp, const std::string& c) -> std::optional<TileIndex> {
            const TileIndex i = sp.index_of(coord(c));
            if (i == kNoTile)
                return std::nullopt;
            return i;
        }, py::arg("tile"))
        .def("neighbours", [](const Space& sp, TileIndex i) {
            std::vector<std::optional<TileIndex>> out;
            for (int g = 1; g <= kGates; ++g)
                out.push_back(sp[i].outer(g) ? std::nullopt : std::optional<TileIndex>(sp[i].next(g)));
            return out;
        }, py::arg("index"))
        .def("associates", [](const Space& sp, TileIndex i) {
            std::vector<int> out;
            for (int g = 1; g <= kGates; ++g)
                out.push_back(sp[i].associate_of(g));
            return out;
        }, py::arg("index"))
        .def("status", [](const Space& sp, TileIndex i) { return std::string(to_string(sp[i].status)); }, py::arg("index"));

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("depth", &SimConfig::depth)
        .def_readwrite("iterations", &SimConfig::iterations)
        .def_readwrite("lambda_public", &SimConfig::lambda_public)
        .def_readwrite("lambda_border", &SimConfig::lambda_border)
        .def_readwrite("lambda_reply", &SimConfig::lambda_reply)
        .def_readwrite("lambda_write", &SimConfig::lambda_write)
        .def_readwrite("lambda_radius", &SimConfig::lambda_radius)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("threads", &SimConfig::threads)
        .def("validate", &SimConfig::validate);

    py::class_<RunReport>(m, "RunReport")
        .def_readonly("config", &RunReport::config)
        .def_readonly("tiles", &RunReport::tiles)
        .def_readonly("mean", &RunReport::mean)
        .def_readonly("max_per_tile", &RunReport::max_per_tile)
        .def_readonly("max_time", &RunReport::max_time)
        .def_property_readonly("max_tile", [](const RunReport& r) { return r.max_tile.to_string(); })
        .def_property_readonly("totals", [](const RunReport& r) {
            const auto& c = r.last().cumulative;
            py::dict d;
            d["public"] = c[static_cast<std::size_t>(Counted::public_)];
            d["reply"] = c[static_cast<std::size_t>(Counted::reply)];
            d["write"] = c[static_cast<std::size_t>(Counted::write)];
            d["erase"] = c[static_cast<std::size_t>(Counted::erase)];
            d["sent"] = sent_total(c);
            return d;
        })
        .def("snapshots", [](const RunReport& r) {
            py::list out;
            for (const auto& s : r.snapshots)
                out.append(snapshot_dict(s));
            return out;
        })
        .def("csv", [](const RunReport& r) {
            std::ostringstream os;
            write_csv(os, r);
            return os.str();
        })
        .def("summary", [](const RunReport& r) {
            std::ostringstream os;
            write_summary(os, r);
            return os.str();
        });

    m.def("execute", [](const SimConfig& c) {
        py::gil_scoped_release unlock;
        return execute(c);
    }, py::arg("config"));
}
