#include "heptagrid/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>

#include "CLI11.hpp"
#include "heptagrid/engine.hpp"
#include "heptagrid/routing.hpp"

namespace hepta {

namespace {

// An output path, or the given stream when the path is empty or "-".
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (path.empty() || path == "-")
            return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_)
            throw std::runtime_error("cannot open " + path + " for writing");
        os_ = file_.get();
    }
    std::ostream& get() { return *os_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
};

// deep enough for the tile and all of its neighbours
int default_depth(const TileCoord& t) {
    if (t.is_central())
        return 1;
    return std::min(Space::kMaxDepth, static_cast<int>(level_of(t.num)) + 1);
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Navigation and message passing on the {7,3} heptagrid", "hepta"};
    app.require_subcommand(1);

    SimConfig cfg;
    std::string out_path, format = "summary", trace_path;
    auto* run = app.add_subcommand("run", "simulate the message protocol and report statistics");
    run->add_option("--depth", cfg.depth, "levels of the Fibonacci trees")->check(CLI::Range(1, Space::kMaxDepth));
    run->add_option("--iterations", cfg.iterations, "number of transitions")->check(CLI::NonNegativeNumber);
    run->add_option("--lambda-radius", cfg.lambda_radius, "mean propagation radius")->check(CLI::NonNegativeNumber);
    run->add_option("--lambda-public", cfg.lambda_public)->check(CLI::NonNegativeNumber);
    run->add_option("--lambda-border", cfg.lambda_border)->check(CLI::NonNegativeNumber);
    run->add_option("--lambda-reply", cfg.lambda_reply)->check(CLI::NonNegativeNumber);
    run->add_option("--lambda-write", cfg.lambda_write)->check(CLI::NonNegativeNumber);
    run->add_option("--seed", cfg.seed);
    run->add_option("--threads", cfg.threads)->check(CLI::PositiveNumber);
    run->add_option("--out", out_path, "CSV or summary file; with --format both the summary goes to <out>.summary");
    run->add_option("--format", format)->check(CLI::IsMember({"csv", "summary", "both"}));
    run->add_flag("--trace", cfg.trace, "log every message event");
    run->add_option("--trace-out", trace_path, "trace log file (default: standard error)");

    std::string a_text, b_text;
    auto* path = app.add_subcommand("path", "shortest route between two tiles");
    path->add_option("from", a_text, "sector:fibword")->required();
    path->add_option("to", b_text, "sector:fibword")->required();

    std::string c_text;
    int nb_depth = 0;
    auto* nbrs = app.add_subcommand("neighbors", "the seven neighbours of a tile");
    nbrs->add_option("tile", c_text, "sector:fibword")->required();
    nbrs->add_option("--depth", nb_depth)->check(CLI::Range(1, Space::kMaxDepth));

    int sp_depth = 5;
    std::string dump_path;
    auto* space = app.add_subcommand("space", "build the space and dump its tiles");
    space->add_option("--depth", sp_depth)->check(CLI::Range(1, Space::kMaxDepth));
    space->add_option("--out", dump_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "hepta: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*run) {
            std::unique_ptr<Sink> trace;
            EventSink sink;
            if (cfg.trace) {
                trace = std::make_unique<Sink>(trace_path, err);
                auto space_ptr = std::make_shared<const Space>(Space::build(cfg.depth));
                sink = [&trace, space_ptr](const Event& e) { trace->get() << trace_line(*space_ptr, e) << '\n'; };
            }
            const RunReport report = execute(cfg, sink);
            Sink main(out_path, out);
            if (format == "csv") {
                write_csv(main.get(), report);
            } else if (format == "summary") {
                write_summary(main.get(), report);
            } else {
                write_csv(main.get(), report);
                if (out_path.empty() || out_path == "-") {
                    main.get() << '\n';
                    write_summary(main.get(), report);
                } else {
                    Sink summary(out_path + ".summary", out);
                    write_summary(summary.get(), report);
                }
            }
        } else if (*path) {
            const TileCoord a = TileCoord::parse(a_text), b = TileCoord::parse(b_text);
            const Route r = a == b ? Route{{0, 0}} : shortest(a, b);
            out << "route: " << route_to_string(r) << '\n' << "length: " << route_length(r) << '\n' << "tiles:";
            for (const auto& t : route_tiles(a, r))
                out << ' ' << t;
            out << '\n';
        } else if (*nbrs) {
            const TileCoord c = TileCoord::parse(c_text);
            const int depth = nb_depth ? nb_depth : default_depth(c);
            const Space sp = Space::build(depth);
            const TileIndex i = sp.index_of(c);
            if (i == kNoTile)
                throw std::out_of_range(c.to_string() + " is beyond depth " + std::to_string(depth));
            const auto& rec = sp[i];
            out << c << ' ' << to_string(rec.status) << ' ' << to_string(rec.branch) << '\n';
            for (int g = 1; g <= kGates; ++g)
                out << g << ' ' << sp.neighbour_coord(i, g) << ' ' << rec.associate_of(g)
                    << (rec.outer(g) ? " outer" : "") << '\n';
        } else if (*space) {
            const Space sp = Space::build(sp_depth);
            Sink dump(dump_path, out);
            sp.dump(dump.get());
            if (!dump_path.empty() && dump_path != "-")
                out << "tiles: " << sp.size() << '\n';
        }
    } catch (const std::exception& e) {
        err << "hepta: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace hepta
