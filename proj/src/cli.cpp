#include "gromov/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "gromov/chaos.hpp"
#include "gromov/constructions.hpp"
#include "gromov/enumeration.hpp"
#include "gromov/io.hpp"
#include "gromov/symmetry.hpp"

namespace gromov::cli {

using io::json;

std::size_t default_search_radius() {
    if (const char* env = std::getenv("GROMOV_SEARCH_RADIUS")) {
        try {
            std::size_t used = 0;
            const unsigned long value = std::stoul(env, &used);
            if (used == std::char_traits<char>::length(env))
                return value;
        } catch (const std::exception&) {
        }
    }
    return 10;
}

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Rational parse_rational(const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError("bad rational '" + text + "': " + e.what());
    }
}

Color parse_color(const std::string& text) {
    try {
        return Color::from_bits(text);
    } catch (const std::invalid_argument&) {
        throw UsageError("bad bit string '" + text + "'");
    }
}

ChaosSource load(const std::string& argument, const std::optional<std::string>& point = std::nullopt) {
    json spec = io::load_spec(argument);
    if (point && spec.is_object())
        spec["point"] = *point;
    return io::realize(spec);
}

// Finite graph behind a source: the whole graph for inline finite specs
// without an explicit radius, otherwise the ball around the basepoint.
FiniteColoredGraph window_of(const ChaosSource& s, std::optional<std::size_t> radius, std::size_t fallback) {
    if (!radius)
        if (const FiniteColoredGraph* g = s.pointed.graph.finite_graph())
            return g->with_basepoint(g->require(s.pointed.point));
    return ball(s.pointed, radius.value_or(fallback)).graph;
}

struct Output {
    std::ostream& stdout_stream;
    std::string path;

    void emit(const std::string& text) const {
        if (path.empty()) {
            stdout_stream << text;
            return;
        }
        std::ofstream file(path);
        if (!file)
            throw std::runtime_error("cannot write '" + path + "'");
        file << text;
    }
    void emit(const json& doc) const { emit(doc.dump(2) + "\n"); }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computations on pointed colored graphs", "gromov"};
    app.require_subcommand(1);
    std::string output_path;
    int exit_code = 0;
    auto sink = [&] { return Output{out, output_path}; };

    // build / ball ------------------------------------------------------------
    std::string spec_a, spec_b, center, format = "json";
    std::optional<std::size_t> radius_opt;
    auto* build = app.add_subcommand("build", "Export a finite window of a graph");
    build->add_option("spec", spec_a, "Graph spec: file, JSON literal or construction name")->required();
    build->add_option("--radius,-R", radius_opt, "Window radius around the basepoint (default 3)");
    build->add_option("--center", center, "Vertex to center the window at");
    build->add_option("--format", format)->check(CLI::IsMember({"json", "dot"}));
    build->add_option("-o,--output", output_path);
    build->callback([&] {
        const ChaosSource s = load(spec_a, center.empty() ? std::nullopt : std::optional(center));
        const FiniteColoredGraph g = window_of(s, radius_opt, 3);
        if (format == "dot")
            sink().emit(io::export_dot(g, s.pointed.graph.name()));
        else
            sink().emit(io::graph_to_json(g));
    });

    std::size_t radius = 1;
    auto* ball_cmd = app.add_subcommand("ball", "Disk D(x, r) with vertex depths");
    ball_cmd->add_option("spec", spec_a)->required();
    ball_cmd->add_option("--radius,-R", radius)->required();
    ball_cmd->add_option("--center", center);
    ball_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "dot"}));
    ball_cmd->add_option("-o,--output", output_path);
    ball_cmd->callback([&] {
        const ChaosSource s = load(spec_a, center.empty() ? std::nullopt : std::optional(center));
        const PointedBall b = ball(s.pointed, radius);
        if (format == "dot") {
            sink().emit(io::export_dot(b.graph, s.pointed.graph.name()));
            return;
        }
        json depths = json::object();
        for (std::size_t v = 0; v < b.graph.size(); ++v)
            depths[b.graph.key(v)] = b.depth[v];
        sink().emit(json{{"center", b.center_key()},
                         {"radius", b.radius},
                         {"graph", io::graph_to_json(b.graph)},
                         {"depth", std::move(depths)},
                         {"sphere", sphere(s.pointed.graph, s.pointed.point, radius)}});
    });

    // dist / equiv -------------------------------------------------------------
    std::size_t max_depth = 8;
    auto* dist = app.add_subcommand("dist", "Truncated distance between two pointed graphs");
    dist->add_option("a", spec_a)->required();
    dist->add_option("b", spec_b)->required();
    dist->add_option("--max-depth,-N", max_depth);
    dist->callback([&] {
        if (max_depth == 0)
            throw UsageError("--max-depth must be positive");
        const auto d = distance_truncated(load(spec_a).pointed, load(spec_b).pointed, max_depth);
        sink().emit(io::truncated_distance_to_json(d));
    });

    std::string eps_text = "1";
    auto* equiv = app.add_subcommand("equiv", "Search for an (R, eps)-equivalence");
    equiv->add_option("a", spec_a)->required();
    equiv->add_option("b", spec_b)->required();
    equiv->add_option("-R,--radius", radius)->required();
    equiv->add_option("--eps", eps_text, "Color tolerance p/q");
    equiv->callback([&] {
        const Rational eps = parse_rational(eps_text);
        if (!eps.is_positive())
            throw UsageError("--eps must be positive");
        if (auto h = find_equivalence(load(spec_a).pointed, load(spec_b).pointed, radius, eps))
            sink().emit(io::equivalence_to_json(*h));
        else
            sink().emit(std::string("none\n"));
    });

    // aut / classes -------------------------------------------------------------
    bool pointed = false;
    auto* aut = app.add_subcommand("aut", "Color-preserving automorphism group");
    aut->add_option("spec", spec_a)->required();
    aut->add_flag("--pointed", pointed, "Fix the basepoint");
    aut->add_option("--radius,-R", radius_opt, "Use the ball of this radius (default 2 for infinite graphs)");
    aut->callback([&] {
        const FiniteColoredGraph g = window_of(load(spec_a), radius_opt, 2);
        sink().emit(io::automorphisms_to_json(g, automorphisms(g, pointed)));
    });

    std::size_t window = 2;
    bool serial = false;
    auto* classes = app.add_subcommand("classes", "Partition window basepoints into (R, eps)-classes");
    classes->add_option("spec", spec_a)->required();
    classes->add_option("--window,-W", window)->required();
    classes->add_option("--radius,-R", radius)->required();
    classes->add_option("--eps", eps_text);
    classes->add_flag("--serial", serial, "Use the serial reference kernel");
    classes->callback([&] {
        const Rational eps = parse_rational(eps_text);
        if (!eps.is_positive())
            throw UsageError("--eps must be positive");
        const ChaosSource s = load(spec_a);
        const auto keys = ball(s.pointed, window).graph.keys();
        const auto partition = pointed_class_count(s.pointed.graph, keys, radius, eps,
                                                   serial ? Execution::serial : Execution::parallel);
        sink().emit(io::classes_to_json(partition, keys));
    });

    // color -----------------------------------------------------------------------
    std::string coloring, order = "standard";
    std::int64_t from = 1;
    std::optional<std::int64_t> to;
    std::size_t alphabet = 2;
    auto* color = app.add_subcommand("color", "Print symbols of a coloring of Z");
    color->add_option("coloring", coloring)->required()->check(CLI::IsMember({"champernowne", "word-line", "spine"}));
    color->add_option("-n", from, "First position")->required();
    color->add_option("--to", to, "Last position (inclusive)");
    color->add_option("--order", order)->check(CLI::IsMember({"listed", "paper", "standard"}));
    color->add_option("--alphabet", alphabet);
    color->callback([&] {
        const std::int64_t last = to.value_or(from);
        if (last < from)
            throw UsageError("--to must not precede -n");
        std::string text;
        for (std::int64_t z = from; z <= last; ++z) {
            if (coloring == "champernowne") {
                const auto o = *parse_champernowne_order(order);
                text += champernowne_color(z, o).is_zero() ? "0" : "1";
            } else if (coloring == "word-line") {
                if (!text.empty() && alphabet > 10)
                    text += ",";
                text += std::to_string(word_line_letter(alphabet, z));
            } else {
                text += (text.empty() ? "" : "\n") + spine_color(z).bits();
            }
        }
        sink().emit(text + "\n");
    });

    // check-w / check-v --------------------------------------------------------------
    std::size_t n = 1, r = 1, m = 1, search_radius = default_search_radius();
    bool report_radius = false;
    auto* check_w = app.add_subcommand("check-w", "Is the coloring injective on D(x, n)?");
    check_w->add_option("spec", spec_a)->required();
    check_w->add_option("-n", n)->required();
    check_w->add_flag("--stability", report_radius, "Also report the stability radius");
    check_w->callback([&] {
        const PointedBall disk = ball(load(spec_a).pointed, n);
        const bool member = in_W(disk);
        if (!report_radius) {
            sink().emit(std::string(member ? "true\n" : "false\n"));
            return;
        }
        sink().emit(json{{"n", n},
                         {"in_w", member},
                         {"stability_radius", member ? json(w_stability_radius(disk).to_string()) : json(nullptr)}});
    });

    std::string spine_text;
    auto* check_v = app.add_subcommand("check-v", "Bounded search for a far vertex matching the K-construction");
    check_v->add_option("spec", spec_a)->required();
    check_v->add_option("-n", n)->required();
    check_v->add_option("-r", r)->required();
    check_v->add_option("-m", m)->required();
    check_v->add_option("--search-radius", search_radius);
    check_v->add_option("--spine-color", spine_text);
    check_v->callback([&] {
        if (search_radius < r)
            throw UsageError("--search-radius must be at least r");
        if (m == 0)
            throw UsageError("m must be positive");
        const auto result = in_V(load(spec_a), n, r, m, search_radius, parse_color(spine_text));
        if (result.found())
            sink().emit(json{{"found", true},
                             {"witness", *result.witness},
                             {"equivalence", io::equivalence_to_json(*result.equivalence)}});
        else
            sink().emit(json{{"found", false}, {"not_found_within", result.search_radius}});
    });

    // certify / verify ------------------------------------------------------------------
    std::string mode = "almost-chaotic", witness_kind = "auto";
    std::size_t depth_n = 1, depth_m = 1;
    auto* certify = app.add_subcommand("certify", "Build a depth-stamped certificate");
    certify->add_option("spec", spec_a)->required();
    certify->add_option("--mode", mode)->check(CLI::IsMember({"almost-chaotic", "aperiodic", "chaotic"}));
    certify->add_option("-N", depth_n);
    certify->add_option("-M", depth_m);
    certify->add_option("--search-radius", search_radius);
    certify->add_option("--spine-color", spine_text);
    certify->add_option("--witness", witness_kind, "self, K, or auto (self when the graph declares translations)")
        ->check(CLI::IsMember({"auto", "self", "K"}));
    certify->add_option("-o,--output", output_path);
    certify->callback([&] {
        const json spec = io::load_spec(spec_a);
        const ChaosSource s = io::realize(spec);
        if (mode == "aperiodic") {
            sink().emit(io::aperiodicity_to_json(aperiodicity_certificate(s.pointed, depth_n)));
            return;
        }
        CertifyOptions options;
        options.search_radius = search_radius;
        options.spine_color = parse_color(spine_text);
        options.self_witness = witness_kind == "self" || (witness_kind == "auto" && s.periodic.has_value());
        if (options.self_witness && !s.periodic)
            throw UsageError("--witness self needs a graph with declared translations");
        if (mode == "chaotic") {
            sink().emit(io::verdict_to_json(chaotic_verdict(s, depth_n, depth_m, options)));
            return;
        }
        const auto result = generate_almost_chaotic(s, depth_n, depth_m, options);
        if (!result.certificate) {
            sink().emit(json{{"found", false},
                             {"failed_at", {{"n", result.failed_at->first}, {"m", result.failed_at->second}}},
                             {"search_radius", search_radius}});
            return;
        }
        json doc = io::certificate_to_json(*result.certificate);
        doc["source"] = spec;
        sink().emit(doc);
    });

    std::string cert_path;
    auto* verify = app.add_subcommand("verify", "Re-check an almost-chaotic certificate");
    verify->add_option("certificate", cert_path)->required()->check(CLI::ExistingFile);
    verify->add_option("spec", spec_a, "Graph spec (defaults to the one recorded in the certificate)");
    verify->callback([&] {
        const json doc = io::load_spec(cert_path);
        json spec;
        if (!spec_a.empty())
            spec = io::load_spec(spec_a);
        else if (doc.is_object() && doc.contains("source"))
            spec = doc.at("source");
        else
            throw UsageError("certificate records no source; pass a graph spec");
        const AlmostChaoticCertificate cert = io::certificate_from_json(doc);
        ChaosSource s = io::realize(spec);
        s.pointed.point = cert.point;
        const CertificateReport report = check_almost_chaotic(s, cert);
        sink().emit(io::certificate_report_to_json(report));
        if (!report.valid())
            exit_code = 1;
    });

    // enumerate -----------------------------------------------------------------------------
    std::size_t max_weight = 4, max_vertices = 4;
    std::optional<std::size_t> pool;
    std::string degrees = "any";
    bool bp_degree_one = false;
    auto* enumerate = app.add_subcommand("enumerate", "Finite pointed aperiodic graphs up to isomorphism");
    enumerate->add_option("--max-weight", max_weight);
    enumerate->add_option("--max-vertices", max_vertices);
    enumerate->add_option("--pool", pool, "Restrict colors to the first k pool colors");
    enumerate->add_option("--degrees", degrees)->check(CLI::IsMember({"any", "1or3"}));
    enumerate->add_flag("--basepoint-degree-one", bp_degree_one);
    enumerate->add_flag("--serial", serial, "Use the serial reference kernel");
    enumerate->add_option("-o,--output", output_path);
    enumerate->callback([&] {
        EnumerationSpec spec{max_weight, max_vertices, pool,
                             degrees == "1or3" ? DegreeConstraint::one_or_three : DegreeConstraint::none,
                             bp_degree_one};
        const auto graphs = enumerate_aperiodic(spec, serial ? Execution::serial : Execution::parallel);
        json list = json::array();
        for (const auto& g : graphs)
            list.push_back(io::graph_to_json(g));
        sink().emit(json{{"count", graphs.size()}, {"graphs", std::move(list)}});
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}

}  // namespace gromov::cli
