#include "gromov/io.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "gromov/constructions.hpp"

namespace gromov::io {

namespace {

// Typed access to a JSON value that remembers where it sits in the document.
class Reader {
public:
    Reader(const json& value, std::string pointer) : value_(value), pointer_(std::move(pointer)) {}

    const json& value() const { return value_; }
    const std::string& pointer() const { return pointer_; }

    [[noreturn]] void fail(const std::string& what) const { throw FormatError(pointer_, what); }

    bool has(const char* key) const { return value_.is_object() && value_.contains(key); }

    Reader at(const char* key) const {
        require_object();
        if (!value_.contains(key))
            fail(std::string("missing field \"") + key + "\"");
        return {value_.at(key), pointer_ + "/" + key};
    }

    Reader at(std::size_t index) const { return {value_.at(index), pointer_ + "/" + std::to_string(index)}; }

    void require_object() const {
        if (!value_.is_object())
            fail("expected an object");
    }

    const json::array_t& array() const {
        if (!value_.is_array())
            fail("expected an array");
        return value_.get_ref<const json::array_t&>();
    }

    std::string string() const {
        if (!value_.is_string())
            fail("expected a string");
        return value_.get<std::string>();
    }

    std::size_t natural() const {
        if (!value_.is_number_unsigned() && !(value_.is_number_integer() && value_.get<std::int64_t>() >= 0))
            fail("expected a non-negative integer");
        return value_.get<std::size_t>();
    }

    Color color() const {
        try {
            return Color::from_bits(string());
        } catch (const std::invalid_argument&) {
            fail("expected a bit string over {0,1}");
        }
    }

    Rational rational() const {
        try {
            return Rational::parse(string());
        } catch (const std::invalid_argument& e) {
            fail(std::string("expected a rational \"p/q\": ") + e.what());
        }
    }

    std::string string_or(const char* key, std::string fallback) const {
        return has(key) ? at(key).string() : fallback;
    }
    std::size_t natural_or(const char* key, std::size_t fallback) const {
        return has(key) ? at(key).natural() : fallback;
    }
    Color color_or(const char* key, Color fallback) const { return has(key) ? at(key).color() : fallback; }

private:
    const json& value_;
    std::string pointer_;
};

}  // namespace

// ---------------------------------------------------------------------------

json graph_to_json(const FiniteColoredGraph& g) {
    json doc;
    doc["vertices"] = json::array();
    for (std::size_t v = 0; v < g.size(); ++v)
        doc["vertices"].push_back({{"id", g.key(v)}, {"color", g.color(v).bits()}});
    doc["edges"] = json::array();
    for (const auto& [u, v] : g.edges())
        doc["edges"].push_back({g.key(u), g.key(v)});
    if (g.basepoint())
        doc["basepoint"] = g.key(*g.basepoint());
    return doc;
}

namespace {

FiniteColoredGraph read_graph(const Reader& root) {
    const json& doc = root.value();
    root.require_object();
    std::vector<VertexKey> keys;
    std::map<VertexKey, Color> coloring;
    const Reader vertices = root.at("vertices");
    for (std::size_t i = 0; i < vertices.array().size(); ++i) {
        const Reader v = vertices.at(i);
        VertexKey id = v.at("id").string();
        if (!coloring.emplace(id, v.at("color").color()).second)
            v.at("id").fail("repeated vertex id '" + id + "'");
        keys.push_back(std::move(id));
    }
    std::vector<std::pair<VertexKey, VertexKey>> edges;
    std::set<std::pair<VertexKey, VertexKey>> seen;
    if (root.has("edges")) {
        const Reader list = root.at("edges");
        for (std::size_t i = 0; i < list.array().size(); ++i) {
            const Reader e = list.at(i);
            if (e.array().size() != 2)
                e.fail("an edge is a pair of vertex ids");
            const VertexKey a = e.at(std::size_t{0}).string(), b = e.at(1).string();
            if (!coloring.contains(a))
                e.at(std::size_t{0}).fail("unknown vertex '" + a + "'");
            if (!coloring.contains(b))
                e.at(1).fail("unknown vertex '" + b + "'");
            if (a == b)
                e.fail("loop at '" + a + "'");
            if (!seen.insert(std::minmax(a, b)).second)
                e.fail("repeated edge '" + a + "'-'" + b + "'");
            edges.emplace_back(a, b);
        }
    }
    std::optional<VertexKey> basepoint;
    if (root.has("basepoint") && !doc.at("basepoint").is_null()) {
        basepoint = root.at("basepoint").string();
        if (!coloring.contains(*basepoint))
            root.at("basepoint").fail("unknown vertex '" + *basepoint + "'");
    }
    return FiniteColoredGraph(std::move(keys), edges, coloring, basepoint);
}

}  // namespace

FiniteColoredGraph graph_from_json(const json& doc) { return read_graph(Reader(doc, "")); }

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out.push_back('\\');
        out.push_back(c);
    }
    return out + "\"";
}

}  // namespace

std::string export_dot(const FiniteColoredGraph& g, const std::string& name) {
    std::ostringstream out;
    out << "graph " << dot_quote(name) << " {\n";
    for (std::size_t v = 0; v < g.size(); ++v) {
        const std::string& bits = g.color(v).bits();
        out << "  " << dot_quote(g.key(v)) << " [label=" << dot_quote(g.key(v) + " : " + (bits.empty() ? "0" : bits))
            << ", color_bits=" << dot_quote(bits);
        if (g.basepoint() == v)
            out << ", shape=doublecircle";
        out << "];\n";
    }
    for (const auto& [u, v] : g.edges())
        out << "  " << dot_quote(g.key(u)) << " -- " << dot_quote(g.key(v)) << ";\n";
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------

json distance_to_json(const DyadicDistance& d) {
    if (d.is_zero())
        return 0;
    return {{"pow2_exp", *d.exponent()}};
}

json truncated_distance_to_json(const TruncatedDistance& d) {
    switch (d.kind) {
    case TruncatedDistance::Kind::exact:
        return {{"exact", {{"pow2_exp", d.exponent}}}};
    case TruncatedDistance::Kind::at_most:
        return {{"at_most", {{"pow2_exp", d.exponent}}}};
    case TruncatedDistance::Kind::one:
        break;
    }
    return {{"one", {{"pow2_exp", 0}}}};
}

json equivalence_to_json(const REquivalence& h) {
    json mapping = json::array();
    for (const auto& m : h.mapping)
        mapping.push_back({{"from", m.from}, {"to", m.to}, {"depth", m.depth}});
    return {{"radius", h.radius}, {"tolerance", h.tolerance.to_string()}, {"mapping", std::move(mapping)}};
}

namespace {

REquivalence read_equivalence(const Reader& r) {
    r.require_object();
    REquivalence h;
    h.radius = r.at("radius").natural();
    h.tolerance = r.at("tolerance").rational();
    const Reader list = r.at("mapping");
    for (std::size_t i = 0; i < list.array().size(); ++i) {
        const Reader m = list.at(i);
        h.mapping.push_back({m.at("from").string(), m.at("to").string(), m.at("depth").natural()});
    }
    return h;
}

}  // namespace

REquivalence equivalence_from_json(const json& doc, const std::string& pointer) {
    return read_equivalence(Reader(doc, pointer));
}

json automorphisms_to_json(const FiniteColoredGraph& g, const AutomorphismReport& report) {
    json generators = json::array();
    for (const auto& gamma : report.generators) {
        json moved = json::object();
        for (std::size_t v = 0; v < gamma.size(); ++v)
            if (gamma[v] != v)
                moved[g.key(v)] = g.key(gamma[v]);
        generators.push_back(std::move(moved));
    }
    json base = json::array();
    for (auto b : report.base)
        base.push_back(g.key(b));
    return {{"order", report.order},     {"pointed", report.pointed},          {"trivial", report.order == 1},
            {"base", std::move(base)},    {"orbit_sizes", report.orbit_sizes}, {"generators", std::move(generators)}};
}

json classes_to_json(const ClassPartition& p, const std::vector<VertexKey>& window) {
    json members = json::array();
    for (std::size_t c = 0; c < p.count(); ++c)
        members.push_back(json::array());
    for (std::size_t i = 0; i < window.size(); ++i)
        members[p.class_of[i]].push_back(window[i]);
    json classes = json::array();
    for (std::size_t c = 0; c < p.count(); ++c)
        classes.push_back({{"representative", p.representatives[c]}, {"members", std::move(members[c])}});
    return {{"window_size", window.size()}, {"count", p.count()}, {"classes", std::move(classes)}};
}

// ---------------------------------------------------------------------------

namespace {

json witness_to_json(const WitnessSpec& w) {
    if (w.kind == WitnessSpec::Kind::self)
        return {{"kind", "self"}};
    json out = {{"kind", "K"}, {"n", w.n}, {"spine_color", w.spine_color.bits()}};
    if (w.degree_override)
        out["degree_override"] = *w.degree_override;
    return out;
}

WitnessSpec read_witness(const Reader& r) {
    WitnessSpec w;
    const std::string kind = r.at("kind").string();
    if (kind == "self") {
        w.kind = WitnessSpec::Kind::self;
        return w;
    }
    if (kind != "K")
        r.at("kind").fail("unknown witness kind '" + kind + "'");
    w.kind = WitnessSpec::Kind::k_construction;
    w.n = r.at("n").natural();
    w.spine_color = r.color_or("spine_color", Color());
    if (r.has("degree_override"))
        w.degree_override = r.at("degree_override").natural();
    return w;
}

}  // namespace

json certificate_to_json(const AlmostChaoticCertificate& cert) {
    json levels = json::array();
    for (const auto& level : cert.levels) {
        json cells = json::array();
        for (const auto& cell : level.cells)
            cells.push_back(
                {{"m", cell.m}, {"vertex", cell.vertex}, {"equivalence", equivalence_to_json(cell.equivalence)}});
        levels.push_back({{"n", level.n},
                          {"witness", witness_to_json(level.witness)},
                          {"witness_point", level.witness_point},
                          {"shift_radius", level.shift_radius},
                          {"equivalence", equivalence_to_json(level.equivalence)},
                          {"cells", std::move(cells)}});
    }
    return {{"format", "almost-chaotic-certificate"},
            {"N", cert.N},
            {"M", cert.M},
            {"point", cert.point},
            {"levels", std::move(levels)}};
}

AlmostChaoticCertificate certificate_from_json(const json& doc) {
    const Reader root(doc, "");
    root.require_object();
    if (root.string_or("format", "almost-chaotic-certificate") != "almost-chaotic-certificate")
        root.at("format").fail("not an almost-chaotic certificate");
    AlmostChaoticCertificate cert;
    cert.N = root.at("N").natural();
    cert.M = root.at("M").natural();
    cert.point = root.at("point").string();
    const Reader levels = root.at("levels");
    for (std::size_t i = 0; i < levels.array().size(); ++i) {
        const Reader l = levels.at(i);
        CertificateLevel level;
        level.n = l.at("n").natural();
        level.witness = read_witness(l.at("witness"));
        level.witness_point = l.at("witness_point").string();
        level.shift_radius = l.at("shift_radius").natural();
        level.equivalence = read_equivalence(l.at("equivalence"));
        const Reader cells = l.at("cells");
        for (std::size_t j = 0; j < cells.array().size(); ++j) {
            const Reader c = cells.at(j);
            level.cells.push_back({c.at("m").natural(), c.at("vertex").string(), read_equivalence(c.at("equivalence"))});
        }
        cert.levels.push_back(std::move(level));
    }
    return cert;
}

json certificate_report_to_json(const CertificateReport& report) {
    json failures = json::array();
    for (const auto& f : report.failures)
        failures.push_back({{"n", f.n}, {"m", f.m ? json(*f.m) : json(nullptr)}, {"reason", f.reason}});
    return {{"valid", report.valid()}, {"N", report.N}, {"M", report.M}, {"failures", std::move(failures)}};
}

json aperiodicity_to_json(const AperiodicityReport& report) {
    json out = {{"depth", report.depth},
                {"in_w", report.in_w},
                {"aperiodic_up_to", report.aperiodic_up_to() ? json(*report.aperiodic_up_to()) : json(nullptr)},
                {"passes", report.passes()}};
    out["twins"] = report.twins ? json::array({report.twins->first, report.twins->second}) : json(nullptr);
    return out;
}

json verdict_to_json(const ChaosVerdict& v) {
    json counts = json::array();
    for (const auto& [w, c] : v.class_counts)
        counts.push_back({{"window", w}, {"classes", c}});
    json almost = {{"certificate_found", v.almost_chaotic.certificate.has_value()}};
    almost["failed_at"] = v.almost_chaotic.failed_at
                              ? json{{"n", v.almost_chaotic.failed_at->first}, {"m", v.almost_chaotic.failed_at->second}}
                              : json(nullptr);
    return {{"N", v.N},
            {"M", v.M},
            {"infinite", v.infinite},
            {"almost_chaotic", std::move(almost)},
            {"aperiodicity", aperiodicity_to_json(v.aperiodicity)},
            {"class_counts", std::move(counts)},
            {"class_growth", v.class_growth()},
            {"chaotic", v.chaotic()},
            {"verdict", v.chaotic() ? "chaotic at this depth" : "not chaotic at this depth"}};
}

// ---------------------------------------------------------------------------

namespace {

ChaosSource from_periodic(PeriodicExpander p) {
    ChaosSource s{Pointed::at_root(p.graph), std::move(p), std::nullopt};
    return s;
}

ChaosSource read_source(const Reader& r);

ChaosSource read_construction(const Reader& r) {
    const std::string name = r.at("construction").string();
    if (name == "champernowne") {
        const auto order = parse_champernowne_order(r.string_or("order", "standard"));
        if (!order)
            r.at("order").fail("order must be \"listed\" or \"standard\"");
        return {Pointed::at_root(champernowne_line(*order)), std::nullopt, std::nullopt};
    }
    if (name == "line")
        return from_periodic(translation_periodic(constant_line(r.color_or("color", Color()))));
    if (name == "half-line")
        return {Pointed::at_root(half_line(r.color_or("color", Color()))), std::nullopt, std::nullopt};
    if (name == "word-line") {
        const std::size_t k = r.natural_or("alphabet", 2);
        if (k < 2)
            r.at("alphabet").fail("alphabet needs at least two letters");
        return {Pointed::at_root(word_line(k)), std::nullopt, std::nullopt};
    }
    if (name == "free-edge") {
        json fallback = {{"construction", "champernowne"}};
        const ChaosSource line = r.has("source") ? read_source(r.at("source")) : read_source(Reader(fallback, ""));
        return {Pointed::at_root(free_edge_lift(line.pointed.graph)), std::nullopt, std::nullopt};
    }
    if (name == "comb")
        return from_periodic(comb());
    if (name == "K") {
        json fallback = {{"construction", "champernowne"}};
        const ChaosSource source = r.has("source") ? read_source(r.at("source")) : read_source(Reader(fallback, ""));
        std::optional<std::size_t> override = source.degree_override;
        if (r.has("degree_override"))
            override = r.at("degree_override").natural();
        try {
            return from_periodic(
                build_K(source.pointed, r.natural_or("n", 1), r.color_or("spine_color", Color()), override));
        } catch (const GraphError& e) {
            r.fail(e.what());
        }
    }
    if (name == "dense" || name == "sparse") {
        const std::size_t budget = r.natural_or("budget", default_budget);
        if (name == "dense")
            return {Pointed::at_root(universal_dense_graph(budget)), std::nullopt, std::max<std::size_t>(3, budget)};
        return {Pointed::at_root(sparse_universal_graph(budget)), std::nullopt, std::nullopt};
    }
    if (name == "H" || name == "Z") {
        const std::size_t n = r.natural_or("n", 1);
        if (n == 0)
            r.at("n").fail("n must be at least 1");
        const std::size_t budget = r.natural_or("budget", default_budget);
        if (name == "H")
            return {Pointed::at_root(GraphExpander::from_finite(build_H(n, budget), "H")), std::nullopt,
                    std::nullopt};
        return from_periodic(build_Z(n, budget));
    }
    r.at("construction").fail("unknown construction '" + name + "'");
}

ChaosSource read_source(const Reader& r) {
    r.require_object();
    ChaosSource source = [&] {
        if (r.has("vertices")) {
            FiniteColoredGraph g = read_graph(r);
            if (g.empty())
                r.at("vertices").fail("a graph needs at least one vertex");
            if (!g.connected())
                r.fail("graph is not connected");
            return ChaosSource{Pointed::at_root(GraphExpander::from_finite(std::move(g))), std::nullopt,
                               std::nullopt};
        }
        return read_construction(r);
    }();
    if (r.has("point")) {
        const VertexKey point = r.at("point").string();
        try {
            source.pointed.graph.expand(point);
        } catch (const GraphError&) {
            r.at("point").fail("unknown vertex '" + point + "'");
        }
        source.pointed.point = point;
    }
    return source;
}

}  // namespace

ChaosSource realize(const json& spec, const std::string& pointer) { return read_source(Reader(spec, pointer)); }

json load_spec(const std::string& argument) {
    auto parse = [](const std::string& text, const std::string& origin) {
        try {
            return json::parse(text);
        } catch (const json::parse_error& e) {
            throw FormatError("", origin + ": " + e.what());
        }
    };
    if (!argument.empty() && argument.front() == '{')
        return parse(argument, "inline spec");
    std::error_code ec;
    if (std::filesystem::is_regular_file(argument, ec)) {
        std::ifstream in(argument);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return parse(buffer.str(), argument);
    }
    static const std::set<std::string> names = {"champernowne", "line", "half-line", "word-line", "free-edge", "comb",
                                                "K",            "dense", "sparse", "H",         "Z"};
    if (names.contains(argument))
        return {{"construction", argument}};
    throw FormatError("", "'" + argument + "' is neither a file, a JSON spec, nor a construction name");
}

}  // namespace gromov::io
