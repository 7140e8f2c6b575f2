// ============================================================================
//  pytharr — command-line driver.
//
//  pytharr build|semilattice|genericity|flats|transport|plot <file>
//          [--dot F] [--svg F] [--bias C1,C2,...] [--json F] [--map T=S,...]
//
//  Exit codes: 0 success, 1 domain error, 2 parse error (file or usage).
// ============================================================================
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pytharr/arrangement.hpp"
#include "pytharr/errors.hpp"
#include "pytharr/genericity.hpp"
#include "pytharr/io.hpp"
#include "pytharr/transport.hpp"

namespace {

using namespace pytharr;
using detail::Json;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write \"" + path + "\"");
    out << content;
}

std::string plural(std::size_t n, const std::string& word) {
    return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

// variable names for printed equations: x, y, z below dimension four
std::string variable_name(std::size_t i, std::size_t dim) {
    if (dim <= 3) return std::string(1, "xyz"[i]);
    return "x" + std::to_string(i + 1);
}

// canonical integer equation of a hyperplane, e.g. "4x + 6y = 13"
std::string equation_string(const Hyperplane& h, std::size_t dim) {
    std::vector<Rational> key = canonical_hyperplane_key(h);
    std::string lhs;
    for (std::size_t i = 0; i < dim; ++i) {
        const Rational& c = key[i];
        if (c == 0) continue;
        Rational a = c < 0 ? Rational(-c) : c;
        if (lhs.empty())
            lhs += (c < 0 ? "-" : "");
        else
            lhs += (c < 0 ? " - " : " + ");
        if (a != 1) lhs += format_rational(a);
        lhs += variable_name(i, dim);
    }
    return lhs + " = " + format_rational(key[dim]);
}

// one circuit as a word: "abs" when all ids are single characters, else "a+b+s"
std::string circuit_word(const Circuit& c) { return circuit_set_string({c}); }

Json circuit_to_json(const Circuit& c) {
    Json arr = Json::array();
    for (const EdgeId& e : c) arr.push_back(e);
    return arr;
}

void maybe_write_json(const std::string& path, const Json& report) {
    if (!path.empty()) write_file(path, report.dump(2) + "\n");
}

// --- command: build ---------------------------------------------------------

int cmd_build(const std::string& file, const std::string& json_out) {
    InstanceFile f = load_instance(file);
    Triple t = to_triple(f);
    Arrangement arr = build_arrangement(t.configuration, t.graph);

    std::vector<const Hyperplane*> sorted;
    for (const Hyperplane& h : arr.hyperplanes()) sorted.push_back(&h);
    std::sort(sorted.begin(), sorted.end(),
              [](const Hyperplane* a, const Hyperplane* b) { return a->label < b->label; });

    std::cout << "dimension " << arr.dimension() << "\n"
              << plural(sorted.size(), "hyperplane") << "\n";
    for (const Hyperplane* h : sorted)
        std::cout << h->label << ": " << equation_string(*h, arr.dimension()) << "\n";

    Json report;
    report["dimension"] = arr.dimension();
    report["hyperplanes"] = Json::array();
    for (const Hyperplane* h : sorted) {
        std::vector<Rational> key = canonical_hyperplane_key(*h);
        Json o;
        o["label"] = h->label;
        o["normal"] = Json::array();
        for (std::size_t i = 0; i < arr.dimension(); ++i)
            o["normal"].push_back(format_rational(key[i]));
        o["offset"] = format_rational(key[arr.dimension()]);
        o["equation"] = equation_string(*h, arr.dimension());
        report["hyperplanes"].push_back(std::move(o));
    }
    maybe_write_json(json_out, report);
    return 0;
}

// --- command: semilattice ----------------------------------------------------

int cmd_semilattice(const std::string& file, const std::string& dot_out,
                    const std::string& json_out) {
    InstanceFile f = load_instance(file);
    Triple t = to_triple(f);
    Arrangement arr = build_arrangement(t.configuration, t.graph);
    LabeledSemilattice sl = intersection_semilattice(arr);

    std::cout << "dimension " << sl.dimension << "\n" << plural(sl.flats.size(), "flat") << "\n";
    for (std::size_t k = 0; k <= sl.max_codimension(); ++k) {
        std::vector<EdgeSet> labels = sl.labels_at_codimension(k);
        if (labels.empty()) continue;
        std::cout << "codimension " << k << " (" << plural(labels.size(), "flat") << "):\n";
        for (const EdgeSet& l : labels) std::cout << "  " << label_string(l) << "\n";
    }

    if (!dot_out.empty()) {
        write_file(dot_out, to_dot(sl));
        std::cout << "wrote " << dot_out << "\n";
    }
    Json report;
    report["dimension"] = sl.dimension;
    report["flats"] = Json::array();
    for (const Flat& fl : sl.flats) {
        Json o;
        o["codimension"] = fl.codimension;
        o["labels"] = Json::array();
        for (const EdgeId& e : fl.labels) o["labels"].push_back(e);
        report["flats"].push_back(std::move(o));
    }
    maybe_write_json(json_out, report);
    return 0;
}

// --- command: genericity -----------------------------------------------------

int cmd_genericity(const std::string& file, const std::string& json_out) {
    InstanceFile f = load_instance(file);
    Triple t = to_triple(f);
    bool generic = is_gain_generic(t.configuration, t.graph);
    Rational radius = perturbation_radius(t.configuration, t.graph);

    Json report;
    report["generic"] = generic;
    report["radius"] = format_rational(radius);

    if (generic) {
        std::cout << "generic\n"
                  << "certified perturbation radius: " << format_rational(radius) << "\n";
    } else {
        FlatOfF flat = flat_of_gain(t.configuration, t.graph);
        std::cout << "non-generic\nsatisfied equations:\n";
        report["equations"] = Json::array();
        report["flat_circuits"] = Json::array();
        for (const auto& [x, h] : derived_arrangement(t.configuration, t.graph)) {
            if (!h.contains(t.graph)) continue;
            std::cout << "  " << circuit_word(x) << ": " << format_edge_equation(h) << "\n";
            Json o;
            o["circuit"] = circuit_to_json(x);
            o["equation"] = format_edge_equation(h);
            report["equations"].push_back(std::move(o));
        }
        std::cout << "flat circuits: " << circuit_set_string(flat.circuits) << "\n";
        for (const Circuit& x : flat.circuits)
            report["flat_circuits"].push_back(circuit_to_json(x));
    }
    maybe_write_json(json_out, report);
    return 0;
}

// --- command: flats ----------------------------------------------------------

// a --bias token names one circle: edge ids joined by '+', a single edge id,
// or a word of single-character edge ids (e.g. "abs")
EdgeSet parse_edge_word(const GainGraph& g, const std::string& token) {
    EdgeSet s;
    if (token.find('+') != std::string::npos) {
        std::string part;
        std::istringstream stream(token);
        while (std::getline(stream, part, '+')) {
            if (part.empty() || !g.has_edge(part))
                throw ParseError("--bias: unknown edge \"" + part + "\" in \"" + token + "\"");
            s.insert(part);
        }
        return s;
    }
    if (g.has_edge(token)) return {token};
    for (char ch : token) {
        std::string id(1, ch);
        if (!g.has_edge(id))
            throw ParseError("--bias: unknown edge \"" + id + "\" in \"" + token + "\"");
        s.insert(id);
    }
    return s;
}

BiasClass parse_bias_argument(const GainGraph& g, const std::string& arg) {
    BiasClass cls;
    std::string token;
    std::istringstream stream(arg);
    while (std::getline(stream, token, ',')) {
        if (token.empty()) continue;
        try {
            cls.insert(circle_from_edges(g, parse_edge_word(g, token)));
        } catch (const NotACircle& e) {
            throw ParseError("--bias: \"" + token + "\" is not a circle: " + e.what());
        }
    }
    if (cls.empty()) throw ParseError("--bias: no circles given");
    return cls;
}

int cmd_flats(const std::string& file, const std::string& bias_arg, const std::string& dot_out,
              const std::string& json_out) {
    InstanceFile f = load_instance(file);
    Triple t = to_triple(f);

    if (bias_arg.empty() && f.bias.empty()) {
        FlatsLattice lattice = flats_lattice(t.configuration, t.graph);
        std::cout << plural(lattice.flats.size(), "flat") << "\n";
        for (std::size_t k = 0; k <= lattice.max_codimension(); ++k) {
            std::vector<std::set<Circuit>> labels = lattice.labels_at_codimension(k);
            if (labels.empty()) continue;
            std::cout << "codimension " << k << " (" << plural(labels.size(), "flat") << "):\n";
            for (const std::set<Circuit>& l : labels)
                std::cout << "  " << circuit_set_string(l) << "\n";
        }
        if (!dot_out.empty()) {
            write_file(dot_out, to_dot(lattice));
            std::cout << "wrote " << dot_out << "\n";
        }
        Json report;
        report["flats"] = Json::array();
        for (const FlatOfF& fl : lattice.flats) {
            Json o;
            o["codimension"] = fl.subspace.codimension();
            o["circuits"] = Json::array();
            for (const Circuit& x : fl.circuits) o["circuits"].push_back(circuit_to_json(x));
            report["flats"].push_back(std::move(o));
        }
        maybe_write_json(json_out, report);
        return 0;
    }

    // restricted to a prescribed balance class: --bias wins over the file's
    BiasClass cls = bias_arg.empty() ? bias_class(f, t.graph)
                                     : parse_bias_argument(t.graph, bias_arg);
    std::vector<BiasNode> nodes = bias_restricted_flats(t.configuration, t.graph, cls);
    std::cout << plural(nodes.size(), "node") << "\n";
    for (const BiasNode& n : nodes) {
        std::cout << "  " << circuit_set_string(n.flat.circuits);
        if (n.over_balanced) std::cout << "  [over-balanced]";
        std::cout << "\n";
    }
    if (!dot_out.empty()) {
        write_file(dot_out, to_dot(nodes));
        std::cout << "wrote " << dot_out << "\n";
    }
    Json report;
    report["nodes"] = Json::array();
    for (const BiasNode& n : nodes) {
        Json o;
        o["circuits"] = Json::array();
        for (const Circuit& x : n.flat.circuits) o["circuits"].push_back(circuit_to_json(x));
        o["over_balanced"] = n.over_balanced;
        o["representative"] = Json::object();
        std::vector<EdgeId> order = edge_order(t.graph);
        for (std::size_t i = 0; i < order.size() && i < n.representative.size(); ++i)
            o["representative"][order[i]] = format_rational(n.representative[i]);
        report["nodes"].push_back(std::move(o));
    }
    maybe_write_json(json_out, report);
    return 0;
}

// --- command: transport --------------------------------------------------------

std::map<EdgeId, EdgeId> parse_map_argument(const std::string& arg) {
    std::map<EdgeId, EdgeId> mapping;  // target id → source id
    std::string token;
    std::istringstream stream(arg);
    while (std::getline(stream, token, ',')) {
        if (token.empty()) continue;
        std::size_t eq = token.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == token.size())
            throw ParseError("--map: expected TARGET=SOURCE, got \"" + token + "\"");
        EdgeId target = token.substr(0, eq), source = token.substr(eq + 1);
        if (!mapping.emplace(target, source).second)
            throw ParseError("--map: target \"" + target + "\" mapped twice");
    }
    return mapping;
}

int cmd_transport(const std::string& file1, const std::string& file2, const std::string& map_arg,
                  const std::string& json_out) {
    InstanceFile f1 = load_instance(file1);
    InstanceFile f2 = load_instance(file2);
    Triple source = to_triple(f1);
    Triple target = to_triple_zero_filled(f2);
    if (source.configuration.dimension() != target.configuration.dimension())
        throw DimensionMismatch("the two instances have different dimensions");

    // effective mapping: explicit --map entries, identity on the rest
    std::map<EdgeId, EdgeId> mapping = parse_map_argument(map_arg);
    std::set<EdgeId> used;
    for (const Edge& e : target.graph.edges())
        if (!mapping.count(e.id)) mapping[e.id] = e.id;
    for (const auto& [tgt, src] : mapping) {
        target.graph.edge(tgt);  // UnknownEdge on stray --map entries
        if (!source.graph.has_edge(src))
            throw Error("no source edge \"" + src + "\" for target \"" + tgt + "\"");
        if (!used.insert(src).second) throw Error("source edge \"" + src + "\" used twice");
    }

    std::map<EdgeId, Rational> gains;
    for (const auto& [tgt, src] : mapping) {
        Rational c = parallel_ratio(direction(source.configuration, source.graph, src),
                                    direction(target.configuration, target.graph, tgt));
        gains[tgt] = c * (source.graph.gain(src) +
                          norm_shift(source.configuration, source.graph, src)) -
                     norm_shift(target.configuration, target.graph, tgt);
    }
    Triple result(target.configuration, target.graph.with_gains(gains));

    bool equivalent = are_equivalent(source, result);
    std::cout << "equivalent: " << (equivalent ? "true" : "false") << "\n";
    if (!f2.is_shape()) {
        bool match = true;
        for (const InstanceEdge& e : f2.edges) match = match && *e.gain == gains.at(e.id);
        std::cout << "target gains match: " << (match ? "true" : "false") << "\n";
    }

    std::string emitted = serialize_instance(instance_from(result.configuration, result.graph));
    if (json_out.empty()) {
        std::cout << emitted;
    } else {
        write_file(json_out, emitted);
        std::cout << "wrote " << json_out << "\n";
    }
    return equivalent ? 0 : 1;
}

// --- command: plot ---------------------------------------------------------------

int cmd_plot(const std::string& file, const std::string& svg_out, const std::string& json_out) {
    InstanceFile f = load_instance(file);
    Triple t = to_triple(f);
    std::string svg = to_svg(t.configuration, t.graph);

    Arrangement arr = build_arrangement(t.configuration, t.graph);
    LabeledSemilattice sl = intersection_semilattice(arr);
    std::size_t multiple = 0;
    for (const Flat& fl : sl.flats)
        if (fl.codimension == 2 && fl.labels.size() >= 3) ++multiple;

    if (svg_out.empty()) {
        std::cout << svg;
    } else {
        write_file(svg_out, svg);
        std::cout << plural(arr.hyperplanes().size(), "line") << ", "
                  << plural(multiple, "multiple point") << "\n"
                  << "wrote " << svg_out << "\n";
    }
    Json report;
    report["lines"] = arr.hyperplanes().size();
    report["multiple_points"] = multiple;
    maybe_write_json(json_out, report);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Pythagorean arrangements of point configurations with gains"};
    app.require_subcommand(1);

    std::string file, file2, dot_out, svg_out, json_out, bias_arg, map_arg;

    CLI::App* build = app.add_subcommand("build", "hyperplane equations, one per edge");
    build->add_option("file", file, "instance file")->required();
    build->add_option("--json", json_out, "write a JSON report to this file");

    CLI::App* semi = app.add_subcommand("semilattice", "intersection semilattice of the arrangement");
    semi->add_option("file", file, "instance file")->required();
    semi->add_option("--dot", dot_out, "write the semilattice as DOT to this file");
    semi->add_option("--json", json_out, "write a JSON report to this file");

    CLI::App* gen = app.add_subcommand("genericity", "gain-genericity verdict");
    gen->add_option("file", file, "instance file")->required();
    gen->add_option("--json", json_out, "write a JSON report to this file");

    CLI::App* flats = app.add_subcommand("flats", "lattice of flats of the derived arrangement");
    flats->add_option("file", file, "instance file")->required();
    flats->add_option("--bias", bias_arg, "restrict to a balance class (circles, comma-separated)");
    flats->add_option("--dot", dot_out, "write the lattice as DOT to this file");
    flats->add_option("--json", json_out, "write a JSON report to this file");

    CLI::App* trans = app.add_subcommand("transport", "move gains onto an equivalent instance");
    trans->add_option("file", file, "source instance file")->required();
    trans->add_option("target", file2, "target instance or shape file")->required();
    trans->add_option("--map", map_arg, "edge correspondence TARGET=SOURCE, comma-separated");
    trans->add_option("--json", json_out, "write the emitted instance to this file");

    CLI::App* plot = app.add_subcommand("plot", "SVG plot of a dimension-2 arrangement");
    plot->add_option("file", file, "instance file")->required();
    plot->add_option("--svg", svg_out, "write the SVG to this file");
    plot->add_option("--json", json_out, "write a JSON report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (build->parsed()) return cmd_build(file, json_out);
        if (semi->parsed()) return cmd_semilattice(file, dot_out, json_out);
        if (gen->parsed()) return cmd_genericity(file, json_out);
        if (flats->parsed()) return cmd_flats(file, bias_arg, dot_out, json_out);
        if (trans->parsed()) return cmd_transport(file, file2, map_arg, json_out);
        if (plot->parsed()) return cmd_plot(file, svg_out, json_out);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
