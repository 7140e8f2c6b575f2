// ============================================================================
//  pytharr/io.hpp
//
//  Instance files and write-only renderings.
//
//  One instance format: JSON with rationals as strings ("p/q" or an integer
//  literal; plain JSON integers are accepted, floats never are).  An instance
//  parses to a point configuration plus a gain graph; edges may omit their
//  gain, which makes the file a bare *shape* usable only as a transport
//  target.  An optional "bias" member lists circles as edge-id lists.
//
//  Rendering: SVG plots of two-dimensional arrangements (lines clipped to a
//  bounding box that contains every pairwise intersection point, reference
//  points and multi-line intersection points marked).  DOT writers for the
//  two lattices live with their structures; the bias-restricted DOT writer
//  lives here because only reports use it.
//
//  Everything emitted is deterministic: objects are keyed by sorted ids and
//  every list is either file order (edges, bias) or sorted (points, labels).
// ============================================================================
#ifndef PYTHARR_IO_HPP
#define PYTHARR_IO_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pytharr/arrangement.hpp"
#include "pytharr/errors.hpp"
#include "pytharr/exactla.hpp"
#include "pytharr/gaingraph.hpp"
#include "pytharr/genericity.hpp"
#include "pytharr/pointconfig.hpp"
#include "pytharr/transport.hpp"

namespace pytharr {

// ---------------------------------------------------------------------------
// The data model of an instance file.
// ---------------------------------------------------------------------------

struct InstanceEdge {
    EdgeId id;
    VertexId tail;
    VertexId head;
    std::optional<Rational> gain;  // absent in bare shapes

    friend bool operator==(const InstanceEdge& a, const InstanceEdge& b) {
        return a.id == b.id && a.tail == b.tail && a.head == b.head && a.gain == b.gain;
    }
};

struct InstanceFile {
    std::size_t dimension = 0;
    std::map<VertexId, Vector> points;
    std::vector<InstanceEdge> edges;              // file order
    std::vector<std::vector<EdgeId>> bias;        // optional circles, file order

    bool is_shape() const {
        for (const InstanceEdge& e : edges)
            if (!e.gain) return true;
        return false;
    }

    friend bool operator==(const InstanceFile& a, const InstanceFile& b) {
        return a.dimension == b.dimension && a.points == b.points && a.edges == b.edges &&
               a.bias == b.bias;
    }
};

namespace detail {

using Json = nlohmann::ordered_json;

[[noreturn]] inline void parse_fail(const std::string& where, const std::string& msg) {
    throw ParseError(where.empty() ? msg : where + ": " + msg);
}

inline void require_keys(const Json& obj, const std::set<std::string>& allowed,
                         const std::set<std::string>& required, const std::string& where) {
    for (const auto& item : obj.items())
        if (!allowed.count(item.key()))
            parse_fail(where, "unknown member \"" + item.key() + "\"");
    for (const std::string& k : required)
        if (!obj.contains(k)) parse_fail(where, "missing member \"" + k + "\"");
}

inline Rational json_rational(const Json& v, const std::string& where) {
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const ParseError& e) {
            parse_fail(where, e.what());
        }
    }
    if (v.is_number_integer() || v.is_number_unsigned())
        return parse_rational(std::to_string(v.get<std::int64_t>()));
    parse_fail(where, "expected a rational (\"p/q\" string or integer literal)");
}

inline std::string json_string(const Json& v, const std::string& where) {
    if (!v.is_string() || v.get<std::string>().empty())
        parse_fail(where, "expected a non-empty string");
    return v.get<std::string>();
}

} // namespace detail

// ---------------------------------------------------------------------------
// Parsing.  Every defect of the file itself — syntax, schema, bad literals,
// and violated instance invariants (duplicate ids, loops, unknown endpoints,
// coincident points, bias entries that are not circles) — raises ParseError.
// ---------------------------------------------------------------------------

inline InstanceFile parse_instance_text(const std::string& text, const std::string& origin = "") {
    using detail::Json;
    using detail::parse_fail;

    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        parse_fail(origin, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) parse_fail(origin, "top level must be an object");
    detail::require_keys(j, {"dimension", "points", "edges", "bias"},
                         {"dimension", "points", "edges"}, origin);

    InstanceFile f;

    const Json& jd = j["dimension"];
    if (!(jd.is_number_integer() || jd.is_number_unsigned()) || jd.get<std::int64_t>() < 0)
        parse_fail(origin, "\"dimension\" must be a non-negative integer");
    f.dimension = static_cast<std::size_t>(jd.get<std::int64_t>());

    const Json& jp = j["points"];
    if (!jp.is_object()) parse_fail(origin, "\"points\" must be an object");
    for (const auto& item : jp.items()) {
        const std::string where = origin.empty() ? "points." + item.key()
                                                 : origin + ": points." + item.key();
        if (!item.value().is_array() || item.value().size() != f.dimension)
            throw ParseError(where + ": expected an array of " + std::to_string(f.dimension) +
                             " rationals");
        Vector p;
        for (std::size_t i = 0; i < item.value().size(); ++i)
            p.push_back(detail::json_rational(item.value()[i],
                                              where + "[" + std::to_string(i) + "]"));
        f.points[item.key()] = std::move(p);
    }

    const Json& je = j["edges"];
    if (!je.is_array()) parse_fail(origin, "\"edges\" must be an array");
    std::set<EdgeId> seen_ids;
    for (std::size_t i = 0; i < je.size(); ++i) {
        const std::string where = (origin.empty() ? "" : origin + ": ") + "edges[" +
                                  std::to_string(i) + "]";
        const Json& o = je[i];
        if (!o.is_object()) parse_fail(where, "expected an object");
        detail::require_keys(o, {"id", "tail", "head", "gain"}, {"id", "tail", "head"}, where);
        InstanceEdge e;
        e.id = detail::json_string(o["id"], where + ".id");
        e.tail = detail::json_string(o["tail"], where + ".tail");
        e.head = detail::json_string(o["head"], where + ".head");
        if (!seen_ids.insert(e.id).second)
            parse_fail(where, "duplicate edge id \"" + e.id + "\"");
        if (!f.points.count(e.tail))
            parse_fail(where, "tail \"" + e.tail + "\" has no point");
        if (!f.points.count(e.head))
            parse_fail(where, "head \"" + e.head + "\" has no point");
        if (o.contains("gain")) e.gain = detail::json_rational(o["gain"], where + ".gain");
        f.edges.push_back(std::move(e));
    }

    if (j.contains("bias")) {
        const Json& jb = j["bias"];
        if (!jb.is_array()) parse_fail(origin, "\"bias\" must be an array of edge-id lists");
        for (std::size_t i = 0; i < jb.size(); ++i) {
            const std::string where = (origin.empty() ? "" : origin + ": ") + "bias[" +
                                      std::to_string(i) + "]";
            if (!jb[i].is_array()) parse_fail(where, "expected an array of edge ids");
            std::vector<EdgeId> circle;
            for (const Json& v : jb[i]) {
                EdgeId id = detail::json_string(v, where);
                if (!seen_ids.count(id)) parse_fail(where, "unknown edge id \"" + id + "\"");
                circle.push_back(std::move(id));
            }
            f.bias.push_back(std::move(circle));
        }
    }

    // instance invariants: the file must build a configuration and a graph
    // (gains defaulted where absent), and bias entries must be circles
    try {
        Configuration q(f.dimension, f.points);
        std::vector<Edge> edges;
        std::map<EdgeId, Rational> gains;
        for (const InstanceEdge& e : f.edges) {
            edges.push_back(Edge{e.id, e.tail, e.head});
            gains[e.id] = e.gain.value_or(Rational(0));
        }
        GainGraph g(std::move(edges), std::move(gains));
        for (const std::vector<EdgeId>& c : f.bias)
            circle_from_edges(g, EdgeSet(c.begin(), c.end()));
    } catch (const Error& e) {
        parse_fail(origin, e.what());
    }
    return f;
}

inline InstanceFile load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance_text(buf.str(), path);
}

// ---------------------------------------------------------------------------
// Serialization.  parse ∘ serialize is the identity on the data model.
// ---------------------------------------------------------------------------

inline std::string serialize_instance(const InstanceFile& f) {
    using detail::Json;
    Json j;
    j["dimension"] = f.dimension;
    j["points"] = Json::object();
    for (const auto& [v, p] : f.points) {
        Json arr = Json::array();
        for (const Rational& c : p) arr.push_back(format_rational(c));
        j["points"][v] = std::move(arr);
    }
    j["edges"] = Json::array();
    for (const InstanceEdge& e : f.edges) {
        Json o;
        o["id"] = e.id;
        o["tail"] = e.tail;
        o["head"] = e.head;
        if (e.gain) o["gain"] = format_rational(*e.gain);
        j["edges"].push_back(std::move(o));
    }
    if (!f.bias.empty()) {
        j["bias"] = Json::array();
        for (const std::vector<EdgeId>& c : f.bias) j["bias"].push_back(c);
    }
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Bridges to the library model.
// ---------------------------------------------------------------------------

// full instance → triple; a bare shape is not a triple
inline Triple to_triple(const InstanceFile& f) {
    std::vector<Edge> edges;
    std::map<EdgeId, Rational> gains;
    for (const InstanceEdge& e : f.edges) {
        if (!e.gain) throw ParseError("edge \"" + e.id + "\" carries no gain");
        edges.push_back(Edge{e.id, e.tail, e.head});
        gains[e.id] = *e.gain;
    }
    return Triple(Configuration(f.dimension, f.points),
                  GainGraph(std::move(edges), std::move(gains)));
}

// shape (or full instance) → triple with absent gains read as zero
inline Triple to_triple_zero_filled(const InstanceFile& f) {
    std::vector<Edge> edges;
    std::map<EdgeId, Rational> gains;
    for (const InstanceEdge& e : f.edges) {
        edges.push_back(Edge{e.id, e.tail, e.head});
        gains[e.id] = e.gain.value_or(Rational(0));
    }
    return Triple(Configuration(f.dimension, f.points),
                  GainGraph(std::move(edges), std::move(gains)));
}

// the file's bias member as a set of circles of g
inline BiasClass bias_class(const InstanceFile& f, const GainGraph& g) {
    BiasClass cls;
    for (const std::vector<EdgeId>& c : f.bias)
        cls.insert(circle_from_edges(g, EdgeSet(c.begin(), c.end())));
    return cls;
}

// triple → instance with points and edges sorted by id
inline InstanceFile instance_from(const Configuration& q, const GainGraph& g) {
    InstanceFile f;
    f.dimension = q.dimension();
    f.points = q.points();
    std::vector<InstanceEdge> edges;
    for (const Edge& e : g.edges())
        edges.push_back(InstanceEdge{e.id, e.tail, e.head, g.gain(e.id)});
    std::sort(edges.begin(), edges.end(),
              [](const InstanceEdge& a, const InstanceEdge& b) { return a.id < b.id; });
    f.edges = std::move(edges);
    return f;
}

// ---------------------------------------------------------------------------
// SVG plots (dimension 2 only).
//
// The bounding box contains every pairwise intersection point and every
// reference point, padded by a margin; each line is clipped to the box.
// Marks: reference points as labeled dots, intersection points lying on
// three or more lines as larger highlighted dots titled by their label set.
// ---------------------------------------------------------------------------

namespace detail {

// nearest-millipixel decimal rendering of an exact coordinate
inline std::string svg_num(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    mpz_class n2 = c.get_num() * 2000 + c.get_den();
    mpz_class d2 = c.get_den() * 2;
    mpz_class m;
    mpz_fdiv_q(m.get_mpz_t(), n2.get_mpz_t(), d2.get_mpz_t());
    bool neg = m < 0;
    mpz_class a = abs(m);
    std::string digits = a.get_str();
    while (digits.size() < 4) digits.insert(digits.begin(), '0');
    std::string out = digits.substr(0, digits.size() - 3) + "." + digits.substr(digits.size() - 3);
    return neg ? "-" + out : out;
}

struct SvgMap {
    Rational xmin, ymax, scale;  // SVG x = 20 + (x - xmin)·s, y = 20 + (ymax - y)·s
    std::string x(const Rational& v) const { return svg_num(20 + (v - xmin) * scale); }
    std::string y(const Rational& v) const { return svg_num(20 + (ymax - v) * scale); }
};

} // namespace detail

inline std::string to_svg(const Configuration& q, const GainGraph& g) {
    if (q.dimension() != 2)
        throw UnsupportedDimension("plots need dimension 2, got " +
                                   std::to_string(q.dimension()));

    Arrangement arr = build_arrangement(q, g);
    LabeledSemilattice sl = intersection_semilattice(arr);

    // box support: all 0-dimensional flats plus all reference points
    std::vector<Vector> support;
    std::vector<const Flat*> zero_flats;
    for (const Flat& f : sl.flats)
        if (f.codimension == 2) {
            zero_flats.push_back(&f);
            support.push_back(f.subspace.base());
        }
    for (const auto& [v, p] : q.points()) support.push_back(p);

    // lines in sorted label order
    std::vector<const Hyperplane*> lines;
    for (const Hyperplane& h : arr.hyperplanes()) lines.push_back(&h);
    std::sort(lines.begin(), lines.end(),
              [](const Hyperplane* a, const Hyperplane* b) { return a->label < b->label; });

    // a line meeting no support point anchors the box at its nearest point
    // to the support centroid (so all-parallel arrangements still plot)
    Vector centre{0, 0};
    if (!support.empty()) {
        for (const Vector& p : support) centre = add(centre, p);
        centre = scale(Rational(1, static_cast<long>(support.size())), centre);
    }
    std::vector<Vector> anchors;
    for (const Hyperplane* h : lines) {
        bool touched = false;
        for (const Vector& p : support)
            if (h->contains(p)) {
                touched = true;
                break;
            }
        if (!touched) {
            Rational t = (h->offset - dot(h->normal, centre)) / norm_squared(h->normal);
            anchors.push_back(add(centre, scale(t, h->normal)));
        }
    }
    for (const Vector& p : anchors) support.push_back(p);
    if (support.empty()) support.push_back(Vector{0, 0});

    Rational x0 = support[0][0], x1 = x0, y0 = support[0][1], y1 = y0;
    for (const Vector& p : support) {
        x0 = std::min(x0, p[0]);
        x1 = std::max(x1, p[0]);
        y0 = std::min(y0, p[1]);
        y1 = std::max(y1, p[1]);
    }
    Rational margin = (x1 - x0 + y1 - y0) / 8 + 1;
    x0 -= margin;
    x1 += margin;
    y0 -= margin;
    y1 += margin;

    Rational wx = x1 - x0, wy = y1 - y0;
    detail::SvgMap m{x0, y1, Rational(800) / std::max(wx, wy)};
    std::string width = detail::svg_num(wx * m.scale + 40);
    std::string height = detail::svg_num(wy * m.scale + 40);

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + width + " " + height +
           "\" width=\"" + width + "\" height=\"" + height + "\">\n";
    out += "  <style>\n"
           "    .box { fill: white; stroke: #999; stroke-width: 1; }\n"
           "    .hyperplane { stroke: #1f4e79; stroke-width: 2; }\n"
           "    .refpoint { fill: #111; }\n"
           "    .reflabel { font: 14px sans-serif; fill: #111; }\n"
           "    .multipoint { fill: #c22; stroke: white; stroke-width: 1; }\n"
           "  </style>\n";
    out += "  <rect class=\"box\" x=\"" + m.x(x0) + "\" y=\"" + m.y(y1) + "\" width=\"" +
           detail::svg_num(wx * m.scale) + "\" height=\"" + detail::svg_num(wy * m.scale) +
           "\"/>\n";

    // clip each line n·x = c to the box
    for (const Hyperplane* h : lines) {
        const Rational &nx = h->normal[0], &ny = h->normal[1], &c = h->offset;
        std::vector<Vector> hits;
        auto push = [&hits](Vector p) {
            for (const Vector& seen : hits)
                if (compare_vectors(seen, p) == 0) return;
            hits.push_back(std::move(p));
        };
        if (ny != 0)
            for (const Rational& x : {x0, x1}) {
                Rational y = (c - nx * x) / ny;
                if (y0 <= y && y <= y1) push(Vector{x, y});
            }
        if (nx != 0)
            for (const Rational& y : {y0, y1}) {
                Rational x = (c - ny * y) / nx;
                if (x0 <= x && x <= x1) push(Vector{x, y});
            }
        std::sort(hits.begin(), hits.end(),
                  [](const Vector& a, const Vector& b) { return compare_vectors(a, b) < 0; });
        if (hits.size() < 2) continue;
        const Vector &p = hits.front(), &r = hits.back();
        out += "    <line class=\"hyperplane\" x1=\"" + m.x(p[0]) + "\" y1=\"" + m.y(p[1]) +
               "\" x2=\"" + m.x(r[0]) + "\" y2=\"" + m.y(r[1]) + "\"><title>" + h->label +
               "</title></line>\n";
    }

    // multi-line intersection points (three or more labels)
    for (const Flat* f : zero_flats) {
        if (f->labels.size() < 3) continue;
        const Vector& p = f->subspace.base();
        out += "    <circle class=\"multipoint\" cx=\"" + m.x(p[0]) + "\" cy=\"" + m.y(p[1]) +
               "\" r=\"6\"><title>" + label_string(f->labels) + "</title></circle>\n";
    }

    // reference points with vertex names
    for (const auto& [v, p] : q.points()) {
        out += "    <circle class=\"refpoint\" cx=\"" + m.x(p[0]) + "\" cy=\"" + m.y(p[1]) +
               "\" r=\"3.5\"><title>" + v + "</title></circle>\n";
        out += "    <text class=\"reflabel\" x=\"" + detail::svg_num(20 + (p[0] - x0) * m.scale + 6) +
               "\" y=\"" + detail::svg_num(20 + (y1 - p[1]) * m.scale - 6) + "\">" + v +
               "</text>\n";
    }

    out += "</svg>\n";
    return out;
}

// ---------------------------------------------------------------------------
// DOT for bias-restricted flats: nodes labeled by circuit set, over-balanced
// nodes drawn red, edges by cover relations of the restricted loci.
// ---------------------------------------------------------------------------

inline std::string to_dot(const std::vector<BiasNode>& nodes) {
    std::string out = "digraph bias {\n  rankdir=BT;\n  node [shape=box];\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        out += "  b" + std::to_string(i) + " [label=\"" +
               circuit_set_string(nodes[i].flat.circuits) + "\"";
        if (nodes[i].over_balanced) out += ", color=red, fontcolor=red";
        out += "];\n";
    }
    auto below = [&nodes](std::size_t i, std::size_t j) {
        return nodes[i].restricted.codimension() < nodes[j].restricted.codimension() &&
               nodes[i].restricted.contains(nodes[j].restricted);
    };
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (!below(i, j)) continue;
            bool covering = true;
            for (std::size_t k = 0; k < nodes.size() && covering; ++k)
                if (k != i && k != j && below(i, k) && below(k, j)) covering = false;
            if (covering) out += "  b" + std::to_string(i) + " -> b" + std::to_string(j) + ";\n";
        }
    out += "}\n";
    return out;
}

} // namespace pytharr

#endif // PYTHARR_IO_HPP
