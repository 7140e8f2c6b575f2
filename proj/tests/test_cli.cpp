// Command-line driver: instance parsing, reports, exit codes, renderings.
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "pytharr/io.hpp"

using namespace pytharr;

namespace {

std::string instance_path(const std::string& name) {
    return std::string(PYTHARR_INSTANCE_DIR) + "/" + name;
}

const std::filesystem::path& scratch_dir() {
    static const std::filesystem::path dir = [] {
        std::filesystem::path d = std::filesystem::temp_directory_path() /
                                  ("pytharr-cli-" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_scratch(const std::string& name, const std::string& content) {
    std::string path = (scratch_dir() / name).string();
    std::ofstream out(path);
    out << content;
    return path;
}

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string capture = (scratch_dir() / ("out_" + std::to_string(counter++) + ".txt")).string();
    std::string cmd = std::string("\"") + PYTHARR_CLI_PATH + "\" " + args + " > \"" + capture +
                      "\" 2>/dev/null";
    int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(capture);
    std::ostringstream buf;
    buf << in.rdbuf();
    r.out = buf.str();
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

// the indented entries under the header line "prefix ...:"
std::set<std::string> section_entries(const std::string& text, const std::string& prefix) {
    std::set<std::string> entries;
    bool inside = false;
    for (const std::string& line : lines_of(text)) {
        if (line.rfind(prefix, 0) == 0) {
            inside = true;
            continue;
        }
        if (inside) {
            if (line.rfind("  ", 0) != 0) break;
            entries.insert(line.substr(2));
        }
    }
    return entries;
}

std::string json_tail(const std::string& text) {
    std::size_t brace = text.find('{');
    REQUIRE(brace != std::string::npos);
    return text.substr(brace);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("instance format round-trips and rejects malformed files") {
    for (const std::string name : {"forbidden_gains.json", "fig_semilattice.json", "pappos8.json",
                                   "pappos4.json", "pappos4_shape.json", "theta.json",
                                   "theta_shape.json", "k4.json", "line3.json"}) {
        InstanceFile f = load_instance(instance_path(name));
        CHECK(parse_instance_text(serialize_instance(f)) == f);
    }

    // shapes are recognized and refuse to become triples
    InstanceFile shape = load_instance(instance_path("theta_shape.json"));
    CHECK(shape.is_shape());
    CHECK_THROWS_AS(to_triple(shape), ParseError);
    CHECK_FALSE(load_instance(instance_path("theta.json")).is_shape());

    const std::string points = "\"points\": {\"1\": [\"0\", \"0\"], \"2\": [\"1\", \"0\"]}";
    auto bad = [&](const std::string& body) {
        CHECK_THROWS_AS(parse_instance_text(body), ParseError);
    };
    bad("not json at all");
    bad("[1, 2]");
    bad("{\"dimension\": 2, " + points + "}");                             // no edges
    bad("{\"dimension\": 2, " + points + ", \"edges\": [], \"extra\": 1}");  // unknown member
    bad("{\"dimension\": -1, \"points\": {}, \"edges\": []}");
    bad("{\"dimension\": 2.5, \"points\": {}, \"edges\": []}");
    bad("{\"dimension\": 2, \"points\": {\"1\": [\"0\"]}, \"edges\": []}");  // short point
    bad("{\"dimension\": 1, \"points\": {\"1\": [0.5]}, \"edges\": []}");    // float
    bad("{\"dimension\": 1, \"points\": {\"1\": [\"1/0\"]}, \"edges\": []}");
    bad("{\"dimension\": 2, " + points +
        ", \"edges\": [{\"id\": \"a\", \"tail\": \"1\", \"head\": \"9\", \"gain\": \"0\"}]}");
    bad("{\"dimension\": 2, " + points +
        ", \"edges\": [{\"id\": \"a\", \"tail\": \"1\", \"head\": \"1\", \"gain\": \"0\"}]}");
    bad("{\"dimension\": 2, " + points +
        ", \"edges\": [{\"id\": \"a\", \"tail\": \"1\", \"head\": \"2\", \"gain\": \"0\"},"
        " {\"id\": \"a\", \"tail\": \"2\", \"head\": \"1\", \"gain\": \"0\"}]}");
    bad("{\"dimension\": 2, \"points\": {\"1\": [\"0\", \"0\"], \"2\": [\"0\", \"0\"]}, "
        "\"edges\": []}");  // coincident points
    bad("{\"dimension\": 2, " + points +
        ", \"edges\": [{\"id\": \"a\", \"tail\": \"1\", \"head\": \"2\", \"gain\": \"0\"}], "
        "\"bias\": [[\"a\"]]}");  // a single edge is not a circle
    bad("{\"dimension\": 2, " + points +
        ", \"edges\": [{\"id\": \"a\", \"tail\": \"1\", \"head\": \"2\", \"gain\": \"0\"}], "
        "\"bias\": [[\"z\"]]}");  // unknown bias edge

    // integers are accepted as exact gains and coordinates
    InstanceFile ints = parse_instance_text(
        "{\"dimension\": 2, \"points\": {\"1\": [0, 0], \"2\": [4, -3]}, "
        "\"edges\": [{\"id\": \"a\", \"tail\": \"1\", \"head\": \"2\", \"gain\": -6}]}");
    CHECK(ints.points.at("2") == Vector{4, -3});
    CHECK(*ints.edges[0].gain == -6);
}

TEST_CASE("build prints canonical hyperplane equations") {
    CliResult r = run_cli("build " + instance_path("fig_semilattice.json"));
    REQUIRE(r.exit_code == 0);
    std::vector<std::string> lines = lines_of(r.out);
    REQUIRE(lines.size() == 7);
    CHECK(lines[0] == "dimension 2");
    CHECK(lines[1] == "5 hyperplanes");
    CHECK(lines[2] == "a: 4x + 6y = 13");
    CHECK(lines[3] == "b: 2x - 14y = -47");
    CHECK(lines[6] == "e: 10x - 5y = 18");

    // an instance with no edges reports an empty arrangement
    std::string empty = write_scratch("empty.json",
                                      "{\"dimension\": 2, \"points\": {\"1\": [\"0\", \"0\"]}, "
                                      "\"edges\": []}");
    CliResult e = run_cli("build " + empty);
    CHECK(e.exit_code == 0);
    CHECK(lines_of(e.out) == std::vector<std::string>{"dimension 2", "0 hyperplanes"});

    // a three-dimensional instance gets x, y, z
    CliResult d3 = run_cli("build " + instance_path("line3.json"));
    CHECK(d3.exit_code == 0);
    CHECK(lines_of(d3.out)[2] == "a: x + 2y + 2z = 5");

    // malformed files and shapes exit 2
    std::string malformed = write_scratch("malformed.json",
                                          "{\"dimension\": 1, \"points\": {\"1\": [\"1/0\"]}, "
                                          "\"edges\": []}");
    CHECK(run_cli("build " + malformed).exit_code == 2);
    CHECK(run_cli("build " + instance_path("pappos4_shape.json")).exit_code == 2);
    CHECK(run_cli("build /nonexistent.json").exit_code == 2);

    // JSON report
    std::string report_path = (scratch_dir() / "build.json").string();
    CliResult j = run_cli("build " + instance_path("fig_semilattice.json") + " --json " +
                          report_path);
    REQUIRE(j.exit_code == 0);
    detail::Json report = detail::Json::parse(read_file(report_path));
    CHECK(report["dimension"] == 2);
    REQUIRE(report["hyperplanes"].size() == 5);
    CHECK(report["hyperplanes"][0]["label"] == "a");
    CHECK(report["hyperplanes"][0]["normal"] == detail::Json::array({"4", "6"}));
    CHECK(report["hyperplanes"][0]["offset"] == "13");
}

TEST_CASE("semilattice reports flats by codimension") {
    CliResult r = run_cli("semilattice " + instance_path("fig_semilattice.json"));
    REQUIRE(r.exit_code == 0);
    CHECK(lines_of(r.out)[1] == "14 flats");
    CHECK(section_entries(r.out, "codimension 1") ==
          std::set<std::string>{"a", "b", "c", "d", "e"});
    CHECK(section_entries(r.out, "codimension 2") ==
          std::set<std::string>{"a b", "a c", "a d", "a e", "b c e", "b d", "c d", "d e"});

    // a single hyperplane has a single atom
    std::string single = write_scratch(
        "single.json",
        "{\"dimension\": 2, \"points\": {\"1\": [\"0\", \"0\"], \"2\": [\"1\", \"0\"]}, "
        "\"edges\": [{\"id\": \"a\", \"tail\": \"1\", \"head\": \"2\", \"gain\": \"0\"}]}");
    CliResult s = run_cli("semilattice " + single);
    CHECK(s.exit_code == 0);
    CHECK(section_entries(s.out, "codimension 1") == std::set<std::string>{"a"});
    CHECK(section_entries(s.out, "codimension 2").empty());

    // generic gains on the reference instance: only simple crossings, and the
    // parallel pair a, t never meets, leaving nine of the ten pairs
    CliResult g = run_cli("semilattice " + instance_path("forbidden_gains.json"));
    CHECK(g.exit_code == 0);
    std::set<std::string> atoms = section_entries(g.out, "codimension 2");
    CHECK(atoms.size() == 9);
    CHECK(atoms.count("a t") == 0);
    for (const std::string& atom : atoms) CHECK(atom.size() == 3);

    // DOT export
    std::string dot_path = (scratch_dir() / "semi.dot").string();
    CliResult d = run_cli("semilattice " + instance_path("fig_semilattice.json") + " --dot " +
                          dot_path);
    CHECK(d.exit_code == 0);
    std::string dot = read_file(dot_path);
    CHECK(dot.rfind("digraph semilattice {", 0) == 0);
    CHECK(dot.find("label=\"b c e\"") != std::string::npos);
}

TEST_CASE("genericity verdicts") {
    CliResult generic = run_cli("genericity " + instance_path("forbidden_gains.json"));
    REQUIRE(generic.exit_code == 0);
    CHECK(lines_of(generic.out) ==
          std::vector<std::string>{"generic", "certified perturbation radius: 2/5"});

    // one violated relation: gains on the parallel-pair equation g_a + 2 g_t = 0
    std::string tilted = write_scratch(
        "tilted.json",
        "{\"dimension\": 2, \"points\": {\"1\": [\"0\", \"0\"], \"2\": [\"4\", \"0\"], "
        "\"3\": [\"3\", \"2\"], \"4\": [\"1\", \"2\"]}, \"edges\": ["
        "{\"id\": \"a\", \"tail\": \"1\", \"head\": \"2\", \"gain\": \"-12\"},"
        "{\"id\": \"b\", \"tail\": \"1\", \"head\": \"3\", \"gain\": \"0\"},"
        "{\"id\": \"c\", \"tail\": \"1\", \"head\": \"4\", \"gain\": \"2\"},"
        "{\"id\": \"s\", \"tail\": \"2\", \"head\": \"3\", \"gain\": \"2\"},"
        "{\"id\": \"t\", \"tail\": \"3\", \"head\": \"4\", \"gain\": \"6\"}]}");
    CliResult non = run_cli("genericity " + tilted);
    REQUIRE(non.exit_code == 0);
    CHECK(lines_of(non.out) == std::vector<std::string>{"non-generic", "satisfied equations:",
                                                        "  at: g_a + 2 g_t = 0",
                                                        "flat circuits: at"});

    // the zero-gain Pappos configuration is deeply non-generic: nine central circuits
    CliResult pappos = run_cli("genericity " + instance_path("pappos8.json"));
    REQUIRE(pappos.exit_code == 0);
    std::vector<std::string> lines = lines_of(pappos.out);
    CHECK(lines[0] == "non-generic");
    std::string flat_line = lines.back();
    REQUIRE(flat_line.rfind("flat circuits: ", 0) == 0);
    CHECK(std::count(flat_line.begin(), flat_line.end(), ',') == 8);

    detail::Json report;
    std::string report_path = (scratch_dir() / "gen.json").string();
    REQUIRE(run_cli("genericity " + instance_path("pappos8.json") + " --json " + report_path)
                .exit_code == 0);
    report = detail::Json::parse(read_file(report_path));
    CHECK(report["generic"] == false);
    CHECK(report["radius"] == "0");
    CHECK(report["flat_circuits"].size() == 9);
}

TEST_CASE("flats lattice and bias restrictions") {
    CliResult full = run_cli("flats " + instance_path("forbidden_gains.json"));
    REQUIRE(full.exit_code == 0);
    CHECK(lines_of(full.out)[0] == "22 flats");
    CHECK(section_entries(full.out, "codimension 1") ==
          std::set<std::string>{"abc", "abs", "acs", "at", "bcs", "bct", "bst", "cst"});
    CHECK(section_entries(full.out, "codimension 2").size() == 12);
    CHECK(section_entries(full.out, "codimension 3") ==
          std::set<std::string>{"abc, abs, acs, at, bcs, bct, bst, cst"});

    CliResult bias = run_cli("flats " + instance_path("forbidden_gains.json") + " --bias abs");
    REQUIRE(bias.exit_code == 0);
    CHECK(lines_of(bias.out) ==
          std::vector<std::string>{"6 nodes", "  abs", "  abc, abs, acs, bcs", "  abs, at, bst",
                                   "  abs, bct  [over-balanced]", "  abs, cst",
                                   "  abc, abs, acs, at, bcs, bct, bst, cst  [over-balanced]"});

    // the file's own bias member and '+'-separated ids give the same report
    std::string with_bias = write_scratch(
        "with_bias.json",
        read_file(instance_path("forbidden_gains.json")).insert(
            read_file(instance_path("forbidden_gains.json")).rfind('}'),
            ", \"bias\": [[\"a\", \"b\", \"s\"]]\n"));
    CHECK(lines_of(run_cli("flats " + with_bias).out) == lines_of(bias.out));
    CHECK(lines_of(run_cli("flats " + instance_path("forbidden_gains.json") +
                           " --bias a+b+s").out) == lines_of(bias.out));

    // ill-formed and unrealizable prescriptions
    CHECK(run_cli("flats " + instance_path("forbidden_gains.json") + " --bias abq").exit_code ==
          2);
    CHECK(run_cli("flats " + instance_path("forbidden_gains.json") + " --bias ab").exit_code ==
          2);
    CHECK(run_cli("flats " + instance_path("forbidden_gains.json") + " --bias abs,bct")
              .exit_code == 1);
    CHECK(run_cli("flats " + instance_path("k4.json") + " --bias p+s+u+r,p+q+t+u,q+s+t+r")
              .exit_code == 1);

    // DOT export marks over-balanced nodes red
    std::string dot_path = (scratch_dir() / "bias.dot").string();
    REQUIRE(run_cli("flats " + instance_path("forbidden_gains.json") + " --bias abs --dot " +
                    dot_path).exit_code == 0);
    std::string dot = read_file(dot_path);
    CHECK(dot.rfind("digraph bias {", 0) == 0);
    CHECK(dot.find("color=red") != std::string::npos);
}

TEST_CASE("transport emits equivalent instances") {
    // identity correspondence reproduces the file
    CliResult same = run_cli("transport " + instance_path("theta.json") + " " +
                             instance_path("theta.json"));
    REQUIRE(same.exit_code == 0);
    std::vector<std::string> head = lines_of(same.out);
    CHECK(head[0] == "equivalent: true");
    CHECK(head[1] == "target gains match: true");
    CHECK(parse_instance_text(json_tail(same.out)) ==
          load_instance(instance_path("theta.json")));

    // the reworked theta: gains move onto the parallel reference edges
    CliResult theta = run_cli("transport " + instance_path("theta.json") + " " +
                              instance_path("theta_shape.json") +
                              " --map 57b=12,58=13,56=14,67=23,57a=34");
    REQUIRE(theta.exit_code == 0);
    CHECK(lines_of(theta.out)[0] == "equivalent: true");
    InstanceFile reworked = parse_instance_text(json_tail(theta.out));
    std::map<EdgeId, Rational> gains;
    for (const InstanceEdge& e : reworked.edges) gains[e.id] = *e.gain;
    CHECK(gains == std::map<EdgeId, Rational>{
                       {"56", -2}, {"57a", 0}, {"57b", 0}, {"58", -20}, {"67", 2}});

    // the eight-point configuration transports onto the four-point figure
    CliResult pappos = run_cli(
        "transport " + instance_path("pappos8.json") + " " + instance_path("pappos4_shape.json") +
        " --map 12a=78,12b=23,12c=45,13=28,14a=14,14b=36,23=57,24a=15,24b=26");
    REQUIRE(pappos.exit_code == 0);
    CHECK(lines_of(pappos.out)[0] == "equivalent: true");
    CHECK(parse_instance_text(json_tail(pappos.out)) ==
          load_instance(instance_path("pappos4.json")));

    // a full target instance is verified against the computed gains
    CliResult verify = run_cli(
        "transport " + instance_path("pappos8.json") + " " + instance_path("pappos4.json") +
        " --map 12a=78,12b=23,12c=45,13=28,14a=14,14b=36,23=57,24a=15,24b=26 --json " +
        (scratch_dir() / "p4.json").string());
    REQUIRE(verify.exit_code == 0);
    CHECK(lines_of(verify.out)[0] == "equivalent: true");
    CHECK(lines_of(verify.out)[1] == "target gains match: true");

    // non-parallel correspondences are domain errors
    CHECK(run_cli("transport " + instance_path("theta.json") + " " +
                  instance_path("theta_shape.json") +
                  " --map 57b=13,58=12,56=14,67=23,57a=34").exit_code == 1);
    // malformed mapping syntax is a usage error
    CHECK(run_cli("transport " + instance_path("theta.json") + " " +
                  instance_path("theta_shape.json") + " --map 57b").exit_code == 2);
}

TEST_CASE("plot renders dimension-2 arrangements") {
    std::string svg_path = (scratch_dir() / "fig.svg").string();
    CliResult fig = run_cli("plot " + instance_path("fig_semilattice.json") + " --svg " +
                            svg_path);
    REQUIRE(fig.exit_code == 0);
    CHECK(lines_of(fig.out)[0] == "5 lines, 1 multiple point");
    std::string svg = read_file(svg_path);
    CHECK(svg.rfind("<svg ", 0) == 0);
    for (const std::string label : {"a", "b", "c", "d", "e"})
        CHECK(svg.find("<title>" + label + "</title>") != std::string::npos);
    CHECK(svg.find("<title>b c e</title>") != std::string::npos);

    CliResult pappos = run_cli("plot " + instance_path("pappos8.json") + " --svg " +
                               (scratch_dir() / "pappos.svg").string());
    REQUIRE(pappos.exit_code == 0);
    CHECK(lines_of(pappos.out)[0] == "9 lines, 9 multiple points");

    // without --svg the image goes to standard output
    CliResult direct = run_cli("plot " + instance_path("fig_semilattice.json"));
    CHECK(direct.exit_code == 0);
    CHECK(direct.out.rfind("<svg ", 0) == 0);

    // plotting is strictly two-dimensional
    CHECK(run_cli("plot " + instance_path("line3.json")).exit_code == 1);

    // identical input produces identical bytes
    CliResult again = run_cli("plot " + instance_path("fig_semilattice.json"));
    CHECK(again.out == direct.out);
}

TEST_CASE("usage errors exit with the parse-error code") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate x.json").exit_code == 2);
    CHECK(run_cli("build").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
}
