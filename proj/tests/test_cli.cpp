#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using nlohmann::json;
namespace fs = std::filesystem;

TEST_SUITE_BEGIN("cli");

namespace {

const std::string kCli = SSE_CLI_PATH;

struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() /
              ("sse_cli_test_" + std::to_string(::getpid()) + "_" +
               std::to_string(counter()++));
        fs::create_directories(dir);
    }
    ~Scratch() { std::error_code ec; fs::remove_all(dir, ec); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    fs::path file(const std::string& name, const std::string& content) const {
        fs::path p = dir / name;
        std::ofstream out(p, std::ios::binary);
        out << content;
        return p;
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

int run(const std::string& cmd) {
    int status = std::system((cmd + " >/dev/null 2>&1").c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json slurp_json(const fs::path& p) { return json::parse(slurp(p)); }

const char* kTriangleCsv = "0,0\n1,0\n0.5,0.8660254\n";
const char* kPathCsv = "0,0\n1,0\n2,0\n3,0\n";

}  // namespace

TEST_CASE("partition: triangle fixture reports two modules") {
    Scratch s;
    auto csv = s.file("tri.csv", kTriangleCsv);
    int rc = run(kCli + " partition -i " + csv.string() + " --p 1 -o " + s.path("out.json"));
    CHECK(rc == 0);
    json j = slurp_json(s.dir / "out.json");
    CHECK(j.at("schema_version") == 1);
    CHECK(j.at("num_modules") == 2);
    CHECK(j.at("assignments").size() == 3);
    CHECK(j.at("converged") == true);
    CHECK(j.contains("objective_trace"));
    CHECK(j.at("config").at("p") == 1);
}

TEST_CASE("partition: an empty constraint file matches the unconstrained run") {
    Scratch s;
    auto csv = s.file("tri.csv", kTriangleCsv);
    auto empty = s.file("empty.txt", "# no constraints\n");
    CHECK(run(kCli + " partition -i " + csv.string() + " --p 1 -o " + s.path("a.json")) == 0);
    CHECK(run(kCli + " partition -i " + csv.string() + " --p 1 --constraints " + empty.string() +
              " -o " + s.path("b.json")) == 0);
    json a = slurp_json(s.dir / "a.json");
    json b = slurp_json(s.dir / "b.json");
    CHECK(a.at("assignments") == b.at("assignments"));
    CHECK(a.at("objective_trace") == b.at("objective_trace"));
    CHECK(a.at("objective") == b.at("objective"));
}

TEST_CASE("partition: conflicting constraints exit with code 3") {
    Scratch s;
    auto csv = s.file("tri.csv", kTriangleCsv);
    auto bad = s.file("bad.txt", "ML 0 1\nCL 0 1\n");
    CHECK(run(kCli + " partition -i " + csv.string() + " --p 1 --constraints " + bad.string() +
              " -o " + s.path("x.json")) == 3);
}

TEST_CASE("partition: bad CSV and unreadable paths exit with code 2") {
    Scratch s;
    auto bad = s.file("bad.csv", "1,2\n3,abc\n");
    CHECK(run(kCli + " partition -i " + bad.string() + " --p 1 -o " + s.path("x.json")) == 2);
    CHECK(run(kCli + " partition -i " + s.path("missing.csv") + " --p 1 -o " +
              s.path("x.json")) == 2);
}

TEST_CASE("partition: exhausted sweep budget exits with the non-convergence code") {
    Scratch s;
    auto csv = s.file("tri.csv", kTriangleCsv);
    CHECK(run(kCli + " partition -i " + csv.string() + " --p 1 --max-sweeps 0 -o " +
              s.path("x.json")) == 4);
}

TEST_CASE("gen-constraints: counts, determinism, empty amount") {
    Scratch s;
    auto labels = s.file("labels.txt", "0\n0\n1\n1\n");
    CHECK(run(kCli + " gen-constraints --labels " + labels.string() +
              " --kind pairwise --amount 0.25 --seed 9 -o " + s.path("c1.txt")) == 0);
    CHECK(run(kCli + " gen-constraints --labels " + labels.string() +
              " --kind pairwise --amount 0.25 --seed 9 -o " + s.path("c2.txt")) == 0);
    std::string c1 = slurp(s.dir / "c1.txt");
    CHECK(c1 == slurp(s.dir / "c2.txt"));  // byte-identical for equal seeds
    int lines = 0;
    for (char ch : c1) lines += ch == '\n';
    CHECK(lines == 2);  // one ML + one CL
    CHECK(run(kCli + " gen-constraints --labels " + labels.string() +
              " --kind pairwise --amount 0 -o " + s.path("c0.txt")) == 0);
    CHECK(slurp(s.dir / "c0.txt").empty());
}

TEST_CASE("gen-constraints output feeds back into partition") {
    Scratch s;
    auto csv = s.file("two.csv", "0,0,0\n0.3,0,0\n5,5,1\n5.2,5,1\n");
    auto labels = s.file("labels.txt", "0\n0\n1\n1\n");
    CHECK(run(kCli + " gen-constraints --labels " + labels.string() +
              " --kind pairwise --amount 0.5 --seed 3 -o " + s.path("cons.txt")) == 0);
    CHECK(run(kCli + " partition -i " + csv.string() + " --labeled --p 1 --constraints " +
              s.path("cons.txt") + " -o " + s.path("out.json")) == 0);
    json j = slurp_json(s.dir / "out.json");
    CHECK(j.at("repeats")[0].contains("ari"));
}

TEST_CASE("hierarchy: path fixture writes newick, tree json, and a height-2 partition") {
    Scratch s;
    auto csv = s.file("path.csv", kPathCsv);
    int rc = run(kCli + " hierarchy -i " + csv.string() + " --sigma 1 --p 1 --height 2 -o " +
                 s.path("h"));
    CHECK(rc == 0);
    std::string nwk = slurp(s.dir / "h.nwk");
    int leaves = 0;
    for (char c : nwk) leaves += (c >= '0' && c <= '9');
    CHECK(leaves == 4);
    CHECK(nwk.find(';') != std::string::npos);
    json t = slurp_json(s.dir / "h.tree.json");
    CHECK(t.at("schema_version") == 1);
    CHECK(t.at("height_k").get<int>() <= 2);
    CHECK(t.at("binary_tree").contains("children"));
    json p = slurp_json(s.dir / "h.partition.json");
    CHECK(p.at("assignments").size() == 4);
    // byte-identical rerun
    CHECK(run(kCli + " hierarchy -i " + csv.string() + " --sigma 1 --p 1 --height 2 -o " +
              s.path("h2")) == 0);
    CHECK(slurp(s.dir / "h.tree.json") == slurp(s.dir / "h2.tree.json"));
    CHECK(slurp(s.dir / "h.nwk") == slurp(s.dir / "h2.nwk"));
}

TEST_CASE("hierarchy: K at the binary height is a no-op for compressing") {
    Scratch s;
    auto csv = s.file("path.csv", kPathCsv);
    CHECK(run(kCli + " hierarchy -i " + csv.string() + " --sigma 1 --p 1 --height 3 -o " +
              s.path("h")) == 0);
    json t = slurp_json(s.dir / "h.tree.json");
    if (t.at("height_binary") == 3) CHECK(t.at("compress_trace").empty());
}

TEST_CASE("eval: identical labelings score 1 on ari and nmi") {
    Scratch s;
    auto truth = s.file("truth.txt", "0\n0\n1\n1\n");
    auto pred = s.file("pred.txt", "1\n1\n0\n0\n");
    CHECK(run(kCli + " eval --pred " + pred.string() + " --truth " + truth.string() + " -o " +
              s.path("m.json")) == 0);
    json m = slurp_json(s.dir / "m.json");
    CHECK(m.at("ari") == 1.0);
    CHECK(m.at("nmi") == 1.0);
}

TEST_CASE("eval: dendrogram purity from a tree file") {
    Scratch s;
    auto truth = s.file("truth.txt", "0\n0\n1\n1\n");
    auto pure = s.file("pure.json",
                       R"({"children":[{"children":[{"vertex":0},{"vertex":1}]},)"
                       R"({"children":[{"vertex":2},{"vertex":3}]}]})");
    auto crossed = s.file("crossed.json",
                          R"({"children":[{"children":[{"vertex":0},{"vertex":2}]},)"
                          R"({"children":[{"vertex":1},{"vertex":3}]}]})");
    CHECK(run(kCli + " eval --tree " + pure.string() + " --truth " + truth.string() + " -o " +
              s.path("m1.json")) == 0);
    CHECK(slurp_json(s.dir / "m1.json").at("dp") == 1.0);
    CHECK(run(kCli + " eval --tree " + crossed.string() + " --truth " + truth.string() + " -o " +
              s.path("m2.json")) == 0);
    CHECK(slurp_json(s.dir / "m2.json").at("dp") == 0.5);
}

TEST_CASE("eval: mismatched lengths exit with an input error") {
    Scratch s;
    auto truth = s.file("truth.txt", "0\n0\n1\n");
    auto pred = s.file("pred.txt", "1\n1\n0\n0\n");
    CHECK(run(kCli + " eval --pred " + pred.string() + " --truth " + truth.string()) == 2);
    auto tree = s.file("t.json", R"({"children":[{"vertex":0},{"vertex":1}]})");
    CHECK(run(kCli + " eval --tree " + tree.string() + " --truth " + truth.string()) == 2);
}

TEST_CASE("partition: repeats reseed constraint sampling and report a summary") {
    Scratch s;
    auto csv = s.file("two.csv", "0,0,0\n0.3,0,0\n0.5,0.2,0\n5,5,1\n5.2,5,1\n5.4,5.2,1\n");
    int rc = run(kCli + " partition -i " + csv.string() +
                 " --labeled --p 2 --gen-pairwise 0.3 --seed 5 --repeats 3 -o " +
                 s.path("r.json"));
    CHECK(rc == 0);
    json j = slurp_json(s.dir / "r.json");
    CHECK(j.at("repeats").size() == 3);
    CHECK(j.at("summary").contains("ari"));
    CHECK(j.at("repeats")[0].at("seed") == 5);
    CHECK(j.at("repeats")[2].at("seed") == 7);
}

TEST_SUITE_END();
