#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bellpoly/fm_engine.hpp"
#include "bellpoly/hull_oracle.hpp"
#include "bellpoly/polyhedron.hpp"
#include "bellpoly/scenario.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace bellpoly;
using namespace testing_support;

namespace {

struct Run {
    int rc;
    std::string out;  // stdout and stderr together
};

class Workdir {
public:
    Workdir() {
        dir_ = fs::temp_directory_path() / ("bellpoly_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir_);
    }
    ~Workdir() { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

    std::string read(const std::string& name) const {
        std::ifstream in(path(name));
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    Run run(const std::string& args) const {
        const std::string cmd = "cd '" + dir_.string() + "' && '" BELLPOLY_CLI "' " + args + " 2>&1";
        FILE* pipe = ::popen(cmd.c_str(), "r");
        REQUIRE(pipe != nullptr);
        std::string out;
        std::array<char, 4096> buf{};
        for (std::size_t k; (k = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) out.append(buf.data(), k);
        const int status = ::pclose(pipe);
        return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
    }

    VertexSet vrep(const std::string& name) const {
        std::ifstream in(path(name));
        return read_vrep(in);
    }
    InequalitySystem hrep(const std::string& name) const {
        std::ifstream in(path(name));
        return read_hrep(in);
    }

private:
    fs::path dir_;
};

}  // namespace

TEST_CASE("cli vertices") {
    Workdir w;
    CHECK(w.run("vertices --settings 2,2 -o chsh.vrep").rc == 0);
    const auto v = w.vrep("chsh.vrep");
    CHECK(v.size() == 16);
    CHECK(v.dim() == 8);
    CHECK(w.run("vertices --settings 1 -o one.vrep").rc == 0);
    CHECK(w.vrep("one.vrep").size() == 2);
    w.write("bw.scn", "SCENARIO 3\n1 2\n1 3\n2 3\n");
    CHECK(w.run("vertices --scenario bw.scn -o bw.vrep").rc == 0);
    CHECK(w.vrep("bw.vrep").size() == 8);
    CHECK(w.vrep("bw.vrep").dim() == 6);
    CHECK(w.run("vertices --settings 2,2 --scenario bw.scn").rc == 2);
    CHECK(w.run("vertices").rc == 2);
    CHECK(w.run("vertices --settings 2,x").rc == 2);
    CHECK(w.run("vertices --settings 30").rc == 3);
}

TEST_CASE("cli hull") {
    Workdir w;
    w.write("square.vrep", "VREP 2 4\n0 0\n0 1\n1 0\n1 1\n");
    CHECK(w.run("hull square.vrep -o sq.hrep").rc == 0);
    CHECK(w.hrep("sq.hrep").size() == 4);
    REQUIRE(w.run("vertices --settings 2,2 -o chsh.vrep").rc == 0);
    CHECK(w.run("hull chsh.vrep -o dd.hrep").rc == 0);
    CHECK(w.run("hull chsh.vrep --method brute -o brute.hrep").rc == 0);
    CHECK(w.hrep("dd.hrep").size() == 24);
    CHECK(w.read("dd.hrep") == w.read("brute.hrep"));
    CHECK(systems_equivalent(w.hrep("dd.hrep"), facets_bruteforce(w.vrep("chsh.vrep")), w.vrep("chsh.vrep")));
    std::string scn = "SCENARIO 4\n";
    for (unsigned s = 1; s < 16; ++s) {
        for (unsigned i = 0; i < 4; ++i) {
            if (s >> i & 1u) scn += std::to_string(i + 1) + ' ';
        }
        scn += '\n';
    }
    w.write("cp4.scn", scn);
    REQUIRE(w.run("vertices --scenario cp4.scn -o cp4.vrep").rc == 0);
    CHECK(w.run("hull cp4.vrep -o cp4.hrep").rc == 0);
    CHECK(w.hrep("cp4.hrep").size() == 16);
    CHECK(w.run("--guard 10 hull chsh.vrep --method brute").rc == 3);
    CHECK(w.run("hull chsh.vrep --method simplex").rc == 2);
    CHECK(w.run("hull missing.vrep").rc == 2);
    w.write("flat.vrep", "VREP 2 2\n0 0\n1 1\n");
    CHECK(w.run("hull flat.vrep").rc == 1);
}

TEST_CASE("cli derive") {
    Workdir w;
    CHECK(w.run("derive --settings 2,2 -o chsh.hrep").rc == 0);
    CHECK(w.hrep("chsh.hrep").size() == 24);
    REQUIRE(w.run("vertices --settings 2,2 -o chsh.vrep").rc == 0);
    REQUIRE(w.run("hull chsh.vrep -o dd.hrep").rc == 0);
    CHECK(w.read("chsh.hrep") == w.read("dd.hrep"));

    const auto fam = w.run("derive --settings 2,5 --families -o f.hrep");
    CHECK(fam.rc == 0);
    const auto& text = fam.out;
    CHECK(text.find("# family 1") != std::string::npos);
    CHECK(text.find("# family 2") != std::string::npos);
    CHECK(text.find("# family 3") == std::string::npos);
    CHECK(text.find("orbit 80") != std::string::npos);
    CHECK(w.hrep("f.hrep").size() == 120);

    CHECK(w.run("derive --settings 1,1 -o t.hrep").rc == 0);
    CHECK(w.hrep("t.hrep").size() == 4);

    CHECK(w.run("derive --settings 2,2 --order given --redundancy lp -o lp.hrep").rc == 0);
    CHECK(w.read("lp.hrep") == w.read("chsh.hrep"));
    CHECK(w.run("derive --settings 2,2 --pivot-party 1 -o p1.hrep").rc == 0);
    CHECK(w.read("p1.hrep") == w.read("chsh.hrep"));

    CHECK(w.run("derive --settings 2").rc == 2);
    CHECK(w.run("derive --settings 2,2 --pivot-party 5").rc == 2);
    CHECK(w.run("derive --settings 2,2 --order random").rc == 2);
    CHECK(w.run("--guard 10 derive --settings 3,3").rc == 3);
}

TEST_CASE("cli derive is deterministic") {
    Workdir w;
    REQUIRE(w.run("derive --settings 2,3 --families -o a.hrep").rc == 0);
    REQUIRE(w.run("--jobs 1 derive --settings 2,3 --families -o b.hrep").rc == 0);
    CHECK(w.read("a.hrep") == w.read("b.hrep"));
}

TEST_CASE("cli check") {
    Workdir w;
    REQUIRE(w.run("vertices --settings 2,2 -o chsh.vrep").rc == 0);
    REQUIRE(w.run("derive --settings 2,2 -o chsh.hrep").rc == 0);
    auto r = w.run("check --vrep chsh.vrep --hrep chsh.hrep --complete");
    CHECK(r.rc == 0);
    CHECK(r.out.find("PASS") != std::string::npos);

    // drop one facet
    auto text = w.read("chsh.hrep");
    std::istringstream in(text);
    std::string line, cut;
    int data_lines = 0;
    for (; std::getline(in, line);) {
        if (line.rfind("HREP", 0) == 0) {
            cut += "HREP 8 23\n";
            continue;
        }
        if (line[0] != '#' && ++data_lines == 5) continue;
        cut += line + '\n';
    }
    w.write("cut.hrep", cut);
    CHECK(w.run("check --vrep chsh.vrep --hrep cut.hrep").rc == 0);
    r = w.run("check --vrep chsh.vrep --hrep cut.hrep --complete");
    CHECK(r.rc == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);

    w.write("bad.hrep", "HREP 8 2\n# coords 1 2 3 4 13 14 23 24\n0 0 0 0 -1 0 0 0 0\n1 0 0 0 0 0 0 0 0\n");
    r = w.run("check --vrep chsh.vrep --hrep bad.hrep");
    CHECK(r.rc == 1);
    CHECK(r.out.find("row 2: invalid") != std::string::npos);
    CHECK(w.run("check --vrep chsh.vrep").rc == 2);
}

TEST_CASE("cli cpn") {
    Workdir w;
    CHECK(w.run("cpn 2 -o cp2.hrep").rc == 0);
    const auto h = w.hrep("cp2.hrep");
    CHECK(h.size() == 4);
    const std::vector<std::string> L{"1", "2", "12"};
    CHECK(row_set(h.rows) == row_set({ge(L, 0, {{"12", 1}}), ge(L, 0, {{"1", 1}, {"12", -1}}),
                                      ge(L, 0, {{"2", 1}, {"12", -1}}), ge(L, 1, {{"1", -1}, {"2", -1}, {"12", 1}})}));
    CHECK(w.run("cpn 20").rc == 3);
    CHECK(w.run("cpn 0").rc == 2);
}

TEST_CASE("cli mobius") {
    Workdir w;
    w.write("bad.measure", "MEASURE 2\n1 = 9/10\n2 = 9/10\n1 2 = 1/2\n");
    auto r = w.run("mobius --forward bad.measure -o bad.atoms");
    CHECK(r.rc == 1);
    CHECK(r.out.find("-3/10") != std::string::npos);
    w.write("ok.measure", "MEASURE 2\n1 = 1/2\n2 = 1/2\n1 2 = 1/4\n");
    CHECK(w.run("mobius --forward ok.measure -o ok.atoms").rc == 0);
    CHECK(w.read("ok.atoms") == "ATOMS 2\n00 1/4\n10 1/4\n01 1/4\n11 1/4\n");
    CHECK(w.run("mobius --inverse ok.atoms -o back.measure").rc == 0);
    CHECK(w.read("back.measure") == w.read("ok.measure"));
    w.write("neg.atoms", "ATOMS 1\n0 -1\n1 2\n");
    CHECK(w.run("mobius --inverse neg.atoms").rc == 1);
    CHECK(w.run("mobius --forward --inverse ok.measure").rc == 2);
    CHECK(w.run("mobius ok.measure").rc == 2);
    w.write("junk.measure", "MEASURE 2\n1 = 1/2\n");
    CHECK(w.run("mobius --forward junk.measure").rc == 2);
}

TEST_CASE("cli eliminate") {
    Workdir w;
    REQUIRE(w.run("derive --settings 2,2 --stacked bw2.hrep -o /dev/null").rc == 0);
    CHECK(w.hrep("bw2.hrep").size() == 28);
    CHECK(w.run("eliminate bw2.hrep --vars 12 --redundancy lp -o out.hrep").rc == 0);
    const auto out = w.hrep("out.hrep");
    CHECK(out.size() == 24);
    const auto got = row_set(out.rows);
    for (const auto& c : row_set(chsh(out.labels, "1", "2", "3", "4"))) CHECK(std::binary_search(got.begin(), got.end(), c));
    // position 5 is the label 12
    CHECK(w.run("eliminate bw2.hrep --vars 5 --redundancy lp -o pos.hrep").rc == 0);
    CHECK(w.read("pos.hrep") == w.read("out.hrep"));
    CHECK(w.run("eliminate bw2.hrep --vars 12 --no-chernikov -o raw.hrep").rc == 0);
    CHECK(systems_equivalent(remove_redundant(w.hrep("raw.hrep")), out, enumerate_vertices(build_multipartite({2, 2}))));
    CHECK(w.run("eliminate bw2.hrep --vars 77").rc == 2);
    w.write("infeasible.hrep", "HREP 2 2\n# coords x y\n1 0 -1\n-1 0 0\n");
    CHECK(w.run("eliminate infeasible.hrep --vars x --redundancy lp").rc == 1);
    CHECK(w.run("eliminate infeasible.hrep --vars y").rc == 1);
}
