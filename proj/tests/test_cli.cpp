#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(TWW_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string tmp(const std::string& name) { return "/tmp/tww_cli_" + name; }

}  // namespace

TEST_CASE("bounds reports are stable golden lines") {
    RunResult r = run("bounds --name thm3 --t 5");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "{\"schema\":1,\"value\":46.0,\"value_exact\":\"46\",\"width_cap\":46,"
          "\"formula\":\"max(8t + 6, 18)\",\"citation\":\"thm3\",\"params\":{\"t\":5}}\n");

    RunResult r2 = run("bounds --name lemma_width_adhesion --k 1 --w 2");
    CHECK(r2.out.find("\"value\":3.0") != std::string::npos);
    CHECK(r2.out.find("\"citation\":\"lemma_width_adhesion\"") != std::string::npos);
}

TEST_CASE("generated paley(5) bytes are pinned") {
    RunResult r = run("gen --family paley --q 5 -o " + tmp("p5.gr"));
    CHECK(r.exit_code == 0);
    CHECK(slurp(tmp("p5.gr")) == "p tww 5 5\n1 2\n1 5\n2 3\n3 4\n4 5\n");
}

TEST_CASE("emitted sequences re-verify to the reported width") {
    run("gen --family paley --q 13 -o " + tmp("p13.gr"));
    RunResult solve = run("solve-exact --graph " + tmp("p13.gr") + " --max-n 16 -o " + tmp("p13.seq"));
    CHECK(solve.exit_code == 0);
    CHECK(solve.out.find("\"width\":6") != std::string::npos);
    RunResult verify = run("verify --graph " + tmp("p13.gr") + " --seq " + tmp("p13.seq"));
    CHECK(verify.exit_code == 0);
    CHECK(verify.out.find("\"width\":6") != std::string::npos);
    CHECK(verify.out.find("\"complete\":true") != std::string::npos);
}

TEST_CASE("size limits exit with the resource code") {
    run("gen --family paley --q 13 -o " + tmp("p13b.gr"));
    RunResult r = run("solve-exact --graph " + tmp("p13b.gr"));
    CHECK(r.exit_code == 2);
}

TEST_CASE("bad inputs exit with the validation code") {
    RunResult r = run("verify --graph /nonexistent.gr --seq /nonexistent.seq");
    CHECK(r.exit_code == 1);
    std::ofstream bad(tmp("bad.gr"));
    bad << "p tww 2 1\n1 1\n";
    bad.close();
    RunResult r2 = run("solve-exact --graph " + tmp("bad.gr"));
    CHECK(r2.exit_code == 1);
}

TEST_CASE("inconclusive decides exit with code 2") {
    run("gen --family subdivided-clique --n 5 -o " + tmp("sk5.gr"));
    RunResult r = run("solve-exact --graph " + tmp("sk5.gr") + " --max-d 2 --budget 30");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("\"answer\":\"inconclusive\"") != std::string::npos);
    RunResult full = run("solve-exact --graph " + tmp("sk5.gr") + " --max-d 2");
    CHECK(full.exit_code == 0);
    CHECK(full.out.find("\"answer\":false") != std::string::npos);
}

TEST_CASE("synth strategies emit verifiable sequences and bounds") {
    run("gen --family paley --q 13 -o " + tmp("sp.gr") + " --emit-decomp " + tmp("sp.td"));
    RunResult r = run("synth --strategy strong-tree --graph " + tmp("sp.gr") + " --decomp " +
                      tmp("sp.td") + " -o " + tmp("sp.seq"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"bound_name\":\"thm1\"") != std::string::npos);
    CHECK(r.out.find("\"heuristic_used\":false") != std::string::npos);
    RunResult verify = run("verify --graph " + tmp("sp.gr") + " --seq " + tmp("sp.seq"));
    CHECK(verify.exit_code == 0);

    run("gen --family block-glue --spec \"K4;C5@0;K3@4\" -o " + tmp("bg.gr"));
    RunResult blocks = run("synth --strategy blocks --graph " + tmp("bg.gr") + " -o " + tmp("bg.seq"));
    CHECK(blocks.exit_code == 0);
    CHECK(blocks.out.find("\"bound_name\":\"thm2_upper\"") != std::string::npos);

    std::ofstream td(tmp("ad.td"));
    td << "s td 3 3 6\nb 1 1 2 3\nb 2 3 4 5\nb 3 5 6\n1 2\n2 3\n";
    td.close();
    std::ofstream gr(tmp("ad.gr"));
    gr << "p tww 6 5\n1 2\n2 3\n3 4\n4 5\n5 6\n";
    gr.close();
    RunResult adhesion = run("synth --strategy adhesion --graph " + tmp("ad.gr") + " --decomp " +
                             tmp("ad.td") + " -o " + tmp("ad.seq"));
    CHECK(adhesion.exit_code == 0);
    CHECK(adhesion.out.find("\"bound_name\":\"thm6\"") != std::string::npos);
    RunResult averify = run("verify --graph " + tmp("ad.gr") + " --seq " + tmp("ad.seq"));
    CHECK(averify.out.find("\"complete\":true") != std::string::npos);
}

TEST_CASE("gadget emission writes extended gr files") {
    std::ofstream gr(tmp("gad.gr"));
    gr << "p tww 7 5\n1 2\n5 2\n6 3\n7 2\n7 3\n";
    gr.close();
    std::ofstream td(tmp("gad.td"));
    td << "s td 2 6 7\nb 1 1 2 3\nb 2 2 3 4 5 6 7\n1 2\n";
    td.close();
    RunResult r = run("gadget --kind tilde --graph " + tmp("gad.gr") + " --decomp " +
                      tmp("gad.td") + " --node 1 -o " + tmp("gad_out.gr"));
    CHECK(r.exit_code == 0);
    std::string out = slurp(tmp("gad_out.gr"));
    CHECK(out.find("r ") != std::string::npos);  // red clique lines present
    RunResult hat = run("gadget --kind pendant --graph " + tmp("gad.gr") + " -o " + tmp("gad_p.gr"));
    CHECK(hat.exit_code == 0);
    CHECK(slurp(tmp("gad_p.gr")).find("p tww 14 ") == 0);
}

TEST_CASE("respect flag runs the respecting checker") {
    std::ofstream gr(tmp("star.gr"));
    gr << "p tww 4 3\n1 2\n1 3\n1 4\n";
    gr.close();
    std::ofstream seq(tmp("star.seq"));
    seq << "2 3\n2 4\n";
    seq.close();
    RunResult r = run("verify --graph " + tmp("star.gr") + " --seq " + tmp("star.seq") +
                      " --respect 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"respected\":true") != std::string::npos);
    CHECK(r.out.find("\"respect_complete\":true") != std::string::npos);
}
