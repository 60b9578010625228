#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <regex>
#include <sstream>

#include "crowdcov/cli.hpp"
#include "crowdcov/witness_io.hpp"
#include "support.hpp"

using namespace crowdcov;

namespace {

std::string tmp_file(const std::string& name, const std::string& content) {
    std::string path = "cli_test_" + name + ".crowd";
    std::ofstream out(path);
    out << content;
    return path;
}

struct Run {
    int exit;
    std::string out, err;
};

Run run_check(const std::string& path, CheckOptions opt) {
    std::ostringstream out, err;
    int code = cmd_check(path, opt, out, err);
    return {code, out.str(), err.str()};
}

std::string strip_time(std::string s) {
    static const std::regex time_re(R"("time_ms":[0-9.eE+-]+)");
    return std::regex_replace(s, time_re, R"("time_ms":0)");
}

const char* kLeaderCoverable =
    "semantics broadcast\nvalues a\nstates q1 q2 q3\ninit q1=omega\ntarget q2>=1\n"
    "trans q1 a!! q2\ntrans q1 a?? q3\ntrans q2 a?? q2\ntrans q3 a?? q3\n";
const char* kLeaderSafe =
    "semantics broadcast\nvalues a\nstates q1 q2 q3\ninit q1=omega\ntarget q2>=2\n"
    "trans q1 a!! q2\ntrans q1 a?? q3\ntrans q2 a?? q2\ntrans q3 a?? q3\n";

}  // namespace

TEST_CASE("check maps outcomes to the exit-status contract") {
    auto cov = tmp_file("cov", kLeaderCoverable);
    auto safe = tmp_file("safe", kLeaderSafe);

    CheckOptions opt;
    opt.engine = "backward";
    opt.witness = true;
    auto r = run_check(cov, opt);
    CHECK(r.exit == exit_code::kCoverable);
    CHECK(r.out.find("verdict: COVERABLE") != std::string::npos);
    CHECK(r.out.find("witness n=1") != std::string::npos);

    CHECK(run_check(safe, CheckOptions{}).exit == exit_code::kSafe);

    CheckOptions km;
    km.engine = "km";
    CHECK(run_check(cov, km).exit == exit_code::kInapplicable);

    CheckOptions oracle;
    oracle.engine = "oracle";
    oracle.oracle_n = 4;
    auto ro = run_check(safe, oracle);
    CHECK(ro.exit == exit_code::kBounded);  // bounded exploration never exits 0

    CHECK(run_check("no_such_file.crowd", CheckOptions{}).exit == exit_code::kInputError);
}

TEST_CASE("validation failures exit 2 and list the violations") {
    auto raw = tmp_file("raw",
                        "semantics broadcast\nvalues a\nstates q1 q2 q3\ninit q1=omega\n"
                        "target q2>=1\ntrans q1 a!! q2\ntrans q1 a?? q3\n");
    auto r = run_check(raw, CheckOptions{});
    CHECK(r.exit == exit_code::kInputError);
    CHECK(r.err.find("violation:") != std::string::npos);

    // the repair flag makes the same file pass
    CheckOptions fix;
    fix.complete = true;
    fix.engine = "backward";
    CHECK(run_check(raw, fix).exit == exit_code::kCoverable);

    std::ostringstream out, err;
    CHECK(cmd_validate(raw, out, err) == exit_code::kInputError);
    CHECK(out.str().find("no receive") != std::string::npos);
}

TEST_CASE("json reports are schema-stable and deterministic modulo time") {
    auto cov = tmp_file("json", kLeaderCoverable);
    CheckOptions opt;
    opt.json = true;
    opt.witness = true;
    opt.engine = "backward";
    auto a = run_check(cov, opt);
    auto b = run_check(cov, opt);
    CHECK(strip_time(a.out) == strip_time(b.out));
    for (const char* field : {"\"verdict\"", "\"engine\"", "\"digest\"", "\"n\"",
                              "\"witness\"", "\"stats\"", "\"time_ms\""})
        CHECK(a.out.find(field) != std::string::npos);
}

TEST_CASE("explore lists configurations in canonical order") {
    auto cov = tmp_file("explore", kLeaderCoverable);
    std::ostringstream out, err;
    CHECK(cmd_explore(cov, 3, kDefaultBudget, out, err) == 0);
    CHECK(out.str() ==
          "q2=1 q3=2\n"
          "q1=3\n"
          "configs=2\n");

    std::ostringstream out0, err0;
    CHECK(cmd_explore(cov, 0, kDefaultBudget, out0, err0) == 0);
    CHECK(out0.str() == "-\nconfigs=1\n");

    auto rv = tmp_file("explore_rv",
                       "semantics rendezvous\nvalues v\nstates q1 q2 q3 q4\ninit q1=omega\n"
                       "target q4>=1\ntrans q1 v! q3\ntrans q1 v? q4\n");
    std::ostringstream out2, err2;
    CHECK(cmd_explore(rv, 2, kDefaultBudget, out2, err2) == 0);
    CHECK(out2.str().find("configs=2") != std::string::npos);
}

TEST_CASE("compile prints the net dump") {
    auto rv = tmp_file("compile",
                       "semantics rendezvous\nvalues v\nstates q1 q2 q3 q4\n"
                       "init q1=1 q2=omega\ntarget q4>=1\ntrans q1 v! q3\ntrans q2 v? q4\n");
    std::ostringstream out, err;
    CHECK(cmd_compile(rv, out, err) == 0);
    CHECK(out.str().find("t0 pre q1=1 q2=1 post q3=1 q4=1") != std::string::npos);

    std::ostringstream out2, err2;
    CHECK(cmd_compile("missing.crowd", out2, err2) == exit_code::kInputError);
}

TEST_CASE("printed witnesses parse back and replay") {
    auto t = crowdcov::test::leader_template();
    Witness w;
    w.n = 3;
    w.init = crowdcov::test::make_config({3, 0, 0});
    Step s;
    s.kind = Step::Kind::Broadcast;
    s.trans = 0;
    s.assignment = {{1, 2}};
    w.steps = {s};
    REQUIRE(replay_witness(t, w).ok);

    auto text = serialize_witness(t, w);
    auto back = parse_witness(t, text);
    CHECK(back.n == w.n);
    CHECK(back.init == w.init);
    REQUIRE(back.steps.size() == 1);
    CHECK(back.steps[0] == w.steps[0]);
    CHECK(replay_witness(t, back).ok);

    // a rendez-vous witness round-trips too
    auto rv = crowdcov::test::rv_pair_template();
    Witness w2;
    w2.n = 2;
    w2.init = crowdcov::test::make_config({1, 1, 0, 0});
    Step s2;
    s2.kind = Step::Kind::RendezVous;
    s2.trans = 0;
    s2.partner = 1;
    w2.steps = {s2};
    REQUIRE(replay_witness(rv, w2).ok);
    CHECK(replay_witness(rv, parse_witness(rv, serialize_witness(rv, w2))).ok);
}

TEST_CASE("a tiny budget makes explore exit with the bounded status") {
    auto rv = tmp_file("budget",
                       "semantics rendezvous\nvalues v\nstates q1 q2 q3 q4\n"
                       "init q1=omega\ntarget q4>=1\ntrans q1 v! q3\ntrans q1 v? q4\n");
    std::ostringstream out, err;
    CHECK(cmd_explore(rv, 6, 2, out, err) == exit_code::kBounded);
    CHECK(err.str().find("budget") != std::string::npos);
}

TEST_CASE("steps that are not enabled are rejected") {
    auto t = crowdcov::test::leader_template();
    Step s;
    s.kind = Step::Kind::Broadcast;
    s.trans = 0;
    // wrong split: claims one receiver, but two processes must move
    s.assignment = {{1, 1}};
    CHECK_FALSE(step_enabled(t, crowdcov::test::make_config({3, 0, 0}), s));
    CHECK_THROWS_AS(apply_step(t, crowdcov::test::make_config({3, 0, 0}), s),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_witness(t, "witness n=1\ninit q1=1\nstep q1 zap q2\n"), ParseError);
}

TEST_CASE("digest is a stable content hash") {
    CHECK(fnv1a64("") == 14695981039346656037ull);
    CHECK(fnv1a64("a") != fnv1a64("b"));
    CHECK(fnv1a64(kLeaderCoverable) == fnv1a64(kLeaderCoverable));
}
