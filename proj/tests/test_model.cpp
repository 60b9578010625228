#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "crowdcov/template.hpp"
#include "support.hpp"

using namespace crowdcov;

static const char* kLeaderFile =
    "semantics broadcast\n"
    "values a\n"
    "states q1 q2 q3\n"
    "init q1=omega\n"
    "target q2\n"
    "trans q1 a!! q2\n"
    "trans q1 a?? q3\n";

TEST_CASE("parse broadcast leader file") {
    auto t = parse_template(kLeaderFile);
    CHECK(t.kind == SemanticsKind::Broadcast);
    CHECK(t.states == std::vector<std::string>{"q1", "q2", "q3"});
    CHECK(t.values == std::vector<std::string>{"a"});
    REQUIRE(t.transitions.size() == 2);
    CHECK(t.transitions[0] == Transition{0, {LabelKind::BcastSend, 0}, 1});
    CHECK(t.transitions[1] == Transition{0, {LabelKind::BcastRecv, 0}, 2});
    CHECK(t.init.counts[0].is_omega());
    CHECK(t.target.demand == std::vector<Count>{0, 1, 0});
}

TEST_CASE("parse accepts a template without transitions") {
    auto t = parse_template(
        "semantics rendezvous\nstates q1\ninit q1=omega\ntarget q1\n");
    CHECK(t.transitions.empty());
    CHECK(validate(t).ok());
}

TEST_CASE("label/kind mismatch parses but fails validation") {
    auto t = parse_template(
        "semantics rendezvous\nvalues v\nstates q1 q2\ninit q1=omega\ntarget q2\n"
        "trans q1 w(v) q2\n");
    CHECK(t.transitions.size() == 1);
    auto rep = validate(t);
    CHECK_FALSE(rep.ok());
    CHECK(rep.has(Violation::Kind::LabelKindMismatch));
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_template("semantics broadcast\nstates q1 q1\n"), ParseError);
    try {
        parse_template("semantics broadcast\nstates q1\nbogus q1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
    // unknown identifier
    CHECK_THROWS_AS(parse_template("semantics rendezvous\nvalues v\nstates q1\n"
                                   "init q1=omega\ntarget q1\ntrans q1 v! q9\n"),
                    ParseError);
    // missing mandatory sections
    CHECK_THROWS_AS(parse_template("states q1\ninit q1=1\ntarget q1\n"), ParseError);
    CHECK_THROWS_AS(parse_template("semantics store\nvalues v\nstates q1\n"
                                   "init q1=1\ntarget q1\n"),
                    ParseError);  // store_init required
    CHECK_THROWS_AS(parse_template("semantics rendezvous\nvalues v\nstates q1\n"
                                   "init q1=1\nstore_init v\ntarget q1\n"),
                    ParseError);  // store_init forbidden here
}

TEST_CASE("totality violations are one per missing (state, value) pair") {
    auto t = parse_template(kLeaderFile);
    auto rep = validate(t);
    CHECK(rep.count(Violation::Kind::MissingReceive) == 2);  // q2/a and q3/a
}

TEST_CASE("lock discipline accepts a straight lock-write-unlock cycle") {
    auto t = parse_template(
        "semantics lockstore\nvalues v\nstates q1 l1 l2 q2\n"
        "init q1=omega\nstore_init v\ntarget q2\n"
        "trans q1 lock l1\n"
        "trans l1 w(v) l2\n"
        "trans l2 unlock q2\n");
    CHECK(validate(t).ok());
    auto st = lock_statuses(t);
    CHECK(st[0] == LockStatus::Free);
    CHECK(st[1] == LockStatus::Held);
    CHECK(st[2] == LockStatus::Held);
    CHECK(st[3] == LockStatus::Free);
}

TEST_CASE("lock self-loop makes the source both free and held") {
    auto t = parse_template(
        "semantics lockstore\nvalues v\nstates q1\n"
        "init q1=omega\nstore_init v\ntarget q1\n"
        "trans q1 lock q1\n");
    auto rep = validate(t);
    CHECK(rep.has(Violation::Kind::LockFromHeld));
    CHECK(rep.has(Violation::Kind::LockStatusConflict));
}

TEST_CASE("lock status propagation ignores transition order") {
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
        auto t = crowdcov::test::random_lockstore(rng);
        auto ref = lock_statuses(t);
        TemplateAutomaton shuffled = t;
        std::shuffle(shuffled.transitions.begin(), shuffled.transitions.end(), rng);
        CHECK(lock_statuses(shuffled) == ref);
    }
}

TEST_CASE("complete_receives adds exactly the missing self-loops") {
    auto t = parse_template(kLeaderFile);
    auto done = complete_receives(t);
    REQUIRE(done.transitions.size() == 4);
    CHECK(done.transitions[2] == Transition{1, {LabelKind::BcastRecv, 0}, 1});
    CHECK(done.transitions[3] == Transition{2, {LabelKind::BcastRecv, 0}, 2});
    CHECK(validate(done).count(Violation::Kind::MissingReceive) == 0);

    // already total: unchanged
    CHECK(complete_receives(done) == done);

    // two values, one state missing both
    auto t2 = parse_template(
        "semantics broadcast\nvalues a b\nstates q1 q2\ninit q1=omega\ntarget q2\n"
        "trans q1 a?? q1\ntrans q1 b?? q1\ntrans q2 a?? q2\n");
    auto done2 = complete_receives(t2);
    CHECK(done2.transitions.size() == t2.transitions.size() + 1);

    CHECK_THROWS_AS(complete_receives(crowdcov::test::rv_pair_template()),
                    std::invalid_argument);
}

TEST_CASE("completion yields totality on every random broadcast template") {
    std::mt19937 rng(11);
    for (int i = 0; i < 100; ++i) {
        auto t = crowdcov::test::random_broadcast(rng);
        auto done = complete_receives(t);
        CHECK(validate(done).count(Violation::Kind::MissingReceive) == 0);
    }
}

TEST_CASE("serialize then parse is the identity") {
    std::mt19937 rng(23);
    for (auto kind : crowdcov::test::all_kinds()) {
        for (int i = 0; i < 40; ++i) {
            auto t = crowdcov::test::random_template(kind, rng);
            auto text = serialize_template(t);
            auto back = parse_template(text);
            CHECK(back == t);
            CHECK(parse_template(serialize_template(back)) == back);
        }
    }
}

TEST_CASE("validate flags empty init and empty target") {
    auto t = parse_template("semantics rendezvous\nstates q1 q2\ninit q1=0\ntarget q2\n");
    CHECK(validate(t).has(Violation::Kind::NoInitialProcess));
    auto t2 = parse_template("semantics rendezvous\nstates q1 q2\ninit q1=1\ntarget q2>=0\n");
    CHECK(validate(t2).has(Violation::Kind::EmptyTarget));
}

TEST_CASE("init on a lock-holding state is rejected") {
    auto t = parse_template(
        "semantics lockstore\nvalues v\nstates q1 l1\n"
        "init q1=omega l1=1\nstore_init v\ntarget q1\n"
        "trans q1 lock l1\n"
        "trans l1 unlock q1\n");
    CHECK(validate(t).has(Violation::Kind::InitOnHeldState));
}
