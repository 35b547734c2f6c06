#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pmrc/cluster.hpp"
#include "pmrc/mbr.hpp"
#include "pmrc/msr.hpp"

using namespace pmrc;
using namespace pmrc::cluster;

namespace {

std::shared_ptr<MbrCode> fig4_code() {
    static PrimeField f5(5);
    return std::make_shared<MbrCode>(
        mbr_derive(5, 2, 2, 1, 0, 0),
        EncodingMatrix::from_rows(f5, {{1, 0}, {0, 1}, {1, 1}, {1, 2}, {1, 3}}));
}

Event fail(int node) { return {Event::Kind::fail, node, {}, {}, 0}; }
Event repair(int node, std::vector<int> helpers, int p) {
    return {Event::Kind::repair, node, std::move(helpers), {}, p};
}
Event reconstruct(std::vector<int> readers, int p) {
    return {Event::Kind::reconstruct, 0, {}, std::move(readers), p};
}
Event compromise(int node) { return {Event::Kind::compromise, node, {}, {}, 0}; }

} // namespace

TEST_CASE("init: five live shares; zero message gives zero shares; seeded determinism") {
    const FeVec msg{1, 2, 3};
    ClusterState st(fig4_code(), msg, 42);
    for (int i = 1; i <= 5; ++i) CHECK(st.is_live(i));
    CHECK(st.shares_match_encoder());

    ClusterState zero(fig4_code(), FeVec{0, 0, 0}, 42);
    for (int i = 1; i <= 5; ++i)
        for (uint32_t v : zero.share(i).stripes[0]) CHECK(v == 0);

    ClusterState a(fig4_code(), msg, 7), b(fig4_code(), msg, 7);
    for (int i = 1; i <= 5; ++i) CHECK(a.share(i) == b.share(i));
}

TEST_CASE("compromised helper cannot poison a p=1 repair (error non-propagation)") {
    // The motivating scenario: node 3 is captured and passes corrupt data
    // during the repair of node 1. With p = 1 the repair still lands exactly.
    ClusterState st(fig4_code(), FeVec{1, 2, 3}, 1);
    const Share before = st.share(1);
    st.apply(compromise(3));
    st.apply(fail(1));
    const EventOutcome out = st.apply(repair(1, {2, 3, 4, 5}, 1));
    CHECK(out.ok);
    CHECK(st.share(1) == before);
    CHECK(st.shares_match_encoder());
}

TEST_CASE("fail+repair every node once at p=0 restores the initial state") {
    ClusterState st(fig4_code(), FeVec{4, 1, 3}, 9);
    std::vector<Share> initial;
    for (int i = 1; i <= 5; ++i) initial.push_back(st.share(i));
    for (int node = 1; node <= 5; ++node) {
        st.apply(fail(node));
        std::vector<int> helpers;
        for (int j = 1; j <= 5 && static_cast<int>(helpers.size()) < 2; ++j)
            if (j != node) helpers.push_back(j);
        const EventOutcome out = st.apply(repair(node, helpers, 0));
        CHECK(out.ok);
    }
    for (int i = 1; i <= 5; ++i) CHECK(st.share(i) == initial[static_cast<size_t>(i - 1)]);
}

TEST_CASE("scripted run with one compromised node: all p=1 reconstructs are exact") {
    ClusterState st(fig4_code(), FeVec{2, 0, 4}, 123);
    std::vector<Event> script{
        compromise(4),
        reconstruct({1, 2, 3, 4}, 1),
        fail(2),
        repair(2, {1, 3, 4, 5}, 1),
        reconstruct({2, 3, 4, 5}, 1),
        fail(5),
        repair(5, {1, 2, 3, 4}, 1),
        reconstruct({1, 2, 4, 5}, 1),
        fail(3),
        repair(3, {1, 2, 4, 5}, 1),
    };
    const RunReport rep = run_script(st, script);
    CHECK(rep.events_applied == 10);
    CHECK(rep.repairs_ok == 3);
    CHECK(rep.repairs_failed == 0);
    CHECK(rep.reconstructs_exact == 3);
    CHECK(rep.reconstructs_mismatched == 0);
    CHECK(rep.shares_match_encoder);
}

TEST_CASE("corruption beyond p surfaces as RepairFailed, not a crash") {
    ClusterState st(fig4_code(), FeVec{1, 2, 3}, 5);
    st.apply(compromise(2));
    st.apply(compromise(3));
    st.apply(fail(1));
    // two compromised helpers, budget p=1: repair may fail or land wrong,
    // and the log records it either way
    const EventOutcome out = st.apply(repair(1, {2, 3, 4, 5}, 1));
    if (!out.ok) {
        CHECK(out.error == "decode-failure");
    }
    // a later repair with honest helpers fixes the node (p=0, helpers 4, 5)
    if (!out.ok) {
        const EventOutcome retry = st.apply(repair(1, {4, 5}, 0));
        CHECK(retry.ok);
        CHECK(st.shares_match_encoder());
    }
}

TEST_CASE("empty script gives an empty report") {
    ClusterState st(fig4_code(), FeVec{1, 2, 3}, 0);
    const RunReport rep = run_script(st, {});
    CHECK(rep.events_applied == 0);
    CHECK(rep.repairs_ok == 0);
    CHECK(rep.reconstructs_exact == 0);
    CHECK(rep.shares_match_encoder);
}

TEST_CASE("identical (seed, script) replays bit-identically") {
    const std::vector<Event> script{
        compromise(1), fail(3), repair(3, {1, 2, 4, 5}, 1), reconstruct({2, 3, 4, 5}, 1),
    };
    ClusterState a(fig4_code(), FeVec{3, 3, 1}, 77);
    ClusterState b(fig4_code(), FeVec{3, 3, 1}, 77);
    const RunReport ra = run_script(a, script);
    const RunReport rb = run_script(b, script);
    REQUIRE(ra.log.size() == rb.log.size());
    for (size_t i = 0; i < ra.log.size(); ++i) {
        CHECK(ra.log[i].description == rb.log[i].description);
        CHECK(ra.log[i].ok == rb.log[i].ok);
    }
    for (int i = 1; i <= 5; ++i) CHECK(a.share(i) == b.share(i));
}

TEST_CASE("eavesdropper taps accumulate captured symbols") {
    ClusterState st(fig4_code(), FeVec{1, 2, 3}, 10);
    st.apply({Event::Kind::tap_storage, 2, {}, {}, 0});
    CHECK(st.captured().size() == 2); // alpha symbols
    st.apply({Event::Kind::tap_repair, 1, {}, {}, 0});
    st.apply(fail(1));
    st.apply(repair(1, {2, 3, 4, 5}, 1));
    CHECK(st.captured().size() == 2 + 4); // four helper symbols observed
    CHECK(st.taps().storage_nodes == std::vector<int>{2});
    CHECK(st.taps().repair_nodes == std::vector<int>{1});
}

TEST_CASE("MSR cluster: ten-event script with a compromised node") {
    PrimeField f13(13);
    auto code = std::make_shared<MsrCode>(
        msr_derive(7, 3, 4, 1, 0, 0),
        EncodingMatrix::vandermonde_from_points(f13, {0, 1, 3, 2, 6, 5, 4}, 4, 2));
    FeVec msg{1, 2, 3, 4, 5, 6};
    ClusterState st(code, msg, 99);
    std::vector<Event> script{
        compromise(6),
        reconstruct({1, 2, 3, 6, 7}, 1),
        fail(2),
        repair(2, {1, 3, 4, 5, 6, 7}, 1),
        reconstruct({2, 4, 5, 6, 7}, 1),
        fail(7),
        repair(7, {1, 2, 3, 4, 5, 6}, 1),
        reconstruct({1, 3, 5, 6, 7}, 1),
    };
    const RunReport rep = run_script(st, script);
    CHECK(rep.repairs_ok == 2);
    CHECK(rep.reconstructs_exact == 3);
    CHECK(rep.shares_match_encoder);
}

TEST_CASE("event validation errors are recorded, not thrown") {
    ClusterState st(fig4_code(), FeVec{1, 2, 3}, 4);
    // repair of a live node is rejected
    const RunReport rep = run_script(st, {repair(1, {2, 3}, 0)});
    CHECK(rep.repairs_failed + (rep.events_applied - rep.repairs_ok - rep.repairs_failed) >= 1);
    CHECK(!st.event_log().empty());
    CHECK(!st.event_log().back().ok);
}
