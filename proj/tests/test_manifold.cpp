#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "manifold.hpp"

using namespace tvk;

TEST_CASE("builtin validation and homology oracles") {
    auto s3a = builtinTriangulation("s3_1tet");
    CHECK(s3a.tetCount() == 1);
    CHECK(s3a.firstHomology().empty());

    auto s3b = builtinTriangulation("s3_2tet");
    CHECK(s3b.tetCount() == 2);
    CHECK(s3b.firstHomology().empty());

    auto s1s2 = builtinTriangulation("s1xs2");
    CHECK(s1s2.tetCount() == 2);
    CHECK(s1s2.firstHomology() == std::vector<long>{0});

    auto t3 = builtinTriangulation("t3");
    CHECK(t3.tetCount() == 6);
    CHECK(t3.firstHomology() == std::vector<long>{0, 0, 0});

    CHECK(lensSpace(2, 1).firstHomology() == std::vector<long>{2});
    CHECK(lensSpace(3, 1).firstHomology() == std::vector<long>{3});
    CHECK(lensSpace(4, 1).firstHomology() == std::vector<long>{4});
    CHECK(lensSpace(5, 1).firstHomology() == std::vector<long>{5});
    CHECK(lensSpace(6, 1).firstHomology() == std::vector<long>{6});
    CHECK(lensSpace(5, 2).firstHomology() == std::vector<long>{5});
}

TEST_CASE("euler characteristic bookkeeping") {
    for (const char* name : {"s3_1tet", "s3_2tet", "s1xs2", "t3"}) {
        auto t = builtinTriangulation(name);
        CHECK(t.vertexClasses() - t.edgeClasses() + t.faceClasses() - t.tetCount() == 0);
    }
}

TEST_CASE("lens space input validation") {
    CHECK_THROWS_AS(lensSpace(4, 2), Error);  // gcd != 1
    CHECK_THROWS_AS(lensSpace(3, 3), Error);  // q >= p
    CHECK_THROWS_AS(lensSpace(0, 1), Error);
}

TEST_CASE("pachner moves preserve validity and homology") {
    std::mt19937 rng(99);
    for (const char* name : {"s3_2tet", "s1xs2", "t3"}) {
        Triangulation t = builtinTriangulation(name);
        auto h0 = t.firstHomology();
        for (int step = 0; step < 3; ++step) {
            auto sites = t.pachner23Sites();
            if (!sites.empty() && rng() % 2 == 0) {
                auto s = sites[rng() % sites.size()];
                Triangulation t2 = t.pachner23(s[0], s[1]);
                CHECK(t2.tetCount() == t.tetCount() + 1);
                t = std::move(t2);
            } else {
                int tet = (int)(rng() % t.tetCount());
                Triangulation t2 = t.pachner14(tet);
                CHECK(t2.tetCount() == t.tetCount() + 3);
                t = std::move(t2);
            }
            CHECK(t.firstHomology() == h0);
        }
    }
}

TEST_CASE("pachner 1-4 adds a vertex class") {
    Triangulation t = builtinTriangulation("s3_2tet");
    int v0 = t.vertexClasses();
    Triangulation t2 = t.pachner14(0);
    CHECK(t2.vertexClasses() == v0 + 1);
}

TEST_CASE("pachner 2-3 rejects bad sites") {
    Triangulation t = builtinTriangulation("s3_1tet");
    // all faces of the single tet are self-gluings: no valid 2-3 site
    CHECK(t.pachner23Sites().empty());
    CHECK_THROWS_AS(t.pachner23(0, 0), Error);
}

TEST_CASE("triangulation file round trip") {
    for (const char* name : {"s3_2tet", "t3"}) {
        Triangulation t = builtinTriangulation(name);
        std::ostringstream os;
        writeTriangulation(os, t);
        std::istringstream is(os.str());
        Triangulation back = readTriangulation(is, "roundtrip");
        CHECK(back.tetCount() == t.tetCount());
        CHECK(back.firstHomology() == t.firstHomology());
        std::ostringstream os2;
        writeTriangulation(os2, back);
        CHECK(os2.str() == os.str());
    }
}

TEST_CASE("malformed gluings are rejected") {
    // face glued to itself
    std::vector<std::array<Gluing, 4>> g(1);
    for (int f = 0; f < 4; ++f) g[0][f] = Gluing{0, f, {0, 1, 2}};
    CHECK_THROWS_AS(Triangulation::fromGluings(g), Error);
}
