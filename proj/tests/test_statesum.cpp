#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>

#include "manifold.hpp"
#include "statesum.hpp"
#include "textio.hpp"

using namespace tvk;

namespace {

std::string dataDir() {
    const char* d = std::getenv("TVK_DATA_DIR");
    REQUIRE(d);
    return d;
}

FusionData loadCat(const std::string& name) {
    return readCategoryFile(dataDir() + "/" + name);
}

Cyclotomic rat(long p, long q) { return Cyclotomic(Rational(p, q)); }

} // namespace

TEST_CASE("S^3 and S^1 x S^2 known values for all shipped categories") {
    for (const char* name : {"vec_z2.cat", "vec_z3.cat", "fibonacci.cat", "ising.cat",
                             "rep_a4.cat"}) {
        FusionData f = loadCat(name);
        Cyclotomic want = f.globalDim().inverse();
        CHECK(tvInvariant(f, builtinTriangulation("s3_1tet")) == want);
        CHECK(tvInvariant(f, builtinTriangulation("s3_2tet")) == want);
        CHECK(tvInvariant(f, builtinTriangulation("s1xs2")) == Cyclotomic(1));
    }
}

TEST_CASE("lens space values for pointed categories") {
    FusionData z2 = loadCat("vec_z2.cat");
    FusionData z3 = loadCat("vec_z3.cat");
    for (int p = 2; p <= 6; ++p) {
        Cyclotomic v = tvInvariant(z2, lensSpace(p, 1));
        CHECK(v == (p % 2 == 0 ? rat(1, 1) : rat(1, 2)));
    }
    CHECK(tvInvariant(z3, lensSpace(3, 1)) == rat(1, 1));
    CHECK(tvInvariant(z3, lensSpace(2, 1)) == rat(1, 3));
    CHECK(tvInvariant(z2, builtinTriangulation("t3")) == rat(4, 1));
}

TEST_CASE("report instrumentation") {
    FusionData z2 = loadCat("vec_z2.cat");
    TvReport rep = tvInvariantReport(z2, builtinTriangulation("s3_1tet"));
    CHECK(rep.value == rat(1, 2));
    CHECK(rep.admissibleColorings > 0);
    CHECK(rep.coloringsVisited >= rep.admissibleColorings);
    // vec_z2 admissible colorings of the dual complex are cocycle-like: a power of 2
    long a = rep.admissibleColorings;
    while (a % 2 == 0) a /= 2;
    CHECK(a == 1);
}

TEST_CASE("multiplicativity over disjoint unions") {
    Triangulation two = readTriangulationFile(dataDir() + "/s3_disjoint_s3.tri");
    for (const char* name : {"vec_z2.cat", "fibonacci.cat"}) {
        FusionData f = loadCat(name);
        Cyclotomic one = tvInvariant(f, builtinTriangulation("s3_1tet"));
        CHECK(tvInvariant(f, two) == one * one);
    }
}

TEST_CASE("pachner invariance on randomized move sequences") {
    std::mt19937 rng(2024);
    for (const char* cat : {"vec_z3.cat", "fibonacci.cat"}) {
        FusionData f = loadCat(cat);
        for (const char* name : {"s3_1tet", "s1xs2", "lens(3,1)"}) {
            Triangulation base = builtinTriangulation(name);
            Cyclotomic want = tvInvariant(f, base);
            for (int trial = 0; trial < 4; ++trial) {
                Triangulation t = base;
                for (int mv = 0; mv < 2; ++mv) {
                    auto sites = t.pachner23Sites();
                    if (!sites.empty() && rng() % 2) {
                        auto s = sites[rng() % sites.size()];
                        t = t.pachner23(s[0], s[1]);
                    } else {
                        t = t.pachner14((int)(rng() % t.tetCount()));
                    }
                }
                CHECK(tvInvariant(f, t) == want);
            }
        }
    }
}

TEST_CASE("region orientation and vertex order independence") {
    std::mt19937 rng(5);
    FusionData fib = loadCat("fibonacci.cat");
    FusionData ising = loadCat("ising.cat");
    for (const char* name : {"s3_2tet", "lens(2,1)"}) {
        Triangulation t = builtinTriangulation(name);
        for (auto* f : {&fib, &ising}) {
            Cyclotomic want = tvInvariant(*f, t);
            for (int trial = 0; trial < 5; ++trial) {
                std::vector<int> dirs(t.edgeClasses());
                for (auto& d : dirs) d = rng() % 2 ? 1 : -1;
                CHECK(tvInvariantOriented(*f, t, dirs) == want);
            }
        }
    }
}

TEST_CASE("threaded sum agrees with the serial one") {
    FusionData fib = loadCat("fibonacci.cat");
    Triangulation t = builtinTriangulation("lens(3,1)");
    CHECK(tvInvariant(fib, t, 1) == tvInvariant(fib, t, 2));
}

TEST_CASE("sphere dimension is one") {
    for (const char* name : {"vec_z2.cat", "vec_z3.cat", "fibonacci.cat", "ising.cat"}) {
        FusionData f = loadCat(name);
        CHECK(s2Dimension(f) == 1);
    }
}

TEST_CASE("genus one dimensions and projector idempotence") {
    {
        FusionData f = loadCat("vec_z2.cat");
        auto r = genusDimension(f, 1);
        CHECK(r.rank == 4);
        CHECK(r.idempotent);
    }
    {
        FusionData f = loadCat("vec_z3.cat");
        auto r = genusDimension(f, 1);
        CHECK(r.rank == 9);
        CHECK(r.idempotent);
    }
    {
        FusionData f = loadCat("fibonacci.cat");
        auto r = genusDimension(f, 1);
        CHECK(r.rank == 4);
        CHECK(r.matrixDim == 5);
        CHECK(r.idempotent);
    }
}

TEST_CASE("genus two for a pointed category") {
    // dim tau(Sigma_2) for Z(Vec_Z2) is sum over its 4 simples of (2/1)^2 = 16
    FusionData f = loadCat("vec_z2.cat");
    auto r = genusDimension(f, 2);
    CHECK(r.rank == 16);
    CHECK(r.idempotent);
    CHECK_THROWS_AS(genusDimension(f, 3), Error);
}

TEST_CASE("the invariant separates lens spaces with equal homology") {
    // |L(5,1)| and |L(5,2)| differ for Fibonacci although H_1 = Z/5 for both;
    // both values are cross-checked against the surgery side in the shipped
    // manifests (5-framed unknot and the [3,2] chain)
    FusionData fib = loadCat("fibonacci.cat");
    Cyclotomic a = tvInvariant(fib, lensSpace(5, 1));
    Cyclotomic b = tvInvariant(fib, lensSpace(5, 2));
    CHECK(a == Cyclotomic(1));
    CHECK(b == Cyclotomic(0));
    CHECK(lensSpace(5, 1).firstHomology() == lensSpace(5, 2).firstHomology());
}

TEST_CASE("multiplicity-two category against the group-counting oracle") {
    // |M|_{Rep(G)} counts homomorphisms pi_1(M) -> G divided by |G|; for A4:
    //   L(2,1): 1 + 3 double transpositions          ->  4/12 = 1/3
    //   L(3,1): 1 + 8 three-cycles                   ->  9/12 = 3/4
    //   T^3:    commuting triples 48 + 48 + 72 = 168 -> 168/12 = 14
    FusionData a4 = loadCat("rep_a4.cat");
    CHECK(a4.n(3, 3, 3) == 2); // the two-dimensional multiplicity space
    CHECK(tvInvariant(a4, lensSpace(2, 1)) == rat(1, 3));
    CHECK(tvInvariant(a4, lensSpace(3, 1)) == rat(3, 4));
    CHECK(tvInvariant(a4, builtinTriangulation("t3")) == rat(14, 1));
}

TEST_CASE("pachner invariance with multiplicity-two data") {
    std::mt19937 rng(77);
    FusionData a4 = loadCat("rep_a4.cat");
    Triangulation t = lensSpace(2, 1);
    Cyclotomic want = tvInvariant(a4, t);
    for (int trial = 0; trial < 2; ++trial) {
        Triangulation cur = t;
        auto sites = cur.pachner23Sites();
        if (!sites.empty()) {
            auto s = sites[rng() % sites.size()];
            cur = cur.pachner23(s[0], s[1]);
        }
        cur = cur.pachner14((int)(rng() % cur.tetCount()));
        CHECK(tvInvariant(a4, cur) == want);
    }
}

TEST_CASE("genus one matches the torus invariant for rep_a4") {
    // the double of A4 has 14 simples: 4 + 4 + 3 + 3 over the conjugacy
    // classes (e, double transpositions, two classes of 3-cycles) with
    // centralizers A4, V4, C3, C3
    FusionData a4 = loadCat("rep_a4.cat");
    auto r = genusDimension(a4, 1);
    CHECK(r.rank == 14);
    CHECK(r.idempotent);
    CHECK(r.matrixDim == 22);
    CHECK(tvInvariant(a4, builtinTriangulation("t3")) == Cyclotomic(r.rank));
}
