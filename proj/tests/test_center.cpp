#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>

#include "center.hpp"
#include "statesum.hpp"
#include "textio.hpp"

using namespace tvk;

namespace {

std::string dataDir() {
    const char* d = std::getenv("TVK_DATA_DIR");
    REQUIRE(d);
    return d;
}

} // namespace

TEST_CASE("drinfeld double of small cyclic groups") {
    {
        AbelianGroup z1{{}};
        CHECK(z1.order() == 1);
    }
    {
        ModularData d = drinfeldDoubleAbelian({{2}});
        CHECK(d.base.labelCount() == 4);
        CHECK(d.anomalyFree());
        CHECK(d.deltaPlus == Cyclotomic(2));
        // twists are {1, 1, 1, -1}
        int minusOnes = 0;
        for (const auto& t : d.twist)
            if (t == Cyclotomic(-1)) ++minusOnes;
        CHECK(minusOnes == 1);
        // matches shipped file bit-exactly through serialization
        ModularData shipped = readModularFile(dataDir() + "/toric.mod");
        CHECK(shipped.twist == d.twist);
        CHECK(shipped.smatrix == d.smatrix);
    }
    {
        ModularData d = drinfeldDoubleAbelian({{3}});
        CHECK(d.base.labelCount() == 9);
        CHECK(d.anomalyFree());
        CHECK(d.deltaPlus == Cyclotomic(3));
    }
    {
        // Z/2 x Z/2: 16 labels, delta 4
        ModularData d = drinfeldDoubleAbelian({{2, 2}});
        CHECK(d.base.labelCount() == 16);
        CHECK(d.deltaPlus == Cyclotomic(4));
    }
}

TEST_CASE("toric S-matrix is the character table form") {
    ModularData d = readModularFile(dataDir() + "/toric.mod");
    const AbelianGroup g{{2}};
    // labels are (g, chi) flattened as g*2 + chi
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            auto ga = g.element(a / 2), ca = g.element(a % 2);
            auto gb = g.element(b / 2), cb = g.element(b % 2);
            Cyclotomic want = g.pairing(ca, gb) * g.pairing(cb, ga);
            CHECK(d.smatrix.at(a, b) == want);
        }
}

TEST_CASE("genus-1 dimension equals the center label count") {
    {
        FusionData f = readCategoryFile(dataDir() + "/vec_z2.cat");
        ModularData z = readModularFile(dataDir() + "/toric.mod");
        CHECK(genusDimension(f, 1).rank == z.base.labelCount());
    }
    {
        FusionData f = readCategoryFile(dataDir() + "/vec_z3.cat");
        ModularData z = readModularFile(dataDir() + "/double_z3.mod");
        CHECK(genusDimension(f, 1).rank == z.base.labelCount());
    }
    {
        FusionData f = readCategoryFile(dataDir() + "/fibonacci.cat");
        ModularData z = readModularFile(dataDir() + "/fibonacci_square.mod");
        CHECK(genusDimension(f, 1).rank == z.base.labelCount());
    }
}

TEST_CASE("main theorem spot checks") {
    {
        FusionData f = readCategoryFile(dataDir() + "/vec_z2.cat");
        ModularData z = readModularFile(dataDir() + "/toric.mod");
        BraidClosure threeFramed{1, {}, {3}, {}, false};
        auto rep = verifyMainTheorem(f, z, lensSpace(3, 1), threeFramed);
        CHECK(rep.equal);
        CHECK(rep.lhs == Cyclotomic(Rational(1, 2)));
    }
    {
        FusionData f = readCategoryFile(dataDir() + "/fibonacci.cat");
        ModularData z = readModularFile(dataDir() + "/fibonacci_square.mod");
        BraidClosure empty{0, {}, {}, {}, false};
        auto rep = verifyMainTheorem(f, z, builtinTriangulation("s3_1tet"), empty);
        CHECK(rep.equal);
        CHECK(rep.lhs == f.globalDim().inverse());
        BraidClosure zero{1, {}, {0}, {}, false};
        auto rep2 = verifyMainTheorem(f, z, builtinTriangulation("s1xs2"), zero);
        CHECK(rep2.equal);
        CHECK(rep2.lhs == Cyclotomic(1));
    }
    {
        FusionData f = readCategoryFile(dataDir() + "/vec_z3.cat");
        ModularData z = readModularFile(dataDir() + "/double_z3.mod");
        BraidClosure zero{1, {}, {0}, {}, false};
        auto rep = verifyMainTheorem(f, z, builtinTriangulation("s1xs2"), zero);
        CHECK(rep.equal);
        CHECK(rep.lhs == Cyclotomic(1));
    }
}

TEST_CASE("character pairing lands in the exponent conductor") {
    AbelianGroup g{{4}};
    Cyclotomic p = g.pairing({1}, {1});
    CHECK(p == Cyclotomic::zeta(4));
    CHECK(g.pairing({2}, {1}) == Cyclotomic(-1));
    AbelianGroup g2{{2, 3}};
    CHECK(g2.exponent() == 6);
    CHECK(g2.order() == 6);
}

TEST_CASE("main theorem on further fibonacci lens spaces") {
    FusionData f = readCategoryFile(dataDir() + "/fibonacci.cat");
    ModularData z = readModularFile(dataDir() + "/fibonacci_square.mod");
    for (int p = 4; p <= 5; ++p) {
        BraidClosure up{1, {}, {p}, {}, false};
        auto rep = verifyMainTheorem(f, z, lensSpace(p, 1), up);
        CHECK(rep.equal);
    }
    // multi-component chain presentation of L(5,2)
    BraidClosure chain{2, {1, 1}, {3, 2}, {}, false};
    auto rep = verifyMainTheorem(f, z, lensSpace(5, 2), chain);
    CHECK(rep.equal);
    CHECK(rep.lhs == Cyclotomic(0));
}

TEST_CASE("main theorem equality survives retriangulation") {
    std::mt19937 rng(31);
    FusionData f = readCategoryFile(dataDir() + "/fibonacci.cat");
    ModularData z = readModularFile(dataDir() + "/fibonacci_square.mod");
    BraidClosure threeFramed{1, {}, {3}, {}, false};
    Triangulation t = lensSpace(3, 1);
    for (int mv = 0; mv < 2; ++mv) {
        auto sites = t.pachner23Sites();
        if (!sites.empty() && rng() % 2) {
            auto s = sites[rng() % sites.size()];
            t = t.pachner23(s[0], s[1]);
        } else {
            t = t.pachner14((int)(rng() % t.tetCount()));
        }
    }
    auto rep = verifyMainTheorem(f, z, t, threeFramed);
    CHECK(rep.equal);
}
