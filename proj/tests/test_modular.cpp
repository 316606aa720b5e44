#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>

#include "center.hpp"
#include "modular.hpp"
#include "textio.hpp"

using namespace tvk;

namespace {

std::string dataDir() {
    const char* d = std::getenv("TVK_DATA_DIR");
    REQUIRE(d);
    return d;
}

Cyclotomic goldenRatio() { return -(Cyclotomic::zeta(5, 2) + Cyclotomic::zeta(5, 3)); }

} // namespace

TEST_CASE("fibonacci S-matrix, twists, gauss sums") {
    ModularData fib = readModularFile(dataDir() + "/fibonacci.mod");
    Cyclotomic phi = goldenRatio();
    CHECK(fib.smatrix.at(0, 0) == Cyclotomic(1));
    CHECK(fib.smatrix.at(0, 1) == phi);
    CHECK(fib.smatrix.at(1, 0) == phi);
    CHECK(fib.smatrix.at(1, 1) == Cyclotomic(-1));
    CHECK(!fib.anomalyFree()); // Fibonacci alone has Delta+ != Delta-
    CHECK(fib.deltaPlus * fib.deltaMinus == fib.base.globalDim());
    // twist is a primitive 5th root of unity
    Cyclotomic t = fib.twist[1];
    CHECK(t * t * t * t * t == Cyclotomic(1));
    CHECK(t != Cyclotomic(1));
}

TEST_CASE("trivial braiding on vec_z2 is rejected as non-modular") {
    ModularData m;
    m.base = makeVecZn(2);
    m.twist = {Cyclotomic(1), Cyclotomic(1)};
    Matrix one(1, 1);
    one.at(0, 0) = Cyclotomic(1);
    for (Label a = 0; a < 2; ++a)
        for (Label b = 0; b < 2; ++b) m.rsym[Triple{a, b, (Label)((a + b) % 2)}] = one;
    CHECK_THROWS_AS(m.finalize(), Error); // S = all-ones matrix is singular
}

TEST_CASE("unknot closures") {
    ModularData fib = readModularFile(dataDir() + "/fibonacci.mod");
    for (Label c = 0; c < 2; ++c) {
        BraidClosure unknot{1, {}, {0}, {c}, true};
        CHECK(evalBraidClosure(fib, unknot) == fib.base.qdim[c]);
        BraidClosure framed{1, {}, {1}, {c}, true};
        CHECK(evalBraidClosure(fib, framed) == fib.twist[c] * fib.base.qdim[c]);
        BraidClosure neg{1, {}, {-2}, {c}, true};
        Cyclotomic tw = fib.twist[c].inverse();
        CHECK(evalBraidClosure(fib, neg) == tw * tw * fib.base.qdim[c]);
    }
    // writhe compensation: closure of sigma_1 is an unknot; 0-framed value is qdim
    BraidClosure curled{2, {1}, {0}, {1}, true};
    CHECK(evalBraidClosure(fib, curled) == fib.base.qdim[1]);
}

TEST_CASE("hopf link reproduces the S-matrix") {
    ModularData fib = readModularFile(dataDir() + "/fibonacci.mod");
    for (Label a = 0; a < 2; ++a)
        for (Label b = 0; b < 2; ++b) {
            BraidClosure hopf{2, {1, 1}, {0, 0}, {a, b}, true};
            CHECK(evalBraidClosure(fib, hopf) == fib.smatrix.at(a, b));
        }
    ModularData toric = readModularFile(dataDir() + "/toric.mod");
    for (Label a = 0; a < 4; ++a)
        for (Label b = 0; b < 4; ++b) {
            BraidClosure hopf{2, {1, 1}, {0, 0}, {a, b}, true};
            CHECK(evalBraidClosure(toric, hopf) == toric.smatrix.at(a, b));
        }
}

TEST_CASE("braid relations hold on randomized colorings") {
    std::mt19937 rng(17);
    ModularData fibsq = readModularFile(dataDir() + "/fibonacci_square.mod");
    ModularData toric = readModularFile(dataDir() + "/toric.mod");
    for (auto* m : {&toric, &fibsq}) {
        int L = m->base.labelCount();
        for (int trial = 0; trial < 6; ++trial) {
            // sigma1 sigma2 sigma1 vs sigma2 sigma1 sigma2, random extra letter
            int extra = 1 + (int)(rng() % 2);
            std::vector<int> w1{1, 2, 1, extra}, w2{2, 1, 2, extra};
            // both braids have the same permutation; color components
            std::vector<int> perm{0, 1, 2};
            for (int g : w1) std::swap(perm[g - 1], perm[g]);
            std::vector<int> comp(3, -1);
            int nc = 0;
            for (int s = 0; s < 3; ++s) {
                if (comp[s] >= 0) continue;
                int x = s;
                while (comp[x] < 0) {
                    comp[x] = nc;
                    x = perm[x];
                }
                ++nc;
            }
            std::vector<Label> colors(nc);
            std::vector<long> framings(nc, 0);
            for (int c = 0; c < nc; ++c) colors[c] = (Label)(rng() % L);
            BraidClosure b1{3, w1, framings, colors, true};
            BraidClosure b2{3, w2, framings, colors, true};
            CHECK(evalBraidClosure(*m, b1) == evalBraidClosure(*m, b2));
        }
    }
}

TEST_CASE("far commutation of distant generators") {
    ModularData toric = readModularFile(dataDir() + "/toric.mod");
    std::mt19937 rng(4);
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<int> w1{1, 3}, w2{3, 1};
        std::vector<int> perm{0, 1, 2, 3};
        for (int g : w1) std::swap(perm[g - 1], perm[g]);
        std::vector<int> comp(4, -1);
        int nc = 0;
        for (int s = 0; s < 4; ++s) {
            if (comp[s] >= 0) continue;
            int x = s;
            while (comp[x] < 0) {
                comp[x] = nc;
                x = perm[x];
            }
            ++nc;
        }
        std::vector<Label> colors(nc);
        for (int c = 0; c < nc; ++c) colors[c] = (Label)(rng() % 4);
        BraidClosure b1{4, w1, std::vector<long>(nc, 0), colors, true};
        BraidClosure b2{4, w2, std::vector<long>(nc, 0), colors, true};
        CHECK(evalBraidClosure(toric, b1) == evalBraidClosure(toric, b2));
    }
}

TEST_CASE("surgery invariant closed forms") {
    ModularData toric = readModularFile(dataDir() + "/toric.mod");
    BraidClosure empty{0, {}, {}, {}, false};
    CHECK(rtInvariant(toric, empty) == Cyclotomic(Rational(1, 2)));
    BraidClosure u0{1, {}, {0}, {}, false};
    CHECK(rtInvariant(toric, u0) == Cyclotomic(1));
    for (int p = 1; p <= 6; ++p) {
        BraidClosure up{1, {}, {p}, {}, false};
        Cyclotomic want(p % 2 == 0 ? Rational(1) : Rational(1, 2));
        CHECK(rtInvariant(toric, up) == want);
    }
}

TEST_CASE("kirby stabilization at the formula level") {
    // adding a distant +-1 framed unknot leaves tau unchanged (anomaly free)
    ModularData toric = readModularFile(dataDir() + "/toric.mod");
    ModularData fibsq = readModularFile(dataDir() + "/fibonacci_square.mod");
    for (auto* m : {&toric, &fibsq}) {
        BraidClosure base{1, {}, {2}, {}, false};
        Cyclotomic v = rtInvariant(*m, base);
        for (long s : {1L, -1L}) {
            BraidClosure stab{2, {}, {2, s}, {}, false};
            CHECK(rtInvariant(*m, stab) == v);
        }
    }
}

TEST_CASE("anomalous data is rejected by the surgery invariant") {
    ModularData fib = readModularFile(dataDir() + "/fibonacci.mod");
    BraidClosure empty{0, {}, {}, {}, false};
    CHECK_THROWS_AS(rtInvariant(fib, empty), Error);
}

TEST_CASE("mirror is an involution and flips twists") {
    ModularData fib = readModularFile(dataDir() + "/fibonacci.mod");
    ModularData mir = mirror(fib);
    CHECK(mir.twist[1] == fib.twist[1].inverse());
    ModularData back = mirror(mir);
    CHECK(back.twist == fib.twist);
    CHECK(back.rsym == fib.rsym);
    CHECK(back.smatrix == fib.smatrix);
}

TEST_CASE("deligne square of fibonacci") {
    ModularData fib = readModularFile(dataDir() + "/fibonacci.mod");
    ModularData sq = deligneSquare(fib);
    CHECK(sq.base.labelCount() == 4);
    Cyclotomic d = fib.base.globalDim();
    CHECK(sq.base.globalDim() == d * d);
    CHECK(sq.anomalyFree());
    CHECK(sq.deltaPlus == d);
    // matches the shipped file
    ModularData shipped = readModularFile(dataDir() + "/fibonacci_square.mod");
    CHECK(shipped.base.labelCount() == sq.base.labelCount());
    CHECK(shipped.twist == sq.twist);
    CHECK(shipped.smatrix == sq.smatrix);
    // trivial square
    ModularData one;
    one.base = makeVecZn(1);
    one.twist = {Cyclotomic(1)};
    Matrix m1(1, 1);
    m1.at(0, 0) = Cyclotomic(1);
    one.rsym[Triple{0, 0, 0}] = m1;
    one.finalize();
    ModularData onesq = deligneSquare(one);
    CHECK(onesq.base.labelCount() == 1);
}

TEST_CASE("shipped modular invariants") {
    for (const char* name : {"fibonacci.mod", "toric.mod", "double_z3.mod",
                             "fibonacci_square.mod"}) {
        ModularData m = readModularFile(dataDir() + "/" + name);
        const FusionData& f = m.base;
        for (Label i = 0; i < f.labelCount(); ++i)
            CHECK(m.smatrix.at(f.unit, i) == f.qdim[i]);
        CHECK(m.deltaPlus * m.deltaMinus == f.globalDim());
    }
}

TEST_CASE("braid relation holds for the anomalous fibonacci braiding too") {
    ModularData fib = readModularFile(dataDir() + "/fibonacci.mod");
    std::vector<int> w1{1, 2, 1}, w2{2, 1, 2};
    BraidClosure b1{3, w1, {0, 0}, {1, 1}, true};
    BraidClosure b2{3, w2, {0, 0}, {1, 1}, true};
    CHECK(evalBraidClosure(fib, b1) == evalBraidClosure(fib, b2));
}

TEST_CASE("generator inverses cancel") {
    ModularData fib = readModularFile(dataDir() + "/fibonacci.mod");
    BraidClosure id2{2, {}, {0, 0}, {1, 1}, true};
    BraidClosure cancel{2, {1, -1}, {0, 0}, {1, 1}, true};
    CHECK(evalBraidClosure(fib, cancel) == evalBraidClosure(fib, id2));
}

TEST_CASE("malformed braid input is rejected") {
    ModularData fib = readModularFile(dataDir() + "/fibonacci.mod");
    // word letter out of range
    BraidClosure bad{2, {2}, {0, 0}, {1, 1}, true};
    CHECK_THROWS_AS(evalBraidClosure(fib, bad), Error);
    // component mismatch: sigma_1 closure has one component, two framings given
    BraidClosure mismatch{2, {1}, {0, 0}, {1, 1}, true};
    CHECK_THROWS_AS(evalBraidClosure(fib, mismatch), Error);
    // missing colors
    BraidClosure noColors{2, {1, 1}, {0, 0}, {}, false};
    CHECK_THROWS_AS(evalBraidClosure(fib, noColors), Error);
}

TEST_CASE("chain surgery matches the state sum on L(5,2)") {
    ModularData fibsq = readModularFile(dataDir() + "/fibonacci_square.mod");
    ModularData toric = readModularFile(dataDir() + "/toric.mod");
    BraidClosure chain{2, {1, 1}, {3, 2}, {}, false};
    CHECK(rtInvariant(fibsq, chain) == Cyclotomic(0));
    CHECK(rtInvariant(toric, chain) == Cyclotomic(Rational(1, 2)));
}
