#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cyclotomic.hpp"

using tvk::Cyclotomic;
using tvk::Rational;

namespace {

Cyclotomic goldenRatio() {
    // phi = -zeta_5^2 - zeta_5^3
    return -(Cyclotomic::zeta(5, 2) + Cyclotomic::zeta(5, 3));
}

Cyclotomic randomCyc(std::mt19937& rng) {
    static const long conductors[] = {1, 3, 4, 5, 8, 12};
    long n = conductors[rng() % 6];
    Cyclotomic acc;
    for (int t = 0; t < 3; ++t) {
        long e = rng() % n;
        long num = (long)(rng() % 7) - 3;
        long den = 1 + rng() % 3;
        acc += Cyclotomic(Rational(num, den)) * Cyclotomic::zeta(n, e);
    }
    return acc;
}

} // namespace

TEST_CASE("identity and rational arithmetic") {
    Cyclotomic x = Cyclotomic::zeta(7) + Cyclotomic(2);
    CHECK(Cyclotomic(0) + x == x);
    CHECK(Cyclotomic(Rational(1, 2)) + Cyclotomic(Rational(1, 3)) ==
          Cyclotomic(Rational(5, 6)));
    CHECK((Cyclotomic(Rational(1, 2)) + Cyclotomic(Rational(1, 3))).conductor() == 1);
}

TEST_CASE("sum of primitive 5th roots is -1") {
    Cyclotomic s = (Cyclotomic::zeta(5, 1) + Cyclotomic::zeta(5, 4)) +
                   (Cyclotomic::zeta(5, 2) + Cyclotomic::zeta(5, 3));
    CHECK(s == Cyclotomic(-1));
    CHECK(s.conductor() == 1);
}

TEST_CASE("inverse and golden ratio relation") {
    Cyclotomic x = Cyclotomic(1) + Cyclotomic::zeta(5);
    CHECK(x * x.inverse() == Cyclotomic(1));

    Cyclotomic phi = goldenRatio();
    CHECK(phi * phi == phi + Cyclotomic(1));

    CHECK_THROWS_AS(Cyclotomic(0).inverse(), tvk::Error);
}

TEST_CASE("conjugation is the zeta -> zeta^-1 automorphism") {
    CHECK(Cyclotomic::zeta(8).conj() == Cyclotomic::zeta(8, 7));
    Cyclotomic phi = goldenRatio();
    CHECK(phi.conj() == phi); // real value

    std::mt19937 rng(7);
    for (int t = 0; t < 40; ++t) {
        Cyclotomic a = randomCyc(rng), b = randomCyc(rng);
        CHECK((a * b).conj() == a.conj() * b.conj());
        CHECK((a + b).conj() == a.conj() + b.conj());
        CHECK(a.conj().conj() == a);
    }
}

TEST_CASE("field axioms on random triples") {
    std::mt19937 rng(42);
    for (int t = 0; t < 30; ++t) {
        Cyclotomic a = randomCyc(rng), b = randomCyc(rng), c = randomCyc(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (-a) == Cyclotomic(0));
        if (!a.isZero()) CHECK(a * a.inverse() == Cyclotomic(1));
    }
}

TEST_CASE("conductor minimization") {
    // zeta_12^3 = i lives in Q(zeta_4)
    Cyclotomic i12 = Cyclotomic::zeta(12, 3);
    CHECK(i12.conductor() == 4);
    CHECK(i12 == Cyclotomic::zeta(4));
    // zeta_6 = -zeta_3^2 : conductor 6 forbidden (2 mod 4)
    CHECK(Cyclotomic::zeta(6).conductor() == 3);
    CHECK(Cyclotomic::zeta(6) == -Cyclotomic::zeta(3, 2));
    // zeta_8 + zeta_8^7 = sqrt(2): stays conductor 8
    CHECK((Cyclotomic::zeta(8) + Cyclotomic::zeta(8, 7)).conductor() == 8);
    // zeta_8^2 = i
    CHECK(Cyclotomic::zeta(8, 2) == Cyclotomic::zeta(4));
}

TEST_CASE("serialization round-trips bit-exactly") {
    std::mt19937 rng(5);
    for (int t = 0; t < 60; ++t) {
        Cyclotomic a = randomCyc(rng);
        std::string s = a.serialize();
        Cyclotomic back = Cyclotomic::parse(s);
        CHECK(back == a);
        CHECK(back.serialize() == s);
    }
    CHECK(Cyclotomic(Rational(-3, 7)).serialize() == "rat[-3/7]");
    CHECK(Cyclotomic::parse("rat[-3/7]") == Cyclotomic(Rational(-3, 7)));
    CHECK(Cyclotomic::parse("cyc(5)[2:-1/1, 3:-1/1]") == goldenRatio());
}

TEST_CASE("approx") {
    std::string re, im;
    Cyclotomic(1).approx(10, re, im);
    CHECK(re == "1.0000000000");
    CHECK(im == "0.0000000000");

    goldenRatio().approx(6, re, im);
    CHECK(re == "1.618034");
    CHECK(im == "0.000000");

    Cyclotomic::zeta(4).approx(6, re, im);
    CHECK(re == "0.000000");
    CHECK(im == "1.000000");

    // 30-digit golden ratio
    goldenRatio().approx(30, re, im);
    CHECK(re == "1.618033988749894848204586834366");

    // approx respects products approximately
    std::mt19937 rng(11);
    for (int t = 0; t < 10; ++t) {
        Cyclotomic a = randomCyc(rng), b = randomCyc(rng);
        auto pa = a.approxDouble(), pb = b.approxDouble(), pab = (a * b).approxDouble();
        CHECK(std::abs(pa * pb - pab) < 1e-9);
    }
}

TEST_CASE("mul inverse examples from spec") {
    // mul(phi, phi) = phi + 1
    Cyclotomic phi = goldenRatio();
    CHECK(phi * phi == phi + Cyclotomic(1));
    // approx(phi, 6) = 1.618034
    std::string re, im;
    phi.approx(6, re, im);
    CHECK(re == "1.618034");
}

TEST_CASE("approx precision bounds") {
    Cyclotomic phi = goldenRatio();
    std::string re, im;
    // 50 digits is the documented ceiling
    phi.approx(50, re, im);
    CHECK(re == "1.61803398874989484820458683436563811772030917980576");
    CHECK_THROWS_AS(phi.approx(51, re, im), tvk::Error);
    CHECK_THROWS_AS(phi.approx(0, re, im), tvk::Error);
    // conj fixes rationals
    Cyclotomic r{tvk::Rational(22, 7)};
    CHECK(r.conj() == r);
}
