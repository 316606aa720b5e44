#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "modular.hpp"
#include "textio.hpp"

using namespace tvk;

namespace {

std::string dataDir() {
    const char* d = std::getenv("TVK_DATA_DIR");
    REQUIRE(d);
    return d;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("category files round trip bit-exactly") {
    for (const char* name : {"vec_z2.cat", "vec_z3.cat", "fibonacci.cat", "ising.cat"}) {
        FusionData f = readCategoryFile(dataDir() + "/" + name);
        std::ostringstream os;
        writeCategory(os, f);
        std::istringstream is(os.str());
        FusionData back = readCategory(is, "roundtrip");
        std::ostringstream os2;
        writeCategory(os2, back);
        CHECK(os.str() == os2.str());
        CHECK(back.globalDim() == f.globalDim());
        CHECK(back.sixJStore().size() == f.sixJStore().size());
    }
}

TEST_CASE("modular files round trip") {
    for (const char* name : {"fibonacci.mod", "toric.mod", "fibonacci_square.mod"}) {
        ModularData m = readModularFile(dataDir() + "/" + name);
        std::ostringstream os;
        writeModular(os, m);
        std::istringstream is(os.str());
        ModularData back = readModular(is, "roundtrip");
        std::ostringstream os2;
        writeModular(os2, back);
        CHECK(os.str() == os2.str());
        CHECK(back.deltaPlus == m.deltaPlus);
    }
}

TEST_CASE("qdim of the unit must be one and errors name the label") {
    std::string text = slurp(dataDir() + "/vec_z2.cat");
    auto pos = text.find("qdim 1 rat[1/1]");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 15, "qdim 1 rat[2/1]");
    std::istringstream is(text);
    try {
        readCategory(is, "mutated");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("label 1") != std::string::npos);
    }
}

TEST_CASE("perturbed 6j entry breaks the pentagon and is reported") {
    std::string text = slurp(dataDir() + "/fibonacci.cat");
    // perturb the all-t tetrahedron value by +1
    auto pos = text.find("sixj t t t t t t");
    REQUIRE(pos != std::string::npos);
    auto valPos = text.find("cyc", pos);
    auto valEnd = text.find("]", valPos);
    std::string entry = text.substr(valPos, valEnd - valPos + 1);
    Cyclotomic v = Cyclotomic::parse(entry);
    text.replace(valPos, valEnd - valPos + 1, (v + Cyclotomic(1)).serialize());
    std::istringstream is(text);
    FusionData f = readCategory(is, "mutated"); // structural checks still pass
    auto rep = checkPentagon(f);
    CHECK(!rep.ok());
    CHECK(!rep.failures.empty());
    // failures name the offending 9-tuple
    CHECK(rep.failures.front().find("(a,b,c,i,j,k,l,m,n)=") == 0);
}

TEST_CASE("scaled pairing matrices are rejected at load") {
    std::string text = slurp(dataDir() + "/vec_z2.cat");
    // scale every omega entry by 2: unit normalization fails
    std::string out;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind("omega", 0) == 0) {
            auto p = line.rfind("rat[1/1]");
            REQUIRE(p != std::string::npos);
            line.replace(p, 8, "rat[2/1]");
        }
        out += line + "\n";
    }
    std::istringstream is(out);
    CHECK_THROWS_AS(readCategory(is, "scaled"), Error);
}

TEST_CASE("surgery and manifest files parse") {
    SurgeryFile s = files::readSurgeryFile(dataDir() + "/unknot_f3.srg");
    CHECK(s.strands == 1);
    CHECK(s.word.empty());
    CHECK(s.framings == std::vector<long>{3});

    SurgeryFile e = files::readSurgeryFile(dataDir() + "/empty.srg");
    CHECK(e.strands == 0);

    Manifest m = files::readManifestFile(dataDir() + "/main_theorem_fib.manifest");
    CHECK(m.pairs.size() == 5);
    CHECK(m.pairs[0].first == "builtin:s3_1tet");
    FusionData f = readCategoryFile(m.categoryPath);
    CHECK(f.name == "fibonacci");
}

TEST_CASE("surgery colors bind against a category") {
    std::istringstream is("format surgery 1\nstrands 2\nword 1 1\nframings 0 0\ncolors t t\n");
    SurgeryFile s = files::readSurgery(is, "inline");
    FusionData fib = readCategoryFile(dataDir() + "/fibonacci.cat");
    BraidClosure b = files::bindSurgery(s, fib);
    CHECK(b.hasColors);
    CHECK(b.colors == std::vector<Label>{1, 1});
    CHECK_THROWS_AS(files::bindSurgery(s, makeVecZn(2)), Error); // no label "t"
}

TEST_CASE("malformed files produce input errors") {
    {
        std::istringstream is("format surgery 1\nstrands 2\n");
        CHECK_THROWS_AS(files::readSurgery(is, "x"), Error);
    }
    {
        std::istringstream is("label a\nlabel a\n");
        CHECK_THROWS_AS(readCategory(is, "x"), Error);
    }
    {
        std::istringstream is("bogus line\n");
        CHECK_THROWS_AS(readCategory(is, "x"), Error);
    }
}

TEST_CASE("scalar grammar corner cases") {
    CHECK(Cyclotomic::parse("cyc(12)[]") == Cyclotomic(0));
    CHECK(Cyclotomic::parse("rat[7/1]") == Cyclotomic(7));
    CHECK_THROWS_AS(Cyclotomic::parse("nonsense"), Error);
    CHECK_THROWS_AS(Cyclotomic::parse("cyc(5)[1:"), Error);
}
