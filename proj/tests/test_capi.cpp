#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <string>

#include "tvk.h"

namespace {

std::string dataPath(const std::string& name) {
    const char* d = std::getenv("TVK_DATA_DIR");
    REQUIRE(d);
    return std::string(d) + "/" + name;
}

std::string take(char* s) {
    REQUIRE(s);
    std::string out(s);
    tvk_string_free(s);
    return out;
}

} // namespace

TEST_CASE("category lifecycle and validation") {
    tvk_category* cat = nullptr;
    REQUIRE(tvk_category_load(dataPath("fibonacci.cat").c_str(), &cat) == TVK_OK);
    char* name = nullptr;
    CHECK(tvk_category_name(cat, &name) == TVK_OK);
    CHECK(take(name) == "fibonacci");
    char* dim = nullptr;
    CHECK(tvk_category_global_dim(cat, &dim) == TVK_OK);
    CHECK(take(dim) == "cyc(5)[0:2/1, 2:-1/1, 3:-1/1]");
    char* report = nullptr;
    CHECK(tvk_category_validate(cat, &report) == TVK_OK);
    std::string rep = take(report);
    CHECK(rep.find("pentagon: pass") != std::string::npos);
    CHECK(rep.find("orthonormality: pass") != std::string::npos);
    tvk_category_free(cat);
}

TEST_CASE("missing file gives bad input and an error message") {
    tvk_category* cat = nullptr;
    CHECK(tvk_category_load("/nonexistent/file.cat", &cat) == TVK_BAD_INPUT);
    CHECK(std::string(tvk_last_error()).find("cannot open") != std::string::npos);
}

TEST_CASE("tv invariant through the C interface") {
    tvk_category* cat = nullptr;
    REQUIRE(tvk_category_load(dataPath("fibonacci.cat").c_str(), &cat) == TVK_OK);
    tvk_triangulation* tri = nullptr;
    REQUIRE(tvk_triangulation_builtin("s3_1tet", &tri) == TVK_OK);
    char* exact = nullptr;
    REQUIRE(tvk_tv_invariant(cat, tri, 1, &exact) == TVK_OK);
    std::string v = take(exact);
    CHECK(v == "cyc(5)[0:3/5, 2:1/5, 3:1/5]");
    char *re = nullptr, *im = nullptr;
    REQUIRE(tvk_scalar_approx(v.c_str(), 10, &re, &im) == TVK_OK);
    CHECK(take(re) == "0.2763932023");
    CHECK(take(im) == "0.0000000000");
    long vv = 0, ee = 0, ff = 0, tt = 0;
    CHECK(tvk_triangulation_counts(tri, &vv, &ee, &ff, &tt) == TVK_OK);
    CHECK(tt == 1);
    tvk_triangulation_free(tri);
    tvk_category_free(cat);
}

TEST_CASE("homology and builtin lens spaces") {
    tvk_triangulation* tri = nullptr;
    REQUIRE(tvk_triangulation_builtin("lens(4,1)", &tri) == TVK_OK);
    char* h = nullptr;
    REQUIRE(tvk_triangulation_homology(tri, &h) == TVK_OK);
    CHECK(take(h) == "4");
    tvk_triangulation_free(tri);
    CHECK(tvk_triangulation_builtin("bogus", &tri) == TVK_BAD_INPUT);
}

TEST_CASE("rt invariant and anomaly error") {
    tvk_modular* mod = nullptr;
    REQUIRE(tvk_modular_load(dataPath("toric.mod").c_str(), &mod) == TVK_OK);
    char* delta = nullptr;
    int anomFree = 0;
    REQUIRE(tvk_modular_info(mod, &delta, &anomFree) == TVK_OK);
    CHECK(take(delta) == "rat[2/1]");
    CHECK(anomFree == 1);
    tvk_surgery* srg = nullptr;
    REQUIRE(tvk_surgery_load(dataPath("unknot_f2.srg").c_str(), &srg) == TVK_OK);
    char* exact = nullptr;
    REQUIRE(tvk_rt_invariant(mod, srg, &exact) == TVK_OK);
    CHECK(take(exact) == "rat[1/1]");
    tvk_surgery_free(srg);
    tvk_modular_free(mod);

    // anomalous: fibonacci alone
    tvk_modular* fib = nullptr;
    REQUIRE(tvk_modular_load(dataPath("fibonacci.mod").c_str(), &fib) == TVK_OK);
    tvk_surgery* e = nullptr;
    REQUIRE(tvk_surgery_load(dataPath("empty.srg").c_str(), &e) == TVK_OK);
    char* out = nullptr;
    CHECK(tvk_rt_invariant(fib, e, &out) == TVK_CHECK_FAIL);
    tvk_surgery_free(e);
    tvk_modular_free(fib);
}

TEST_CASE("dimension calls") {
    tvk_category* cat = nullptr;
    REQUIRE(tvk_category_load(dataPath("vec_z3.cat").c_str(), &cat) == TVK_OK);
    int rank = 0, idem = 0, dim = 0;
    REQUIRE(tvk_genus_dimension(cat, 1, &rank, &idem, &dim) == TVK_OK);
    CHECK(rank == 9);
    CHECK(idem == 1);
    int s2 = 0;
    REQUIRE(tvk_s2_dimension(cat, &s2) == TVK_OK);
    CHECK(s2 == 1);
    CHECK(tvk_genus_dimension(cat, 7, &rank, &idem, &dim) == TVK_BAD_INPUT);
    tvk_category_free(cat);
}

TEST_CASE("manifest verification") {
    char* report = nullptr;
    int rc = tvk_verify_manifest(dataPath("main_theorem_vecz2.manifest").c_str(), 1,
                                 &report);
    std::string rep = take(report);
    CHECK(rc == TVK_OK);
    CHECK(rep.find("MISMATCH") == std::string::npos);
    CHECK(rep.find("equal") != std::string::npos);
}
