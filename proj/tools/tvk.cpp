// Command line frontend over the C API.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tvk.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitInputError = 2;

int exitCodeFor(int status) {
    switch (status) {
        case TVK_OK: return kExitOk;
        case TVK_CHECK_FAIL: return kExitCheckFailure;
        default: return kExitInputError;
    }
}

std::string takeString(char* s) {
    if (!s) return {};
    std::string out(s);
    tvk_string_free(s);
    return out;
}

bool fileExists(const std::string& p) {
    std::ifstream f(p);
    return f.good();
}

// data files resolve against TVK_DATA_DIR when not found directly
std::string resolvePath(const std::string& p) {
    if (fileExists(p)) return p;
    const char* dir = std::getenv("TVK_DATA_DIR");
    if (dir && *dir) {
        std::string alt = std::string(dir) + "/" + p;
        if (fileExists(alt)) return alt;
    }
    return p;
}

std::string fileDigest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "missing";
    unsigned long long h = 1469598103934665603ull;
    char buf[4096];
    while (in.read(buf, sizeof buf) || in.gcount()) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= (unsigned char)buf[i];
            h *= 1099511628211ull;
        }
    }
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx", h);
    return hex;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

json scalarJson(const std::string& exact, int digits) {
    json j;
    j["exact"] = exact;
    char *re = nullptr, *im = nullptr;
    if (tvk_scalar_approx(exact.c_str(), digits, &re, &im) == TVK_OK) {
        j["approx"] = {{"re", takeString(re)}, {"im", takeString(im)}};
    }
    return j;
}

void printScalar(const std::string& label, const std::string& exact, int digits) {
    char *re = nullptr, *im = nullptr;
    std::string dec = "?";
    if (tvk_scalar_approx(exact.c_str(), digits, &re, &im) == TVK_OK) {
        std::string r = takeString(re), i = takeString(im);
        dec = r + (i[0] == '-' ? " - " : " + ") + (i[0] == '-' ? i.substr(1) : i) + "i";
    }
    std::printf("%s = %s\n%*s ~ %s\n", label.c_str(), exact.c_str(), (int)label.size(),
                "", dec.c_str());
}

int failWith(int status, bool asJson, json& report) {
    report["ok"] = false;
    report["error"] = tvk_last_error();
    if (asJson)
        std::cout << report.dump(2) << "\n";
    else
        std::cerr << "error: " << tvk_last_error() << "\n";
    return exitCodeFor(status);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Turaev-Viro and Reshetikhin-Turaev invariants"};
    app.require_subcommand(1);
    int digits = 8;
    int threads = 1;
    bool asJson = false;
    app.add_option("--digits", digits, "decimal display precision")->capture_default_str();
    app.add_option("--threads", threads, "worker threads for coloring sums")
        ->capture_default_str();
    app.add_flag("--json", asJson, "machine-readable report");

    std::string catPath, modPath, triPath, srgPath, manPath, builtinName;
    int genus = 1;

    auto* vcmd = app.add_subcommand("validate", "run the category identity gates");
    vcmd->add_option("category", catPath)->required();
    vcmd->add_option("--modular", modPath, "also load and check modular data");

    auto* tcmd = app.add_subcommand("tv", "Turaev-Viro state sum of a 3-manifold");
    tcmd->add_option("category", catPath)->required();
    tcmd->add_option("triangulation", triPath);
    tcmd->add_option("--builtin", builtinName, "s3_1tet, s3_2tet, s1xs2, t3, lens(p,q)");

    auto* rcmd = app.add_subcommand("rt", "Reshetikhin-Turaev surgery invariant");
    rcmd->add_option("modular", modPath)->required();
    rcmd->add_option("surgery", srgPath)->required();

    auto* dcmd = app.add_subcommand("dim", "TQFT space dimension of a closed surface");
    dcmd->add_option("category", catPath)->required();
    dcmd->add_option("--genus", genus)->capture_default_str();

    auto* ycmd = app.add_subcommand("verify", "check |M|_C = tau_{Z(C)}(M) over a manifest");
    ycmd->add_option("manifest", manPath)->required();

    for (auto* sub : {vcmd, tcmd, rcmd, dcmd, ycmd}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    Timer timer;
    json report;
    report["ok"] = true;

    if (vcmd->parsed()) {
        catPath = resolvePath(catPath);
        report["command"] = "validate";
        report["inputs"] = {{"category", catPath}, {"digest", fileDigest(catPath)}};
        tvk_category* cat = nullptr;
        int rc = tvk_category_load(catPath.c_str(), &cat);
        if (rc != TVK_OK) return failWith(rc, asJson, report);
        char* rep = nullptr;
        rc = tvk_category_validate(cat, &rep);
        std::string checks = takeString(rep);
        report["checks"] = checks;
        report["pass"] = rc == TVK_OK;
        int rcm = TVK_OK;
        if (!modPath.empty()) {
            modPath = resolvePath(modPath);
            tvk_modular* mod = nullptr;
            rcm = tvk_modular_load(modPath.c_str(), &mod);
            if (rcm == TVK_OK) {
                char* delta = nullptr;
                int anomFree = 0;
                tvk_modular_info(mod, &delta, &anomFree);
                report["modular"] = {{"delta", takeString(delta)},
                                     {"anomaly_free", anomFree != 0}};
                checks += "modular: pass (ribbon, S-matrix, Gauss sums)\n";
                tvk_modular_free(mod);
            } else {
                checks += std::string("modular: FAIL (") + tvk_last_error() + ")\n";
            }
        }
        tvk_category_free(cat);
        report["elapsed_seconds"] = timer.seconds();
        if (asJson)
            std::cout << report.dump(2) << "\n";
        else
            std::cout << checks;
        if (rc != TVK_OK || rcm != TVK_OK) return exitCodeFor(rc != TVK_OK ? rc : rcm);
        return kExitOk;
    }

    if (tcmd->parsed()) {
        catPath = resolvePath(catPath);
        report["command"] = "tv";
        if (triPath.empty() == builtinName.empty()) {
            std::cerr << "error: pass exactly one of a triangulation file or --builtin\n";
            return kExitInputError;
        }
        tvk_category* cat = nullptr;
        int rc = tvk_category_load(catPath.c_str(), &cat);
        if (rc != TVK_OK) return failWith(rc, asJson, report);
        tvk_triangulation* tri = nullptr;
        if (!builtinName.empty()) {
            rc = tvk_triangulation_builtin(builtinName.c_str(), &tri);
            report["inputs"] = {{"category", catPath},
                                {"digest", fileDigest(catPath)},
                                {"builtin", builtinName}};
        } else {
            triPath = resolvePath(triPath);
            rc = tvk_triangulation_load(triPath.c_str(), &tri);
            report["inputs"] = {{"category", catPath},
                                {"digest", fileDigest(catPath)},
                                {"triangulation", triPath},
                                {"tri_digest", fileDigest(triPath)}};
        }
        if (rc != TVK_OK) {
            tvk_category_free(cat);
            return failWith(rc, asJson, report);
        }
        char* exact = nullptr;
        long visited = 0, admissible = 0;
        double secs = 0;
        rc = tvk_tv_invariant_report(cat, tri, threads, &exact, &visited, &admissible,
                                     &secs);
        if (rc != TVK_OK) {
            tvk_triangulation_free(tri);
            tvk_category_free(cat);
            return failWith(rc, asJson, report);
        }
        std::string value = takeString(exact);
        long v = 0, e = 0, f = 0, tt = 0;
        tvk_triangulation_counts(tri, &v, &e, &f, &tt);
        report["result"] = scalarJson(value, digits);
        report["colorings_visited"] = visited;
        report["admissible_colorings"] = admissible;
        report["counts"] = {{"vertices", v}, {"edges", e}, {"faces", f}, {"tets", tt}};
        report["elapsed_seconds"] = timer.seconds();
        if (asJson) {
            std::cout << report.dump(2) << "\n";
        } else {
            printScalar("|M|_C", value, digits);
            std::printf("colorings: %ld admissible of %ld visited\n", admissible, visited);
        }
        tvk_triangulation_free(tri);
        tvk_category_free(cat);
        return kExitOk;
    }

    if (rcmd->parsed()) {
        modPath = resolvePath(modPath);
        srgPath = resolvePath(srgPath);
        report["command"] = "rt";
        report["inputs"] = {{"modular", modPath},
                            {"digest", fileDigest(modPath)},
                            {"surgery", srgPath},
                            {"srg_digest", fileDigest(srgPath)}};
        tvk_modular* mod = nullptr;
        int rc = tvk_modular_load(modPath.c_str(), &mod);
        if (rc != TVK_OK) return failWith(rc, asJson, report);
        tvk_surgery* srg = nullptr;
        rc = tvk_surgery_load(srgPath.c_str(), &srg);
        if (rc != TVK_OK) {
            tvk_modular_free(mod);
            return failWith(rc, asJson, report);
        }
        char* exact = nullptr;
        rc = tvk_rt_invariant(mod, srg, &exact);
        if (rc != TVK_OK) {
            tvk_surgery_free(srg);
            tvk_modular_free(mod);
            return failWith(rc, asJson, report);
        }
        std::string value = takeString(exact);
        report["result"] = scalarJson(value, digits);
        report["elapsed_seconds"] = timer.seconds();
        if (asJson)
            std::cout << report.dump(2) << "\n";
        else
            printScalar("tau_B(M)", value, digits);
        tvk_surgery_free(srg);
        tvk_modular_free(mod);
        return kExitOk;
    }

    if (dcmd->parsed()) {
        catPath = resolvePath(catPath);
        report["command"] = "dim";
        report["inputs"] = {{"category", catPath},
                            {"digest", fileDigest(catPath)},
                            {"genus", genus}};
        tvk_category* cat = nullptr;
        int rc = tvk_category_load(catPath.c_str(), &cat);
        if (rc != TVK_OK) return failWith(rc, asJson, report);
        int rank = 0, idem = 0, dim = 0;
        if (genus == 0) {
            rc = tvk_s2_dimension(cat, &rank);
            idem = 1;
        } else {
            rc = tvk_genus_dimension(cat, genus, &rank, &idem, &dim);
        }
        tvk_category_free(cat);
        if (rc != TVK_OK) return failWith(rc, asJson, report);
        report["dimension"] = rank;
        report["projector_idempotent"] = idem != 0;
        report["block_space_dimension"] = dim;
        report["elapsed_seconds"] = timer.seconds();
        if (asJson)
            std::cout << report.dump(2) << "\n";
        else
            std::printf(
                "dim |Sigma_%d| = %d  (projector on a %d-dim space, idempotent: %s)\n",
                genus, rank, dim, idem ? "yes" : "no");
        if (!idem) return kExitCheckFailure;
        return kExitOk;
    }

    if (ycmd->parsed()) {
        manPath = resolvePath(manPath);
        report["command"] = "verify";
        report["inputs"] = {{"manifest", manPath}, {"digest", fileDigest(manPath)}};
        char* rep = nullptr;
        int rc = tvk_verify_manifest(manPath.c_str(), threads, &rep);
        std::string lines = takeString(rep);
        report["pairs"] = lines;
        report["pass"] = rc == TVK_OK;
        report["elapsed_seconds"] = timer.seconds();
        if (rc != TVK_OK && lines.empty()) return failWith(rc, asJson, report);
        if (asJson)
            std::cout << report.dump(2) << "\n";
        else
            std::cout << lines;
        return exitCodeFor(rc);
    }

    return kExitInputError;
}
