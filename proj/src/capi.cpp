#include "tvk.h"

#include <cstring>
#include <sstream>

#include "center.hpp"
#include "fusion.hpp"
#include "manifold.hpp"
#include "modular.hpp"
#include "statesum.hpp"
#include "textio.hpp"

using namespace tvk;

struct tvk_category {
    FusionData f;
};
struct tvk_modular {
    ModularData m;
};
struct tvk_triangulation {
    Triangulation t;
};
struct tvk_surgery {
    SurgeryFile s;
};

namespace {

thread_local std::string g_lastError;

char* dupString(const std::string& s) {
    char* out = (char*)std::malloc(s.size() + 1);
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename F>
int guarded(F&& fn) {
    try {
        fn();
        return TVK_OK;
    } catch (const Error& e) {
        g_lastError = e.what();
        switch (e.code()) {
            case ErrorCode::CheckFailure: return TVK_CHECK_FAIL;
            case ErrorCode::InputError: return TVK_BAD_INPUT;
            case ErrorCode::MathError: return TVK_MATH_ERROR;
            default: return TVK_INTERNAL;
        }
    } catch (const std::exception& e) {
        g_lastError = e.what();
        return TVK_INTERNAL;
    }
}

} // namespace

extern "C" {

const char* tvk_version(void) { return "tvk 1.0"; }

const char* tvk_last_error(void) { return g_lastError.c_str(); }

void tvk_string_free(char* s) { std::free(s); }

int tvk_category_load(const char* path, tvk_category** out) {
    return guarded([&] {
        auto* c = new tvk_category{readCategoryFile(path)};
        *out = c;
    });
}

void tvk_category_free(tvk_category* c) { delete c; }

int tvk_category_name(const tvk_category* c, char** out) {
    return guarded([&] { *out = dupString(c->f.name); });
}

int tvk_category_global_dim(const tvk_category* c, char** exact_out) {
    return guarded([&] { *exact_out = dupString(c->f.globalDim().serialize()); });
}

int tvk_category_validate(const tvk_category* c, char** report_out) {
    bool ok = true;
    int rc = guarded([&] {
        std::ostringstream os;
        for (auto* check : {&checkPentagon, &checkOrthonormality}) {
            CheckReport rep = (*check)(c->f);
            os << rep.check << ": " << (rep.ok() ? "pass" : "FAIL") << " ("
               << rep.casesChecked << " cases";
            if (!rep.ok()) {
                os << ", " << rep.failures.size() << " failures; first "
                   << rep.failures.front();
                ok = false;
            }
            os << ")\n";
        }
        if (report_out) *report_out = dupString(os.str());
    });
    if (rc != TVK_OK) return rc;
    if (!ok) {
        g_lastError = "category data fails an identity gate";
        return TVK_CHECK_FAIL;
    }
    return TVK_OK;
}

int tvk_modular_load(const char* path, tvk_modular** out) {
    return guarded([&] {
        auto* m = new tvk_modular{readModularFile(path)};
        *out = m;
    });
}

void tvk_modular_free(tvk_modular* m) { delete m; }

int tvk_modular_info(const tvk_modular* m, char** delta_out, int* anomaly_free) {
    return guarded([&] {
        if (delta_out) *delta_out = dupString(m->m.deltaPlus.serialize());
        if (anomaly_free) *anomaly_free = m->m.anomalyFree() ? 1 : 0;
    });
}

int tvk_triangulation_load(const char* path, tvk_triangulation** out) {
    return guarded([&] {
        auto* t = new tvk_triangulation{readTriangulationFile(path)};
        *out = t;
    });
}

int tvk_triangulation_builtin(const char* name, tvk_triangulation** out) {
    return guarded([&] {
        auto* t = new tvk_triangulation{builtinTriangulation(name)};
        *out = t;
    });
}

void tvk_triangulation_free(tvk_triangulation* t) { delete t; }

int tvk_triangulation_counts(const tvk_triangulation* t, long* vertices, long* edges,
                             long* faces, long* tets) {
    return guarded([&] {
        if (vertices) *vertices = t->t.vertexClasses();
        if (edges) *edges = t->t.edgeClasses();
        if (faces) *faces = t->t.faceClasses();
        if (tets) *tets = t->t.tetCount();
    });
}

int tvk_triangulation_homology(const tvk_triangulation* t, char** out) {
    return guarded([&] {
        std::ostringstream os;
        auto d = t->t.firstHomology();
        for (size_t i = 0; i < d.size(); ++i) os << (i ? " " : "") << d[i];
        *out = dupString(os.str());
    });
}

int tvk_surgery_load(const char* path, tvk_surgery** out) {
    return guarded([&] {
        auto* s = new tvk_surgery{files::readSurgeryFile(path)};
        *out = s;
    });
}

void tvk_surgery_free(tvk_surgery* s) { delete s; }

int tvk_tv_invariant(const tvk_category* c, const tvk_triangulation* t, int threads,
                     char** exact_out) {
    return guarded([&] {
        Cyclotomic v = tvInvariant(c->f, t->t, threads);
        *exact_out = dupString(v.serialize());
    });
}

int tvk_tv_invariant_report(const tvk_category* c, const tvk_triangulation* t,
                            int threads, char** exact_out, long* colorings_visited,
                            long* admissible_colorings, double* seconds) {
    return guarded([&] {
        TvReport rep = tvInvariantReport(c->f, t->t, threads);
        if (exact_out) *exact_out = dupString(rep.value.serialize());
        if (colorings_visited) *colorings_visited = rep.coloringsVisited;
        if (admissible_colorings) *admissible_colorings = rep.admissibleColorings;
        if (seconds) *seconds = rep.elapsedSeconds;
    });
}

int tvk_rt_invariant(const tvk_modular* m, const tvk_surgery* s, char** exact_out) {
    return guarded([&] {
        BraidClosure b = files::bindSurgery(s->s, m->m.base);
        Cyclotomic v = rtInvariant(m->m, b);
        *exact_out = dupString(v.serialize());
    });
}

int tvk_s2_dimension(const tvk_category* c, int* out) {
    return guarded([&] { *out = s2Dimension(c->f); });
}

int tvk_genus_dimension(const tvk_category* c, int genus, int* rank, int* idempotent,
                        int* matrix_dim) {
    return guarded([&] {
        GenusResult r = genusDimension(c->f, genus);
        if (rank) *rank = r.rank;
        if (idempotent) *idempotent = r.idempotent ? 1 : 0;
        if (matrix_dim) *matrix_dim = r.matrixDim;
    });
}

int tvk_verify_manifest(const char* path, int threads, char** report_out) {
    bool allEqual = true;
    int rc = guarded([&] {
        Manifest man = files::readManifestFile(path);
        FusionData f = readCategoryFile(man.categoryPath);
        ModularData z = readModularFile(man.centerPath);
        std::ostringstream os;
        for (const auto& [triSpec, srgPath] : man.pairs) {
            Triangulation t = triSpec.rfind("builtin:", 0) == 0
                                  ? builtinTriangulation(triSpec.substr(8))
                                  : readTriangulationFile(triSpec);
            SurgeryFile sf = files::readSurgeryFile(srgPath);
            BraidClosure b = files::bindSurgery(sf, z.base);
            MainTheoremReport rep = verifyMainTheorem(f, z, t, b, threads);
            os << triSpec << ": |M|_C = " << rep.lhs.serialize()
               << "  tau_Z(M) = " << rep.rhs.serialize() << "  "
               << (rep.equal ? "equal" : "MISMATCH") << "\n";
            if (!rep.equal) allEqual = false;
        }
        if (report_out) *report_out = dupString(os.str());
    });
    if (rc != TVK_OK) return rc;
    if (!allEqual) {
        g_lastError = "main theorem verification found a mismatch";
        return TVK_CHECK_FAIL;
    }
    return TVK_OK;
}

int tvk_scalar_approx(const char* exact, int digits, char** re_out, char** im_out) {
    return guarded([&] {
        Cyclotomic v = Cyclotomic::parse(exact);
        std::string re, im;
        v.approx(digits, re, im);
        if (re_out) *re_out = dupString(re);
        if (im_out) *im_out = dupString(im);
    });
}

} // extern "C"
