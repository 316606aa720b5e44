#include "center.hpp"

#include <numeric>

#include "statesum.hpp"

namespace tvk {

std::vector<long> AbelianGroup::element(long index) const {
    std::vector<long> out(factors.size());
    for (size_t i = factors.size(); i-- > 0;) {
        out[i] = index % factors[i];
        index /= factors[i];
    }
    return out;
}

Cyclotomic AbelianGroup::pairing(const std::vector<long>& chi, const std::vector<long>& g) const {
    Cyclotomic acc(1);
    for (size_t i = 0; i < factors.size(); ++i)
        acc *= Cyclotomic::zeta(factors[i], (chi[i] * g[i]) % factors[i]);
    return acc;
}

ModularData drinfeldDoubleAbelian(const AbelianGroup& grp) {
    for (long f : grp.factors)
        if (f < 2) fail(ErrorCode::InputError, "group factors must be >= 2");
    long n = grp.order();
    long L = n * n; // labels (g, chi)
    auto gOf = [&](long lab) { return grp.element(lab / n); };
    auto chiOf = [&](long lab) { return grp.element(lab % n); };
    auto labOf = [&](const std::vector<long>& g, const std::vector<long>& chi) {
        long gi = 0, ci = 0;
        for (size_t q = 0; q < grp.factors.size(); ++q) {
            gi = gi * grp.factors[q] + (g[q] % grp.factors[q]);
            ci = ci * grp.factors[q] + (chi[q] % grp.factors[q]);
        }
        return gi * n + ci;
    };
    auto addv = [&](const std::vector<long>& a, const std::vector<long>& b) {
        std::vector<long> c(a.size());
        for (size_t q = 0; q < a.size(); ++q) c[q] = (a[q] + b[q]) % grp.factors[q];
        return c;
    };
    auto negv = [&](const std::vector<long>& a) {
        std::vector<long> c(a.size());
        for (size_t q = 0; q < a.size(); ++q) c[q] = (grp.factors[q] - a[q]) % grp.factors[q];
        return c;
    };

    ModularData m;
    FusionData& f = m.base;
    f.name = "double";
    for (long q = 0; q < (long)grp.factors.size(); ++q)
        f.name += (q ? "x" : "_z") + std::to_string(grp.factors[q]);
    for (long lab = 0; lab < L; ++lab) {
        auto g = gOf(lab);
        auto chi = chiOf(lab);
        bool unit = true;
        for (long x : g)
            if (x) unit = false;
        for (long x : chi)
            if (x) unit = false;
        if (unit) {
            f.labelName.push_back("1");
        } else {
            std::string s = "g";
            for (long x : g) s += std::to_string(x);
            s += "c";
            for (long x : chi) s += std::to_string(x);
            f.labelName.push_back(s);
        }
        f.dual.push_back(-1);
        f.qdim.push_back(Cyclotomic(1));
        m.twist.push_back(grp.pairing(chi, g));
    }
    for (long lab = 0; lab < L; ++lab)
        f.dual[lab] = labOf(negv(gOf(lab)), negv(chiOf(lab)));

    Matrix one(1, 1);
    one.at(0, 0) = Cyclotomic(1);
    auto product = [&](long a, long b) {
        return labOf(addv(gOf(a), gOf(b)), addv(chiOf(a), chiOf(b)));
    };
    for (long a = 0; a < L; ++a)
        for (long b = 0; b < L; ++b) {
            long c = f.dual[product(a, b)];
            Triple t{(Label)a, (Label)b, (Label)c};
            f.setTriple(t, 1);
            if (cyclicCanon(t) == t) f.setOmega(t, one);
        }
    // make sure every class got a pairing (setOmega on canonical reps only)
    for (const auto& [t, d] : f.triples()) {
        (void)d;
        f.setOmega(t, one);
    }
    Tensor4 unitTensor({1, 1, 1, 1});
    unitTensor.at(0, 0, 0, 0) = Cyclotomic(1);
    // admissible 6-tuples of a pointed category: k = ij, n = jl, m = lk
    for (long i = 0; i < L; ++i)
        for (long j = 0; j < L; ++j)
            for (long l = 0; l < L; ++l) {
                long k = product(i, j);
                long nn = product(j, l);
                long mm = product(l, k);
                Tuple6 t{(Label)i, (Label)j, (Label)k, (Label)l, (Label)mm, (Label)nn};
                if (!f.sixJ(t)) f.addSixJOrbit(t, unitTensor);
            }
    f.finalize();
    // R-data: R^{(g,chi),(h,psi)} = <chi, h>
    for (long a = 0; a < L; ++a)
        for (long b = 0; b < L; ++b) {
            Matrix r(1, 1);
            r.at(0, 0) = grp.pairing(chiOf(a), gOf(b));
            m.rsym[Triple{(Label)a, (Label)b, (Label)product(a, b)}] = std::move(r);
        }
    m.finalize();
    return m;
}

MainTheoremReport verifyMainTheorem(const FusionData& f, const ModularData& z,
                                    const Triangulation& t, const BraidClosure& surgery,
                                    int threads) {
    MainTheoremReport rep;
    rep.lhs = tvInvariant(f, t, threads);
    rep.rhs = rtInvariant(z, surgery);
    rep.equal = rep.lhs == rep.rhs;
    return rep;
}

} // namespace tvk
