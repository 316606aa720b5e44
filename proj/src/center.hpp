#pragma once

#include <numeric>

#include "manifold.hpp"
#include "modular.hpp"

namespace tvk {

// Finite abelian group as invariant factors (n1 | n2 | ...); elements and
// characters are tuples mod the factors.
struct AbelianGroup {
    std::vector<long> factors;

    long order() const {
        long o = 1;
        for (long f : factors) o *= f;
        return o;
    }
    long exponent() const {
        long e = 1;
        for (long f : factors) e = std::lcm(e, f);
        return e;
    }
    std::vector<long> element(long index) const; // mixed-radix decode
    // character pairing <chi, g> as a root of unity of the exponent conductor
    Cyclotomic pairing(const std::vector<long>& chi, const std::vector<long>& g) const;
};

// Z(Vec_G) for abelian G: labels (g, chi), quantum dimensions 1, group fusion,
// twist <chi, g>, braiding R^{(g,chi),(h,psi)} = <chi, h>.
ModularData drinfeldDoubleAbelian(const AbelianGroup& g);

struct MainTheoremReport {
    Cyclotomic lhs; // state sum |M|_C
    Cyclotomic rhs; // tau_{Z(C)}(M) from the surgery presentation
    bool equal = false;
};

// lhs = tv_invariant(F, T), rhs = rt_invariant(Z, surgery); the caller asserts
// that Z is center data for F and that T and the surgery present the same
// manifold.
MainTheoremReport verifyMainTheorem(const FusionData& f, const ModularData& z,
                                    const Triangulation& t, const BraidClosure& surgery,
                                    int threads = 1);

} // namespace tvk
