// Generates the shipped category/modular data files.
//
// Fibonacci and Ising data come from exact Temperley-Lieb skein evaluation at
// a root of unity: colors are Jones-Wenzl projectors, vertices the standard
// triple vertices, and theta/tetrahedron/crossing values are closed diagram
// evaluations in Q(zeta). The abelian data (Vec_Z/n, doubles) is written from
// closed forms.

#include <filesystem>
#include <functional>
#include <fstream>
#include <iostream>
#include <map>
#include <vector>

#include "center.hpp"
#include "cyclotomic.hpp"
#include "fusion.hpp"
#include "modular.hpp"
#include "textio.hpp"

using namespace tvk;

namespace {

using Pairing = std::vector<int>;

struct Morphism {
    int nb = 0, nt = 0;
    std::map<Pairing, Cyclotomic> terms;
};

Morphism mZero(int nb, int nt) { return Morphism{nb, nt, {}}; }

Morphism mId(int n) {
    Pairing p(2 * n);
    for (int i = 0; i < n; ++i) {
        p[i] = n + i;
        p[n + i] = i;
    }
    return Morphism{n, n, {{p, Cyclotomic(1)}}};
}

// cup-cap generator joining strands i, i+1 (0-based)
Morphism mE(int n, int i) {
    Pairing p(2 * n);
    for (int k = 0; k < n; ++k) {
        p[k] = n + k;
        p[n + k] = k;
    }
    p[i] = i + 1;
    p[i + 1] = i;
    p[n + i] = n + i + 1;
    p[n + i + 1] = n + i;
    return Morphism{n, n, {{p, Cyclotomic(1)}}};
}

void addTerm(Morphism& m, const Pairing& p, const Cyclotomic& c) {
    if (c.isZero()) return;
    auto it = m.terms.find(p);
    if (it == m.terms.end()) {
        m.terms.emplace(p, c);
    } else {
        it->second += c;
        if (it->second.isZero()) m.terms.erase(it);
    }
}

Morphism mAdd(const Morphism& a, const Morphism& b) {
    Morphism out = a;
    for (const auto& [p, c] : b.terms) addTerm(out, p, c);
    return out;
}

Morphism mScale(const Morphism& a, const Cyclotomic& c) {
    Morphism out{a.nb, a.nt, {}};
    for (const auto& [p, x] : a.terms) addTerm(out, p, x * c);
    return out;
}

Morphism mTensor(const Morphism& a, const Morphism& b) {
    Morphism out{a.nb + b.nb, a.nt + b.nt, {}};
    auto mapA = [&](int i) { return i < a.nb ? i : i + b.nb; };
    auto mapB = [&](int i) { return i < b.nb ? a.nb + i : a.nb + a.nt + i; };
    for (const auto& [pa, ca] : a.terms)
        for (const auto& [pb, cb] : b.terms) {
            Pairing p(2 * (a.nb + b.nb + a.nt + b.nt) / 2);
            p.assign(a.nb + b.nb + a.nt + b.nt, -1);
            for (int i = 0; i < a.nb + a.nt; ++i) p[mapA(i)] = mapA(pa[i]);
            for (int i = 0; i < b.nb + b.nt; ++i) p[mapB(i)] = mapB(pb[i]);
            addTerm(out, p, ca * cb);
        }
    return out;
}

// g after f (f: a -> b, g: b -> c)
Morphism mCompose(const Cyclotomic& delta, const Morphism& g, const Morphism& f) {
    if (f.nt != g.nb) fail(ErrorCode::InternalError, "TL compose shape mismatch");
    int a = f.nb, b = f.nt, c = g.nt;
    Morphism out{a, c, {}};
    for (const auto& [pf, cf] : f.terms)
        for (const auto& [pg, cg] : g.terms) {
            // nodes: f-bottom 0..a-1 (external), f-top/g-bottom 0..b-1 (mid),
            // g-top 0..c-1 (external)
            Pairing result(a + c, -2);
            std::vector<char> midSeen(b, 0);
            auto followFrom = [&](int extStart) {
                // walk from an external point to its external partner
                // state: (side 0 = in f, 1 = in g, position)
                int side, pos;
                if (extStart < a) {
                    side = 0;
                    pos = pf[extStart];
                } else {
                    side = 1;
                    pos = pg[b + (extStart - a)];
                }
                while (true) {
                    if (side == 0) {
                        if (pos < a) return pos; // f-bottom external
                        int mid = pos - a;
                        midSeen[mid] = 1;
                        side = 1;
                        pos = pg[mid];
                    } else {
                        if (pos >= b) return a + (pos - b); // g-top external
                        midSeen[pos] = 1;
                        side = 0;
                        pos = pf[a + pos];
                    }
                }
            };
            for (int x = 0; x < a + c; ++x) {
                if (result[x] != -2) continue;
                int y = followFrom(x);
                result[x] = y;
                result[y] = x;
            }
            // closed loops among unvisited mid points
            int loops = 0;
            for (int midStart = 0; midStart < b; ++midStart) {
                if (midSeen[midStart]) continue;
                ++loops;
                int side = 0, pos = a + midStart;
                // walk the cycle through f starting at f-top midStart
                while (true) {
                    if (side == 0) {
                        int nxt = pf[pos]; // in f
                        int mid = nxt - a;
                        if (midSeen[mid]) break;
                        midSeen[mid] = 1;
                        side = 1;
                        pos = mid;
                    } else {
                        int nxt = pg[pos];
                        int mid = nxt;
                        if (midSeen[mid]) break;
                        midSeen[mid] = 1;
                        side = 0;
                        pos = a + mid;
                    }
                }
            }
            Cyclotomic coeff = cf * cg;
            for (int q = 0; q < loops; ++q) coeff *= delta;
            addTerm(out, result, coeff);
        }
    return out;
}

Cyclotomic mClosure(const Cyclotomic& delta, const Morphism& m) {
    if (m.nb != m.nt) fail(ErrorCode::InternalError, "closure needs an endomorphism");
    int n = m.nb;
    Cyclotomic total;
    for (const auto& [p, c] : m.terms) {
        // close bottom i with top i; count loops
        std::vector<char> seen(2 * n, 0);
        int loops = 0;
        for (int s = 0; s < 2 * n; ++s) {
            if (seen[s]) continue;
            ++loops;
            int x = s;
            while (!seen[x]) {
                seen[x] = 1;
                int y = p[x]; // diagram arc
                seen[y] = 1;
                x = y < n ? y + n : y - n; // closure arc
            }
        }
        Cyclotomic coeff = c;
        for (int q = 0; q < loops; ++q) coeff *= delta;
        total += coeff;
    }
    return total;
}

struct Skein {
    Cyclotomic A, Ainv, delta;
    std::vector<Morphism> jw; // jones-wenzl projectors
    int level;                // admissibility bound a+b+c <= 2*level - 4

    Skein(long conductor, long exponent, int maxColor, int r) {
        A = Cyclotomic::zeta(conductor, exponent);
        Ainv = A.inverse();
        delta = -(A * A) - (Ainv * Ainv);
        level = r;
        jw.resize(maxColor + 1);
        jw[0] = mId(0);
        if (maxColor >= 1) jw[1] = mId(1);
        // Chebyshev dimensions for the loop value delta
        std::vector<Cyclotomic> cheb(maxColor + 2);
        cheb[0] = Cyclotomic(1);
        cheb[1] = delta;
        for (int n = 1; n <= maxColor; ++n) cheb[n + 1] = delta * cheb[n] - cheb[n - 1];
        for (int n = 1; n < maxColor; ++n) {
            // f_{n+1} = f_n (x) 1 - (D_{n-1}/D_n) (f_n (x) 1) e_n (f_n (x) 1)
            Morphism fe = mTensor(jw[n], mId(1));
            Morphism e = mE(n + 1, n - 1);
            Morphism m2 = mCompose(delta, fe, mCompose(delta, e, fe));
            Cyclotomic ratio = cheb[n - 1] * cheb[n].inverse();
            jw[n + 1] = mAdd(fe, mScale(m2, -ratio));
        }
    }

    Cyclotomic dim(int a) const { return mClosure(delta, jw[a]); }

    bool admissible(int a, int b, int c) const {
        if ((a + b + c) % 2) return false;
        if (c > a + b || a > b + c || b > a + c) return false;
        if (a + b + c > 2 * level - 4) return false;
        return true;
    }

    // spray diagram c -> a+b with i nested cups in the middle
    Morphism spray(int a, int b, int c) const {
        int i = (a + b - c) / 2;
        Morphism m{c, a + b, {}};
        Pairing p(c + a + b, -1);
        for (int q = 0; q < a - i; ++q) {
            p[q] = c + q;
            p[c + q] = q;
        }
        for (int q = a - i; q < c; ++q) {
            p[q] = c + q + 2 * i;
            p[c + q + 2 * i] = q;
        }
        for (int k = 0; k < i; ++k) {
            p[c + a - 1 - k] = c + a + k;
            p[c + a + k] = c + a - 1 - k;
        }
        m.terms.emplace(p, Cyclotomic(1));
        return m;
    }

    // vertex c -> a (x) b
    Morphism vertex(int a, int b, int c) const {
        Morphism v = mCompose(delta, mTensor(jw[a], jw[b]),
                              mCompose(delta, spray(a, b, c), jw[c]));
        return v;
    }

    // co-vertex a (x) b -> c (mirror image)
    Morphism coVertex(int a, int b, int c) const {
        Morphism m{a + b, c, {}};
        int i = (a + b - c) / 2;
        Pairing p(a + b + c, -1);
        for (int q = 0; q < a - i; ++q) {
            p[q] = a + b + q;
            p[a + b + q] = q;
        }
        for (int q = a + i; q < a + b; ++q) {
            p[q] = a + b + q - 2 * i;
            p[a + b + q - 2 * i] = q;
        }
        for (int k = 0; k < i; ++k) {
            p[a - 1 - k] = a + k;
            p[a + k] = a - 1 - k;
        }
        m.terms.emplace(p, Cyclotomic(1));
        return mCompose(delta, jw[c], mCompose(delta, m, mTensor(jw[a], jw[b])));
    }

    Cyclotomic theta(int a, int b, int c) const {
        return mClosure(delta, mCompose(delta, coVertex(a, b, c), vertex(a, b, c)));
    }

    // positive crossing of a single strand over b strands: 1+b -> b+1
    Morphism crossSingle(int b) const {
        Morphism acc = mId(1 + b);
        for (int k = 0; k < b; ++k) {
            Morphism x = mAdd(mScale(mId(2), A), mScale(mE(2, 0), Ainv));
            Morphism layer = mTensor(mTensor(mId(k), x), mId(b - 1 - k));
            acc = mCompose(delta, layer, acc);
        }
        return acc;
    }

    // positive crossing of the a-group over the b-group: a+b -> b+a
    Morphism crossGroup(int a, int b) const {
        if (a == 0) return mId(b);
        Morphism acc = mCompose(delta, mTensor(crossGroup(a - 1, b), mId(1)),
                                mTensor(mId(a - 1), crossSingle(b)));
        return acc;
    }

    // braiding eigenvalue on the channel c of a (x) b
    Cyclotomic lambda(int a, int b, int c) const {
        Morphism sandwich =
            mCompose(delta, coVertex(b, a, c),
                     mCompose(delta, crossGroup(a, b), vertex(a, b, c)));
        return mClosure(delta, sandwich) * theta(b, a, c).inverse();
    }

    // positive curl factor on color a
    Cyclotomic twist(int a) const {
        // (id_a (x) cap) (X(a,a) (x) id_a) (id_a (x) cup)
        Morphism cup{0, 2 * a, {}};
        {
            Pairing p(2 * a);
            for (int k = 0; k < a; ++k) {
                p[a - 1 - k] = a + k;
                p[a + k] = a - 1 - k;
            }
            cup.terms.emplace(p, Cyclotomic(1));
            cup = mCompose(delta, mTensor(jw[a], jw[a]), cup);
        }
        Morphism cap{2 * a, 0, {}};
        {
            Pairing p(2 * a);
            for (int k = 0; k < a; ++k) {
                p[a - 1 - k] = a + k;
                p[a + k] = a - 1 - k;
            }
            cap.terms.emplace(p, Cyclotomic(1));
        }
        Morphism curl = mCompose(
            delta, mTensor(mId(a), cap),
            mCompose(delta, mTensor(crossGroup(a, a), mId(a)), mTensor(mId(a), cup)));
        return mClosure(delta, curl) * dim(a).inverse();
    }

    // tetrahedral network value in the paper's slot pattern
    Cyclotomic tet(int i, int j, int k, int l, int m, int n) const {
        // bottom: cup on color j; v3 = V(l,n,j), v2 = V(i,k,j);
        // middle: cap of (n,i) into m; top: close (l, m, k)
        Morphism cupJ{0, 2 * j, {}};
        {
            Pairing p(2 * j);
            for (int q = 0; q < j; ++q) {
                p[j - 1 - q] = j + q;
                p[j + q] = j - 1 - q;
            }
            cupJ.terms.emplace(p, Cyclotomic(1));
            cupJ = mCompose(delta, mTensor(jw[j], jw[j]), cupJ);
        }
        Morphism bot = mCompose(delta, mTensor(vertex(l, n, j), vertex(i, k, j)), cupJ);
        Morphism mid = mTensor(mTensor(mId(l), coVertex(n, i, m)), mId(k));
        Morphism v4;
        {
            Morphism inner = mTensor(mId(l), coVertex(m, k, l)); // l+m+k -> l+l
            Morphism cap{2 * l, 0, {}};
            Pairing p(2 * l);
            for (int q = 0; q < l; ++q) {
                p[l - 1 - q] = l + q;
                p[l + q] = l - 1 - q;
            }
            cap.terms.emplace(p, Cyclotomic(1));
            v4 = mCompose(delta, cap, inner);
        }
        Morphism total = mCompose(delta, v4, mCompose(delta, mid, bot));
        if (total.terms.empty()) return Cyclotomic(0);
        if (total.terms.size() != 1 || !total.terms.begin()->first.empty())
            fail(ErrorCode::InternalError, "tet evaluation did not close");
        return total.terms.begin()->second;
    }
};

// ---------------------------------------------------------------------------
// Rep(A4): the smallest fusion category with a 2-dimensional multiplicity
// space (Hom(1, T (x) T (x) T) for the 3-dimensional simple T). Everything is
// computed from explicit representation matrices: invariant tensors give the
// vertex bases, pairings give omega, and direct contraction of the closed
// tetrahedral network gives the 6j tensors.

struct RepA4 {
    // labels: 0 = trivial, 1 = w, 2 = w2 (cube-root characters), 3 = T
    static constexpr int kLabels = 4;
    std::array<int, 4> dim{1, 1, 1, 3};
    std::array<int, 4> dual{0, 2, 1, 3};
    // generator images for a = 3-cycle, x = double transposition
    std::array<Matrix, 4> genA, genX;

    RepA4() {
        auto scalar = [](const Cyclotomic& v) {
            Matrix m(1, 1);
            m.at(0, 0) = v;
            return m;
        };
        Cyclotomic one(1), z3 = Cyclotomic::zeta(3);
        genA[0] = scalar(one);
        genX[0] = scalar(one);
        genA[1] = scalar(z3);
        genX[1] = scalar(one);
        genA[2] = scalar(z3 * z3);
        genX[2] = scalar(one);
        // T: rotation group of the tetrahedron; a cycles coordinates,
        // x flips two signs
        Matrix a(3, 3), x(3, 3);
        a.at(0, 2) = one;
        a.at(1, 0) = one;
        a.at(2, 1) = one;
        x.at(0, 0) = one;
        x.at(1, 1) = -one;
        x.at(2, 2) = -one;
        genA[3] = a;
        genX[3] = x;
    }

    // action of a generator on the tensor product of labels
    Matrix tensorAction(const std::vector<int>& labels, bool useA) const {
        int total = 1;
        for (int l : labels) total *= dim[l];
        Matrix m(total, total);
        std::vector<int> idx(labels.size(), 0), jdx(labels.size(), 0);
        for (int r = 0; r < total; ++r) {
            int rr = r;
            for (int p = (int)labels.size(); p-- > 0;) {
                idx[p] = rr % dim[labels[p]];
                rr /= dim[labels[p]];
            }
            for (int c = 0; c < total; ++c) {
                int cc = c;
                for (int p = (int)labels.size(); p-- > 0;) {
                    jdx[p] = cc % dim[labels[p]];
                    cc /= dim[labels[p]];
                }
                Cyclotomic prod(1);
                for (size_t p = 0; p < labels.size() && !prod.isZero(); ++p) {
                    const Matrix& g = useA ? genA[labels[p]] : genX[labels[p]];
                    prod *= g.at(idx[p], jdx[p]);
                }
                m.at(r, c) = prod;
            }
        }
        return m;
    }

    // basis of invariant vectors of the tensor product
    std::vector<std::vector<Cyclotomic>> invariants(const std::vector<int>& labels) const {
        int total = 1;
        for (int l : labels) total *= dim[l];
        Matrix a = tensorAction(labels, true), x = tensorAction(labels, false);
        // stack (a - id; x - id) and compute the kernel
        Matrix s(2 * total, total);
        for (int r = 0; r < total; ++r)
            for (int c = 0; c < total; ++c) {
                s.at(r, c) = a.at(r, c) - (r == c ? Cyclotomic(1) : Cyclotomic(0));
                s.at(total + r, c) = x.at(r, c) - (r == c ? Cyclotomic(1) : Cyclotomic(0));
            }
        // gaussian elimination, then read the kernel
        int rows = 2 * total, cols = total;
        std::vector<int> pivotOfCol(cols, -1);
        int rank = 0;
        for (int c = 0; c < cols && rank < rows; ++c) {
            int p = -1;
            for (int r = rank; r < rows; ++r)
                if (!s.at(r, c).isZero()) {
                    p = r;
                    break;
                }
            if (p < 0) continue;
            for (int cc = 0; cc < cols; ++cc) std::swap(s.at(p, cc), s.at(rank, cc));
            Cyclotomic inv = s.at(rank, c).inverse();
            for (int cc = 0; cc < cols; ++cc) s.at(rank, cc) *= inv;
            for (int r = 0; r < rows; ++r) {
                if (r == rank || s.at(r, c).isZero()) continue;
                Cyclotomic f = s.at(r, c);
                for (int cc = 0; cc < cols; ++cc) s.at(r, cc) -= f * s.at(rank, cc);
            }
            pivotOfCol[c] = rank;
            ++rank;
        }
        std::vector<std::vector<Cyclotomic>> out;
        for (int c = 0; c < cols; ++c) {
            if (pivotOfCol[c] >= 0) continue;
            std::vector<Cyclotomic> v(cols);
            v[c] = Cyclotomic(1);
            for (int c2 = 0; c2 < cols; ++c2)
                if (pivotOfCol[c2] >= 0) v[c2] = -s.at(pivotOfCol[c2], c);
            out.push_back(std::move(v));
        }
        return out;
    }
};

FusionData repA4Category() {
    RepA4 rep;
    FusionData f;
    f.name = "rep_a4";
    f.labelName = {"1", "w", "w2", "T"};
    for (int i = 0; i < 4; ++i) {
        f.dual.push_back(rep.dual[i]);
        f.qdim.push_back(Cyclotomic(rep.dim[i]));
    }

    // class-canonical invariant bases; unit-bearing classes use the
    // coevaluation tensor so the unit normalization holds on the nose
    std::map<Triple, std::vector<std::vector<Cyclotomic>>> basis;
    auto basisOf = [&](const Triple& cls) -> const std::vector<std::vector<Cyclotomic>>& {
        auto it = basis.find(cls);
        if (it != basis.end()) return it->second;
        std::vector<std::vector<Cyclotomic>> b;
        if (cls[0] == 0 || cls[1] == 0 || cls[2] == 0) {
            // rotations put the unit first in the canonical representative
            if (cls[0] == 0 && cls[2] == rep.dual[cls[1]]) {
                int d = rep.dim[cls[1]];
                std::vector<Cyclotomic> v(d * d);
                for (int a = 0; a < d; ++a) v[a * d + a] = Cyclotomic(1);
                b.push_back(std::move(v));
            }
        } else {
            b = rep.invariants({cls[0], cls[1], cls[2]});
        }
        return basis.emplace(cls, std::move(b)).first->second;
    };

    // realize basis vector `which` of the class of (a,b,c) in exactly that
    // factor order
    auto realize = [&](Label a, Label b, Label c,
                       int which) -> std::vector<Cyclotomic> {
        Triple want{a, b, c};
        Triple cls = cyclicCanon(want);
        const auto& vecs = basisOf(cls);
        std::vector<Cyclotomic> v = vecs.at(which);
        // rotate factors until cls reads as (a,b,c)
        Triple cur = cls;
        std::array<int, 3> dims{rep.dim[cur[0]], rep.dim[cur[1]], rep.dim[cur[2]]};
        int guard = 0;
        while (!(cur == want)) {
            // move the first factor to the end
            std::vector<Cyclotomic> w(v.size());
            int d0 = dims[0], d1 = dims[1], d2 = dims[2];
            for (int p = 0; p < d0; ++p)
                for (int q = 0; q < d1; ++q)
                    for (int r = 0; r < d2; ++r)
                        w[(q * d2 + r) * d0 + p] = v[(p * d1 + q) * d2 + r];
            v = std::move(w);
            cur = Triple{cur[1], cur[2], cur[0]};
            dims = {rep.dim[cur[0]], rep.dim[cur[1]], rep.dim[cur[2]]};
            if (++guard > 3) fail(ErrorCode::InternalError, "rep_a4 rotation loop");
        }
        return v;
    };

    // triples and pairings
    for (Label a = 0; a < 4; ++a)
        for (Label b = 0; b < 4; ++b)
            for (Label c = 0; c < 4; ++c) {
                Triple t{a, b, c};
                if (cyclicCanon(t) != t) continue;
                int n = (int)basisOf(t).size();
                if (!n) continue;
                f.setTriple(t, n);
                // omega: rows over the dual class H(c*,b*,a*), cols over H(a,b,c);
                // contract slotwise (all evaluation tensors are Kronecker deltas
                // in these bases)
                Triple dc{f.dual[c], f.dual[b], f.dual[a]};
                int nd = (int)basisOf(cyclicCanon(dc)).size();
                if (nd != n) fail(ErrorCode::InternalError, "rep_a4 dual dim mismatch");
                Matrix w(n, n);
                int da = rep.dim[a], db = rep.dim[b], dcc = rep.dim[c];
                for (int r = 0; r < n; ++r) {
                    auto alpha = realize(dc[0], dc[1], dc[2], r); // (c*, b*, a*)
                    for (int col = 0; col < n; ++col) {
                        auto beta = realize(a, b, c, col);
                        Cyclotomic acc;
                        for (int ia = 0; ia < da; ++ia)
                            for (int ib = 0; ib < db; ++ib)
                                for (int ic = 0; ic < dcc; ++ic) {
                                    const Cyclotomic& x =
                                        alpha[(ic * db + ib) * da + ia];
                                    if (x.isZero()) continue;
                                    const Cyclotomic& y = beta[(ia * db + ib) * dcc + ic];
                                    if (y.isZero()) continue;
                                    acc += x * y;
                                }
                        w.at(r, col) = acc;
                    }
                }
                f.setOmega(t, std::move(w));
            }

    // 6j tensors by direct contraction of the tetrahedral network
    for (Label i = 0; i < 4; ++i)
    for (Label j = 0; j < 4; ++j)
    for (Label k = 0; k < 4; ++k)
    for (Label l = 0; l < 4; ++l)
    for (Label m = 0; m < 4; ++m)
    for (Label n = 0; n < 4; ++n) {
        Tuple6 t{i, j, k, l, m, n};
        if (f.sixJ(t)) continue;
        auto slots = f.sixJSlots(t);
        std::array<int, 4> dims;
        bool adm = true;
        for (int s = 0; s < 4; ++s) {
            dims[s] = f.n(slots[s]);
            if (!dims[s]) adm = false;
        }
        if (!adm) continue;
        auto du = f.dual;
        Tensor4 tensor(dims);
        // edge dims: each edge contributes one shared index
        std::array<int, 6> ed{rep.dim[i], rep.dim[j], rep.dim[k],
                              rep.dim[l], rep.dim[m], rep.dim[n]};
        for (int s1 = 0; s1 < dims[0]; ++s1)
        for (int s2 = 0; s2 < dims[1]; ++s2)
        for (int s3 = 0; s3 < dims[2]; ++s3)
        for (int s4 = 0; s4 < dims[3]; ++s4) {
            auto v1 = realize(m, du[i], du[n], s1);
            auto v2 = realize(j, i, du[k], s2);
            auto v3 = realize(n, du[j], du[l], s3);
            auto v4 = realize(l, k, du[m], s4);
            Cyclotomic acc;
            std::array<int, 6> e{};
            for (e[0] = 0; e[0] < ed[0]; ++e[0])
            for (e[1] = 0; e[1] < ed[1]; ++e[1])
            for (e[2] = 0; e[2] < ed[2]; ++e[2])
            for (e[3] = 0; e[3] < ed[3]; ++e[3])
            for (e[4] = 0; e[4] < ed[4]; ++e[4])
            for (e[5] = 0; e[5] < ed[5]; ++e[5]) {
                // v1 factors (m, i*, n*) -> edges (4, 0, 5), etc.
                const Cyclotomic& x1 =
                    v1[(e[4] * ed[0] + e[0]) * ed[5] + e[5]];
                if (x1.isZero()) continue;
                const Cyclotomic& x2 = v2[(e[1] * ed[0] + e[0]) * ed[2] + e[2]];
                if (x2.isZero()) continue;
                const Cyclotomic& x3 = v3[(e[5] * ed[1] + e[1]) * ed[3] + e[3]];
                if (x3.isZero()) continue;
                const Cyclotomic& x4 = v4[(e[3] * ed[2] + e[2]) * ed[4] + e[4]];
                if (x4.isZero()) continue;
                acc += x1 * x2 * x3 * x4;
            }
            tensor.at(s1, s2, s3, s4) = acc;
        }
        f.addSixJOrbit(t, tensor);
    }
    f.finalize();
    return f;
}

FusionData skeinCategory(const Skein& sk, const std::vector<int>& colors,
                         const std::vector<std::string>& names, const std::string& catName) {
    FusionData f;
    f.name = catName;
    f.labelName = names;
    int L = (int)colors.size();
    for (int i = 0; i < L; ++i) {
        f.dual.push_back(i); // all projector colors are self-dual
        f.qdim.push_back(sk.dim(colors[i]));
    }
    for (int a = 0; a < L; ++a)
        for (int b = 0; b < L; ++b)
            for (int c = 0; c < L; ++c) {
                if (!sk.admissible(colors[a], colors[b], colors[c])) continue;
                Triple t{a, b, c};
                if (cyclicCanon(t) != t) continue;
                f.setTriple(t, 1);
                Matrix w(1, 1);
                w.at(0, 0) = sk.theta(colors[a], colors[b], colors[c]);
                f.setOmega(t, std::move(w));
            }
    // 6j tensors for all admissible 6-tuples
    for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j)
    for (int k = 0; k < L; ++k)
    for (int l = 0; l < L; ++l)
    for (int m = 0; m < L; ++m)
    for (int n = 0; n < L; ++n) {
        Tuple6 t{i, j, k, l, m, n};
        if (f.sixJ(t)) continue;
        if (!sk.admissible(colors[m], colors[i], colors[n])) continue;
        if (!sk.admissible(colors[j], colors[i], colors[k])) continue;
        if (!sk.admissible(colors[n], colors[j], colors[l])) continue;
        if (!sk.admissible(colors[l], colors[k], colors[m])) continue;
        Tensor4 tensor({1, 1, 1, 1});
        tensor.at(0, 0, 0, 0) =
            sk.tet(colors[i], colors[j], colors[k], colors[l], colors[m], colors[n]);
        f.addSixJOrbit(t, tensor);
    }
    f.finalize();
    return f;
}

ModularData skeinModular(const Skein& sk, FusionData base, const std::vector<int>& colors) {
    ModularData m;
    m.base = std::move(base);
    int L = (int)colors.size();
    for (int i = 0; i < L; ++i) m.twist.push_back(sk.twist(colors[i]));
    for (int a = 0; a < L; ++a)
        for (int b = 0; b < L; ++b)
            for (int c = 0; c < L; ++c) {
                if (!sk.admissible(colors[a], colors[b], colors[c])) continue;
                Matrix r(1, 1);
                r.at(0, 0) = sk.lambda(colors[a], colors[b], colors[c]);
                m.rsym[Triple{a, b, c}] = std::move(r);
            }
    m.finalize();
    return m;
}


void writeWithHeader(const std::string& path, const std::vector<std::string>& comments,
                     const std::function<void(std::ostream&)>& body) {
    std::ofstream out(path);
    for (const auto& c : comments) out << "# " << c << "\n";
    body(out);
}

void writeSurgery(const std::string& path, int strands, const std::vector<int>& word,
                  const std::vector<long>& framings) {
    std::ofstream out(path);
    out << "format surgery 1\n";
    out << "strands " << strands << "\n";
    out << "word";
    for (int w : word) out << " " << w;
    out << "\n";
    out << "framings";
    for (long fr : framings) out << " " << fr;
    out << "\n";
}

} // namespace

int main(int argc, char** argv) {
    std::string outDir = argc > 1 ? argv[1] : "data";
    std::filesystem::create_directories(outDir);
    auto path = [&](const std::string& name) { return outDir + "/" + name; };

    try {
        // pointed categories
        writeCategoryFile(path("vec_z2.cat"), makeVecZn(2));
        writeCategoryFile(path("vec_z3.cat"), makeVecZn(3));
        std::cout << "wrote vec_z2.cat vec_z3.cat\n";

        // Fibonacci: even colors {0, 2} at A = zeta_20
        {
            Skein sk(20, 1, 2, 5);
            FusionData fib = skeinCategory(sk, {0, 2}, {"1", "t"}, "fibonacci");
            // golden ratio sanity
            Cyclotomic phi = -(Cyclotomic::zeta(5, 2) + Cyclotomic::zeta(5, 3));
            if (fib.qdim[1] != phi) fail(ErrorCode::InternalError, "fibonacci qdim wrong");
            writeWithHeader(path("fibonacci.cat"),
                            {"Fibonacci fusion category: labels {1, t}, qdim(t) the "
                             "golden ratio.",
                             "Gauge: Temperley-Lieb skein basis (Jones-Wenzl colors "
                             "{0, 2} at A = zeta_20); pairings are the skein theta "
                             "values, 6j entries the skein tetrahedra."},
                            [&](std::ostream& o) { writeCategory(o, fib); });
            ModularData fibm = skeinModular(sk, fib, {0, 2});
            writeWithHeader(path("fibonacci.mod"),
                            {"Fibonacci modular data over the skein gauge of "
                             "fibonacci.cat.",
                             "R entries are positive Kauffman crossings; twists the "
                             "positive curl factors. The mirror choice is fixed by "
                             "these signs."},
                            [&](std::ostream& o) { writeModular(o, fibm); });
            ModularData fsq = deligneSquare(fibm);
            writeWithHeader(path("fibonacci_square.mod"),
                            {"Deligne product of fibonacci.mod with its mirror;",
                             "braided equivalent to the center of the Fibonacci "
                             "category. Anomaly free with Delta = dim(fibonacci)."},
                            [&](std::ostream& o) { writeModular(o, fsq); });
            std::cout << "wrote fibonacci.cat fibonacci.mod fibonacci_square.mod\n";
        }

        // Ising fusion rules: colors {0, 1, 2} at A = zeta_16^3 (all dims >= 0)
        {
            Skein sk(16, 3, 2, 4);
            FusionData ising = skeinCategory(sk, {0, 1, 2}, {"1", "s", "f"}, "ising");
            if (ising.globalDim() != Cyclotomic(4))
                fail(ErrorCode::InternalError, "ising global dimension wrong");
            writeWithHeader(path("ising.cat"),
                            {"Ising-type fusion category: labels {1, s, f} with "
                             "qdim(s) = sqrt(2).",
                             "Gauge: Temperley-Lieb skein basis (colors {0, 1, 2} at "
                             "A = zeta_16^3, the root giving positive dimensions)."},
                            [&](std::ostream& o) { writeCategory(o, ising); });
            std::cout << "wrote ising.cat\n";
        }

        // Rep(A4): multiplicity-two data (dim Hom(1, T@T@T) = 2)
        {
            FusionData a4 = repA4Category();
            if (a4.globalDim() != Cyclotomic(12))
                fail(ErrorCode::InternalError, "rep_a4 global dimension wrong");
            if (a4.n(3, 3, 3) != 2)
                fail(ErrorCode::InternalError, "rep_a4 multiplicity wrong");
            writeWithHeader(path("rep_a4.cat"),
                            {"Representation category of the alternating group A4:",
                             "labels {1, w, w2, T} with dim(T) = 3 and a",
                             "two-dimensional multiplicity space on (T,T,T).",
                             "Bases are invariant tensors of the explicit matrix",
                             "representations; unit classes use the coevaluation."},
                            [&](std::ostream& o) { writeCategory(o, a4); });
            std::cout << "wrote rep_a4.cat\n";
        }

        // doubles
        {
            ModularData d2 = drinfeldDoubleAbelian({{2}});
            writeWithHeader(path("toric.mod"),
                            {"Drinfeld double of Z/2 (toric code): labels (g, chi),",
                             "twist <chi,g>, braiding R = <chi,h>, all 6j trivial."},
                            [&](std::ostream& o) { writeModular(o, d2); });
            ModularData d3 = drinfeldDoubleAbelian({{3}});
            writeWithHeader(path("double_z3.mod"),
                            {"Drinfeld double of Z/3: labels (g, chi), twist <chi,g>."},
                            [&](std::ostream& o) { writeModular(o, d3); });
        }
        std::cout << "wrote toric.mod double_z3.mod\n";

        // surgery presentations: empty link and p-framed unknots
        writeSurgery(path("empty.srg"), 0, {}, {});
        for (int p = 0; p <= 6; ++p)
            writeSurgery(path("unknot_f" + std::to_string(p) + ".srg"), 1, {}, {p});
        // chain presentation of L(5,2): continued fraction 5/2 = [3,2]
        writeSurgery(path("chain_32.srg"), 2, {1, 1}, {3, 2});
        std::cout << "wrote surgery files\n";

        // manifest files for the main-theorem batches
        {
            std::ofstream m(path("main_theorem_vecz2.manifest"));
            m << "format manifest 1\n";
            m << "category vec_z2.cat\n";
            m << "center toric.mod\n";
            m << "pair builtin:s3_2tet empty.srg\n";
            m << "pair builtin:s1xs2 unknot_f0.srg\n";
            for (int p = 2; p <= 5; ++p)
                m << "pair builtin:lens(" << p << ",1) unknot_f" << p << ".srg\n";
            m << "pair builtin:lens(5,2) chain_32.srg\n";
        }
        {
            std::ofstream m(path("main_theorem_fib.manifest"));
            m << "format manifest 1\n";
            m << "category fibonacci.cat\n";
            m << "center fibonacci_square.mod\n";
            m << "pair builtin:s3_1tet empty.srg\n";
            m << "pair builtin:s1xs2 unknot_f0.srg\n";
            m << "pair builtin:lens(2,1) unknot_f2.srg\n";
            m << "pair builtin:lens(3,1) unknot_f3.srg\n";
            m << "pair builtin:lens(5,2) chain_32.srg\n";
        }
        std::cout << "wrote manifest files\n";

        // a two-component triangulation for the multiplicativity test
        {
            Triangulation one = builtinTriangulation("s3_1tet");
            std::ofstream out(path("s3_disjoint_s3.tri"));
            out << "format triangulation 1\n";
            out << "tets 2\n";
            for (int t = 0; t < 1; ++t)
                for (int f = 0; f < 4; ++f) {
                    const Gluing& g = one.gluing(t, f);
                    if (g.tet < t || (g.tet == t && g.face < f)) continue;
                    for (int copy = 0; copy < 2; ++copy)
                        out << "glue " << copy << " " << f << "  " << copy << " " << g.face
                            << "  " << g.perm[0] << " " << g.perm[1] << " " << g.perm[2]
                            << "\n";
                }
        }
        std::cout << "wrote s3_disjoint_s3.tri\n";
    } catch (const Error& e) {
        std::cerr << "generation failed: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
