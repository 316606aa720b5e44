#include "manifold.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "error.hpp"
#include "textio.hpp"

namespace tvk {

int tetEdgeIndex(int a, int b) {
    if (a > b) std::swap(a, b);
    for (int e = 0; e < 6; ++e)
        if (kTetEdges[e][0] == a && kTetEdges[e][1] == b) return e;
    fail(ErrorCode::InternalError, "bad tetrahedron edge");
}

namespace {

std::array<int, 3> faceCorners(int f) {
    std::array<int, 3> c;
    int p = 0;
    for (int s = 0; s < 4; ++s)
        if (s != f) c[p++] = s;
    return c;
}

// corner image under the gluing of (tet, face)
int mapCorner(const Gluing& g, int face, int corner) {
    auto src = faceCorners(face);
    auto dst = faceCorners(g.face);
    for (int s = 0; s < 3; ++s)
        if (src[s] == corner) return dst[g.perm[s]];
    fail(ErrorCode::InternalError, "corner not on glued face");
}

// union-find with a direction parity relative to the root
struct ParityUF {
    std::vector<int> parent, rank_;
    std::vector<int> par; // parity to parent (0/1)
    explicit ParityUF(int n) : parent(n), rank_(n, 0), par(n, 0) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::pair<int, int> find(int x) {
        if (parent[x] == x) return {x, 0};
        auto [r, p] = find(parent[x]);
        parent[x] = r;
        par[x] ^= p;
        return {r, par[x]};
    }
    // returns false on parity conflict
    bool unite(int a, int b, int parity) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) return (pa ^ pb) == parity;
        int rel = pa ^ pb ^ parity;
        if (rank_[ra] < rank_[rb]) {
            std::swap(ra, rb);
        }
        parent[rb] = ra;
        par[rb] = rel;
        if (rank_[ra] == rank_[rb]) rank_[ra]++;
        return true;
    }
};

struct UF {
    std::vector<int> parent;
    explicit UF(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

int permSign(const std::array<int, 3>& p) {
    int inv = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

} // namespace

Triangulation Triangulation::fromGluings(std::vector<std::array<Gluing, 4>> glue) {
    Triangulation t;
    t.glue_ = std::move(glue);
    t.derive();
    return t;
}

void Triangulation::derive() {
    int T = tetCount();
    if (T <= 0) fail(ErrorCode::InputError, "triangulation needs at least one tetrahedron");
    // gluing involution
    for (int t = 0; t < T; ++t)
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = glue_[t][f];
            if (g.tet < 0 || g.tet >= T || g.face < 0 || g.face > 3)
                fail(ErrorCode::InputError, "dangling face gluing: not closed");
            if (g.tet == t && g.face == f)
                fail(ErrorCode::InputError, "face glued to itself");
            {
                std::array<int, 3> sorted = g.perm;
                std::sort(sorted.begin(), sorted.end());
                if (!(sorted == std::array<int, 3>{0, 1, 2}))
                    fail(ErrorCode::InputError, "gluing permutation is not a bijection");
            }
            const Gluing& back = glue_[g.tet][g.face];
            if (back.tet != t || back.face != f)
                fail(ErrorCode::InputError, "gluing is not involutive");
            for (int s = 0; s < 3; ++s)
                if (back.perm[g.perm[s]] != s)
                    fail(ErrorCode::InputError, "gluing permutations are not inverse");
        }

    // face classes
    fclass_.assign(T, {-1, -1, -1, -1});
    int fc = 0;
    for (int t = 0; t < T; ++t)
        for (int f = 0; f < 4; ++f) {
            if (fclass_[t][f] >= 0) continue;
            const Gluing& g = glue_[t][f];
            fclass_[t][f] = fc;
            fclass_[g.tet][g.face] = fc;
            ++fc;
        }
    fclassCount_ = fc;

    // vertex classes
    {
        UF uf(4 * T);
        for (int t = 0; t < T; ++t)
            for (int f = 0; f < 4; ++f) {
                const Gluing& g = glue_[t][f];
                for (int c : faceCorners(f)) uf.unite(4 * t + c, 4 * g.tet + mapCorner(g, f, c));
            }
        std::map<int, int> ids;
        vclass_.assign(T, {});
        for (int t = 0; t < T; ++t)
            for (int c = 0; c < 4; ++c) {
                int r = uf.find(4 * t + c);
                auto [it, fresh] = ids.emplace(r, (int)ids.size());
                vclass_[t][c] = it->second;
                (void)fresh;
            }
        vclassCount_ = (int)ids.size();
    }

    // edge classes with directions
    {
        ParityUF uf(6 * T);
        for (int t = 0; t < T; ++t)
            for (int f = 0; f < 4; ++f) {
                const Gluing& g = glue_[t][f];
                auto fcs = faceCorners(f);
                for (int s = 0; s < 3; ++s)
                    for (int u = s + 1; u < 3; ++u) {
                        int a = fcs[s], b = fcs[u]; // a < b
                        int ia = mapCorner(g, f, a), ib = mapCorner(g, f, b);
                        int e1 = tetEdgeIndex(a, b);
                        int e2 = tetEdgeIndex(ia, ib);
                        int parity = ia < ib ? 0 : 1;
                        if (!uf.unite(6 * t + e1, 6 * g.tet + e2, parity))
                            fail(ErrorCode::InputError,
                                 "edge identified with itself reversed (non-orientable "
                                 "link)");
                    }
            }
        std::map<int, int> ids;
        eclass_.assign(T, {});
        edir_.assign(T, {});
        for (int t = 0; t < T; ++t)
            for (int e = 0; e < 6; ++e) {
                auto [r, p] = uf.find(6 * t + e);
                auto [it, fresh] = ids.emplace(r, (int)ids.size());
                (void)fresh;
                eclass_[t][e] = it->second;
                edir_[t][e] = p == 0 ? 1 : -1;
            }
        eclassCount_ = (int)ids.size();
    }

    // orientations
    {
        orient_.assign(T, 0);
        for (int start = 0; start < T; ++start) {
            if (orient_[start]) continue;
            orient_[start] = 1;
            std::vector<int> stack{start};
            while (!stack.empty()) {
                int t = stack.back();
                stack.pop_back();
                for (int f = 0; f < 4; ++f) {
                    const Gluing& g = glue_[t][f];
                    // (-1)^f sigma_t sgn(perm) = -(-1)^{g.face} sigma_{g.tet}
                    int lhs = ((f % 2 == 0) ? 1 : -1) * orient_[t] * permSign(g.perm);
                    int need = -lhs * ((g.face % 2 == 0) ? 1 : -1);
                    if (orient_[g.tet] == 0) {
                        orient_[g.tet] = need;
                        stack.push_back(g.tet);
                    } else if (orient_[g.tet] != need) {
                        fail(ErrorCode::InputError, "triangulation is not orientable");
                    }
                }
            }
        }
    }

    // Euler characteristic
    if (vclassCount_ - eclassCount_ + fclassCount_ - T != 0)
        fail(ErrorCode::InputError, "Euler characteristic of the complex is not zero");

    // vertex links must be 2-spheres: chi = 2 and connected, per class.
    {
        // link triangles = (tet, corner); link edges identified through face
        // gluings; link vertices = orbits of (tet, corner, other corner)
        UF cornerPairs(16 * T); // (tet, c, d) with c != d encoded c*4+d
        UF linkTris(4 * T);
        for (int t = 0; t < T; ++t)
            for (int f = 0; f < 4; ++f) {
                const Gluing& g = glue_[t][f];
                auto fcs = faceCorners(f);
                for (int c : fcs)
                    for (int d : fcs) {
                        if (c == d) continue;
                        int ic = mapCorner(g, f, c), id = mapCorner(g, f, d);
                        cornerPairs.unite(16 * t + 4 * c + d, 16 * g.tet + 4 * ic + id);
                    }
                for (int c : fcs) linkTris.unite(4 * t + c, 4 * g.tet + mapCorner(g, f, c));
            }
        // per vertex class: V - E + F with F = #corner slots, E = 3F/2,
        // V = #orbits of (t, c, d)
        std::vector<long> fCount(vclassCount_, 0);
        std::map<int, std::set<int>> linkVerts; // class -> orbit roots
        std::map<int, std::set<int>> triComps;  // class -> connected components
        for (int t = 0; t < T; ++t)
            for (int c = 0; c < 4; ++c) {
                int cls = vclass_[t][c];
                fCount[cls]++;
                triComps[cls].insert(linkTris.find(4 * t + c));
                for (int d = 0; d < 4; ++d) {
                    if (d == c) continue;
                    linkVerts[cls].insert(cornerPairs.find(16 * t + 4 * c + d));
                }
            }
        for (int cls = 0; cls < vclassCount_; ++cls) {
            long F = fCount[cls];
            if (F % 2 != 0 && (3 * F) % 2 != 0)
                fail(ErrorCode::InputError, "vertex link is not a closed surface");
            long E = (3 * F) / 2;
            long V = (long)linkVerts[cls].size();
            if (triComps[cls].size() != 1)
                fail(ErrorCode::InputError, "vertex link is not connected");
            if (V - E + F != 2)
                fail(ErrorCode::InputError, "vertex link is not a 2-sphere");
        }
    }
}

// ---------------------------------------------------------------------------
// homology

namespace {

using ZMatrix = std::vector<std::vector<Integer>>;

// Smith normal form (in place); returns the diagonal entries (non-negative).
// When kernelBasis != nullptr it receives an integer basis of ker(A) as columns.
std::vector<Integer> smithNormalForm(ZMatrix a, std::vector<std::vector<Integer>>* kernelBasis) {
    size_t m = a.size();
    size_t n = m ? a[0].size() : 0;
    // column operations tracked on V (n x n identity)
    ZMatrix V;
    if (kernelBasis) {
        V.assign(n, std::vector<Integer>(n, 0));
        for (size_t i = 0; i < n; ++i) V[i][i] = 1;
    }
    auto swapRows = [&](size_t i, size_t j) { std::swap(a[i], a[j]); };
    auto swapCols = [&](size_t i, size_t j) {
        for (size_t r = 0; r < m; ++r) std::swap(a[r][i], a[r][j]);
        if (kernelBasis)
            for (size_t r = 0; r < n; ++r) std::swap(V[r][i], V[r][j]);
    };
    auto addColMultiple = [&](size_t dst, size_t src, const Integer& k) {
        for (size_t r = 0; r < m; ++r) a[r][dst] += k * a[r][src];
        if (kernelBasis)
            for (size_t r = 0; r < n; ++r) V[r][dst] += k * V[r][src];
    };
    auto addRowMultiple = [&](size_t dst, size_t src, const Integer& k) {
        for (size_t c = 0; c < n; ++c) a[dst][c] += k * a[src][c];
    };
    auto negateCol = [&](size_t c) {
        for (size_t r = 0; r < m; ++r) a[r][c] = -a[r][c];
        if (kernelBasis)
            for (size_t r = 0; r < n; ++r) V[r][c] = -V[r][c];
    };

    [[maybe_unused]] size_t rank = 0;
    for (size_t piv = 0; piv < std::min(m, n); ++piv) {
        // find nonzero pivot
        size_t pr = m, pc = n;
        for (size_t r = piv; r < m && pr == m; ++r)
            for (size_t c = piv; c < n; ++c)
                if (a[r][c] != 0) {
                    pr = r;
                    pc = c;
                    break;
                }
        if (pr == m) break;
        swapRows(piv, pr);
        swapCols(piv, pc);
        // reduce until pivot divides its row and column and they are cleared
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (size_t r = piv + 1; r < m; ++r) {
                if (a[r][piv] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[r][piv].get_mpz_t(), a[piv][piv].get_mpz_t());
                addRowMultiple(r, piv, -q);
                if (a[r][piv] != 0) {
                    swapRows(piv, r);
                    dirty = true;
                }
            }
            for (size_t c = piv + 1; c < n; ++c) {
                if (a[piv][c] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[piv][c].get_mpz_t(), a[piv][piv].get_mpz_t());
                addColMultiple(c, piv, -q);
                if (a[piv][c] != 0) {
                    swapCols(piv, c);
                    dirty = true;
                }
            }
        }
        if (a[piv][piv] < 0) negateCol(piv);
        rank = piv + 1;
    }
    // divisors list; normalize to d1 | d2 | ... by gcd/lcm folding
    std::vector<Integer> d;
    for (size_t i = 0; i < std::min(m, n); ++i) d.push_back(a[i][i] >= 0 ? a[i][i] : -a[i][i]);
    for (bool fixed = false; !fixed;) {
        fixed = true;
        for (size_t i = 0; i + 1 < d.size(); ++i) {
            if (d[i] == 0 && d[i + 1] != 0) {
                std::swap(d[i], d[i + 1]);
                fixed = false;
            } else if (d[i] != 0 && d[i + 1] != 0 && d[i + 1] % d[i] != 0) {
                Integer g2;
                mpz_gcd(g2.get_mpz_t(), d[i].get_mpz_t(), d[i + 1].get_mpz_t());
                Integer l = d[i] / g2 * d[i + 1];
                d[i] = g2;
                d[i + 1] = l;
                fixed = false;
            }
        }
    }
    if (kernelBasis) {
        kernelBasis->clear();
        for (size_t c = 0; c < n; ++c) {
            bool zeroCol = true;
            for (size_t r = 0; r < m && zeroCol; ++r)
                if (a[r][c] != 0) zeroCol = false;
            if (!zeroCol) continue;
            std::vector<Integer> col(n);
            for (size_t r = 0; r < n; ++r) col[r] = V[r][c];
            kernelBasis->push_back(std::move(col));
        }
    }
    return d;
}

} // namespace

std::vector<long> Triangulation::firstHomology() const {
    int T = tetCount();
    int E = eclassCount_, Vc = vclassCount_, F = fclassCount_;
    // boundary_1 : edges -> vertices
    ZMatrix d1(Vc, std::vector<Integer>(E, 0));
    {
        // representative per edge class with positive direction
        std::vector<std::array<int, 2>> rep(E, {-1, -1});
        for (int t = 0; t < T; ++t)
            for (int e = 0; e < 6; ++e)
                if (rep[eclass_[t][e]][0] < 0 && edir_[t][e] == 1) rep[eclass_[t][e]] = {t, e};
        for (int c = 0; c < E; ++c) {
            auto [t, e] = rep[c];
            if (t < 0) fail(ErrorCode::InternalError, "edge class without positive rep");
            int a = kTetEdges[e][0], b = kTetEdges[e][1];
            d1[vclass_[t][b]][c] += 1;
            d1[vclass_[t][a]][c] -= 1;
        }
    }
    // boundary_2 : faces -> edges
    ZMatrix d2(E, std::vector<Integer>(F, 0));
    {
        std::vector<std::array<int, 2>> rep(F, {-1, -1});
        for (int t = 0; t < T; ++t)
            for (int f = 0; f < 4; ++f)
                if (rep[fclass_[t][f]][0] < 0) rep[fclass_[t][f]] = {t, f};
        for (int c = 0; c < F; ++c) {
            auto [t, f] = rep[c];
            auto fcs = faceCorners(f); // x0 < x1 < x2
            int signs[3] = {1, -1, 1}; // (x1x2) - (x0x2) + (x0x1)
            std::array<std::array<int, 2>, 3> pairs{
                std::array<int, 2>{fcs[1], fcs[2]},
                std::array<int, 2>{fcs[0], fcs[2]},
                std::array<int, 2>{fcs[0], fcs[1]}};
            for (int s = 0; s < 3; ++s) {
                int e = tetEdgeIndex(pairs[s][0], pairs[s][1]);
                d2[eclass_[t][e]][c] += signs[s] * edir_[t][e];
            }
        }
    }
    // H1 = ker d1 / im d2
    std::vector<std::vector<Integer>> kernel;
    smithNormalForm(d1, &kernel);
    size_t k = kernel.size();
    // solve kernel * X = d2 (columns of d2 lie in ker d1)
    // build matrix with kernel columns and reduce d2 against it over Z via
    // fraction-free elimination: kernel basis is unimodular-extendable, so
    // integer solving works column by column with rational elimination and
    // integrality assertion.
    // Simpler: present H1 = Z^E / (im d2 + complement relations): quotient of
    // ker d1 by im d2 equals quotient of Z^k with X expressed in kernel coords.
    // Solve with rational Gaussian elimination.
    size_t Es = (size_t)E;
    std::vector<std::vector<Rational>> kb(Es, std::vector<Rational>(k, Rational(0)));
    for (size_t c = 0; c < k; ++c)
        for (size_t r = 0; r < Es; ++r) kb[r][c] = Rational(kernel[c][r].get_str());
    ZMatrix X(k, std::vector<Integer>(F, 0));
    {
        // gaussian elimination: [kb | d2 columns]
        std::vector<std::vector<Rational>> aug(Es, std::vector<Rational>(k + F, Rational(0)));
        for (size_t r = 0; r < Es; ++r) {
            for (size_t c = 0; c < k; ++c) aug[r][c] = kb[r][c];
            for (int c = 0; c < F; ++c) aug[r][k + c] = Rational(d2[r][c].get_str());
        }
        std::vector<int> pivotRow(k, -1);
        size_t row = 0;
        for (size_t col = 0; col < k && row < Es; ++col) {
            size_t pr = Es;
            for (size_t r = row; r < Es; ++r)
                if (aug[r][col] != 0) {
                    pr = r;
                    break;
                }
            if (pr == Es) continue;
            std::swap(aug[row], aug[pr]);
            Rational inv = 1 / aug[row][col];
            for (size_t c2 = col; c2 < k + F; ++c2) aug[row][c2] *= inv;
            for (size_t r = 0; r < Es; ++r) {
                if (r == row || aug[r][col] == 0) continue;
                Rational f = aug[r][col];
                for (size_t c2 = col; c2 < k + F; ++c2) aug[r][c2] -= f * aug[row][c2];
            }
            pivotRow[col] = (int)row;
            ++row;
        }
        for (size_t col = 0; col < k; ++col) {
            if (pivotRow[col] < 0) fail(ErrorCode::InternalError, "kernel basis degenerate");
            for (int c = 0; c < F; ++c) {
                const Rational& val = aug[pivotRow[col]][k + c];
                if (val.get_den() != 1)
                    fail(ErrorCode::InternalError, "non-integral homology solve");
                X[col][c] = val.get_num();
            }
        }
        // consistency: rows beyond rank must be zero
        for (size_t r = row; r < Es; ++r)
            for (int c = 0; c < F; ++c)
                if (aug[r][k + c] != 0)
                    fail(ErrorCode::InternalError, "face boundary not in edge kernel");
    }
    auto d = smithNormalForm(X, nullptr);
    long rankX = 0;
    std::vector<long> out;
    for (const Integer& x : d)
        if (x != 0) ++rankX;
    for (const Integer& x : d)
        if (x > 1) out.push_back((long)x.get_si());
    std::sort(out.begin(), out.end());
    for (long i = 0; i < (long)k - rankX; ++i) out.push_back(0);
    return out;
}

// ---------------------------------------------------------------------------
// Pachner moves

namespace {

struct FaceRemap {
    int tet, face;                 // new location
    std::array<int, 4> cornerMap;  // old corner -> new corner slot (-1 unused)
};

Triangulation rebuildWithRemap(
    const Triangulation& t, const std::vector<int>& tetRemap, int newCount,
    const std::map<std::pair<int, int>, FaceRemap>& faceRemap,
    const std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>>& internalPairs,
    const std::map<std::pair<int, int>, std::array<int, 4>>& internalCornerMaps) {
    // assembles the new gluing table: surviving faces are re-glued through the
    // remap; fresh internal pairs are glued with explicit corner maps
    std::vector<std::array<Gluing, 4>> g(newCount);
    for (auto& arr : g)
        for (auto& x : arr) x = Gluing{};

    auto resolved = [&](int ot, int of) {
        return tetRemap[ot] >= 0 || faceRemap.count({ot, of}) > 0;
    };
    auto newFaceOf = [&](int ot, int of) -> std::pair<int, int> {
        auto it = faceRemap.find({ot, of});
        if (it != faceRemap.end()) return {it->second.tet, it->second.face};
        return {tetRemap[ot], of};
    };
    auto cornerMapOf = [&](int ot, int of) -> std::array<int, 4> {
        auto it = faceRemap.find({ot, of});
        if (it != faceRemap.end()) return it->second.cornerMap;
        return {0, 1, 2, 3};
    };

    for (int ot = 0; ot < t.tetCount(); ++ot) {
        for (int of = 0; of < 4; ++of) {
            if (!resolved(ot, of)) continue; // destroyed interior face
            const Gluing& og = t.gluing(ot, of);
            if (!resolved(og.tet, og.face))
                fail(ErrorCode::InternalError, "pachner remap: half-destroyed gluing");
            auto [nt, nf] = newFaceOf(ot, of);
            auto [pt, pf] = newFaceOf(og.tet, og.face);
            auto cmSrc = cornerMapOf(ot, of);
            auto cmDst = cornerMapOf(og.tet, og.face);
            auto srcC = faceCorners(nf);
            auto dstC = faceCorners(pf);
            std::array<int, 3> perm{};
            for (int s = 0; s < 3; ++s) {
                int oldSrc = -1;
                for (int x = 0; x < 4; ++x)
                    if (cmSrc[x] == srcC[s]) oldSrc = x;
                if (oldSrc < 0) fail(ErrorCode::InternalError, "pachner corner map");
                int oldDst = mapCorner(og, of, oldSrc);
                int newDst = cmDst[oldDst];
                int pos = -1;
                for (int u = 0; u < 3; ++u)
                    if (dstC[u] == newDst) pos = u;
                if (pos < 0) fail(ErrorCode::InternalError, "pachner corner map target");
                perm[s] = pos;
            }
            g[nt][nf] = Gluing{pt, pf, perm};
        }
    }
    for (size_t i = 0; i < internalPairs.size(); ++i) {
        auto [a, b] = internalPairs[i];
        auto cm = internalCornerMaps.at(a); // corner slot map a-side -> b-side
        auto srcC = faceCorners(a.second);
        auto dstC = faceCorners(b.second);
        std::array<int, 3> perm{};
        for (int s = 0; s < 3; ++s) {
            int target = cm[srcC[s]];
            int pos = -1;
            for (int u = 0; u < 3; ++u)
                if (dstC[u] == target) pos = u;
            if (pos < 0) fail(ErrorCode::InternalError, "pachner internal corner map");
            perm[s] = pos;
        }
        std::array<int, 3> inv{};
        for (int s = 0; s < 3; ++s) inv[perm[s]] = s;
        g[a.first][a.second] = Gluing{b.first, b.second, perm};
        g[b.first][b.second] = Gluing{a.first, a.second, inv};
    }
    return Triangulation::fromGluings(std::move(g));
}

} // namespace

std::vector<std::array<int, 2>> Triangulation::pachner23Sites() const {
    std::vector<std::array<int, 2>> out;
    for (int t = 0; t < tetCount(); ++t)
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = glue_[t][f];
            if (g.tet == t) continue;
            if (g.tet < t) continue; // count each pair once
            int shared = 0;
            for (int f2 = 0; f2 < 4; ++f2)
                if (glue_[t][f2].tet == g.tet) ++shared;
            if (shared == 1) out.push_back({t, f});
        }
    return out;
}

Triangulation Triangulation::pachner23(int tA, int fA) const {
    const Gluing& g = glue_[tA][fA];
    int tB = g.tet, fB = g.face;
    if (tA == tB) fail(ErrorCode::InputError, "2-3 move needs two distinct tetrahedra");
    {
        int shared = 0;
        for (int f2 = 0; f2 < 4; ++f2)
            if (glue_[tA][f2].tet == tB) ++shared;
        if (shared != 1)
            fail(ErrorCode::InputError, "2-3 move needs tetrahedra sharing exactly one face");
    }
    auto fcA = faceCorners(fA);
    // apexes are the corners opposite the shared face
    // new tets N_i (i = 0,1,2): corners (0: apexA, 1: apexB, 2: fcA[j], 3: fcA[k])
    int T = tetCount();
    std::vector<int> tetRemap(T);
    int n = 0;
    for (int t = 0; t < T; ++t) tetRemap[t] = (t == tA || t == tB) ? -1 : n++;
    int base = n; // N_i = base + i
    int newCount = n + 3;

    std::map<std::pair<int, int>, FaceRemap> faceRemap;
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        if (j > k) std::swap(j, k);
        // A's face opposite fcA[i] -> N_i's face opposite corner 1 (apexB)
        std::array<int, 4> cmA{-1, -1, -1, -1};
        cmA[fA] = 0;
        cmA[fcA[j]] = 2;
        cmA[fcA[k]] = 3;
        faceRemap[{tA, fcA[i]}] = FaceRemap{base + i, 1, cmA};
        // B's face opposite phi(fcA[i]) -> N_i's face opposite corner 0 (apexA)
        std::array<int, 4> cmB{-1, -1, -1, -1};
        cmB[fB] = 1;
        cmB[mapCorner(g, fA, fcA[j])] = 2;
        cmB[mapCorner(g, fA, fcA[k])] = 3;
        faceRemap[{tB, mapCorner(g, fA, fcA[i])}] = FaceRemap{base + i, 0, cmB};
    }
    // internal gluings: N_i and N_j share the face missing fcA[k'],
    // k' = third index; in N_i that face is opposite the slot holding fcA[j']
    std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> internal;
    std::map<std::pair<int, int>, std::array<int, 4>> icm;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            int kp = 3 - i - j; // third index
            // slot of fcA[kp] in N_i: N_i holds {fcA[a], fcA[b]} a<b at slots 2,3
            auto slotOf = [&](int ni, int corner) {
                int a = (ni + 1) % 3, b = (ni + 2) % 3;
                if (a > b) std::swap(a, b);
                if (corner == a) return 2;
                if (corner == b) return 3;
                fail(ErrorCode::InternalError, "2-3 slot lookup");
            };
            int faceInI = slotOf(i, j);  // face opposite the slot holding fcA[j]
            int faceInJ = slotOf(j, i);
            // corner map: slots of N_i -> slots of N_j for shared corners
            std::array<int, 4> cm{-1, -1, -1, -1};
            cm[0] = 0;
            cm[1] = 1;
            cm[slotOf(i, kp)] = slotOf(j, kp);
            internal.push_back({{base + i, faceInI}, {base + j, faceInJ}});
            icm[{base + i, faceInI}] = cm;
        }
    return rebuildWithRemap(*this, tetRemap, newCount, faceRemap, internal, icm);
}

Triangulation Triangulation::pachner14(int tA) const {
    if (tA < 0 || tA >= tetCount()) fail(ErrorCode::InputError, "bad tetrahedron index");
    int T = tetCount();
    std::vector<int> tetRemap(T);
    int n = 0;
    for (int t = 0; t < T; ++t) tetRemap[t] = (t == tA) ? -1 : n++;
    int base = n;
    int newCount = n + 4; // M_c = base + c, center at slot c

    std::map<std::pair<int, int>, FaceRemap> faceRemap;
    for (int c = 0; c < 4; ++c) {
        std::array<int, 4> cm{0, 1, 2, 3}; // A corner s -> slot s of M_c
        cm[c] = -1;                        // corner c of A is not on this face
        faceRemap[{tA, c}] = FaceRemap{base + c, c, cm};
    }
    std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> internal;
    std::map<std::pair<int, int>, std::array<int, 4>> icm;
    for (int c = 0; c < 4; ++c)
        for (int d = c + 1; d < 4; ++d) {
            // M_c's face opposite slot d <-> M_d's face opposite slot c
            std::array<int, 4> cm{-1, -1, -1, -1};
            for (int s = 0; s < 4; ++s)
                if (s != c && s != d) cm[s] = s;
            cm[c] = d; // center slot c in M_c -> center slot d in M_d
            internal.push_back({{base + c, d}, {base + d, c}});
            icm[{base + c, d}] = cm;
        }
    return rebuildWithRemap(*this, tetRemap, newCount, faceRemap, internal, icm);
}

// ---------------------------------------------------------------------------
// builtins

namespace {

Triangulation searchSmall(int tets, const std::vector<long>& homologyWanted) {
    // deterministic enumeration over face pairings and gluing permutations
    int slots = 4 * tets;
    std::vector<std::array<int, 3>> perms;
    {
        std::array<int, 3> p{0, 1, 2};
        do perms.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
    }
    std::vector<int> partner(slots, -1);
    std::vector<int> permChoice(slots, -1);
    Triangulation found;
    bool done = false;

    std::function<void()> rec = [&]() {
        if (done) return;
        int first = -1;
        for (int s = 0; s < slots; ++s)
            if (partner[s] < 0) {
                first = s;
                break;
            }
        if (first < 0) {
            std::vector<std::array<Gluing, 4>> g(tets);
            for (int s = 0; s < slots; ++s) {
                int t = s / 4, f = s % 4;
                int ps = partner[s];
                auto perm = perms[permChoice[std::min(s, ps)]];
                if (s > ps) {
                    std::array<int, 3> inv{};
                    for (int q = 0; q < 3; ++q) inv[perm[q]] = q;
                    perm = inv;
                }
                g[t][f] = Gluing{ps / 4, ps % 4, perm};
            }
            try {
                Triangulation t = Triangulation::fromGluings(std::move(g));
                // connected?
                std::vector<int> comp(tets, -1);
                std::vector<int> stack{0};
                comp[0] = 0;
                while (!stack.empty()) {
                    int x = stack.back();
                    stack.pop_back();
                    for (int f2 = 0; f2 < 4; ++f2) {
                        int y = t.gluing(x, f2).tet;
                        if (comp[y] < 0) {
                            comp[y] = 0;
                            stack.push_back(y);
                        }
                    }
                }
                bool connected = true;
                for (int x = 0; x < tets; ++x)
                    if (comp[x] < 0) connected = false;
                if (connected && t.firstHomology() == homologyWanted) {
                    found = std::move(t);
                    done = true;
                }
            } catch (const Error&) {
            }
            return;
        }
        for (int s2 = first + 1; s2 < slots && !done; ++s2) {
            if (partner[s2] >= 0) continue;
            partner[first] = s2;
            partner[s2] = first;
            for (int pc = 0; pc < 6 && !done; ++pc) {
                permChoice[first] = pc;
                rec();
            }
            partner[first] = partner[s2] = -1;
            permChoice[first] = -1;
        }
    };
    rec();
    if (!done) fail(ErrorCode::InternalError, "builtin search failed");
    return found;
}

} // namespace

Triangulation lensSpace(long p, long q) {
    if (p < 1 || q < 0 || (p > 1 && q >= p) || std::gcd(p, q) != 1)
        fail(ErrorCode::InputError, "lens space needs p >= 1, 0 <= q < p, gcd(p,q) = 1");
    if (p == 1) return builtinTriangulation("s3_2tet");
    if (p == 2 && q != 1) fail(ErrorCode::InputError, "lens space parameters");
    // bipyramid over a p-gon: T_k = (N, S, e_k, e_{k+1}), k mod p
    int n = (int)p;
    std::vector<std::array<Gluing, 4>> g(n);
    auto wrap = [n](long x) { return (int)(((x % n) + n) % n); };
    for (int k = 0; k < n; ++k) {
        // wall: T_k face opposite 2 ({N,S,e_{k+1}}) <-> T_{k+1} face opposite 3
        g[k][2] = Gluing{wrap(k + 1), 3, {0, 1, 2}};
        g[wrap(k + 1)][3] = Gluing{k, 2, {0, 1, 2}};
    }
    for (int k = 0; k < n; ++k) {
        // cap: T_k face opposite 1 (upper {N,e_k,e_{k+1}}) <->
        //      T_{k+q} face opposite 0 (lower {S,e_{k+q},e_{k+q+1}})
        g[k][1] = Gluing{wrap(k + q), 0, {0, 1, 2}};
        g[wrap(k + q)][0] = Gluing{k, 1, {0, 1, 2}};
    }
    try {
        Triangulation t = Triangulation::fromGluings(g);
        return t;
    } catch (const Error&) {
        // the cap may need the reflected identification for orientability
        for (int k = 0; k < n; ++k) {
            g[k][1] = Gluing{wrap(k + q), 0, {0, 2, 1}};
            g[wrap(k + q)][0] = Gluing{k, 1, {0, 2, 1}};
        }
        return Triangulation::fromGluings(g);
    }
}

Triangulation builtinTriangulation(const std::string& name) {
    static std::map<std::string, Triangulation> cache;
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;

    Triangulation t;
    if (name == "s3_1tet") {
        t = searchSmall(1, {});
    } else if (name == "s3_2tet") {
        t = searchSmall(2, {});
    } else if (name == "s1xs2") {
        t = searchSmall(2, {0});
    } else if (name == "t3") {
        // six tetrahedra around the main diagonal of a cube, opposite faces
        // identified by translation; tets indexed by axis orders
        std::vector<std::array<int, 3>> perms;
        std::array<int, 3> p{0, 1, 2};
        do perms.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
        auto indexOf = [&](const std::array<int, 3>& q) {
            for (int i = 0; i < 6; ++i)
                if (perms[i] == q) return i;
            fail(ErrorCode::InternalError, "t3 permutation lookup");
        };
        std::vector<std::array<Gluing, 4>> g(6);
        for (int i = 0; i < 6; ++i) {
            auto pr = perms[i];
            g[i][1] = Gluing{indexOf({pr[1], pr[0], pr[2]}), 1, {0, 1, 2}};
            g[i][2] = Gluing{indexOf({pr[0], pr[2], pr[1]}), 2, {0, 1, 2}};
            g[i][3] = Gluing{indexOf({pr[2], pr[0], pr[1]}), 0, {0, 1, 2}};
            g[i][0] = Gluing{indexOf({pr[1], pr[2], pr[0]}), 3, {0, 1, 2}};
        }
        t = Triangulation::fromGluings(g);
    } else if (name.rfind("lens(", 0) == 0 && name.back() == ')') {
        std::string body = name.substr(5, name.size() - 6);
        auto comma = body.find(',');
        if (comma == std::string::npos)
            fail(ErrorCode::InputError, "lens builtin syntax: lens(p,q)");
        long p2 = std::stol(body.substr(0, comma));
        long q2 = std::stol(body.substr(comma + 1));
        t = lensSpace(p2, q2);
    } else {
        fail(ErrorCode::InputError, "unknown builtin triangulation: " + name);
    }
    cache[name] = t;
    return t;
}

// ---------------------------------------------------------------------------
// file format

Triangulation readTriangulation(std::istream& in, const std::string& what) {
    auto lines = readTokenLines(in);
    int tets = -1;
    std::vector<std::array<Gluing, 4>> g;
    std::vector<std::array<bool, 4>> seen;
    for (const auto& tk : lines) {
        if (tk[0] == "format") continue;
        if (tk[0] == "tets" && tk.size() == 2) {
            tets = std::stoi(tk[1]);
            if (tets <= 0) fail(ErrorCode::InputError, what + ": bad tet count");
            g.assign(tets, {});
            seen.assign(tets, {false, false, false, false});
            continue;
        }
        if (tk[0] == "glue" && tk.size() == 8) {
            if (tets < 0) fail(ErrorCode::InputError, what + ": glue before tets");
            int t1 = std::stoi(tk[1]), f1 = std::stoi(tk[2]);
            int t2 = std::stoi(tk[3]), f2 = std::stoi(tk[4]);
            std::array<int, 3> perm{std::stoi(tk[5]), std::stoi(tk[6]), std::stoi(tk[7])};
            if (t1 < 0 || t1 >= tets || t2 < 0 || t2 >= tets || f1 < 0 || f1 > 3 ||
                f2 < 0 || f2 > 3)
                fail(ErrorCode::InputError, what + ": glue indices out of range");
            std::array<int, 3> inv{};
            for (int s = 0; s < 3; ++s) {
                if (perm[s] < 0 || perm[s] > 2)
                    fail(ErrorCode::InputError, what + ": bad permutation");
                inv[perm[s]] = s;
            }
            if (seen[t1][f1] || seen[t2][f2])
                fail(ErrorCode::InputError, what + ": face glued twice");
            g[t1][f1] = Gluing{t2, f2, perm};
            g[t2][f2] = Gluing{t1, f1, inv};
            seen[t1][f1] = seen[t2][f2] = true;
            continue;
        }
        fail(ErrorCode::InputError, what + ": unrecognized line '" + tk[0] + "'");
    }
    if (tets < 0) fail(ErrorCode::InputError, what + ": missing tets line");
    for (int t = 0; t < tets; ++t)
        for (int f = 0; f < 4; ++f)
            if (!seen[t][f])
                fail(ErrorCode::InputError, what + ": face (" + std::to_string(t) + "," +
                                                std::to_string(f) + ") unglued");
    return Triangulation::fromGluings(std::move(g));
}

Triangulation readTriangulationFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InputError, "cannot open triangulation file: " + path);
    return readTriangulation(in, path);
}

void writeTriangulation(std::ostream& out, const Triangulation& t) {
    out << "format triangulation 1\n";
    out << "tets " << t.tetCount() << "\n";
    for (int tt = 0; tt < t.tetCount(); ++tt)
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = t.gluing(tt, f);
            if (g.tet < tt || (g.tet == tt && g.face < f)) continue;
            out << "glue " << tt << " " << f << "  " << g.tet << " " << g.face << "  "
                << g.perm[0] << " " << g.perm[1] << " " << g.perm[2] << "\n";
        }
}

void writeTriangulationFile(const std::string& path, const Triangulation& t) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::InputError, "cannot write triangulation file: " + path);
    writeTriangulation(out, t);
}

} // namespace tvk
