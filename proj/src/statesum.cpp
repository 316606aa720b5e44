#include "statesum.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <thread>

#include "network.hpp"

namespace tvk {

namespace {

// Combinatorics of the dual-skeleton link graph of one tetrahedron: the
// vertices of the K4 graph are the four faces, the arcs are dual to the six
// tetrahedron edges. Rotations and arc directions are fixed by the simplex
// geometry and the tetrahedron orientation sign.
struct TetLink {
    // per tetrahedron edge e: arc from face yFrom[e] to face yTo[e]
    std::array<int, 6> yFrom, yTo;
    // per face: the three incident tetrahedron edges in rotation order
    std::array<std::array<int, 3>, 4> rot;
};

int permSign4(std::array<int, 4> p) {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

// rotation templates for a positive tetrahedron: neighbor faces in the
// E_v cyclic order at each link vertex y_c
constexpr std::array<std::array<int, 3>, 4> kPosRot{{
    {1, 2, 3}, // y0
    {0, 3, 2}, // y1
    {0, 1, 3}, // y2
    {0, 2, 1}, // y3
}};

// localDir[e]: +1 when the region orientation runs the edge from its smaller
// to its larger corner in this tetrahedron
TetLink buildTetLink(int sigma, const std::array<int, 6>& localDir) {
    TetLink link;
    for (int e = 0; e < 6; ++e) {
        int a = kTetEdges[e][0], b = kTetEdges[e][1];
        if (localDir[e] < 0) std::swap(a, b);
        // complement corners
        int c = -1, d = -1;
        for (int x = 0; x < 4; ++x)
            if (x != kTetEdges[e][0] && x != kTetEdges[e][1]) (c < 0 ? c : d) = x;
        // arc runs y_s -> y_t with sgn(a, b, t, s) == sigma
        int s1 = c, t1 = d;
        if (permSign4({a, b, t1, s1}) != sigma) std::swap(s1, t1);
        if (permSign4({a, b, t1, s1}) != sigma)
            fail(ErrorCode::InternalError, "tetrahedron arc direction rule broken");
        link.yFrom[e] = s1;
        link.yTo[e] = t1;
    }
    for (int c = 0; c < 4; ++c) {
        std::array<int, 3> nb = kPosRot[c];
        if (sigma < 0) std::swap(nb[1], nb[2]); // reversed cyclic order
        for (int p = 0; p < 3; ++p) {
            // arc between faces c and nb[p] is dual to the edge on neither face
            int e = -1;
            for (int q = 0; q < 6; ++q) {
                int u = kTetEdges[q][0], v = kTetEdges[q][1];
                if (u != c && v != c && u != nb[p] && v != nb[p]) e = q;
            }
            link.rot[c][p] = e;
        }
    }
    return link;
}

struct TetTensorRef {
    const Tensor4* tensor = nullptr;      // nullptr = zero
    std::array<int, 4> slotOfVertex{};    // pattern slot of face c
    std::array<Triple, 4> classOfVertex{};
};

// builds the colored link network of one tetrahedron and matches it against
// the 6j store
TetTensorRef matchTetLink(const FusionData& f, const TetLink& link,
                          const std::array<Label, 6>& colors) {
    Network net;
    for (int c = 0; c < 4; ++c) net.addVertex();
    std::array<int, 6> eid;
    for (int e = 0; e < 6; ++e) eid[e] = net.addEdge(link.yFrom[e], link.yTo[e], colors[e]);
    for (int c = 0; c < 4; ++c)
        for (int p = 0; p < 3; ++p) {
            int e = link.rot[c][p];
            net.rot[c].push_back(Dart{eid[e], link.yFrom[e] == c ? 0 : 1});
        }
    TetTensorRef ref;
    auto m = matchTetrahedron(f, net);
    if (!m) fail(ErrorCode::InternalError, "tetrahedron link graph failed to match");
    ref.tensor = f.sixJ(m->tuple);
    ref.slotOfVertex = m->slotOfVertex;
    for (int c = 0; c < 4; ++c) {
        auto sig = net.signature(f, c);
        ref.classOfVertex[c] = cyclicCanon({sig[0], sig[1], sig[2]});
    }
    return ref;
}

struct StateSumPlan {
    std::vector<TetLink> links;                         // per tet
    std::vector<std::array<int, 2>> faceSides;          // face class -> (tet, face) x2
    std::vector<std::array<int, 2>> faceSides2;
    std::vector<std::vector<int>> faceEdgeClasses;      // 3 edge classes per face class
    std::vector<std::vector<int>> facesOfEdgeClass;     // reverse incidence
    int edgeClassCount = 0;
};

StateSumPlan buildPlan(const Triangulation& t, const std::vector<int>& dirs) {
    StateSumPlan plan;
    int T = t.tetCount();
    plan.edgeClassCount = t.edgeClasses();
    plan.links.reserve(T);
    for (int tt = 0; tt < T; ++tt) {
        std::array<int, 6> localDir;
        for (int e = 0; e < 6; ++e)
            localDir[e] = t.edgeDirOf(tt, e) * dirs[t.edgeClassOf(tt, e)];
        plan.links.push_back(buildTetLink(t.orientation(tt), localDir));
    }
    int F = t.faceClasses();
    plan.faceSides.assign(F, {-1, -1});
    plan.faceSides2.assign(F, {-1, -1});
    for (int tt = 0; tt < T; ++tt)
        for (int ff = 0; ff < 4; ++ff) {
            int c = t.faceClassOf(tt, ff);
            if (plan.faceSides[c][0] < 0)
                plan.faceSides[c] = {tt, ff};
            else
                plan.faceSides2[c] = {tt, ff};
        }
    plan.faceEdgeClasses.assign(F, {});
    plan.facesOfEdgeClass.assign(t.edgeClasses(), {});
    for (int c = 0; c < F; ++c) {
        auto [tt, ff] = plan.faceSides[c];
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) {
                if (a == ff || b == ff) continue;
                plan.faceEdgeClasses[c].push_back(t.edgeClassOf(tt, tetEdgeIndex(a, b)));
            }
        for (int e : plan.faceEdgeClasses[c]) plan.facesOfEdgeClass[e].push_back(c);
    }
    return plan;
}

struct ColoringContext {
    const FusionData& f;
    const Triangulation& t;
    const StateSumPlan& plan;
    // memoized tetrahedron tensor lookups, keyed per tet by the 6 colors
    std::vector<std::map<std::array<Label, 6>, TetTensorRef>> tetCache;
    long visited = 0;
    long admissible = 0;

    explicit ColoringContext(const FusionData& ff, const Triangulation& tt,
                             const StateSumPlan& p)
        : f(ff), t(tt), plan(p), tetCache(tt.tetCount()) {}

    const TetTensorRef& tetTensor(int tet, const std::vector<Label>& coloring) {
        std::array<Label, 6> key;
        for (int e = 0; e < 6; ++e) key[e] = coloring[t.edgeClassOf(tet, e)];
        auto it = tetCache[tet].find(key);
        if (it != tetCache[tet].end()) return it->second;
        return tetCache[tet].emplace(key, matchTetLink(f, plan.links[tet], key))
            .first->second;
    }

    // does the face class admit the coloring? (link-vertex triple admissible)
    bool faceAdmissible(int faceClass, const std::vector<Label>& coloring) {
        auto [tt, ff] = plan.faceSides[faceClass];
        const TetLink& link = plan.links[tt];
        Triple sig;
        for (int p = 0; p < 3; ++p) {
            int e = link.rot[ff][p];
            Label col = coloring[t.edgeClassOf(tt, e)];
            sig[p] = link.yTo[e] == ff ? col : f.dual[col];
        }
        return f.n(sig) > 0;
    }

    Cyclotomic coloringValue(const std::vector<Label>& coloring) {
        int T = t.tetCount();
        std::vector<const TetTensorRef*> refs(T);
        for (int tt = 0; tt < T; ++tt) {
            refs[tt] = &tetTensor(tt, coloring);
            if (!refs[tt]->tensor) return Cyclotomic(0);
        }
        // contract face classes: iterate index assignments per face side pair
        int F = t.faceClasses();
        // indices per (tet, face)
        std::vector<std::array<int, 4>> idx(T, {0, 0, 0, 0});
        std::vector<int> dims(F);
        std::vector<Triple> pairCls(F);
        for (int c = 0; c < F; ++c) {
            auto [t1, f1] = plan.faceSides[c];
            auto [t2, f2] = plan.faceSides2[c];
            Triple s1 = refs[t1]->classOfVertex[f1];
            Triple s2 = refs[t2]->classOfVertex[f2];
            if (f.dualClass(s1) != s2)
                fail(ErrorCode::InternalError,
                     "face contraction: link vertex classes are not dual");
            dims[c] = f.n(s1);
            pairCls[c] = s1;
            if (dims[c] == 0) return Cyclotomic(0);
        }
        Cyclotomic total;
        std::function<void(int, Cyclotomic)> rec = [&](int c, Cyclotomic acc) {
            if (acc.isZero()) return;
            if (c == F) {
                // all indices fixed: multiply tetrahedron tensor entries
                Cyclotomic prod = acc;
                for (int tt = 0; tt < T; ++tt) {
                    const TetTensorRef& r = *refs[tt];
                    std::array<int, 4> slotIdx;
                    for (int v = 0; v < 4; ++v) slotIdx[r.slotOfVertex[v]] = idx[tt][v];
                    prod *= r.tensor->at(slotIdx[0], slotIdx[1], slotIdx[2], slotIdx[3]);
                    if (prod.isZero()) return;
                }
                total += prod;
                return;
            }
            auto [t1, f1] = plan.faceSides[c];
            auto [t2, f2] = plan.faceSides2[c];
            for (int a = 0; a < dims[c]; ++a)
                for (int b = 0; b < dims[c]; ++b) {
                    const Cyclotomic& w = f.omegaInvEntry(pairCls[c], a, b);
                    if (w.isZero()) continue;
                    idx[t1][f1] = a;
                    idx[t2][f2] = b;
                    rec(c + 1, acc * w);
                }
        };
        rec(0, Cyclotomic(1));
        return total;
    }
};

Cyclotomic runStateSum(const FusionData& f, const Triangulation& t,
                       const std::vector<int>& dirs, int threads, long* visitedOut,
                       long* admissibleOut) {
    StateSumPlan plan = buildPlan(t, dirs);
    int E = t.edgeClasses();
    int L = f.labelCount();

    // when is a face class fully colored: track the last edge class index
    std::vector<std::vector<int>> checkAt(E);
    for (int c = 0; c < t.faceClasses(); ++c) {
        int last = -1;
        for (int e : plan.faceEdgeClasses[c]) last = std::max(last, e);
        checkAt[last].push_back(c);
    }

    auto runRange = [&](Label first0, Label first1, long* vis, long* adm) {
        ColoringContext ctx(f, t, plan);
        Cyclotomic sum;
        std::vector<Label> coloring(E, -1);
        std::function<void(int)> rec = [&](int e) {
            if (e == E) {
                ctx.visited++;
                Cyclotomic v = ctx.coloringValue(coloring);
                if (!v.isZero()) {
                    ctx.admissible++;
                    Cyclotomic weight(1);
                    for (int q = 0; q < E; ++q) weight *= f.qdim[coloring[q]];
                    sum += weight * v;
                }
                return;
            }
            Label lo = 0, hi = (Label)L;
            if (e == 0) {
                lo = first0;
                hi = first1;
            }
            for (Label x = lo; x < hi; ++x) {
                coloring[e] = x;
                bool ok = true;
                for (int c : checkAt[e])
                    if (!ctx.faceAdmissible(c, coloring)) {
                        ok = false;
                        break;
                    }
                if (ok) rec(e + 1);
            }
            coloring[e] = -1;
        };
        rec(0);
        if (vis) *vis = ctx.visited;
        if (adm) *adm = ctx.admissible;
        return sum;
    };

    Cyclotomic total;
    long visited = 0, admissible = 0;
    if (threads <= 1 || E == 0 || L <= 1) {
        total = runRange(0, (Label)L, &visited, &admissible);
    } else {
        int nt = std::min(threads, L);
        std::vector<Cyclotomic> parts(nt);
        std::vector<long> vis(nt, 0), adm(nt, 0);
        std::vector<std::thread> pool;
        for (int w = 0; w < nt; ++w) {
            pool.emplace_back([&, w]() {
                Label lo = (Label)(w * L / nt), hi = (Label)((w + 1) * L / nt);
                parts[w] = runRange(lo, hi, &vis[w], &adm[w]);
            });
        }
        for (auto& th : pool) th.join();
        for (int w = 0; w < nt; ++w) {
            total += parts[w];
            visited += vis[w];
            admissible += adm[w];
        }
    }
    if (visitedOut) *visitedOut = visited;
    if (admissibleOut) *admissibleOut = admissible;

    // global normalization dim(C)^{-v}
    Cyclotomic norm = f.globalDim().inverse();
    Cyclotomic scale(1);
    for (int q = 0; q < t.vertexClasses(); ++q) scale *= norm;
    return scale * total;
}

} // namespace

Cyclotomic tvInvariantOriented(const FusionData& f, const Triangulation& t,
                               const std::vector<int>& dirs, int threads) {
    if ((int)dirs.size() != t.edgeClasses())
        fail(ErrorCode::InputError, "orientation override needs one sign per edge class");
    return runStateSum(f, t, dirs, threads, nullptr, nullptr);
}

Cyclotomic tvInvariant(const FusionData& f, const Triangulation& t, int threads) {
    std::vector<int> dirs(t.edgeClasses(), 1);
    return runStateSum(f, t, dirs, threads, nullptr, nullptr);
}

TvReport tvInvariantReport(const FusionData& f, const Triangulation& t, int threads) {
    TvReport rep;
    auto start = std::chrono::steady_clock::now();
    std::vector<int> dirs(t.edgeClasses(), 1);
    rep.value = runStateSum(f, t, dirs, threads, &rep.coloringsVisited, &rep.admissibleColorings);
    rep.elapsedSeconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

// ---------------------------------------------------------------------------
// sphere and genus-g block dimensions

namespace {

int matrixRank(Matrix m) {
    int rank = 0;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = -1;
        for (int i = r; i < m.rows; ++i)
            if (!m.at(i, c).isZero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        Cyclotomic inv = m.at(r, c).inverse();
        for (int j = c; j < m.cols; ++j) m.at(r, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c).isZero()) continue;
            Cyclotomic f = m.at(i, c);
            for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        ++r;
        ++rank;
    }
    return rank;
}

} // namespace

int s2Dimension(const FusionData& f) {
    int L = f.labelCount();
    Matrix p(L, L);
    Cyclotomic d2 = (f.globalDim() * f.globalDim()).inverse();
    for (int j = 0; j < L; ++j)
        for (int i = 0; i < L; ++i) p.at(j, i) = f.qdim[i] * f.qdim[i] * d2;
    return matrixRank(p);
}

namespace {

// the wheel network of the middle vertex of the product skeleton, genus g:
// poles u (bottom colors i, j) and v (top colors k, l), 4g equator vertices,
// equator colored z. Equator slot pairs are contracted with the inverse tree
// gram; pole slots are evaluated against given tree elements.
struct GenusBlock {
    std::vector<Label> iVec, jVec, kVec, lVec;
};

struct WheelSpec {
    Network net;
    int u, v;
    // equator contraction pairs (start, end vertices) in construction order
    std::vector<std::array<int, 2>> pairs;
};

WheelSpec buildWheel(const FusionData& f, const GenusBlock& b, Label z) {
    (void)f;
    int g = (int)b.iVec.size();
    WheelSpec spec;
    Network& net = spec.net;
    spec.u = net.addVertex();
    spec.v = net.addVertex();
    int P = 4 * g;
    std::vector<int> eq(P);
    for (int p = 0; p < P; ++p) eq[p] = net.addVertex();
    auto lowColor = [&](int p) { return (p % 4) % 2 == 0 ? b.iVec[p / 4] : b.jVec[p / 4]; };
    auto upColor = [&](int p) { return (p % 4) % 2 == 0 ? b.kVec[p / 4] : b.lVec[p / 4]; };
    auto isStart = [&](int p) { return (p % 4) < 2; };
    std::vector<int> lowE(P), upE(P), eqE(P);
    for (int p = 0; p < P; ++p) {
        if (isStart(p)) {
            lowE[p] = net.addEdge(spec.u, eq[p], lowColor(p));
            upE[p] = net.addEdge(eq[p], spec.v, upColor(p));
        } else {
            lowE[p] = net.addEdge(eq[p], spec.u, lowColor(p));
            upE[p] = net.addEdge(spec.v, eq[p], upColor(p));
        }
    }
    for (int p = 0; p < P; ++p) eqE[p] = net.addEdge(eq[p], eq[(p + 1) % P], z);
    // pole rotations: u in position order, v reversed
    for (int p = 0; p < P; ++p)
        net.rot[spec.u].push_back(Dart{lowE[p], isStart(p) ? 0 : 1});
    for (int p = P - 1; p >= 0; --p)
        net.rot[spec.v].push_back(Dart{upE[p], isStart(p) ? 1 : 0});
    // equator rotations: start: (upper, eq-out, lower, eq-in);
    //                    end:   (eq-out, lower, eq-in, upper)
    for (int p = 0; p < P; ++p) {
        Dart up{upE[p], isStart(p) ? 0 : 1};
        Dart low{lowE[p], isStart(p) ? 1 : 0};
        Dart out{eqE[p], 0};
        Dart in{eqE[(p + P - 1) % P], 1};
        if (isStart(p))
            net.rot[eq[p]] = {up, out, low, in};
        else
            net.rot[eq[p]] = {out, low, in, up};
    }
    for (int q = 0; q < g; ++q) {
        spec.pairs.push_back({eq[4 * q], eq[4 * q + 2]});     // a-loop: start, end
        spec.pairs.push_back({eq[4 * q + 1], eq[4 * q + 3]}); // b-loop
    }
    return spec;
}

} // namespace

GenusResult genusDimension(const FusionData& f, int genus) {
    if (genus < 1 || genus > 2)
        fail(ErrorCode::InputError, "genus dimension implemented for genus 1 and 2 only");
    int L = f.labelCount();
    int g = genus;
    Evaluator ev(f);

    // blocks indexed by (iVec, jVec); basis = comb trees of the pole signature
    std::vector<GenusBlock> halfBlocks; // (i, j) vectors
    {
        std::vector<Label> stack(2 * g, 0);
        std::function<void(int)> rec = [&](int pos) {
            if (pos == 2 * g) {
                GenusBlock b;
                for (int q = 0; q < g; ++q) {
                    b.iVec.push_back(stack[2 * q]);
                    b.jVec.push_back(stack[2 * q + 1]);
                }
                halfBlocks.push_back(b);
                return;
            }
            for (Label x = 0; x < L; ++x) {
                stack[pos] = x;
                rec(pos + 1);
            }
        };
        rec(0);
    }
    auto poleSig = [&](const std::vector<Label>& iv, const std::vector<Label>& jv) {
        std::vector<Label> sig;
        for (int q = 0; q < g; ++q) {
            sig.push_back(f.dual[iv[q]]);
            sig.push_back(f.dual[jv[q]]);
            sig.push_back(iv[q]);
            sig.push_back(jv[q]);
        }
        return sig;
    };

    // basis offsets
    int nb = (int)halfBlocks.size();
    std::vector<std::vector<CombTree>> blockTrees(nb);
    std::vector<int> offset(nb + 1, 0);
    for (int bi = 0; bi < nb; ++bi) {
        blockTrees[bi] = enumCombTrees(f, poleSig(halfBlocks[bi].iVec, halfBlocks[bi].jVec));
        offset[bi + 1] = offset[bi] + (int)blockTrees[bi].size();
    }
    int total = offset[nb];
    Matrix pi(total, total);

    // gram caches
    std::map<std::vector<Label>, Matrix> gramInvCache;
    auto gramInvOf = [&](const std::vector<Label>& sig) -> const Matrix& {
        auto it = gramInvCache.find(sig);
        if (it != gramInvCache.end()) return it->second;
        auto inv = treeGram(ev, sig).inverse();
        if (!inv) fail(ErrorCode::InternalError, "singular tree gram in genus projector");
        return gramInvCache.emplace(sig, std::move(*inv)).first->second;
    };

    Cyclotomic dimCinv = f.globalDim().inverse();

    for (int bij = 0; bij < nb; ++bij) {
        const auto& ij = halfBlocks[bij];
        auto sigIJ = poleSig(ij.iVec, ij.jVec);
        const auto& treesIJ = blockTrees[bij];
        Cyclotomic wIJ(1);
        for (int q = 0; q < g; ++q) wIJ *= f.qdim[ij.iVec[q]];
        for (int bkl = 0; bkl < nb; ++bkl) {
            const auto& kl = halfBlocks[bkl];
            auto sigKL = poleSig(kl.iVec, kl.jVec);
            const auto& treesKL = blockTrees[bkl];
            if (treesIJ.empty() || treesKL.empty()) continue;
            auto sigV = dualSignature(f, sigKL);
            auto treesV = enumCombTrees(f, sigV);
            Cyclotomic wL(1);
            for (int q = 0; q < g; ++q) wL *= f.qdim[kl.jVec[q]];
            // mu[z][t][s]
            int nT = (int)treesIJ.size(), nS = (int)treesV.size();
            Matrix mu(nT, nS);
            bool any = false;
            for (Label z = 0; z < L; ++z) {
                GenusBlock b;
                b.iVec = ij.iVec;
                b.jVec = ij.jVec;
                b.kVec = kl.iVec;
                b.lVec = kl.jVec;
                WheelSpec spec = buildWheel(f, b, z);
                // equator pair data
                struct PairData {
                    std::vector<CombTree> startTrees, endTrees;
                    const Matrix* winv;
                };
                std::vector<PairData> pd;
                bool dead = false;
                for (auto [vs, vne] : spec.pairs) {
                    PairData d;
                    auto sigS = spec.net.signature(f, vs);
                    auto sigE = spec.net.signature(f, vne);
                    if (dualSignature(f, sigS) != sigE)
                        fail(ErrorCode::InternalError, "equator pair is not dual-aligned");
                    d.startTrees = enumCombTrees(f, sigS);
                    d.endTrees = enumCombTrees(f, sigE);
                    if (d.startTrees.empty()) {
                        dead = true;
                        break;
                    }
                    d.winv = &gramInvOf(sigS);
                    pd.push_back(std::move(d));
                }
                if (dead) continue;
                // sum over all equator tree assignments
                int np = (int)pd.size();
                std::vector<int> ia(np, 0), ib(np, 0);
                std::function<void(int, Cyclotomic)> recPair = [&](int p, Cyclotomic acc) {
                    if (acc.isZero()) return;
                    if (p == np) {
                        // evaluate for every (t, s) pole pair
                        Network base = spec.net;
                        for (int q = 0; q < np; ++q) {
                            expandComb(base, f, spec.pairs[q][0], pd[q].startTrees[ia[q]]);
                            expandComb(base, f, spec.pairs[q][1], pd[q].endTrees[ib[q]]);
                        }
                        for (int ti = 0; ti < nT; ++ti)
                            for (int si = 0; si < nS; ++si) {
                                Network full = base;
                                expandComb(full, f, spec.u, treesIJ[ti]);
                                expandComb(full, f, spec.v, treesV[si]);
                                Cyclotomic val = ev.closed(full);
                                if (!val.isZero()) mu.at(ti, si) += acc * val;
                            }
                        return;
                    }
                    for (int a = 0; a < (int)pd[p].startTrees.size(); ++a)
                        for (int bI = 0; bI < (int)pd[p].endTrees.size(); ++bI) {
                            ia[p] = a;
                            ib[p] = bI;
                            recPair(p + 1, acc * pd[p].winv->at(a, bI));
                        }
                };
                recPair(0, f.qdim[z]);
                any = true;
            }
            if (!any) continue;
            // P[t' <- t] = (dim i dim l / dimC) sum_s mu[t][s] Winv_KL[t'][s]
            const Matrix& winvKL = gramInvOf(sigKL);
            for (int tp = 0; tp < (int)treesKL.size(); ++tp)
                for (int ti = 0; ti < nT; ++ti) {
                    Cyclotomic acc;
                    for (int si = 0; si < nS; ++si) {
                        if (mu.at(ti, si).isZero()) continue;
                        acc += mu.at(ti, si) * winvKL.at(tp, si);
                    }
                    if (acc.isZero()) continue;
                    pi.at(offset[bkl] + tp, offset[bij] + ti) =
                        acc * wIJ * wL * dimCinv;
                }
        }
    }

    GenusResult res;
    res.matrixDim = total;
    Matrix sq = pi * pi;
    res.idempotent = sq == pi;
    res.rank = matrixRank(pi);
    return res;
}

} // namespace tvk
