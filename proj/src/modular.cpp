#include "modular.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "network.hpp"

namespace tvk {

const Matrix& ModularData::r(Label i, Label j, Label k) const {
    auto it = rsym.find(Triple{i, j, k});
    if (it == rsym.end())
        fail(ErrorCode::InputError, "missing R-matrix for channel (" + base.labelName[i] +
                                        "," + base.labelName[j] + ";" + base.labelName[k] +
                                        ")");
    return it->second;
}

Matrix sMatrix(const ModularData& m) {
    const FusionData& f = m.base;
    int L = f.labelCount();
    Matrix s(L, L);
    for (Label i = 0; i < L; ++i)
        for (Label j = 0; j < L; ++j) {
            Cyclotomic acc;
            for (Label k = 0; k < L; ++k) {
                int nn = f.n(i, j, f.dual[k]);
                if (!nn) continue;
                acc += Cyclotomic(nn) * m.twist[k] * (m.twist[i] * m.twist[j]).inverse() *
                       f.qdim[k];
            }
            s.at(i, j) = acc;
        }
    return s;
}

std::pair<Cyclotomic, Cyclotomic> gaussSums(const ModularData& m) {
    Cyclotomic dp, dm;
    for (int i = 0; i < m.base.labelCount(); ++i) {
        Cyclotomic d2 = m.base.qdim[i] * m.base.qdim[i];
        dp += m.twist[i] * d2;
        dm += m.twist[i].inverse() * d2;
    }
    return {dp, dm};
}

void ModularData::finalize() {
    const FusionData& f = base;
    int L = f.labelCount();
    if ((int)twist.size() != L) fail(ErrorCode::InputError, "twist table incomplete");
    if (!twist[f.unit].isOne()) fail(ErrorCode::CheckFailure, "twist of the unit is not 1");
    for (int i = 0; i < L; ++i) {
        if (twist[i].isZero()) fail(ErrorCode::CheckFailure, "zero twist");
        if (twist[f.dual[i]] != twist[i])
            fail(ErrorCode::CheckFailure, "twist(i*) != twist(i) at " + f.labelName[i]);
    }
    for (Label i = 0; i < L; ++i)
        for (Label j = 0; j < L; ++j)
            for (Label k = 0; k < L; ++k) {
                int nn = f.n(f.dual[k], i, j);
                if (!nn) continue;
                const Matrix& rij = r(i, j, k);
                const Matrix& rji = r(j, i, k);
                if (rij.rows != nn || rij.cols != nn || rji.rows != nn || rji.cols != nn)
                    fail(ErrorCode::InputError, "R-matrix shape mismatch at channel (" +
                                                    f.labelName[i] + "," + f.labelName[j] +
                                                    ";" + f.labelName[k] + ")");
                Matrix mono = rji * rij;
                Cyclotomic expect = twist[k] * (twist[i] * twist[j]).inverse();
                for (int a = 0; a < nn; ++a)
                    for (int b = 0; b < nn; ++b) {
                        Cyclotomic want = a == b ? expect : Cyclotomic(0);
                        if (mono.at(a, b) != want)
                            fail(ErrorCode::CheckFailure,
                                 "monodromy/twist relation fails at channel (" +
                                     f.labelName[i] + "," + f.labelName[j] + ";" +
                                     f.labelName[k] + ")");
                    }
            }
    smatrix = sMatrix(*this);
    for (Label i = 0; i < L; ++i) {
        if (smatrix.at(f.unit, i) != f.qdim[i])
            fail(ErrorCode::CheckFailure, "S(1,i) != qdim(i) at " + f.labelName[i]);
        for (Label j = 0; j < i; ++j)
            if (smatrix.at(i, j) != smatrix.at(j, i))
                fail(ErrorCode::CheckFailure, "S-matrix is not symmetric");
    }
    if (!smatrix.inverse())
        fail(ErrorCode::CheckFailure, "S-matrix is singular: data is not modular");
    auto [dp, dm] = gaussSums(*this);
    deltaPlus = dp;
    deltaMinus = dm;
    if (dp * dm != f.globalDim())
        fail(ErrorCode::CheckFailure, "Gauss sums do not multiply to the global dimension");
}

// ---------------------------------------------------------------------------
// braid representation on fusion trees

namespace {

struct FusedElement {
    Label w;
    int betaF;
    CombTree rest;
};

std::vector<FusedElement> enumFused(const FusionData& f, const std::vector<Label>& sig,
                                    int q) {
    std::vector<FusedElement> out;
    for (Label w = 0; w < f.labelCount(); ++w) {
        int nf = f.n(sig[q], sig[q + 1], f.dual[w]);
        if (!nf) continue;
        std::vector<Label> red(sig);
        red.erase(red.begin() + q, red.begin() + q + 2);
        red.insert(red.begin() + q, w);
        auto rest = enumCombTrees(f, red);
        for (int b = 0; b < nf; ++b)
            for (const auto& t : rest) out.push_back({w, b, t});
    }
    return out;
}

void expandFused(Network& net, const FusionData& f, int v, int q, const FusedElement& el) {
    std::vector<Dart> host = net.rot[v];
    int m = (int)host.size();
    int fv = net.addVertex();
    for (int p : {q, q + 1}) {
        NetEdge& e = net.edges[host[p].edge];
        if (host[p].end == 0)
            e.tail = fv;
        else
            e.head = fv;
    }
    int spine = net.addEdge(fv, v, el.w);
    net.rot[fv] = {host[q], host[q + 1], Dart{spine, 0}};
    net.basisIndex[fv] = el.betaF;
    std::vector<Dart> rv;
    for (int p = 0; p < m; ++p) {
        if (p == q) rv.push_back(Dart{spine, 1});
        if (p == q || p == q + 1) continue;
        rv.push_back(host[p]);
    }
    net.rot[v] = rv;
    expandComb(net, f, v, el.rest);
}

struct BraidContext {
    const ModularData& m;
    Evaluator& ev;
    std::map<std::vector<Label>, Matrix> gramCache;
    std::map<std::pair<std::vector<Label>, int>, Matrix> combToFusedCache;

    const Matrix& gramOf(const std::vector<Label>& sig) {
        auto it = gramCache.find(sig);
        if (it != gramCache.end()) return it->second;
        return gramCache.emplace(sig, treeGram(ev, sig)).first->second;
    }

    // K with comb_t = sum_phi K[phi][t] fused_phi
    const Matrix& combToFused(const std::vector<Label>& sig, int q) {
        auto key = std::make_pair(sig, q);
        auto it = combToFusedCache.find(key);
        if (it != combToFusedCache.end()) return it->second;
        const FusionData& f = m.base;
        auto fused = enumFused(f, sig, q);
        auto sigA = dualSignature(f, sig);
        auto duals = enumCombTrees(f, sigA);
        int D = (int)duals.size();
        if (D != (int)fused.size())
            fail(ErrorCode::InternalError, "fused basis size mismatch");
        int mlen = (int)sig.size();
        Matrix X(D, D);
        for (int s = 0; s < D; ++s)
            for (int phi = 0; phi < D; ++phi) {
                Network net;
                int u = net.addVertex();
                int v = net.addVertex();
                std::vector<int> eid(mlen);
                for (int p = 0; p < mlen; ++p) eid[p] = net.addEdge(u, v, sig[p]);
                for (int p = 0; p < mlen; ++p) net.rot[v].push_back(Dart{eid[p], 1});
                for (int p = mlen - 1; p >= 0; --p) net.rot[u].push_back(Dart{eid[p], 0});
                expandComb(net, f, u, duals[s]);
                expandFused(net, f, v, q, fused[phi]);
                X.at(s, phi) = ev.closed(net);
            }
        auto Xinv = X.inverse();
        if (!Xinv) fail(ErrorCode::InternalError, "fused family is not a basis");
        Matrix K = *Xinv * gramOf(sig);
        return combToFusedCache.emplace(key, std::move(K)).first->second;
    }
};

} // namespace

Cyclotomic evalBraidClosure(const ModularData& m, const BraidClosure& link) {
    const FusionData& f = m.base;
    if (link.strands == 0) {
        if (!link.word.empty() || !link.framings.empty())
            fail(ErrorCode::InputError, "empty link with nonempty data");
        return Cyclotomic(1);
    }
    int n = link.strands;
    for (int g : link.word)
        if (g == 0 || std::abs(g) >= n)
            fail(ErrorCode::InputError, "braid word letter out of range");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int g : link.word) {
        int q = std::abs(g) - 1;
        std::swap(perm[q], perm[q + 1]);
    }
    std::vector<int> compOf(n, -1);
    int ncomp = 0;
    for (int s = 0; s < n; ++s) {
        if (compOf[s] >= 0) continue;
        int x = s;
        while (compOf[x] < 0) {
            compOf[x] = ncomp;
            x = perm[x];
        }
        ++ncomp;
    }
    if ((int)link.framings.size() != ncomp)
        fail(ErrorCode::InputError, "framing count does not match closure components");
    if (!link.hasColors || (int)link.colors.size() != ncomp)
        fail(ErrorCode::InputError, "braid closure needs one color per component");
    std::vector<Label> colorOf = link.colors;

    std::vector<long> writhe(ncomp, 0);
    {
        std::vector<int> at(n);
        std::iota(at.begin(), at.end(), 0);
        for (int g : link.word) {
            int q = std::abs(g) - 1;
            int s1 = at[q], s2 = at[q + 1];
            if (compOf[s1] == compOf[s2]) writhe[compOf[s1]] += g > 0 ? 1 : -1;
            std::swap(at[q], at[q + 1]);
        }
    }

    Evaluator ev(f);
    BraidContext ctx{m, ev, {}, {}};

    Cyclotomic total;
    for (Label u = 0; u < f.labelCount(); ++u) {
        std::vector<Label> sig;
        sig.push_back(f.dual[u]);
        for (int p = 0; p < n; ++p) sig.push_back(colorOf[compOf[p]]);
        long dim = homDimension(f, sig);
        if (dim == 0) continue;
        Matrix acc((int)dim, (int)dim);
        for (int i = 0; i < dim; ++i) acc.at(i, i) = Cyclotomic(1);
        for (int g : link.word) {
            int q = std::abs(g);
            const Matrix& K = ctx.combToFused(sig, q);
            auto fused = enumFused(f, sig, q);
            std::vector<Label> sig2(sig);
            std::swap(sig2[q], sig2[q + 1]);
            const Matrix& K2 = ctx.combToFused(sig2, q);
            auto fused2 = enumFused(f, sig2, q);
            auto K2inv = K2.inverse();
            if (!K2inv) fail(ErrorCode::InternalError, "fused transition singular");
            int D = (int)fused.size();
            Matrix R(D, D);
            for (int p = 0; p < D; ++p)
                for (int p2 = 0; p2 < D; ++p2) {
                    if (fused[p].w != fused2[p2].w || !(fused[p].rest == fused2[p2].rest))
                        continue;
                    Label i = sig[q], j = sig[q + 1], w = fused[p].w;
                    if (g > 0) {
                        R.at(p2, p) = m.r(i, j, w).at(fused2[p2].betaF, fused[p].betaF);
                    } else {
                        auto rin = m.r(j, i, w).inverse();
                        if (!rin) fail(ErrorCode::CheckFailure, "singular R-matrix");
                        R.at(p2, p) = rin->at(fused2[p2].betaF, fused[p].betaF);
                    }
                }
            acc = (*K2inv) * R * K * acc;
            sig = sig2;
        }
        Cyclotomic tr;
        for (int i = 0; i < dim; ++i) tr += acc.at(i, i);
        total += f.qdim[u] * tr;
    }
    for (int c = 0; c < ncomp; ++c) {
        long e = link.framings[c] - writhe[c];
        Cyclotomic v = m.twist[colorOf[c]];
        Cyclotomic fpow(1);
        for (long t = 0; t < std::abs(e); ++t) fpow *= v;
        if (e < 0) fpow = fpow.inverse();
        total *= fpow;
    }
    return total;
}

Cyclotomic rtInvariant(const ModularData& m, const BraidClosure& surgery) {
    if (!m.anomalyFree())
        fail(ErrorCode::CheckFailure,
             "surgery invariant requires an anomaly-free category (Delta+ != Delta-)");
    const FusionData& f = m.base;
    int ncomp = (int)surgery.framings.size();
    if (surgery.strands > 0) {
        std::vector<int> perm(surgery.strands);
        std::iota(perm.begin(), perm.end(), 0);
        for (int g : surgery.word) {
            int q = std::abs(g) - 1;
            if (q < 0 || q + 1 >= surgery.strands)
                fail(ErrorCode::InputError, "braid word letter out of range");
            std::swap(perm[q], perm[q + 1]);
        }
        std::vector<int> seen(surgery.strands, 0);
        int nc = 0;
        for (int s = 0; s < surgery.strands; ++s) {
            if (seen[s]) continue;
            int x = s;
            while (!seen[x]) {
                seen[x] = 1;
                x = perm[x];
            }
            ++nc;
        }
        if (nc != ncomp)
            fail(ErrorCode::InputError, "framing count does not match closure components");
    } else if (ncomp != 0) {
        fail(ErrorCode::InputError, "empty braid with framings");
    }

    Cyclotomic total;
    std::vector<Label> lambda(ncomp, 0);
    std::function<void(int)> rec = [&](int q) {
        if (q == ncomp) {
            BraidClosure colored = surgery;
            colored.hasColors = true;
            colored.colors = lambda;
            Cyclotomic weight(1);
            for (int c = 0; c < ncomp; ++c) weight *= f.qdim[lambda[c]];
            total += weight * evalBraidClosure(m, colored);
            return;
        }
        for (Label x = 0; x < f.labelCount(); ++x) {
            lambda[q] = x;
            rec(q + 1);
        }
    };
    if (ncomp == 0)
        total = Cyclotomic(1);
    else
        rec(0);
    Cyclotomic norm = m.deltaPlus.inverse();
    Cyclotomic dpow(1);
    for (int t = 0; t < ncomp + 1; ++t) dpow *= norm;
    return dpow * total;
}

// ---------------------------------------------------------------------------
// mirror and Deligne square

ModularData mirror(const ModularData& m) {
    ModularData out;
    out.base = m.base;
    out.twist.resize(m.twist.size());
    for (size_t i = 0; i < m.twist.size(); ++i) out.twist[i] = m.twist[i].inverse();
    for (const auto& [key, mat] : m.rsym) {
        (void)mat;
        Triple rev{key[1], key[0], key[2]};
        auto it = m.rsym.find(rev);
        if (it == m.rsym.end()) fail(ErrorCode::InputError, "R-matrix table not closed");
        auto inv = it->second.inverse();
        if (!inv) fail(ErrorCode::CheckFailure, "singular R-matrix");
        out.rsym[key] = std::move(*inv);
    }
    out.finalize();
    return out;
}

ModularData deligneSquare(const ModularData& m) {
    ModularData mir = mirror(m);
    const FusionData& f = m.base;
    int L = f.labelCount();
    auto pairIdx = [L](Label a, Label b) { return a * L + b; };

    ModularData out;
    FusionData& g = out.base;
    g.name = f.name + "_square";
    for (Label a = 0; a < L; ++a)
        for (Label b = 0; b < L; ++b) {
            if (a == f.unit && b == f.unit)
                g.labelName.push_back("1");
            else
                g.labelName.push_back(f.labelName[a] + "." + f.labelName[b]);
        }
    g.dual.resize(L * L);
    g.qdim.resize(L * L);
    out.twist.resize(L * L);
    for (Label a = 0; a < L; ++a)
        for (Label b = 0; b < L; ++b) {
            g.dual[pairIdx(a, b)] = pairIdx(f.dual[a], f.dual[b]);
            g.qdim[pairIdx(a, b)] = f.qdim[a] * f.qdim[b];
            out.twist[pairIdx(a, b)] = m.twist[a] * mir.twist[b];
        }
    // product triples, pairings as Kronecker products of the component forms
    for (Label p0 = 0; p0 < L * L; ++p0)
        for (Label p1 = 0; p1 < L * L; ++p1)
            for (Label p2 = 0; p2 < L * L; ++p2) {
                Triple prod{p0, p1, p2};
                if (cyclicCanon(prod) != prod) continue;
                Triple ta{p0 / L, p1 / L, p2 / L};
                Triple tb{p0 % L, p1 % L, p2 % L};
                int n1 = f.n(ta), n2 = f.n(tb);
                if (!n1 || !n2) continue;
                g.setTriple(prod, n1 * n2);
                const Matrix& w1 = f.omega(ta);
                const Matrix& w2 = f.omega(tb);
                Matrix w(n1 * n2, n1 * n2);
                for (int i1 = 0; i1 < n1; ++i1)
                    for (int i2 = 0; i2 < n2; ++i2)
                        for (int j1 = 0; j1 < n1; ++j1)
                            for (int j2 = 0; j2 < n2; ++j2)
                                w.at(i1 * n2 + i2, j1 * n2 + j2) =
                                    w1.at(i1, j1) * w2.at(i2, j2);
                g.setOmega(prod, std::move(w));
            }
    for (const auto& [u1, T1] : f.sixJStore())
        for (const auto& [u2, T2] : f.sixJStore()) {
            Tuple6 up;
            for (int p = 0; p < 6; ++p) up[p] = pairIdx(u1[p], u2[p]);
            std::array<int, 4> dims;
            for (int s = 0; s < 4; ++s) dims[s] = T1.dims[s] * T2.dims[s];
            Tensor4 T(dims);
            for (int a1 = 0; a1 < T1.dims[0]; ++a1)
            for (int a2 = 0; a2 < T2.dims[0]; ++a2)
            for (int b1 = 0; b1 < T1.dims[1]; ++b1)
            for (int b2 = 0; b2 < T2.dims[1]; ++b2)
            for (int c1 = 0; c1 < T1.dims[2]; ++c1)
            for (int c2 = 0; c2 < T2.dims[2]; ++c2)
            for (int d1 = 0; d1 < T1.dims[3]; ++d1)
            for (int d2 = 0; d2 < T2.dims[3]; ++d2)
                T.at(a1 * T2.dims[0] + a2, b1 * T2.dims[1] + b2, c1 * T2.dims[2] + c2,
                     d1 * T2.dims[3] + d2) = T1.at(a1, b1, c1, d1) * T2.at(a2, b2, c2, d2);
            g.addSixJOrbit(up, T);
        }
    g.finalize();
    for (Label i1 = 0; i1 < L; ++i1)
    for (Label i2 = 0; i2 < L; ++i2)
    for (Label j1 = 0; j1 < L; ++j1)
    for (Label j2 = 0; j2 < L; ++j2)
    for (Label k1 = 0; k1 < L; ++k1)
    for (Label k2 = 0; k2 < L; ++k2) {
        int n1 = f.n(f.dual[k1], i1, j1);
        int n2 = f.n(f.dual[k2], i2, j2);
        if (!n1 || !n2) continue;
        const Matrix& r1 = m.r(i1, j1, k1);
        const Matrix& r2 = mir.r(i2, j2, k2);
        Matrix w(n1 * n2, n1 * n2);
        for (int a1 = 0; a1 < n1; ++a1)
            for (int a2 = 0; a2 < n2; ++a2)
                for (int b1 = 0; b1 < n1; ++b1)
                    for (int b2 = 0; b2 < n2; ++b2)
                        w.at(a1 * n2 + a2, b1 * n2 + b2) = r1.at(a1, b1) * r2.at(a2, b2);
        out.rsym[Triple{pairIdx(i1, i2), pairIdx(j1, j2), pairIdx(k1, k2)}] = std::move(w);
    }
    out.finalize();
    return out;
}

} // namespace tvk
