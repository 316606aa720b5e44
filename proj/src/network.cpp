#include "network.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace tvk {

std::vector<Label> Network::signature(const FusionData& f, int v) const {
    std::vector<Label> sig;
    sig.reserve(rot[v].size());
    for (const Dart& d : rot[v]) {
        Label c = edges[d.edge].color;
        sig.push_back(d.end == 1 ? c : f.dual[c]);
    }
    return sig;
}

namespace {

int dartFlat(const Dart& d) { return 2 * d.edge + d.end; }

} // namespace

std::vector<std::vector<int>> Network::faces() const {
    // directed dart = 2*edge + dir, dir 0: tail->head
    int E = (int)edges.size();
    // germ position lookup: for (edge,end) -> (vertex, rotation position)
    std::vector<std::array<int, 2>> germAt(2 * E, {-1, -1});
    for (int v = 0; v < (int)rot.size(); ++v)
        for (int p = 0; p < (int)rot[v].size(); ++p) {
            const Dart& d = rot[v][p];
            germAt[dartFlat(d)] = {v, p};
        }
    std::vector<char> used(2 * E, 0);
    std::vector<std::vector<int>> out;
    for (int start = 0; start < 2 * E; ++start) {
        if (used[start]) continue;
        std::vector<int> cycle;
        int d = start;
        while (!used[d]) {
            used[d] = 1;
            cycle.push_back(d);
            int e = d / 2, dir = d % 2;
            // arrival germ
            Dart arr{e, dir == 0 ? 1 : 0};
            auto [w, p] = germAt[dartFlat(arr)];
            if (w < 0) fail(ErrorCode::InternalError, "dangling germ in network");
            const auto& r = rot[w];
            const Dart& nx = r[(p + 1) % r.size()];
            d = 2 * nx.edge + (nx.end == 0 ? 0 : 1);
        }
        out.push_back(std::move(cycle));
    }
    return out;
}

int Network::faceCount() const { return (int)faces().size(); }

void Network::validateSurface(const FusionData& f) const {
    (void)f;
    int E = (int)edges.size();
    std::vector<int> seen(2 * E, 0);
    for (int v = 0; v < (int)rot.size(); ++v) {
        for (const Dart& d : rot[v]) {
            if (d.edge < 0 || d.edge >= E) fail(ErrorCode::InputError, "bad dart edge");
            int expect = d.end == 0 ? edges[d.edge].tail : edges[d.edge].head;
            if (expect != v)
                fail(ErrorCode::InputError, "rotation germ does not match edge endpoint");
            seen[dartFlat(d)]++;
        }
    }
    for (int g = 0; g < 2 * E; ++g)
        if (seen[g] != 1) fail(ErrorCode::InputError, "edge germ multiplicity != 1");

    // Euler characteristic per connected component
    int V = (int)rot.size();
    std::vector<int> comp(V, -1);
    int nc = 0;
    for (int v0 = 0; v0 < V; ++v0) {
        if (comp[v0] >= 0 || rot[v0].empty()) continue;
        std::vector<int> stack{v0};
        comp[v0] = nc;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const Dart& d : rot[v]) {
                int w = d.end == 0 ? edges[d.edge].head : edges[d.edge].tail;
                if (comp[w] < 0) {
                    comp[w] = nc;
                    stack.push_back(w);
                }
            }
        }
        ++nc;
    }
    std::vector<int> vc(nc, 0), ec(nc, 0), fc(nc, 0);
    for (int v = 0; v < V; ++v)
        if (comp[v] >= 0) vc[comp[v]]++;
    for (const auto& e : edges) ec[comp[e.tail]]++;
    for (const auto& face : faces()) {
        int e = face[0] / 2;
        fc[comp[edges[e].tail]]++;
    }
    for (int c = 0; c < nc; ++c)
        if (vc[c] - ec[c] + fc[c] != 2)
            fail(ErrorCode::InputError, "rotation system is not spherical (chi = " +
                                            std::to_string(vc[c] - ec[c] + fc[c]) + ")");
}

std::string Network::dump(const FusionData& f) const {
    std::ostringstream os;
    for (int e = 0; e < (int)edges.size(); ++e)
        os << "e" << e << ": " << edges[e].tail << " -> " << edges[e].head << "  "
           << f.labelName[edges[e].color] << "\n";
    for (int v = 0; v < (int)rot.size(); ++v) {
        os << "v" << v << " [";
        if (basisIndex[v] >= 0)
            os << basisIndex[v];
        else
            os << "free";
        os << "]:";
        for (const Dart& d : rot[v]) os << " e" << d.edge << (d.end ? "h" : "t");
        os << "\n";
    }
    for (Label c : freeLoops) os << "loop " << f.labelName[c] << "\n";
    return os.str();
}

size_t SlotTensor::flatten(const std::vector<int>& idx) const {
    size_t f = 0;
    for (size_t i = 0; i < dims.size(); ++i) f = f * dims[i] + idx[i];
    return f;
}

// ---------------------------------------------------------------------------
// canonical encoding for memoization

namespace {

std::string canonicalAttempt(const Network& net, int v0, int off0) {
    int V = (int)net.rot.size();
    std::vector<int> id(V, -1);
    std::vector<int> entry(V, 0); // rotation offset at which the vertex was entered
    std::vector<int> order;
    id[v0] = 0;
    entry[v0] = off0;
    order.push_back(v0);
    std::vector<int> edgeId(net.edges.size(), -1);
    int nextEdge = 0;
    // discover vertices in BFS order following rotations
    for (size_t qi = 0; qi < order.size(); ++qi) {
        int v = order[qi];
        int val = (int)net.rot[v].size();
        for (int s = 0; s < val; ++s) {
            const Dart& d = net.rot[v][(entry[v] + s) % val];
            if (edgeId[d.edge] < 0) edgeId[d.edge] = nextEdge++;
            int w = d.end == 0 ? net.edges[d.edge].head : net.edges[d.edge].tail;
            if (id[w] < 0) {
                id[w] = (int)order.size();
                // entry germ at w: the opposite germ of this edge
                Dart opp{d.edge, d.end == 0 ? 1 : 0};
                int p = 0;
                for (int q = 0; q < (int)net.rot[w].size(); ++q)
                    if (net.rot[w][q] == opp) p = q;
                entry[w] = p;
                order.push_back(w);
            }
        }
    }
    if ((int)order.size() != V) return std::string(); // disconnected: caller avoids
    std::ostringstream os;
    for (int v : order) {
        os << "|" << net.basisIndex[v] << ":";
        int val = (int)net.rot[v].size();
        for (int s = 0; s < val; ++s) {
            const Dart& d = net.rot[v][(entry[v] + s) % val];
            os << edgeId[d.edge] << "," << d.end << "," << net.edges[d.edge].color << ";";
        }
    }
    return os.str();
}

std::string canonicalForm(const Network& net) {
    std::string best;
    for (int v = 0; v < (int)net.rot.size(); ++v) {
        if (net.rot[v].empty()) continue;
        for (int off = 0; off < (int)net.rot[v].size(); ++off) {
            std::string s = canonicalAttempt(net, v, off);
            if (!s.empty() && (best.empty() || s < best)) best = std::move(s);
        }
    }
    return best;
}

// --- mutation helpers -------------------------------------------------------

void replaceGerm(Network& net, int v, const Dart& from, const Dart& to) {
    for (Dart& d : net.rot[v])
        if (d == from) {
            d = to;
            return;
        }
    fail(ErrorCode::InternalError, "germ to replace not found");
}

// removes vertices with empty rotations, compacting indices
void compactVertices(Network& net) {
    int V = (int)net.rot.size();
    std::vector<int> remap(V, -1);
    int n = 0;
    for (int v = 0; v < V; ++v)
        if (!net.rot[v].empty()) remap[v] = n++;
    if (n == V) return;
    std::vector<std::vector<Dart>> rot(n);
    std::vector<int> basis(n);
    for (int v = 0; v < V; ++v)
        if (remap[v] >= 0) {
            rot[remap[v]] = std::move(net.rot[v]);
            basis[remap[v]] = net.basisIndex[v];
        }
    for (auto& e : net.edges) {
        e.tail = remap[e.tail];
        e.head = remap[e.head];
    }
    net.rot = std::move(rot);
    net.basisIndex = std::move(basis);
}

void removeEdges(Network& net, std::set<int> dead) {
    if (dead.empty()) return;
    int E = (int)net.edges.size();
    std::vector<int> remap(E, -1);
    int n = 0;
    for (int e = 0; e < E; ++e)
        if (!dead.count(e)) remap[e] = n++;
    std::vector<NetEdge> edges;
    edges.reserve(n);
    for (int e = 0; e < E; ++e)
        if (remap[e] >= 0) edges.push_back(net.edges[e]);
    for (auto& r : net.rot)
        for (auto& d : r) d.edge = remap[d.edge];
    net.edges = std::move(edges);
}

// Merge the two edges at a 2-valent vertex v into one; returns false (-> value
// zero) if the colors are incompatible. Handles the same-edge loop case by
// producing a free loop.
void mergeTwoValent(Network& net, int v) {
    const Dart a = net.rot[v][0], b = net.rot[v][1];
    if (a.edge == b.edge) {
        // loop through v: becomes a free circle
        net.freeLoops.push_back(net.edges[a.edge].color);
        net.rot[v].clear();
        removeEdges(net, {a.edge});
        compactVertices(net);
        return;
    }
    NetEdge ea = net.edges[a.edge], eb = net.edges[b.edge];
    int farB = b.end == 0 ? eb.head : eb.tail;
    Dart farBg{b.edge, b.end == 0 ? 1 : 0};
    // merged edge keeps a's id, color and orientation sense; b's far germ is
    // rewired onto it (re-orienting b's side when the germs disagree)
    int keep = a.edge;
    if (a.end == 1 && b.end == 0) {
        net.edges[keep] = {ea.tail, eb.head, ea.color};
        replaceGerm(net, farB, farBg, Dart{keep, 1});
    } else if (a.end == 0 && b.end == 1) {
        net.edges[keep] = {eb.tail, ea.head, ea.color};
        replaceGerm(net, farB, farBg, Dart{keep, 0});
    } else if (a.end == 1 && b.end == 1) {
        net.edges[keep] = {ea.tail, eb.tail, ea.color};
        replaceGerm(net, farB, farBg, Dart{keep, 1});
    } else {
        net.edges[keep] = {eb.head, ea.head, ea.color};
        replaceGerm(net, farB, farBg, Dart{keep, 0});
    }
    net.rot[v].clear();
    removeEdges(net, {b.edge});
    compactVertices(net);
}

// splits edge e at an interior point: the piece adjacent to the tail keeps id
// e, the head piece gets a fresh id; the new vertex nv sits between them.
// Returns {tailPieceEdge, headPieceEdge}.
std::array<int, 2> splitEdge(Network& net, int e, int nv) {
    NetEdge orig = net.edges[e];
    net.edges[e] = {orig.tail, nv, orig.color};
    int e2 = net.addEdge(nv, orig.head, orig.color);
    replaceGerm(net, orig.head, Dart{e, 1}, Dart{e2, 1});
    return {e, e2};
}

} // namespace

// ---------------------------------------------------------------------------
// theta / tetrahedron base cases

namespace {

// effective color of a germ
Label effColor(const FusionData& f, const Network& net, const Dart& d) {
    Label c = net.edges[d.edge].color;
    return d.end == 1 ? c : f.dual[c];
}

std::optional<Cyclotomic> matchThetaValue(const FusionData& f, const Network& net) {
    if (net.rot.size() != 2 || net.edges.size() != 3) return std::nullopt;
    int u0 = 0, u1 = 1;
    if (net.rot[u0].size() != 3 || net.rot[u1].size() != 3) return std::nullopt;
    auto sig1 = net.signature(f, u1);
    Triple s1{sig1[0], sig1[1], sig1[2]};
    Triple k1 = cyclicCanon(s1);
    if (f.n(k1) == 0) return Cyclotomic(0);
    // rotation offset aligning u1's signature with the class representative
    for (int r1 = 0; r1 < 3; ++r1) {
        Triple rot1{sig1[r1 % 3], sig1[(r1 + 1) % 3], sig1[(r1 + 2) % 3]};
        if (!(rot1 == k1)) continue;
        std::array<int, 3> edgeOrder;
        for (int q = 0; q < 3; ++q) edgeOrder[q] = net.rot[u1][(r1 + q) % 3].edge;
        auto sig0 = net.signature(f, u0);
        for (int r0 = 0; r0 < 3; ++r0) {
            bool mirror = true;
            for (int q = 0; q < 3 && mirror; ++q) {
                if (net.rot[u0][(r0 + q) % 3].edge != edgeOrder[2 - q]) mirror = false;
                if (mirror && sig0[(r0 + q) % 3] != f.dual[k1[2 - q]]) mirror = false;
            }
            if (!mirror) continue;
            const Matrix& w = f.omega(k1);
            return w.at(net.basisIndex[u0], net.basisIndex[u1]);
        }
    }
    fail(ErrorCode::InternalError, "theta network does not align with its pairing class");
}

} // namespace

std::optional<TetMatch> matchTetrahedron(const FusionData& f, const Network& net) {
    if (net.rot.size() != 4 || net.edges.size() != 6) return std::nullopt;
    for (int v = 0; v < 4; ++v)
        if (net.rot[v].size() != 3) return std::nullopt;
    // net edge between each vertex pair, indexed by unordered pair
    std::map<std::pair<int, int>, int> byPair;
    for (int e = 0; e < 6; ++e) {
        auto key = std::minmax(net.edges[e].tail, net.edges[e].head);
        if (byPair.count({key.first, key.second})) return std::nullopt; // parallel edges
        byPair[{key.first, key.second}] = e;
    }
    if (byPair.size() != 6) return std::nullopt;

    std::array<int, 4> assign{0, 1, 2, 3}; // assign[netVertex] = pattern slot
    std::sort(assign.begin(), assign.end());
    do {
        std::array<int, 4> vertexOfSlot;
        for (int v = 0; v < 4; ++v) vertexOfSlot[assign[v]] = v;
        Tuple6 tuple;
        std::array<int, 6> netEdgeOfPattern;
        bool ok = true;
        for (int pe = 0; pe < 6 && ok; ++pe) {
            int ta = vertexOfSlot[TetPattern::endpoints[pe][0]];
            int hb = vertexOfSlot[TetPattern::endpoints[pe][1]];
            auto key = std::minmax(ta, hb);
            auto it = byPair.find({key.first, key.second});
            if (it == byPair.end()) { ok = false; break; }
            int ne = it->second;
            netEdgeOfPattern[pe] = ne;
            bool sameDir = net.edges[ne].tail == ta && net.edges[ne].head == hb;
            tuple[pe] = sameDir ? net.edges[ne].color : f.dual[net.edges[ne].color];
        }
        if (!ok) continue;
        // rotations must match the pattern
        for (int v = 0; v < 4 && ok; ++v) {
            int slot = assign[v];
            std::array<int, 3> want;
            for (int p = 0; p < 3; ++p)
                want[p] = netEdgeOfPattern[TetPattern::rotation[slot][p]];
            std::array<int, 3> have;
            for (int p = 0; p < 3; ++p) have[p] = net.rot[v][p].edge;
            bool cyc = false;
            for (int s = 0; s < 3 && !cyc; ++s)
                if (have[0] == want[s] && have[1] == want[(s + 1) % 3] &&
                    have[2] == want[(s + 2) % 3])
                    cyc = true;
            if (!cyc) ok = false;
        }
        if (!ok) continue;
        TetMatch m;
        m.tuple = tuple;
        for (int v = 0; v < 4; ++v) m.slotOfVertex[v] = assign[v];
        return m;
    } while (std::next_permutation(assign.begin(), assign.end()));
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// the reducer

Cyclotomic Evaluator::closed(const Network& net, uint64_t seed) {
    Network copy = net;
    return reduce(std::move(copy), seed, 0);
}

Cyclotomic Evaluator::reduce(Network net, uint64_t seed, int depth) {
    if (depth > 400) fail(ErrorCode::InternalError, "network reduction too deep");
    Cyclotomic coeff(1);
    // free loops
    for (Label c : net.freeLoops) coeff *= f_.qdim[c];
    net.freeLoops.clear();

    // split connected components
    {
        int V = (int)net.rot.size();
        std::vector<int> comp(V, -1);
        int nc = 0;
        for (int v0 = 0; v0 < V; ++v0) {
            if (comp[v0] >= 0) continue;
            comp[v0] = nc;
            std::vector<int> stack{v0};
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (const Dart& d : net.rot[v]) {
                    int w = d.end == 0 ? net.edges[d.edge].head : net.edges[d.edge].tail;
                    if (comp[w] < 0) {
                        comp[w] = nc;
                        stack.push_back(w);
                    }
                }
            }
            ++nc;
        }
        if (nc > 1) {
            Cyclotomic prod = coeff;
            for (int c = 0; c < nc; ++c) {
                Network sub;
                std::vector<int> vmap(V, -1);
                for (int v = 0; v < V; ++v)
                    if (comp[v] == c) {
                        vmap[v] = sub.addVertex();
                        sub.basisIndex[vmap[v]] = net.basisIndex[v];
                    }
                std::vector<int> emap(net.edges.size(), -1);
                for (int e = 0; e < (int)net.edges.size(); ++e)
                    if (comp[net.edges[e].tail] == c)
                        emap[e] = sub.addEdge(vmap[net.edges[e].tail],
                                              vmap[net.edges[e].head], net.edges[e].color);
                for (int v = 0; v < V; ++v)
                    if (comp[v] == c)
                        for (const Dart& d : net.rot[v])
                            sub.rot[vmap[v]].push_back(Dart{emap[d.edge], d.end});
                prod *= reduce(std::move(sub), seed, depth + 1);
                if (prod.isZero()) return prod;
            }
            return prod;
        }
    }

    if (net.rot.empty()) return coeff;

    std::string key;
    {
        std::ostringstream sk;
        sk << seed << "#" << canonicalForm(net);
        key = sk.str();
        auto it = memo_.find(key);
        if (it != memo_.end()) return coeff * it->second;
    }

    // simplification cascade; restarts after each mutation
    for (bool again = true; again;) {
        again = false;
        for (int v = 0; v < (int)net.rot.size() && !again; ++v) {
            int val = (int)net.rot[v].size();
            if (val == 0 || val == 1)
                fail(ErrorCode::InternalError, "invalid vertex valence in closed network");
            if (val == 2) {
                if (net.basisIndex[v] != 0)
                    fail(ErrorCode::InternalError, "2-valent vertex with non-canonical basis");
                auto sig = net.signature(f_, v);
                if (sig[1] != f_.dual[sig[0]]) return Cyclotomic(0);
                mergeTwoValent(net, v);
                for (Label c : net.freeLoops) coeff *= f_.qdim[c];
                net.freeLoops.clear();
                again = true;
                continue;
            }
            if (val == 3) {
                auto sig = net.signature(f_, v);
                if (f_.n({sig[0], sig[1], sig[2]}) == 0) return Cyclotomic(0);
                // self-loop (monogon): third leg must be the unit
                int loopEdge = -1;
                for (const Dart& d : net.rot[v])
                    if (net.edges[d.edge].tail == v && net.edges[d.edge].head == v)
                        loopEdge = d.edge;
                if (loopEdge >= 0) {
                    int thirdPos = -1;
                    for (int p = 0; p < 3; ++p)
                        if (net.rot[v][p].edge != loopEdge) thirdPos = p;
                    const Dart third = net.rot[v][thirdPos];
                    if (net.edges[third.edge].color != f_.unit) return Cyclotomic(0);
                    // delete the unit edge; both endpoints drop a germ
                    int w = third.end == 0 ? net.edges[third.edge].head
                                           : net.edges[third.edge].tail;
                    Dart farG{third.edge, third.end == 0 ? 1 : 0};
                    auto& rv = net.rot[v];
                    rv.erase(std::find(rv.begin(), rv.end(), third));
                    if (w == v) {
                        // unit loop at the same vertex
                        auto& rw = net.rot[v];
                        rw.erase(std::find(rw.begin(), rw.end(), farG));
                    } else {
                        auto& rw = net.rot[w];
                        rw.erase(std::find(rw.begin(), rw.end(), farG));
                    }
                    removeEdges(net, {third.edge});
                    compactVertices(net);
                    again = true;
                    continue;
                }
            }
        }
        if (again) continue;
        // unit edge deletion between trivalent vertices
        for (int e = 0; e < (int)net.edges.size() && !again; ++e) {
            if (net.edges[e].color != f_.unit) continue;
            int t = net.edges[e].tail, h = net.edges[e].head;
            if (t == h) continue; // handled above
            if (net.rot[t].size() != 3 || net.rot[h].size() != 3) continue;
            auto& rt = net.rot[t];
            rt.erase(std::find(rt.begin(), rt.end(), Dart{e, 0}));
            auto& rh = net.rot[h];
            rh.erase(std::find(rh.begin(), rh.end(), Dart{e, 1}));
            removeEdges(net, {e});
            compactVertices(net);
            again = true;
        }
    }

    for (Label c : net.freeLoops) coeff *= f_.qdim[c];
    net.freeLoops.clear();
    if (net.rot.empty()) return coeff;

    // the cascade may have disconnected the net; re-split if so
    {
        std::vector<int> seen(net.rot.size(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        size_t reached = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const Dart& d : net.rot[v]) {
                int w = d.end == 0 ? net.edges[d.edge].head : net.edges[d.edge].tail;
                if (!seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        if (reached != net.rot.size()) return coeff * reduce(std::move(net), seed, depth + 1);
    }

    // base cases
    if (net.rot.size() == 2 && net.edges.size() == 3) {
        auto v = matchThetaValue(f_, net);
        if (!v) fail(ErrorCode::InternalError, "unexpected 2-vertex network");
        memo_[key] = *v;
        return coeff * *v;
    }
    if (net.rot.size() == 4 && net.edges.size() == 6) {
        auto m = matchTetrahedron(f_, net);
        if (m) {
            const Tensor4* T = f_.sixJ(m->tuple);
            Cyclotomic v;
            if (T) {
                std::array<int, 4> idx;
                for (int nv = 0; nv < 4; ++nv) idx[m->slotOfVertex[nv]] = net.basisIndex[nv];
                v = T->at(idx[0], idx[1], idx[2], idx[3]);
            }
            memo_[key] = v;
            return coeff * v;
        }
    }

    // faces, smallest first (seed rotates equal choices)
    auto faceList = net.faces();
    std::vector<std::array<int, 2>> bySize; // (size, index)
    for (int i = 0; i < (int)faceList.size(); ++i)
        bySize.push_back({(int)faceList[i].size(), i});
    std::sort(bySize.begin(), bySize.end());
    int pick = 0;
    if (bySize.size() > 1 && seed) {
        // among faces of minimal size, rotate by seed
        int k = 1;
        while (k < (int)bySize.size() && bySize[k][0] == bySize[0][0]) ++k;
        pick = (int)(seed % k);
    }
    const std::vector<int>& face = faceList[bySize[pick][1]];
    int fsize = (int)face.size();

    auto dartHeadVertex = [&](int d) {
        int e = d / 2;
        return d % 2 == 0 ? net.edges[e].head : net.edges[e].tail;
    };

    if (fsize == 2) {
        // bigon: bubble collapse (Lemma 4.3(a),(b))
        int e1 = face[0] / 2, e2 = face[1] / 2;
        int u = dartHeadVertex(face[1]); // common endpoints
        int v = dartHeadVertex(face[0]);
        if (u == v) fail(ErrorCode::InternalError, "bigon loop survived simplification");
        // outer legs
        auto outerOf = [&](int w) {
            for (const Dart& d : net.rot[w])
                if (d.edge != e1 && d.edge != e2) return d;
            fail(ErrorCode::InternalError, "bubble without outer leg");
        };
        Dart ou = outerOf(u), ov = outerOf(v);
        if (ou.edge == ov.edge)
            fail(ErrorCode::InternalError, "theta escaped the base case");
        // strand compatibility
        Label effU = effColor(f_, net, ou), effV = effColor(f_, net, ov);
        if (effV != f_.dual[effU]) return Cyclotomic(0);
        Label strand = f_.dual[effU]; // color as an edge oriented away from u

        // theta factor: bubble closed by a strand edge reproducing the germs
        Network theta;
        int tu = theta.addVertex(), tv = theta.addVertex();
        theta.basisIndex[tu] = net.basisIndex[u];
        theta.basisIndex[tv] = net.basisIndex[v];
        std::map<int, int> emap;
        for (int e : {e1, e2}) {
            const NetEdge& ne = net.edges[e];
            emap[e] = theta.addEdge(ne.tail == u ? tu : tv, ne.head == u ? tu : tv, ne.color);
        }
        // closing edge reproduces ou's germ at u exactly; the germ type at v
        // may flip, with the matching effective color (checked above)
        int ce;
        int ceEndAtV;
        if (ou.end == 0) {
            ce = theta.addEdge(tu, tv, net.edges[ou.edge].color);
            ceEndAtV = 1;
        } else {
            ce = theta.addEdge(tv, tu, net.edges[ou.edge].color);
            ceEndAtV = 0;
        }
        for (int w : {u, v}) {
            int tw = w == u ? tu : tv;
            for (const Dart& d : net.rot[w]) {
                if (d.edge == e1 || d.edge == e2)
                    theta.rot[tw].push_back(Dart{emap[d.edge], d.end});
                else
                    theta.rot[tw].push_back(Dart{ce, w == u ? ou.end : ceEndAtV});
            }
        }
        Cyclotomic thetaVal = reduce(std::move(theta), seed, depth + 1);
        if (thetaVal.isZero()) return Cyclotomic(0);

        // rest: remove u, v, bubble edges; merge outer legs into one strand
        Network rest = net;
        rest.rot[u].clear();
        rest.rot[v].clear();
        int farU = ou.end == 0 ? rest.edges[ou.edge].head : rest.edges[ou.edge].tail;
        int farV = ov.end == 0 ? rest.edges[ov.edge].head : rest.edges[ov.edge].tail;
        Dart farUg{ou.edge, ou.end == 0 ? 1 : 0};
        Dart farVg{ov.edge, ov.end == 0 ? 1 : 0};
        // new strand edge: direction away from u side: effU at u means the leg
        // carries eff dual(effU)=strand out of farU ... keep it simple: the
        // strand runs farU -> farV with color chosen so farU's germ is
        // preserved exactly.
        const NetEdge eu = rest.edges[ou.edge];
        int merged;
        if (ou.end == 1) {
            // ou arrives at u, so the strand leaves farU along eu: farU is tail
            merged = rest.addEdge(eu.tail, farV, eu.color);
            replaceGerm(rest, farU, farUg, Dart{merged, 0});
            replaceGerm(rest, farV, farVg, Dart{merged, 1});
        } else {
            // ou leaves u: strand arrives at farU: farU is head
            merged = rest.addEdge(farV, eu.head, eu.color);
            replaceGerm(rest, farU, farUg, Dart{merged, 1});
            replaceGerm(rest, farV, farVg, Dart{merged, 0});
        }
        std::set<int> dead{e1, e2, ou.edge, ov.edge};
        removeEdges(rest, dead);
        compactVertices(rest);
        Cyclotomic restVal = reduce(std::move(rest), seed, depth + 1);
        Cyclotomic total = thetaVal * f_.qdim[strand].inverse() * restVal;
        memo_[key] = total;
        return coeff * total;
    }

    if (fsize == 3) {
        // triangle -> vertex via 6j substitution
        std::array<int, 3> tv{}, te{};
        for (int p = 0; p < 3; ++p) {
            te[p] = face[p] / 2;
            tv[p] = dartHeadVertex(face[p]); // vertex at the END of dart p
        }
        // vertices in trace order: v0 -> v1 -> v2 (dart p ends at tv[p])
        // outer legs
        std::array<Dart, 3> outer;
        for (int p = 0; p < 3; ++p) {
            int w = tv[p];
            bool found = false;
            for (const Dart& d : net.rot[w])
                if (d.edge != te[0] && d.edge != te[1] && d.edge != te[2]) {
                    outer[p] = d;
                    found = true;
                }
            if (!found) fail(ErrorCode::InternalError, "triangle without outer leg");
        }
        if (tv[0] == tv[1] || tv[1] == tv[2] || tv[0] == tv[2])
            fail(ErrorCode::InternalError, "degenerate triangle face");

        // new-vertex rotation: reversed trace order of the outer legs
        // (derived from the collapse geometry)
        // trace visits tv[0], tv[1], tv[2]; collapsed rotation = (o0, o2, o1)
        Network base = net;
        for (int p = 0; p < 3; ++p) base.rot[tv[p]].clear();
        int nv = base.addVertex();
        base.rot[nv] = {outer[0], outer[2], outer[1]};
        // outer legs keep their far germs; reattach near germs to nv
        for (int p = 0; p < 3; ++p) {
            NetEdge& e = base.edges[outer[p].edge];
            if (outer[p].end == 0)
                e.tail = nv;
            else
                e.head = nv;
        }
        std::set<int> dead{te[0], te[1], te[2]};
        removeEdges(base, dead);
        compactVertices(base);
        // nv had the largest index and survives; compaction keeps the order
        int nvc = (int)base.rot.size() - 1;

        auto sigNew = base.signature(f_, nvc);
        Triple clsNew = cyclicCanon({sigNew[0], sigNew[1], sigNew[2]});
        int dim = f_.n(clsNew);
        if (dim == 0) return Cyclotomic(0);

        // coefficient(b) = sum_r Winv[b][r] * TetValue(triangle closed by dual
        // vertex carrying r)
        // closed tet: triangle + closing vertex dv with mirrored rotation
        Cyclotomic total;
        for (int b = 0; b < dim; ++b) {
            Cyclotomic cb;
            for (int r = 0; r < dim; ++r) {
                Network closed;
                std::map<int, int> vmap;
                for (int p = 0; p < 3; ++p) {
                    vmap[tv[p]] = closed.addVertex();
                    closed.basisIndex[vmap[tv[p]]] = net.basisIndex[tv[p]];
                }
                int dv = closed.addVertex();
                closed.basisIndex[dv] = r;
                std::map<int, int> emap;
                for (int p = 0; p < 3; ++p) {
                    const NetEdge& e = net.edges[te[p]];
                    emap[te[p]] = closed.addEdge(vmap[e.tail], vmap[e.head], e.color);
                }
                // outer legs become edges to dv preserving the triangle-side germ
                std::map<int, int> omap;
                for (int p = 0; p < 3; ++p) {
                    const NetEdge& e = net.edges[outer[p].edge];
                    int id;
                    if (outer[p].end == 0)
                        id = closed.addEdge(vmap[tv[p]], dv, e.color);
                    else
                        id = closed.addEdge(dv, vmap[tv[p]], e.color);
                    omap[p] = id;
                }
                for (int p = 0; p < 3; ++p) {
                    for (const Dart& d : net.rot[tv[p]]) {
                        if (d.edge == te[0] || d.edge == te[1] || d.edge == te[2])
                            closed.rot[vmap[tv[p]]].push_back(Dart{emap[d.edge], d.end});
                        else
                            closed.rot[vmap[tv[p]]].push_back(Dart{omap[p], outer[p].end});
                    }
                }
                // dv rotation: mirror of nv's = trace order (o0, o1, o2), with
                // opposite germ ends
                for (int p : {0, 1, 2})
                    closed.rot[dv].push_back(Dart{omap[p], outer[p].end == 0 ? 1 : 0});
                Cyclotomic tetVal = reduce(std::move(closed), seed, depth + 1);
                if (tetVal.isZero()) continue;
                cb += f_.omegaInvEntry(clsNew, b, r) * tetVal;
            }
            if (cb.isZero()) continue;
            Network branch = base;
            branch.basisIndex[nvc] = b;
            cb *= reduce(std::move(branch), seed, depth + 1);
            total += cb;
        }
        memo_[key] = total;
        return coeff * total;
    }

    // face of size >= 4: fusion move (Lemma 4.3(c)) across two sides
    {
        // choose side positions i1 < i2 with distance >= 2 both ways; prefer
        // distance 2 with distinct edges
        int k = fsize;
        int p1 = -1, p2 = -1;
        for (int off = 0; off < k && p1 < 0; ++off) {
            int a = (int)((off + seed) % k), b = (a + 2) % k;
            if (face[a] / 2 != face[b] / 2) { p1 = a; p2 = b; }
        }
        if (p1 < 0)
            fail(ErrorCode::InternalError, "no usable fusion site on face");
        int dA = face[p1], dB = face[p2];
        int eA = dA / 2, eB = dB / 2;
        // cut points: trace passes eA in direction dA%2
        // vA joins the near pieces (toward the corner path p1->p2), vB the far
        Network work = net;
        int vA = work.addVertex();
        int vB = work.addVertex();
        // split eA: tail piece keeps id
        // trace-forward piece of eA = near side (toward the corner path)
        auto splitForTrace = [&](int e, int dir, int nv) -> std::array<int, 2> {
            // returns {farPiece, nearPiece} where near = trace-forward
            auto pieces = splitEdge(work, e, nv); // {tailPiece, headPiece}
            if (dir == 0) return {pieces[0], pieces[1]};
            return {pieces[1], pieces[0]};
        };
        // s1: near = forward; s3: near = backward (toward the corner path)
        auto s1 = splitForTrace(eA, dA % 2, vA); // {far, near}
        int s1far = s1[0], s1near = s1[1];
        auto s3 = splitForTrace(eB, dB % 2, vA);
        int s3near = s3[0], s3far = s3[1]; // for the second side, near = trace-backward
        // splitEdge attached both cut germs of eA to vA and of eB to vA; move
        // the far pieces' germs to vB
        auto moveGerm = [&](int edge, int nv) {
            NetEdge& e = work.edges[edge];
            if (e.tail == vA)
                e.tail = nv;
            else if (e.head == vA)
                e.head = nv;
            else
                fail(ErrorCode::InternalError, "fusion split bookkeeping");
        };
        moveGerm(s1far, vB);
        moveGerm(s3far, vB);
        // chord
        int chord = work.addEdge(vB, vA, -1); // color set per z below
        // rotations (derived):
        //   rot[vA] = (chord, s3near, s1near), rot[vB] = (chord, s1far, s3far)
        auto germOfAt = [&](int edge, int v) -> Dart {
            if (work.edges[edge].tail == v) return Dart{edge, 0};
            if (work.edges[edge].head == v) return Dart{edge, 1};
            fail(ErrorCode::InternalError, "edge not at vertex");
        };
        work.rot[vA] = {Dart{chord, 1}, germOfAt(s3near, vA), germOfAt(s1near, vA)};
        work.rot[vB] = {Dart{chord, 0}, germOfAt(s1far, vB), germOfAt(s3far, vB)};

        Cyclotomic total;
        for (Label z = 0; z < f_.labelCount(); ++z) {
            work.edges[chord].color = z;
            auto sigA = work.signature(f_, vA);
            auto sigB = work.signature(f_, vB);
            Triple clsA = cyclicCanon({sigA[0], sigA[1], sigA[2]});
            Triple clsB = cyclicCanon({sigB[0], sigB[1], sigB[2]});
            int dimA = f_.n(clsA), dimB = f_.n(clsB);
            if (dimA == 0 || dimB == 0) continue;
            if (f_.dualClass(clsA) != clsB)
                fail(ErrorCode::InternalError, "fusion vertices are not dual classes");
            for (int a = 0; a < dimA; ++a)
                for (int b = 0; b < dimB; ++b) {
                    const Cyclotomic& w = f_.omegaInvEntry(clsB, b, a);
                    if (w.isZero()) continue;
                    Network branch = work;
                    branch.basisIndex[vA] = a;
                    branch.basisIndex[vB] = b;
                    total += f_.qdim[z] * w * reduce(std::move(branch), seed, depth + 1);
                }
        }
        memo_[key] = total;
        return coeff * total;
    }
}

SlotTensor Evaluator::freeSlots(const Network& net, const std::vector<int>& freeVerts,
                                uint64_t seed) {
    SlotTensor out;
    for (int v : freeVerts) {
        auto sig = net.signature(f_, v);
        if (sig.size() != 3)
            fail(ErrorCode::InputError, "free slot must be trivalent");
        out.dims.push_back(f_.n({sig[0], sig[1], sig[2]}));
    }
    size_t total = 1;
    for (int d : out.dims) total *= (size_t)std::max(d, 0);
    out.v.assign(total, Cyclotomic());
    if (total == 0) return out;
    std::vector<int> idx(freeVerts.size(), 0);
    for (size_t flat = 0; flat < total; ++flat) {
        size_t rest = flat;
        for (int i = (int)freeVerts.size() - 1; i >= 0; --i) {
            idx[i] = (int)(rest % out.dims[i]);
            rest /= out.dims[i];
        }
        Network copy = net;
        for (size_t i = 0; i < freeVerts.size(); ++i) copy.basisIndex[freeVerts[i]] = idx[i];
        out.v[flat] = reduce(std::move(copy), seed, 0);
    }
    return out;
}

// ---------------------------------------------------------------------------
// fusion trees

long homDimension(const FusionData& f, const std::vector<Label>& sig) {
    int L = f.labelCount();
    std::vector<long> v(L, 0);
    if (sig.empty()) return 1;
    v[sig[0]] = 1;
    for (size_t r = 1; r < sig.size(); ++r) {
        std::vector<long> nv(L, 0);
        for (int u = 0; u < L; ++u) {
            if (!v[u]) continue;
            for (int w = 0; w < L; ++w) {
                int m = f.n(u, sig[r], f.dual[w]);
                if (m) nv[w] += v[u] * m;
            }
        }
        v = std::move(nv);
    }
    return v[f.unit];
}

std::vector<CombTree> enumCombTrees(const FusionData& f, const std::vector<Label>& sig) {
    size_t m = sig.size();
    std::vector<CombTree> out;
    if (m < 2) {
        if (m == 1 && sig[0] == f.unit) out.push_back({});
        return out;
    }
    if (m == 2) {
        if (sig[1] == f.dual[sig[0]]) out.push_back({});
        return out;
    }
    // chain labels d[r] for r = 1..m-2 with d[1] = sig[0]; vertices r = 2..m-1
    std::vector<Label> d(m - 1, -1);
    d[1] = sig[0];
    std::function<void(size_t, CombTree&)> rec = [&](size_t r, CombTree& t) {
        if (r == m - 1) {
            // final vertex class (d[m-2], X_{m-1}, X_m)
            Triple cls{d[m - 2], sig[m - 2], sig[m - 1]};
            int nn = f.n(cls);
            for (int b = 0; b < nn; ++b) {
                t.beta.push_back(b);
                out.push_back(t);
                t.beta.pop_back();
            }
            return;
        }
        // vertex r: (d[r-1], X_{r-1}, dual d[r]) with X index r-1 (0-based)
        for (Label w = 0; w < f.labelCount(); ++w) {
            int nn = f.n(d[r - 1], sig[r - 1], f.dual[w]);
            if (!nn) continue;
            d[r] = w;
            t.mid.push_back(w);
            for (int b = 0; b < nn; ++b) {
                t.beta.push_back(b);
                rec(r + 1, t);
                t.beta.pop_back();
            }
            t.mid.pop_back();
            d[r] = -1;
        }
    };
    CombTree t;
    rec(2, t);
    if ((long)out.size() != homDimension(f, sig))
        fail(ErrorCode::InternalError, "comb tree count mismatch");
    return out;
}

void expandComb(Network& net, const FusionData& f, int v, const CombTree& t) {
    size_t m = net.rot[v].size();
    if (m < 2) fail(ErrorCode::InputError, "cannot expand a vertex of valence < 2");
    if (m == 2) {
        net.basisIndex[v] = 0; // canonical coevaluation; the reducer merges it
        return;
    }
    std::vector<Dart> host = net.rot[v];
    auto sig = net.signature(f, v);
    std::vector<Label> d(m - 1, -1);
    d[1] = sig[0];
    for (size_t r = 2; r <= m - 2; ++r) d[r] = t.mid[r - 2];
    // new vertices w_2..w_{m-1}; reuse v as w_2 to avoid index churn
    std::vector<int> w(m, -1);
    w[2] = v;
    for (size_t r = 3; r <= m - 1; ++r) w[r] = net.addVertex();
    // spine edges s_r: w_r -> w_{r+1}, color d[r]
    std::vector<int> spine(m - 1, -1);
    for (size_t r = 2; r <= m - 2; ++r) spine[r] = net.addEdge(w[r], w[r + 1], d[r]);
    // host leaf p attaches to: p = 0,1 -> w_2; p = r-1 -> w_r; p = m-1 -> w_{m-1}
    auto attach = [&](int p) -> int {
        if (p <= 1) return w[2];
        if ((size_t)p == m - 1) return w[m - 1];
        return w[p + 1];
    };
    for (size_t p = 0; p < m; ++p) {
        const Dart& hd = host[p];
        int target = attach((int)p);
        if (target == v) continue;
        NetEdge& e = net.edges[hd.edge];
        if (hd.end == 0)
            e.tail = target;
        else
            e.head = target;
    }
    // rotations
    net.rot[v] = {host[0], host[1]};
    if (m == 3) {
        net.rot[v].push_back(host[2]);
    } else {
        net.rot[v].push_back(Dart{spine[2], 0});
        for (size_t r = 3; r <= m - 2; ++r)
            net.rot[w[r]] = {Dart{spine[r - 1], 1}, host[r - 1], Dart{spine[r], 0}};
        net.rot[w[m - 1]] = {Dart{spine[m - 2], 1}, host[m - 2], host[m - 1]};
    }
    // basis indices
    net.basisIndex[v] = t.beta[0];
    for (size_t r = 3; r <= m - 1; ++r) net.basisIndex[w[r]] = t.beta[r - 2];
}

std::vector<Label> dualSignature(const FusionData& f, const std::vector<Label>& sig) {
    std::vector<Label> out;
    out.reserve(sig.size());
    for (auto it = sig.rbegin(); it != sig.rend(); ++it) out.push_back(f.dual[*it]);
    return out;
}

Matrix treeGram(Evaluator& ev, const std::vector<Label>& sig) {
    const FusionData& f = ev.fusion();
    auto sigA = dualSignature(f, sig);
    auto treesA = enumCombTrees(f, sigA);
    auto treesB = enumCombTrees(f, sig);
    int m = (int)sig.size();
    Matrix g((int)treesA.size(), (int)treesB.size());
    for (size_t a = 0; a < treesA.size(); ++a)
        for (size_t b = 0; b < treesB.size(); ++b) {
            Network net;
            int u = net.addVertex();
            int v = net.addVertex();
            std::vector<int> eid(m);
            for (int p = 0; p < m; ++p) eid[p] = net.addEdge(u, v, sig[p]);
            for (int p = 0; p < m; ++p) net.rot[v].push_back(Dart{eid[p], 1});
            for (int p = m - 1; p >= 0; --p) net.rot[u].push_back(Dart{eid[p], 0});
            expandComb(net, f, u, treesA[a]);
            expandComb(net, f, v, treesB[b]);
            g.at((int)a, (int)b) = ev.closed(net);
        }
    return g;
}

} // namespace tvk

namespace tvk {
namespace sum_template {

Cyclotomic evaluateSum(Evaluator& ev, const SumTemplate& tpl) {
    const FusionData& f = ev.fusion();
    if ((int)tpl.weightExp.size() != tpl.varCount)
        fail(ErrorCode::InputError, "weight exponent per variable required");
    Cyclotomic total;
    std::vector<Label> assign(tpl.varCount, 0);
    std::function<void(int)> rec = [&](int v) {
        if (v == tpl.varCount) {
            Network net = tpl.net;
            for (auto& e : net.edges)
                if (e.color < 0) {
                    int var = -1 - e.color;
                    if (var >= tpl.varCount)
                        fail(ErrorCode::InputError, "template variable out of range");
                    e.color = assign[var];
                }
            Cyclotomic weight(1);
            for (int q = 0; q < tpl.varCount; ++q) {
                int e = tpl.weightExp[q];
                Cyclotomic d = f.qdim[assign[q]];
                Cyclotomic p(1);
                for (int k = 0; k < std::abs(e); ++k) p *= d;
                if (e < 0) p = p.inverse();
                weight *= p;
            }
            total += weight * ev.closed(net);
            return;
        }
        for (Label x = 0; x < f.labelCount(); ++x) {
            assign[v] = x;
            rec(v + 1);
        }
    };
    rec(0);
    return total;
}

} // namespace sum_template
} // namespace tvk
