#pragma once

#include <unordered_map>

#include "fusion.hpp"

namespace tvk {

// A colored oriented graph with a rotation system, drawn on the 2-sphere.
// Rotations list the germs at a vertex in the cyclic order of the paper's
// vertex convention (clockwise in a standard planar drawing).
struct Dart {
    int edge;
    int end; // 0 = tail germ (edge leaves here), 1 = head germ (edge arrives)
    bool operator==(const Dart& o) const = default;
};

struct NetEdge {
    int tail, head;
    Label color;
};

struct Network {
    std::vector<NetEdge> edges;
    std::vector<std::vector<Dart>> rot; // per vertex, cyclic
    std::vector<int> basisIndex;        // per vertex; -1 = free slot
    std::vector<Label> freeLoops;       // vertex-free circles

    int addVertex() {
        rot.emplace_back();
        basisIndex.push_back(-1);
        return (int)rot.size() - 1;
    }
    int addEdge(int tail, int head, Label color) {
        edges.push_back({tail, head, color});
        return (int)edges.size() - 1;
    }
    int valence(int v) const { return (int)rot[v].size(); }

    // Effective (all-plus) colors at v in rotation order: color for an
    // incoming germ, dual color for an outgoing one.
    std::vector<Label> signature(const FusionData& f, int v) const;

    // V - E + F = 2 per connected component, rotations consistent with the
    // edge list. Throws on violation.
    void validateSurface(const FusionData& f) const;

    int faceCount() const;
    // Faces as dart cycles; a directed dart is 2*edge+dir (dir 0: tail->head).
    std::vector<std::vector<int>> faces() const;

    // human-readable adjacency/rotation listing for debugging
    std::string dump(const FusionData& f) const;
};

struct SlotTensor {
    std::vector<int> dims;
    std::vector<Cyclotomic> v;
    size_t flatten(const std::vector<int>& idx) const;
};

class Evaluator {
public:
    explicit Evaluator(const FusionData& f) : f_(f) {}

    // Exact value of a closed network (every vertex carries a basis index).
    // The seed permutes reduction choices; all seeds agree for consistent data.
    Cyclotomic closed(const Network& net, uint64_t seed = 0);

    // Tensor over the listed free vertices (must have basisIndex -1 and
    // valence <= 3); iterates their basis indices in order.
    SlotTensor freeSlots(const Network& net, const std::vector<int>& freeVerts,
                         uint64_t seed = 0);

    const FusionData& fusion() const { return f_; }
    size_t memoSize() const { return memo_.size(); }

private:
    Cyclotomic reduce(Network net, uint64_t seed, int depth);
    const FusionData& f_;
    std::unordered_map<std::string, Cyclotomic> memo_;
};

// Tetrahedral lookup for a closed K4 network with free slots: identifies the
// standard 6-tuple and the net-vertex -> pattern-slot bijection.
struct TetMatch {
    Tuple6 tuple;
    std::array<int, 4> slotOfVertex; // pattern slot of net vertex 0..3
};
std::optional<TetMatch> matchTetrahedron(const FusionData& f, const Network& net);

// ---- fusion-tree machinery ----------------------------------------------

// Left-nested tree over an all-plus signature (X1,...,Xm), m >= 2: internal
// simple labels mid[0..m-4] and vertex indices beta[0..m-3]; for m = 2 both
// are empty and the tree is the canonical coevaluation element.
struct CombTree {
    std::vector<Label> mid;
    std::vector<int> beta;
    bool operator==(const CombTree& o) const = default;
};

std::vector<CombTree> enumCombTrees(const FusionData& f, const std::vector<Label>& sig);

long homDimension(const FusionData& f, const std::vector<Label>& sig);

// Replaces free vertex v (valence m = sig size) by the comb realization of t.
// Rotation position p of v becomes leaf p (position 0 = starting point).
void expandComb(Network& net, const FusionData& f, int v, const CombTree& t);

// Gram matrix of the evaluation pairing: rows = trees of the reversed-dual
// signature, columns = trees of sig; entry = closed evaluation of the
// two-vertex closure.
Matrix treeGram(Evaluator& ev, const std::vector<Label>& sig);

std::vector<Label> dualSignature(const FusionData& f, const std::vector<Label>& sig);

} // namespace tvk

namespace tvk {
namespace sum_template {
// Edge colors < 0 encode variables: color -1-v refers to variable v.
struct SumTemplate {
    Network net;
    int varCount = 0;
    std::vector<int> weightExp; // weight = prod_v dim(assignment[v])^weightExp[v]
};

// Sum over all variable assignments of weight * closed evaluation. Free
// vertices are not supported inside templates; close the network first.
Cyclotomic evaluateSum(Evaluator& ev, const SumTemplate& tpl);
} // namespace sum_template
using sum_template::SumTemplate;
using sum_template::evaluateSum;
} // namespace tvk
