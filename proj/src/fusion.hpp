#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cyclotomic.hpp"

namespace tvk {

using Label = int;

// Ordered label triple; triple spaces H(a,b,c) are attached to cyclic classes,
// represented by the lexicographically smallest rotation.
using Triple = std::array<Label, 3>;
using Tuple6 = std::array<Label, 6>;

Triple cyclicCanon(const Triple& t);

struct Matrix {
    int rows = 0, cols = 0;
    std::vector<Cyclotomic> v;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), v(r * c) {}
    Cyclotomic& at(int r, int c) { return v[r * cols + c]; }
    const Cyclotomic& at(int r, int c) const { return v[r * cols + c]; }
    Matrix transpose() const;
    // Exact inverse; nullopt when singular.
    std::optional<Matrix> inverse() const;
    Matrix operator*(const Matrix& o) const;
    bool operator==(const Matrix& o) const = default;
};

struct Tensor4 {
    std::array<int, 4> dims{0, 0, 0, 0};
    std::vector<Cyclotomic> v;

    Tensor4() = default;
    explicit Tensor4(std::array<int, 4> d)
        : dims(d), v((size_t)d[0] * d[1] * d[2] * d[3]) {}
    Cyclotomic& at(int a, int b, int c, int d) {
        return v[((size_t(a) * dims[1] + b) * dims[2] + c) * dims[3] + d];
    }
    const Cyclotomic& at(int a, int b, int c, int d) const {
        return v[((size_t(a) * dims[1] + b) * dims[2] + c) * dims[3] + d];
    }
    bool operator==(const Tensor4& o) const = default;
};

struct Tuple6Hash {
    size_t operator()(const Tuple6& t) const {
        size_t h = 0;
        for (Label x : t) h = h * 131 + (size_t)(x + 1);
        return h;
    }
};

// An automorphism of the standard tetrahedral pattern: how a 6-tuple key and
// the four tensor slots transform.
struct TetSymmetry {
    std::array<int, 4> vertexImage;   // vertex s of the pattern maps to vertexImage[s]
    std::array<int, 6> edgeImage;     // edge slot e maps to edge slot edgeImage[e]
    std::array<bool, 6> edgeFlip;     // image tuple entry is dualized when set
};

const std::vector<TetSymmetry>& tetSymmetries();

// Standard tetrahedral pattern shared by the 6j store and the network matcher.
// Vertices 0..3 carry slots S1..S4; edge slots are indexed i,j,k,l,m,n = 0..5.
struct TetPattern {
    // endpoints[e] = {tail, head}
    static constexpr std::array<std::array<int, 2>, 6> endpoints{{
        {0, 1}, // i: v1 -> v2
        {2, 1}, // j: v3 -> v2
        {1, 3}, // k: v2 -> v4
        {2, 3}, // l: v3 -> v4
        {3, 0}, // m: v4 -> v1
        {0, 2}, // n: v1 -> v3
    }};
    // rotation[v] = cyclic order of incident edge slots (E_v convention)
    static constexpr std::array<std::array<int, 3>, 4> rotation{{
        {4, 0, 5}, // v1: (m, i, n)
        {1, 0, 2}, // v2: (j, i, k)
        {5, 1, 3}, // v3: (n, j, l)
        {3, 2, 4}, // v4: (l, k, m)
    }};
};

struct CheckReport {
    std::string check;
    std::vector<std::string> failures;
    long casesChecked = 0;
    bool ok() const { return failures.empty(); }
};

class FusionData {
public:
    std::string name;
    std::vector<std::string> labelName;
    std::vector<Label> dual;
    std::vector<Cyclotomic> qdim;
    Label unit = -1;

    int labelCount() const { return (int)labelName.size(); }
    Label labelByName(const std::string& s) const;

    // multiplicity N(a,b,c), any rotation of the key
    int n(Label a, Label b, Label c) const;
    int n(const Triple& t) const { return n(t[0], t[1], t[2]); }

    Triple dualClass(const Triple& t) const {
        return cyclicCanon({dual[t[2]], dual[t[1]], dual[t[0]]});
    }

    // omega matrix of the class K: rows = basis of dualClass(K), cols = basis of K
    const Matrix& omega(const Triple& cls) const;
    // inverse-pairing coefficient: contraction of a slot in H(S*)^* (index r)
    // against a slot in H(S)^* (index c), S = cls of the second slot
    const Cyclotomic& omegaInvEntry(const Triple& cls, int c, int r) const;

    // 6j tensor for an all-plus 6-tuple; nullptr encodes the zero tensor.
    const Tensor4* sixJ(const Tuple6& t) const;
    // slot classes S1..S4 of a 6-tuple
    std::array<Triple, 4> sixJSlots(const Tuple6& t) const;

    const Cyclotomic& globalDim() const { return globalDim_; }

    std::string tripleStr(const Triple& t) const;
    std::string tupleStr(const Tuple6& t) const;

    // --- construction ---
    void setTriple(const Triple& t, int dim);
    void setOmega(const Triple& cls, Matrix w);
    // Installs the full symmetry orbit of a representative; complains on
    // inconsistency with previously stored tensors.
    void addSixJOrbit(const Tuple6& rep, const Tensor4& tensor);
    // Derived data + all structural/numeric invariants; throws on violation.
    void finalize();

    const std::map<Triple, int>& triples() const { return tripleDim_; }
    const std::map<Triple, Matrix>& omegaStore() const { return omega_; }
    const std::unordered_map<Tuple6, Tensor4, Tuple6Hash>& sixJStore() const { return sixj_; }

private:
    std::map<Triple, int> tripleDim_;       // canonical cyclic keys
    std::map<Triple, Matrix> omega_;        // canonical cyclic keys (every class)
    std::map<Triple, Matrix> omegaInv_;
    std::unordered_map<Tuple6, Tensor4, Tuple6Hash> sixj_;
    Cyclotomic globalDim_;
};

CheckReport checkPentagon(const FusionData& f);
CheckReport checkOrthonormality(const FusionData& f);

// Vec_{Z/n}: pointed category of the cyclic group, trivial cocycle.
FusionData makeVecZn(int n);

} // namespace tvk
