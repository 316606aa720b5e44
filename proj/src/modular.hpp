#pragma once

#include <map>

#include "fusion.hpp"

namespace tvk {

// Braid word: nonzero integers, +q for sigma_q, -q for its inverse (1-based
// strand positions q < strand count).
struct BraidClosure {
    int strands = 1;
    std::vector<int> word;
    std::vector<long> framings;        // one per closure component
    std::vector<Label> colors;         // optional; one per component
    bool hasColors = false;
};

class ModularData {
public:
    FusionData base;
    std::vector<Cyclotomic> twist; // per label
    // Channel R-matrix, key (i,j,k): columns over the basis of H(k*,i,j),
    // rows over H(k*,j,i); the braiding i (x) j -> j (x) i restricted to the
    // channel k.
    std::map<Triple, Matrix> rsym;

    // derived by finalize()
    Matrix smatrix;
    Cyclotomic deltaPlus, deltaMinus;

    const Matrix& r(Label i, Label j, Label k) const;
    bool anomalyFree() const { return deltaPlus == deltaMinus; }

    // Validates ribbon/modularity invariants and computes S, Delta+-.
    // Throws tvk::Error on violations (twists, S singular, ...).
    void finalize();
};

// S_{ij} = sum_k N(i,j,k*) (v_k / v_i v_j) qdim(k), computed by finalize().
Matrix sMatrix(const ModularData& m);

// (Delta+, Delta-) Gauss sums.
std::pair<Cyclotomic, Cyclotomic> gaussSums(const ModularData& m);

// Invariant F_B of the colored framed closure of a braid. Components are
// numbered by smallest strand; framing means self-linking (writhe of the
// closure diagram is compensated).
Cyclotomic evalBraidClosure(const ModularData& m, const BraidClosure& link);

// Reshetikhin-Turaev invariant of the surgery presentation; requires an
// anomaly-free category (Delta+ == Delta-).
Cyclotomic rtInvariant(const ModularData& m, const BraidClosure& surgery);

// Deligne product with the mirror, and the mirror itself.
ModularData deligneSquare(const ModularData& m);
ModularData mirror(const ModularData& m);

} // namespace tvk
