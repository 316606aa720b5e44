#pragma once

#include "fusion.hpp"
#include "manifold.hpp"

namespace tvk {

struct TvReport {
    Cyclotomic value;
    long admissibleColorings = 0;
    long coloringsVisited = 0;
    double elapsedSeconds = 0;
};

// Turaev-Viro-Barrett-Westbury state sum on the dual skeleton of t.
Cyclotomic tvInvariant(const FusionData& f, const Triangulation& t, int threads = 1);
TvReport tvInvariantReport(const FusionData& f, const Triangulation& t, int threads = 1);

// Same sum with the orientation of each dual region flipped where dirs[e] < 0
// (one entry per edge class). The result does not depend on dirs; the override
// exists so tests can exercise that independence.
Cyclotomic tvInvariantOriented(const FusionData& f, const Triangulation& t,
                               const std::vector<int>& dirs, int threads = 1);

// rank of the sphere projector p(G,G); equals 1 for every valid category
int s2Dimension(const FusionData& f);

struct GenusResult {
    int rank = 0;
    int matrixDim = 0;
    bool idempotent = false;
};

// dim of the genus-g TQFT space via the center projector on the coend blocks;
// cost guard restricts g to 1 or 2
GenusResult genusDimension(const FusionData& f, int genus);

} // namespace tvk
