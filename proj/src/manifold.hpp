#pragma once

#include <array>
#include <string>
#include <vector>

#include "cyclotomic.hpp"

namespace tvk {

// Face f of a tetrahedron is the face opposite corner f; its corners are the
// other three in ascending order. A gluing maps the ordered corners of the
// source face to those of the target via `perm` (images of positions 0,1,2).
struct Gluing {
    int tet = -1;
    int face = -1;
    std::array<int, 3> perm{0, 1, 2};
};

// corner pairs indexing the 6 edges of a tetrahedron
inline constexpr std::array<std::array<int, 2>, 6> kTetEdges{{
    {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
}};
int tetEdgeIndex(int a, int b);

// Closed oriented face-glued triangulation with derived cell structure.
class Triangulation {
public:
    int tetCount() const { return (int)glue_.size(); }
    const Gluing& gluing(int tet, int face) const { return glue_[tet][face]; }

    int vertexClasses() const { return vclassCount_; }
    int edgeClasses() const { return eclassCount_; }
    int faceClasses() const { return fclassCount_; }
    int vertexClassOf(int tet, int corner) const { return vclass_[tet][corner]; }
    int edgeClassOf(int tet, int edge) const { return eclass_[tet][edge]; }
    // +1 when the ascending corner order of this tetrahedron edge agrees with
    // the orientation of its class
    int edgeDirOf(int tet, int edge) const { return edir_[tet][edge]; }
    int faceClassOf(int tet, int face) const { return fclass_[tet][face]; }
    int orientation(int tet) const { return orient_[tet]; }

    // Smith normal form divisors of H_1: torsion entries first (> 1), one 0
    // per free factor.
    std::vector<long> firstHomology() const;

    static Triangulation fromGluings(std::vector<std::array<Gluing, 4>> glue);

    // 2-3 move across the face shared by (tet, face) and its partner.
    Triangulation pachner23(int tet, int face) const;
    // 1-4 move subdividing the given tetrahedron.
    Triangulation pachner14(int tet) const;

    // all (tet, face) sites where a 2-3 move is legal
    std::vector<std::array<int, 2>> pachner23Sites() const;

private:
    void derive(); // classes, orientations, manifold checks; throws on failure

    std::vector<std::array<Gluing, 4>> glue_;
    std::vector<std::array<int, 4>> vclass_;
    std::vector<std::array<int, 6>> eclass_;
    std::vector<std::array<int, 6>> edir_;
    std::vector<std::array<int, 4>> fclass_;
    std::vector<int> orient_;
    int vclassCount_ = 0, eclassCount_ = 0, fclassCount_ = 0;
};

// builtin(name): s3_1tet, s3_2tet, s1xs2, t3, lens(p,q)
Triangulation builtinTriangulation(const std::string& name);
Triangulation lensSpace(long p, long q);

Triangulation readTriangulationFile(const std::string& path);
Triangulation readTriangulation(std::istream& in, const std::string& what);
void writeTriangulationFile(const std::string& path, const Triangulation& t);
void writeTriangulation(std::ostream& out, const Triangulation& t);

} // namespace tvk
