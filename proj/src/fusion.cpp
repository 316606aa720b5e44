#include "fusion.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace tvk {

Triple cyclicCanon(const Triple& t) {
    Triple a = t;
    Triple b{t[1], t[2], t[0]};
    Triple c{t[2], t[0], t[1]};
    return std::min(a, std::min(b, c));
}

Matrix Matrix::transpose() const {
    Matrix t(cols, rows);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
    return t;
}

std::optional<Matrix> Matrix::inverse() const {
    if (rows != cols) return std::nullopt;
    int n = rows;
    Matrix a = *this, inv(n, n);
    for (int i = 0; i < n; ++i) inv.at(i, i) = Cyclotomic(1);
    for (int col = 0; col < n; ++col) {
        int p = -1;
        for (int r = col; r < n; ++r)
            if (!a.at(r, col).isZero()) { p = r; break; }
        if (p < 0) return std::nullopt;
        if (p != col) {
            for (int c = 0; c < n; ++c) {
                std::swap(a.at(p, c), a.at(col, c));
                std::swap(inv.at(p, c), inv.at(col, c));
            }
        }
        Cyclotomic d = a.at(col, col).inverse();
        for (int c = 0; c < n; ++c) {
            a.at(col, c) *= d;
            inv.at(col, c) *= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a.at(r, col).isZero()) continue;
            Cyclotomic f = a.at(r, col);
            for (int c = 0; c < n; ++c) {
                a.at(r, c) -= f * a.at(col, c);
                inv.at(r, c) -= f * inv.at(col, c);
            }
        }
    }
    return inv;
}

Matrix Matrix::operator*(const Matrix& o) const {
    assert(cols == o.rows);
    Matrix r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            if (at(i, k).isZero()) continue;
            for (int j = 0; j < o.cols; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

constexpr std::array<std::array<int, 2>, 6> TetPattern::endpoints;
constexpr std::array<std::array<int, 3>, 4> TetPattern::rotation;

namespace {

bool cyclicEqual(const std::array<int, 3>& a, const std::array<int, 3>& b) {
    for (int s = 0; s < 3; ++s)
        if (a[0] == b[s] && a[1] == b[(s + 1) % 3] && a[2] == b[(s + 2) % 3]) return true;
    return false;
}

std::vector<TetSymmetry> buildTetSymmetries() {
    std::vector<TetSymmetry> out;
    std::array<int, 4> perm{0, 1, 2, 3};
    do {
        TetSymmetry s;
        s.vertexImage = perm;
        bool ok = true;
        for (int e = 0; e < 6 && ok; ++e) {
            int ta = perm[TetPattern::endpoints[e][0]];
            int hb = perm[TetPattern::endpoints[e][1]];
            int found = -1;
            bool flip = false;
            for (int e2 = 0; e2 < 6; ++e2) {
                if (TetPattern::endpoints[e2][0] == ta && TetPattern::endpoints[e2][1] == hb) {
                    found = e2;
                    flip = false;
                    break;
                }
                if (TetPattern::endpoints[e2][0] == hb && TetPattern::endpoints[e2][1] == ta) {
                    found = e2;
                    flip = true;
                    break;
                }
            }
            if (found < 0) { ok = false; break; }
            s.edgeImage[e] = found;
            s.edgeFlip[e] = flip;
        }
        if (!ok) continue;
        for (int v = 0; v < 4 && ok; ++v) {
            std::array<int, 3> image;
            for (int p = 0; p < 3; ++p) image[p] = s.edgeImage[TetPattern::rotation[v][p]];
            if (!cyclicEqual(image, TetPattern::rotation[perm[v]])) ok = false;
        }
        if (ok) out.push_back(s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (out.size() != 12)
        fail(ErrorCode::InternalError, "tetrahedral symmetry enumeration broken");
    return out;
}

} // namespace

const std::vector<TetSymmetry>& tetSymmetries() {
    static const std::vector<TetSymmetry> syms = buildTetSymmetries();
    return syms;
}

Label FusionData::labelByName(const std::string& s) const {
    for (int i = 0; i < labelCount(); ++i)
        if (labelName[i] == s) return i;
    fail(ErrorCode::InputError, "unknown label: " + s);
}

int FusionData::n(Label a, Label b, Label c) const {
    auto it = tripleDim_.find(cyclicCanon({a, b, c}));
    return it == tripleDim_.end() ? 0 : it->second;
}

const Matrix& FusionData::omega(const Triple& cls) const {
    auto it = omega_.find(cyclicCanon(cls));
    if (it == omega_.end())
        fail(ErrorCode::InputError, "no pairing matrix for class " + tripleStr(cls));
    return it->second;
}

const Cyclotomic& FusionData::omegaInvEntry(const Triple& cls, int c, int r) const {
    auto it = omegaInv_.find(cyclicCanon(cls));
    if (it == omegaInv_.end())
        fail(ErrorCode::InputError, "no inverse pairing for class " + tripleStr(cls));
    return it->second.at(c, r);
}

const Tensor4* FusionData::sixJ(const Tuple6& t) const {
    auto it = sixj_.find(t);
    return it == sixj_.end() ? nullptr : &it->second;
}

std::array<Triple, 4> FusionData::sixJSlots(const Tuple6& t) const {
    Label i = t[0], j = t[1], k = t[2], l = t[3], m = t[4], n = t[5];
    return {
        cyclicCanon({m, dual[i], dual[n]}),
        cyclicCanon({j, i, dual[k]}),
        cyclicCanon({n, dual[j], dual[l]}),
        cyclicCanon({l, k, dual[m]}),
    };
}

std::string FusionData::tripleStr(const Triple& t) const {
    return "(" + labelName[t[0]] + "," + labelName[t[1]] + "," + labelName[t[2]] + ")";
}

std::string FusionData::tupleStr(const Tuple6& t) const {
    std::string s = "(";
    for (int p = 0; p < 6; ++p) s += labelName[t[p]] + (p < 5 ? "," : ")");
    return s;
}

void FusionData::setTriple(const Triple& t, int dim) {
    Triple k = cyclicCanon(t);
    auto it = tripleDim_.find(k);
    if (it != tripleDim_.end() && it->second != dim)
        fail(ErrorCode::InputError, "conflicting multiplicities for triple " + tripleStr(k));
    if (dim < 0) fail(ErrorCode::InputError, "negative multiplicity for " + tripleStr(k));
    if (dim > 0) tripleDim_[k] = dim;
}

void FusionData::setOmega(const Triple& cls, Matrix w) {
    Triple k = cyclicCanon(cls);
    auto it = omega_.find(k);
    if (it != omega_.end() && !(it->second == w))
        fail(ErrorCode::InputError, "conflicting pairing matrices for class " + tripleStr(k));
    omega_[k] = std::move(w);
}

void FusionData::addSixJOrbit(const Tuple6& rep, const Tensor4& tensor) {
    bool zero = true;
    for (const auto& x : tensor.v)
        if (!x.isZero()) { zero = false; break; }
    if (zero) return;
    for (const TetSymmetry& s : tetSymmetries()) {
        Tuple6 img;
        for (int e = 0; e < 6; ++e)
            img[s.edgeImage[e]] = s.edgeFlip[e] ? dual[rep[e]] : rep[e];
        std::array<int, 4> dims;
        for (int v = 0; v < 4; ++v) dims[s.vertexImage[v]] = tensor.dims[v];
        Tensor4 timg(dims);
        std::array<int, 4> y{0, 0, 0, 0};
        size_t total = timg.v.size();
        for (size_t flat = 0; flat < total; ++flat) {
            size_t rest = flat;
            y[3] = (int)(rest % dims[3]); rest /= dims[3];
            y[2] = (int)(rest % dims[2]); rest /= dims[2];
            y[1] = (int)(rest % dims[1]); rest /= dims[1];
            y[0] = (int)rest;
            timg.v[flat] = tensor.at(y[s.vertexImage[0]], y[s.vertexImage[1]],
                                     y[s.vertexImage[2]], y[s.vertexImage[3]]);
        }
        auto slots = sixJSlots(img);
        for (int v = 0; v < 4; ++v) {
            if (timg.dims[v] != n(slots[v]))
                fail(ErrorCode::InputError, "6j tensor " + tupleStr(img) + " slot " +
                                                std::to_string(v + 1) +
                                                " dimension mismatch");
        }
        auto it = sixj_.find(img);
        if (it != sixj_.end()) {
            if (!(it->second == timg))
                fail(ErrorCode::InputError, "6j symmetry inconsistency at " + tupleStr(img));
        } else {
            sixj_.emplace(img, std::move(timg));
        }
    }
}

void FusionData::finalize() {
    int L = labelCount();
    if (L == 0) fail(ErrorCode::InputError, "category has no labels");
    unit = -1;
    for (int i = 0; i < L; ++i)
        if (labelName[i] == "1") unit = i;
    if (unit < 0) fail(ErrorCode::InputError, "unit label \"1\" missing");
    if ((int)dual.size() != L || (int)qdim.size() != L)
        fail(ErrorCode::InputError, "dual/qdim tables incomplete");
    for (int i = 0; i < L; ++i) {
        if (dual[i] < 0 || dual[i] >= L || dual[dual[i]] != i)
            fail(ErrorCode::InputError, "dual map is not an involution at " + labelName[i]);
    }
    if (dual[unit] != unit) fail(ErrorCode::InputError, "dual does not fix the unit");
    if (!qdim[unit].isOne()) fail(ErrorCode::CheckFailure, "qdim(1) != 1 at label 1");
    for (int i = 0; i < L; ++i) {
        if (qdim[i].isZero())
            fail(ErrorCode::CheckFailure, "qdim is zero at label " + labelName[i]);
        if (qdim[dual[i]] != qdim[i])
            fail(ErrorCode::CheckFailure, "qdim(i*) != qdim(i) at label " + labelName[i]);
    }
    globalDim_ = Cyclotomic(0);
    for (int i = 0; i < L; ++i) globalDim_ += qdim[i] * qdim[i];
    if (globalDim_.isZero()) fail(ErrorCode::CheckFailure, "global dimension is zero");

    for (const auto& [t, d] : tripleDim_) {
        if (d != n(dual[t[2]], dual[t[1]], dual[t[0]]))
            fail(ErrorCode::CheckFailure, "duality symmetry violated for triple " + tripleStr(t));
    }
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) {
            int expect = (j == dual[i]) ? 1 : 0;
            if (n(unit, i, j) != expect)
                fail(ErrorCode::CheckFailure, "unit constraint violated at N(1," +
                                                  labelName[i] + "," + labelName[j] + ")");
        }
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) {
            Cyclotomic lhs;
            for (int k = 0; k < L; ++k) lhs += qdim[k] * Cyclotomic(n(i, j, dual[k]));
            if (lhs != qdim[i] * qdim[j])
                fail(ErrorCode::CheckFailure, "fusion ring inconsistency at (" +
                                                  labelName[i] + "," + labelName[j] + ")");
        }

    for (const auto& [t, d] : tripleDim_) {
        (void)d;
        if (omega_.count(t)) continue;
        Triple dc = dualClass(t);
        auto it = omega_.find(dc);
        if (it == omega_.end())
            fail(ErrorCode::InputError, "missing pairing matrix for class " + tripleStr(t));
        omega_[t] = it->second.transpose();
    }
    omegaInv_.clear();
    for (const auto& [t, d] : tripleDim_) {
        const Matrix& w = omega_.at(t);
        if (w.rows != d || w.cols != d)
            fail(ErrorCode::InputError, "pairing matrix shape mismatch for " + tripleStr(t));
        Triple dc = dualClass(t);
        if (!(omega_.at(dc) == w.transpose()))
            fail(ErrorCode::CheckFailure,
                 "pairing matrices of dual classes are not transposes at " + tripleStr(t));
        auto inv = w.inverse();
        if (!inv)
            fail(ErrorCode::CheckFailure, "singular pairing matrix at class " + tripleStr(t));
        omegaInv_[t] = std::move(*inv);
    }
    for (int i = 0; i < L; ++i) {
        Triple cls = cyclicCanon({unit, i, dual[i]});
        const Matrix& w = omega_.at(cls);
        if (!(w.rows == 1 && w.cols == 1 && w.at(0, 0) == qdim[i]))
            fail(ErrorCode::CheckFailure,
                 "unit pairing not normalized to qdim at class " + tripleStr(cls));
    }

    for (const auto& [t, tensor] : sixj_) {
        auto slots = sixJSlots(t);
        for (int v = 0; v < 4; ++v)
            if (tensor.dims[v] != n(slots[v]))
                fail(ErrorCode::InputError, "6j tensor with inadmissible slot at " + tupleStr(t));
    }
}

CheckReport checkPentagon(const FusionData& f) {
    CheckReport rep;
    rep.check = "pentagon";
    int L = f.labelCount();
    const auto& du = f.dual;

    std::array<Label, 9> t{};
    for (t[0] = 0; t[0] < L; ++t[0])
    for (t[1] = 0; t[1] < L; ++t[1])
    for (t[2] = 0; t[2] < L; ++t[2])
    for (t[3] = 0; t[3] < L; ++t[3])
    for (t[4] = 0; t[4] < L; ++t[4])
    for (t[5] = 0; t[5] < L; ++t[5])
    for (t[6] = 0; t[6] < L; ++t[6])
    for (t[7] = 0; t[7] < L; ++t[7])
    for (t[8] = 0; t[8] < L; ++t[8]) {
        Label a = t[0], b = t[1], c = t[2], i = t[3], j = t[4], k = t[5], l = t[6],
              m = t[7], n = t[8];
        Triple F1 = cyclicCanon({n, du[i], du[k]});
        Triple F2 = cyclicCanon({m, b, du[n]});
        Triple F3 = cyclicCanon({k, j, du[l]});
        Triple F4 = cyclicCanon({l, c, du[m]});
        Triple F5 = cyclicCanon({du[j], i, a});
        Triple F6 = cyclicCanon({du[c], du[a], du[b]});
        int d1 = f.n(F1), d2 = f.n(F2), d3 = f.n(F3), d4 = f.n(F4), d5 = f.n(F5),
            d6 = f.n(F6);
        if (d1 == 0 || d2 == 0 || d3 == 0 || d4 == 0 || d5 == 0 || d6 == 0) continue;
        rep.casesChecked++;

        const Tensor4* T4 = f.sixJ({i, du[j], du[a], l, n, k});
        const Tensor4* T5 = f.sixJ({n, du[l], du[a], du[c], b, du[m]});
        Triple clsD = cyclicCanon({du[l], n, a});
        int dD = f.n(clsD);

        struct ZTerm {
            const Tensor4 *T1, *T2, *T3;
            Label z;
        };
        std::vector<ZTerm> zterms;
        for (Label z = 0; z < L; ++z) {
            const Tensor4* T1 = f.sixJ({i, du[z], b, m, n, k});
            const Tensor4* T2 = f.sixJ({z, du[j], c, l, m, k});
            const Tensor4* T3 = f.sixJ({i, du[j], du[a], du[c], b, du[z]});
            if (T1 && T2 && T3) zterms.push_back({T1, T2, T3, z});
        }

        bool failed = false;
        for (int f1 = 0; f1 < d1 && !failed; ++f1)
        for (int f2 = 0; f2 < d2 && !failed; ++f2)
        for (int f3 = 0; f3 < d3 && !failed; ++f3)
        for (int f4 = 0; f4 < d4 && !failed; ++f4)
        for (int f5 = 0; f5 < d5 && !failed; ++f5)
        for (int f6 = 0; f6 < d6 && !failed; ++f6) {
            Cyclotomic lhs;
            for (const ZTerm& zt : zterms) {
                Label z = zt.z;
                Triple clsA = cyclicCanon({m, du[z], du[k]});
                Triple clsB = cyclicCanon({du[z], i, du[b]});
                Triple clsC = cyclicCanon({du[z], j, c});
                int dA = f.n(clsA), dB = f.n(clsB), dC = f.n(clsC);
                Cyclotomic term;
                for (int a1 = 0; a1 < dA; ++a1)
                for (int a2 = 0; a2 < dA; ++a2)
                for (int b1 = 0; b1 < dB; ++b1)
                for (int b2 = 0; b2 < dB; ++b2)
                for (int c1 = 0; c1 < dC; ++c1)
                for (int c2 = 0; c2 < dC; ++c2) {
                    const Cyclotomic& x1 = zt.T1->at(f1, b1, a1, f2);
                    if (x1.isZero()) continue;
                    const Cyclotomic& x2 = zt.T2->at(a2, c1, f3, f4);
                    if (x2.isZero()) continue;
                    const Cyclotomic& x3 = zt.T3->at(b2, f5, c2, f6);
                    if (x3.isZero()) continue;
                    term += x1 * x2 * x3 * f.omegaInvEntry(clsA, a2, a1) *
                            f.omegaInvEntry(clsB, b1, b2) * f.omegaInvEntry(clsC, c2, c1);
                }
                lhs += f.qdim[z] * term;
            }
            Cyclotomic rhs;
            if (T4 && T5) {
                for (int x = 0; x < dD; ++x)
                    for (int y = 0; y < dD; ++y) {
                        const Cyclotomic& x4 = T4->at(f1, f5, f3, x);
                        if (x4.isZero()) continue;
                        const Cyclotomic& x5 = T5->at(f2, y, f4, f6);
                        if (x5.isZero()) continue;
                        rhs += x4 * x5 * f.omegaInvEntry(clsD, y, x);
                    }
            }
            if (lhs != rhs) {
                std::ostringstream os;
                os << "(a,b,c,i,j,k,l,m,n)=(";
                for (int q = 0; q < 9; ++q) os << f.labelName[t[q]] << (q < 8 ? "," : ")");
                rep.failures.push_back(os.str());
                failed = true;
            }
        }
    }
    return rep;
}

CheckReport checkOrthonormality(const FusionData& f) {
    CheckReport rep;
    rep.check = "orthonormality";
    int L = f.labelCount();
    const auto& du = f.dual;

    for (Label i = 0; i < L; ++i)
    for (Label k = 0; k < L; ++k)
    for (Label l = 0; l < L; ++l)
    for (Label n = 0; n < L; ++n)
    for (Label m = 0; m < L; ++m)
    for (Label mp = 0; mp < L; ++mp) {
        Triple G1 = cyclicCanon({m, du[i], du[n]});
        Triple G2 = cyclicCanon({l, k, du[m]});
        Triple G3 = cyclicCanon({n, i, du[mp]});
        Triple G4 = cyclicCanon({mp, du[k], du[l]});
        int d1 = f.n(G1), d2 = f.n(G2), d3 = f.n(G3), d4 = f.n(G4);
        if (d1 == 0 || d2 == 0 || d3 == 0 || d4 == 0) continue;
        rep.casesChecked++;

        bool failed = false;
        for (int g1 = 0; g1 < d1 && !failed; ++g1)
        for (int g2 = 0; g2 < d2 && !failed; ++g2)
        for (int g3 = 0; g3 < d3 && !failed; ++g3)
        for (int g4 = 0; g4 < d4 && !failed; ++g4) {
            Cyclotomic lhs;
            for (Label z = 0; z < L; ++z) {
                const Tensor4* T1 = f.sixJ({i, z, k, l, m, n});
                const Tensor4* T2 = f.sixJ({du[z], du[i], du[k], mp, l, n});
                if (!T1 || !T2) continue;
                Triple clsP = cyclicCanon({du[i], du[z], k});
                Triple clsQ = cyclicCanon({n, du[z], du[l]});
                int dP = f.n(clsP), dQ = f.n(clsQ);
                Cyclotomic term;
                for (int p1 = 0; p1 < dP; ++p1)
                for (int p2 = 0; p2 < dP; ++p2)
                for (int q1 = 0; q1 < dQ; ++q1)
                for (int q2 = 0; q2 < dQ; ++q2) {
                    const Cyclotomic& x1 = T1->at(g1, p1, q1, g2);
                    if (x1.isZero()) continue;
                    const Cyclotomic& x2 = T2->at(q2, p2, g3, g4);
                    if (x2.isZero()) continue;
                    term += x1 * x2 * f.omegaInvEntry(clsP, p2, p1) *
                            f.omegaInvEntry(clsQ, q1, q2);
                }
                lhs += f.qdim[z] * term;
            }
            lhs *= f.qdim[m];
            Cyclotomic rhs;
            if (m == mp) {
                rhs = f.omega(cyclicCanon({du[i], du[n], m})).at(g3, g1) *
                      f.omega(cyclicCanon({k, du[m], l})).at(g4, g2);
            }
            if (lhs != rhs) {
                std::ostringstream os;
                os << "(i,k,l,m,m',n)=(" << f.labelName[i] << "," << f.labelName[k] << ","
                   << f.labelName[l] << "," << f.labelName[m] << "," << f.labelName[mp]
                   << "," << f.labelName[n] << ")";
                rep.failures.push_back(os.str());
                failed = true;
            }
        }
    }
    return rep;
}

FusionData makeVecZn(int n) {
    FusionData f;
    f.name = "vec_z" + std::to_string(n);
    for (int i = 0; i < n; ++i)
        f.labelName.push_back(i == 0 ? "1" : (i == 1 ? "g" : "g" + std::to_string(i)));
    for (int i = 0; i < n; ++i) {
        f.dual.push_back((n - i) % n);
        f.qdim.push_back(Cyclotomic(1));
    }
    Matrix one(1, 1);
    one.at(0, 0) = Cyclotomic(1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int c = ((-a - b) % n + 2 * n) % n;
            f.setTriple({a, b, c}, 1);
            f.setOmega(cyclicCanon({a, b, c}), one);
        }
    Tensor4 unitTensor({1, 1, 1, 1});
    unitTensor.at(0, 0, 0, 0) = Cyclotomic(1);
    auto zn = [n](int x) { return ((x % n) + n) % n; };
    Tuple6 t;
    for (t[0] = 0; t[0] < n; ++t[0])
    for (t[1] = 0; t[1] < n; ++t[1])
    for (t[2] = 0; t[2] < n; ++t[2])
    for (t[3] = 0; t[3] < n; ++t[3])
    for (t[4] = 0; t[4] < n; ++t[4])
    for (t[5] = 0; t[5] < n; ++t[5]) {
        Label i = t[0], j = t[1], k = t[2], l = t[3], m = t[4], nn = t[5];
        bool adm = zn(m - i - nn) == 0 && zn(j + i - k) == 0 && zn(nn - j - l) == 0 &&
                   zn(l + k - m) == 0;
        if (!adm) continue;
        if (f.sixJ(t)) continue;
        f.addSixJOrbit(t, unitTensor);
    }
    f.finalize();
    return f;
}

} // namespace tvk
