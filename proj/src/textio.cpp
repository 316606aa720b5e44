#include "textio.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "modular.hpp"

namespace tvk {

namespace {

std::vector<std::string> tokenizeLine(const std::string& line) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < line.size()) {
        if (std::isspace((unsigned char)line[i])) { ++i; continue; }
        if (line[i] == '#') break;
        size_t start = i;
        int depth = 0;
        while (i < line.size()) {
            char c = line[i];
            if (c == '[' || c == '(') ++depth;
            if (c == ']' || c == ')') --depth;
            if (depth == 0 && std::isspace((unsigned char)c)) break;
            ++i;
        }
        out.push_back(line.substr(start, i - start));
    }
    return out;
}

long toLong(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        fail(ErrorCode::InputError, what + ": bad integer '" + s + "'");
    }
}

} // namespace

std::vector<std::vector<std::string>> readTokenLines(std::istream& in) {
    std::vector<std::vector<std::string>> lines;
    std::string line;
    while (std::getline(in, line)) {
        auto toks = tokenizeLine(line);
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    return lines;
}

namespace {

FusionData parseCategoryLines(const std::vector<std::vector<std::string>>& lines,
                              const std::string& what,
                              std::vector<std::vector<std::string>>* leftover) {
    FusionData f;
    std::vector<std::pair<std::string, std::string>> dualPairs;
    std::vector<std::pair<std::string, Cyclotomic>> qdims;
    std::vector<std::vector<std::string>> triples, omegas, sixjs;

    for (const auto& t : lines) {
        const std::string& kw = t[0];
        if (kw == "format") {
            continue;
        } else if (kw == "name" && t.size() >= 2) {
            f.name = t[1];
        } else if (kw == "label" && t.size() == 2) {
            f.labelName.push_back(t[1]);
        } else if (kw == "dual" && t.size() == 3) {
            dualPairs.emplace_back(t[1], t[2]);
        } else if (kw == "qdim" && t.size() == 3) {
            qdims.emplace_back(t[1], Cyclotomic::parse(t[2]));
        } else if (kw == "triple" && t.size() == 5) {
            triples.push_back(t);
        } else if (kw == "omega") {
            omegas.push_back(t);
        } else if (kw == "sixj") {
            sixjs.push_back(t);
        } else if (leftover) {
            leftover->push_back(t);
        } else {
            fail(ErrorCode::InputError, what + ": unrecognized line '" + kw + "'");
        }
    }

    int L = (int)f.labelName.size();
    if (L == 0) fail(ErrorCode::InputError, what + ": no labels");
    {
        std::set<std::string> seen(f.labelName.begin(), f.labelName.end());
        if ((int)seen.size() != L) fail(ErrorCode::InputError, what + ": duplicate labels");
    }
    f.dual.assign(L, -1);
    for (auto& [a, b] : dualPairs) f.dual[f.labelByName(a)] = f.labelByName(b);
    for (int i = 0; i < L; ++i)
        if (f.dual[i] < 0)
            fail(ErrorCode::InputError, what + ": missing dual for " + f.labelName[i]);
    f.qdim.assign(L, Cyclotomic());
    std::vector<bool> haveQ(L, false);
    for (auto& [a, v] : qdims) {
        Label i = f.labelByName(a);
        f.qdim[i] = v;
        haveQ[i] = true;
    }
    for (int i = 0; i < L; ++i)
        if (!haveQ[i])
            fail(ErrorCode::InputError, what + ": missing qdim for " + f.labelName[i]);

    for (const auto& t : triples) {
        Triple tr{f.labelByName(t[1]), f.labelByName(t[2]), f.labelByName(t[3])};
        f.setTriple(tr, (int)toLong(t[4], what));
    }
    for (const auto& t : omegas) {
        if (t.size() < 6) fail(ErrorCode::InputError, what + ": short omega line");
        Triple tr{f.labelByName(t[1]), f.labelByName(t[2]), f.labelByName(t[3])};
        int rows = (int)toLong(t[4], what), cols = (int)toLong(t[5], what);
        if ((int)t.size() != 6 + rows * cols)
            fail(ErrorCode::InputError, what + ": omega entry count mismatch");
        Matrix w(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) w.at(r, c) = Cyclotomic::parse(t[6 + r * cols + c]);
        f.setOmega(cyclicCanon(tr), std::move(w));
    }
    for (const auto& t : sixjs) {
        if (t.size() < 11) fail(ErrorCode::InputError, what + ": short sixj line");
        Tuple6 tu;
        for (int p = 0; p < 6; ++p) tu[p] = f.labelByName(t[1 + p]);
        std::array<int, 4> dims;
        for (int p = 0; p < 4; ++p) dims[p] = (int)toLong(t[7 + p], what);
        size_t count = (size_t)dims[0] * dims[1] * dims[2] * dims[3];
        if (t.size() != 11 + count)
            fail(ErrorCode::InputError, what + ": sixj entry count mismatch");
        Tensor4 tensor(dims);
        for (size_t q = 0; q < count; ++q) tensor.v[q] = Cyclotomic::parse(t[11 + q]);
        f.addSixJOrbit(tu, tensor);
    }
    f.finalize();
    return f;
}

void writeCategoryBody(std::ostream& out, const FusionData& f) {
    if (!f.name.empty()) out << "name " << f.name << "\n";
    for (const auto& s : f.labelName) out << "label " << s << "\n";
    for (int i = 0; i < f.labelCount(); ++i)
        out << "dual " << f.labelName[i] << " " << f.labelName[f.dual[i]] << "\n";
    for (int i = 0; i < f.labelCount(); ++i)
        out << "qdim " << f.labelName[i] << " " << f.qdim[i].serialize() << "\n";
    for (const auto& [t, d] : f.triples())
        out << "triple " << f.labelName[t[0]] << " " << f.labelName[t[1]] << " "
            << f.labelName[t[2]] << "  " << d << "\n";
    for (const auto& [t, w] : f.omegaStore()) {
        out << "omega " << f.labelName[t[0]] << " " << f.labelName[t[1]] << " "
            << f.labelName[t[2]] << "  " << w.rows << " " << w.cols << " ";
        for (const auto& x : w.v) out << " " << x.serialize();
        out << "\n";
    }
    std::set<Tuple6> done;
    std::vector<Tuple6> keys;
    for (const auto& [t, tensor] : f.sixJStore()) keys.push_back(t);
    std::sort(keys.begin(), keys.end());
    for (const Tuple6& t : keys) {
        if (done.count(t)) continue;
        for (const TetSymmetry& s : tetSymmetries()) {
            Tuple6 img;
            for (int e = 0; e < 6; ++e)
                img[s.edgeImage[e]] = s.edgeFlip[e] ? f.dual[t[e]] : t[e];
            done.insert(img);
        }
        const Tensor4& tensor = *f.sixJ(t);
        out << "sixj";
        for (int p = 0; p < 6; ++p) out << " " << f.labelName[t[p]];
        out << " ";
        for (int p = 0; p < 4; ++p) out << " " << tensor.dims[p];
        for (const auto& x : tensor.v) out << " " << x.serialize();
        out << "\n";
    }
}

} // namespace

FusionData readCategory(std::istream& in, const std::string& what) {
    auto lines = readTokenLines(in);
    return parseCategoryLines(lines, what, nullptr);
}

FusionData readCategoryFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InputError, "cannot open category file: " + path);
    return readCategory(in, path);
}

void writeCategory(std::ostream& out, const FusionData& f) {
    out << "format category 1\n";
    writeCategoryBody(out, f);
}

void writeCategoryFile(const std::string& path, const FusionData& f) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::InputError, "cannot write category file: " + path);
    writeCategory(out, f);
}

ModularData readModular(std::istream& in, const std::string& what) {
    auto lines = readTokenLines(in);
    std::vector<std::vector<std::string>> leftover;
    ModularData m;
    m.base = parseCategoryLines(lines, what, &leftover);
    int L = m.base.labelCount();
    m.twist.assign(L, Cyclotomic());
    std::vector<bool> haveT(L, false);
    for (const auto& t : leftover) {
        if (t[0] == "twist" && t.size() == 3) {
            Label i = m.base.labelByName(t[1]);
            m.twist[i] = Cyclotomic::parse(t[2]);
            haveT[i] = true;
        } else if (t[0] == "rsym" && t.size() >= 6) {
            Triple key{m.base.labelByName(t[1]), m.base.labelByName(t[2]),
                       m.base.labelByName(t[3])};
            int rows = (int)toLong(t[4], what), cols = (int)toLong(t[5], what);
            if ((int)t.size() != 6 + rows * cols)
                fail(ErrorCode::InputError, what + ": rsym entry count mismatch");
            Matrix w(rows, cols);
            for (int r = 0; r < rows; ++r)
                for (int c = 0; c < cols; ++c)
                    w.at(r, c) = Cyclotomic::parse(t[6 + r * cols + c]);
            m.rsym[key] = std::move(w);
        } else {
            fail(ErrorCode::InputError, what + ": unrecognized line '" + t[0] + "'");
        }
    }
    for (int i = 0; i < L; ++i)
        if (!haveT[i])
            fail(ErrorCode::InputError, what + ": missing twist for " + m.base.labelName[i]);
    m.finalize();
    return m;
}

ModularData readModularFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InputError, "cannot open modular file: " + path);
    return readModular(in, path);
}

void writeModular(std::ostream& out, const ModularData& m) {
    out << "format modular 1\n";
    writeCategoryBody(out, m.base);
    for (int i = 0; i < m.base.labelCount(); ++i)
        out << "twist " << m.base.labelName[i] << " " << m.twist[i].serialize() << "\n";
    for (const auto& [t, w] : m.rsym) {
        out << "rsym " << m.base.labelName[t[0]] << " " << m.base.labelName[t[1]] << " "
            << m.base.labelName[t[2]] << "  " << w.rows << " " << w.cols << " ";
        for (const auto& x : w.v) out << " " << x.serialize();
        out << "\n";
    }
}

void writeModularFile(const std::string& path, const ModularData& m) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::InputError, "cannot write modular file: " + path);
    writeModular(out, m);
}

} // namespace tvk

namespace tvk {
namespace files {

SurgeryFile readSurgery(std::istream& in, const std::string& what) {
    auto lines = readTokenLines(in);
    SurgeryFile s;
    bool haveStrands = false, haveFramings = false;
    for (const auto& t : lines) {
        if (t[0] == "format") continue;
        if (t[0] == "strands" && t.size() == 2) {
            s.strands = std::stoi(t[1]);
            if (s.strands < 0) fail(ErrorCode::InputError, what + ": negative strand count");
            haveStrands = true;
        } else if (t[0] == "word") {
            for (size_t i = 1; i < t.size(); ++i) s.word.push_back(std::stoi(t[i]));
        } else if (t[0] == "framings") {
            for (size_t i = 1; i < t.size(); ++i) s.framings.push_back(std::stol(t[i]));
            haveFramings = true;
        } else if (t[0] == "colors") {
            for (size_t i = 1; i < t.size(); ++i) s.colorNames.push_back(t[i]);
        } else {
            fail(ErrorCode::InputError, what + ": unrecognized line '" + t[0] + "'");
        }
    }
    if (!haveStrands) fail(ErrorCode::InputError, what + ": missing strands line");
    if (!haveFramings && s.strands > 0)
        fail(ErrorCode::InputError, what + ": missing framings line");
    return s;
}

SurgeryFile readSurgeryFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InputError, "cannot open surgery file: " + path);
    return readSurgery(in, path);
}

BraidClosure bindSurgery(const SurgeryFile& s, const FusionData& f) {
    BraidClosure b;
    b.strands = s.strands;
    b.word = s.word;
    b.framings = s.framings;
    if (!s.colorNames.empty()) {
        b.hasColors = true;
        for (const auto& n : s.colorNames) b.colors.push_back(f.labelByName(n));
    }
    return b;
}

Manifest readManifestFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InputError, "cannot open manifest file: " + path);
    auto lines = readTokenLines(in);
    Manifest m;
    std::string dir = ".";
    {
        auto slash = path.find_last_of('/');
        if (slash != std::string::npos) dir = path.substr(0, slash);
    }
    auto resolve = [&](const std::string& p) {
        if (!p.empty() && p[0] == '/') return p;
        return dir + "/" + p;
    };
    for (const auto& t : lines) {
        if (t[0] == "format") continue;
        if (t[0] == "category" && t.size() == 2) {
            m.categoryPath = resolve(t[1]);
        } else if (t[0] == "center" && t.size() == 2) {
            m.centerPath = resolve(t[1]);
        } else if (t[0] == "pair" && t.size() == 3) {
            std::string tri = t[1];
            if (tri.rfind("builtin:", 0) != 0) tri = resolve(tri);
            m.pairs.emplace_back(tri, resolve(t[2]));
        } else {
            fail(ErrorCode::InputError, path + ": unrecognized line '" + t[0] + "'");
        }
    }
    if (m.categoryPath.empty() || m.centerPath.empty() || m.pairs.empty())
        fail(ErrorCode::InputError, path + ": manifest needs category, center and pairs");
    return m;
}

} // namespace files
} // namespace tvk
