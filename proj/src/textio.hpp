#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fusion.hpp"
#include "modular.hpp"

namespace tvk {

// Line/token oriented text formats. '#' starts a comment; scalar tokens may
// contain spaces inside brackets, e.g. cyc(5)[2:-1/1, 3:-1/1].

FusionData readCategory(std::istream& in, const std::string& what);
FusionData readCategoryFile(const std::string& path);
void writeCategory(std::ostream& out, const FusionData& f);
void writeCategoryFile(const std::string& path, const FusionData& f);

ModularData readModular(std::istream& in, const std::string& what);
ModularData readModularFile(const std::string& path);
void writeModular(std::ostream& out, const ModularData& m);
void writeModularFile(const std::string& path, const ModularData& m);

// Tokenizer shared by the manifold/surgery readers.
std::vector<std::vector<std::string>> readTokenLines(std::istream& in);

} // namespace tvk

namespace tvk {
namespace files {
// Surgery presentation: braid closure with framings; colors are optional
// label names bound against a category at use time.
struct SurgeryFile {
    int strands = 0;
    std::vector<int> word;
    std::vector<long> framings;
    std::vector<std::string> colorNames;
};

SurgeryFile readSurgery(std::istream& in, const std::string& what);
SurgeryFile readSurgeryFile(const std::string& path);
BraidClosure bindSurgery(const SurgeryFile& s, const FusionData& f);

struct Manifest {
    std::string categoryPath;
    std::string centerPath;
    // (triangulation spec, surgery path); spec is "builtin:NAME" or a path
    std::vector<std::pair<std::string, std::string>> pairs;
};

Manifest readManifestFile(const std::string& path); // resolves relative paths
} // namespace files
using files::SurgeryFile;
using files::Manifest;
} // namespace tvk
