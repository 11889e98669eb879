#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "meshref/io.hpp"

namespace meshref {

namespace {

void warn(std::vector<std::string>* warnings, const std::string& msg) {
    if (warnings)
        warnings->push_back(msg);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

struct PlyProperty {
    std::string type;      // scalar type, or list value type
    std::string name;
    bool is_list = false;
    std::string count_type;
};

struct PlyElement {
    std::string name;
    std::size_t count = 0;
    std::vector<PlyProperty> properties;
};

std::size_t scalar_size(const std::string& t) {
    if (t == "char" || t == "uchar" || t == "int8" || t == "uint8") return 1;
    if (t == "short" || t == "ushort" || t == "int16" || t == "uint16") return 2;
    if (t == "int" || t == "uint" || t == "int32" || t == "uint32" || t == "float" || t == "float32") return 4;
    if (t == "double" || t == "float64") return 8;
    throw IoError("PLY: unknown type '" + t + "'");
}

double read_binary_scalar(std::istream& in, const std::string& t) {
    char buf[8];
    const std::size_t n = scalar_size(t);
    in.read(buf, static_cast<std::streamsize>(n));
    if (!in)
        throw IoError("PLY: unexpected end of binary data");
    if (t == "char" || t == "int8") { std::int8_t v; std::memcpy(&v, buf, 1); return v; }
    if (t == "uchar" || t == "uint8") { std::uint8_t v; std::memcpy(&v, buf, 1); return v; }
    if (t == "short" || t == "int16") { std::int16_t v; std::memcpy(&v, buf, 2); return v; }
    if (t == "ushort" || t == "uint16") { std::uint16_t v; std::memcpy(&v, buf, 2); return v; }
    if (t == "int" || t == "int32") { std::int32_t v; std::memcpy(&v, buf, 4); return v; }
    if (t == "uint" || t == "uint32") { std::uint32_t v; std::memcpy(&v, buf, 4); return v; }
    if (t == "float" || t == "float32") { float v; std::memcpy(&v, buf, 4); return v; }
    double v;
    std::memcpy(&v, buf, 8);
    return v;
}

TriMesh load_ply(const std::filesystem::path& path, std::vector<std::string>* warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open mesh file: " + path.string());

    std::string line;
    if (!std::getline(in, line) || line.rfind("ply", 0) != 0)
        throw IoError("PLY: missing 'ply' magic in " + path.string());

    bool binary = false;
    std::vector<PlyElement> elements;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "comment" || tok == "obj_info" || tok.empty())
            continue;
        if (tok == "format") {
            std::string fmt;
            ls >> fmt;
            if (fmt == "ascii")
                binary = false;
            else if (fmt == "binary_little_endian")
                binary = true;
            else
                throw IoError("PLY: unsupported format '" + fmt + "'");
        } else if (tok == "element") {
            PlyElement el;
            ls >> el.name >> el.count;
            elements.push_back(el);
        } else if (tok == "property") {
            if (elements.empty())
                throw IoError("PLY: property before element");
            PlyProperty p;
            ls >> p.type;
            if (p.type == "list") {
                p.is_list = true;
                ls >> p.count_type >> p.type >> p.name;
            } else {
                ls >> p.name;
            }
            elements.back().properties.push_back(p);
        } else if (tok == "end_header") {
            break;
        } else {
            throw IoError("PLY: unexpected header token '" + tok + "'");
        }
    }

    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;

    auto read_ascii_row = [&in](std::vector<std::string>& toks) {
        std::string row;
        do {
            if (!std::getline(in, row))
                throw IoError("PLY: unexpected end of ASCII data");
        } while (row.find_first_not_of(" \t\r\n") == std::string::npos);
        std::istringstream rs(row);
        toks.clear();
        std::string t;
        while (rs >> t)
            toks.push_back(t);
    };

    for (const PlyElement& el : elements) {
        if (el.name == "vertex") {
            int ix = -1, iy = -1, iz = -1;
            for (std::size_t i = 0; i < el.properties.size(); ++i) {
                if (el.properties[i].is_list)
                    continue;
                if (el.properties[i].name == "x") ix = static_cast<int>(i);
                if (el.properties[i].name == "y") iy = static_cast<int>(i);
                if (el.properties[i].name == "z") iz = static_cast<int>(i);
            }
            if (ix < 0 || iy < 0 || iz < 0)
                throw IoError("PLY: vertex element lacks x/y/z");
            vertices.reserve(el.count);
            std::vector<std::string> toks;
            for (std::size_t r = 0; r < el.count; ++r) {
                Vec3 v = Vec3::Zero();
                if (binary) {
                    for (std::size_t i = 0; i < el.properties.size(); ++i) {
                        const auto& p = el.properties[i];
                        if (p.is_list) {
                            const int n = static_cast<int>(read_binary_scalar(in, p.count_type));
                            for (int k = 0; k < n; ++k)
                                read_binary_scalar(in, p.type);
                            continue;
                        }
                        const double val = read_binary_scalar(in, p.type);
                        if (static_cast<int>(i) == ix) v.x() = val;
                        if (static_cast<int>(i) == iy) v.y() = val;
                        if (static_cast<int>(i) == iz) v.z() = val;
                    }
                } else {
                    read_ascii_row(toks);
                    if (toks.size() < el.properties.size())
                        throw IoError("PLY: short vertex row");
                    v = Vec3(std::stod(toks[ix]), std::stod(toks[iy]), std::stod(toks[iz]));
                }
                vertices.push_back(v);
            }
        } else if (el.name == "face") {
            faces.reserve(el.count);
            std::vector<std::string> toks;
            std::size_t skipped = 0;
            for (std::size_t r = 0; r < el.count; ++r) {
                std::vector<long> idx;
                if (binary) {
                    for (const auto& p : el.properties) {
                        if (p.is_list) {
                            const int n = static_cast<int>(read_binary_scalar(in, p.count_type));
                            for (int k = 0; k < n; ++k) {
                                const double val = read_binary_scalar(in, p.type);
                                if (p.name == "vertex_indices" || p.name == "vertex_index")
                                    idx.push_back(static_cast<long>(val));
                            }
                        } else {
                            read_binary_scalar(in, p.type);
                        }
                    }
                } else {
                    read_ascii_row(toks);
                    std::size_t pos = 0;
                    for (const auto& p : el.properties) {
                        if (pos >= toks.size())
                            throw IoError("PLY: short face row");
                        if (p.is_list) {
                            const int n = std::stoi(toks[pos++]);
                            for (int k = 0; k < n; ++k) {
                                if (pos >= toks.size())
                                    throw IoError("PLY: short face row");
                                if (p.name == "vertex_indices" || p.name == "vertex_index")
                                    idx.push_back(std::stol(toks[pos]));
                                ++pos;
                            }
                        } else {
                            ++pos;
                        }
                    }
                }
                if (idx.size() == 3)
                    faces.push_back({static_cast<int>(idx[0]), static_cast<int>(idx[1]), static_cast<int>(idx[2])});
                else
                    ++skipped;
            }
            if (skipped > 0)
                warn(warnings, path.string() + ": skipped " + std::to_string(skipped) + " non-triangular faces");
        } else {
            // skip unknown element payload
            warn(warnings, path.string() + ": ignoring element '" + el.name + "'");
            std::vector<std::string> toks;
            for (std::size_t r = 0; r < el.count; ++r) {
                if (binary) {
                    for (const auto& p : el.properties) {
                        if (p.is_list) {
                            const int n = static_cast<int>(read_binary_scalar(in, p.count_type));
                            for (int k = 0; k < n; ++k)
                                read_binary_scalar(in, p.type);
                        } else {
                            read_binary_scalar(in, p.type);
                        }
                    }
                } else {
                    read_ascii_row(toks);
                }
            }
        }
    }
    return TriMesh::create(std::move(vertices), std::move(faces));
}

TriMesh load_obj(const std::filesystem::path& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open mesh file: " + path.string());
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;
    std::size_t skipped_faces = 0;
    std::size_t skipped_other = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#')
            continue;
        if (tok == "v") {
            double x, y, z;
            if (!(ls >> x >> y >> z))
                throw IoError(path.string() + ": malformed vertex line");
            vertices.emplace_back(x, y, z);
        } else if (tok == "f") {
            std::vector<long> idx;
            std::string ref;
            while (ls >> ref) {
                // "v", "v/vt", "v//vn", "v/vt/vn": leading integer only
                const long raw = std::stol(ref.substr(0, ref.find('/')));
                idx.push_back(raw > 0 ? raw - 1 : static_cast<long>(vertices.size()) + raw);
            }
            if (idx.size() == 3)
                faces.push_back({static_cast<int>(idx[0]), static_cast<int>(idx[1]), static_cast<int>(idx[2])});
            else
                ++skipped_faces;
        } else {
            ++skipped_other;
        }
    }
    if (skipped_faces > 0)
        warn(warnings, path.string() + ": skipped " + std::to_string(skipped_faces) + " non-triangular faces");
    if (skipped_other > 0)
        warn(warnings, path.string() + ": ignored " + std::to_string(skipped_other) + " non-geometry statements");
    return TriMesh::create(std::move(vertices), std::move(faces));
}

} // namespace

TriMesh load_mesh(const std::filesystem::path& path, std::vector<std::string>* warnings) {
    const std::string ext = lower(path.extension().string());
    if (ext == ".ply")
        return load_ply(path, warnings);
    if (ext == ".obj")
        return load_obj(path, warnings);
    throw IoError("unsupported mesh extension '" + ext + "' (expected .ply or .obj): " + path.string());
}

void save_mesh_ply(const TriMesh& mesh, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write mesh file: " + path.string());
    out << "ply\nformat ascii 1.0\n";
    out << "element vertex " << mesh.vertex_count() << "\n";
    out << "property double x\nproperty double y\nproperty double z\n";
    out << "element face " << mesh.face_count() << "\n";
    out << "property list uchar int vertex_indices\n";
    out << "end_header\n";
    char buf[128];
    for (const Vec3& v : mesh.vertices()) {
        std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", v.x(), v.y(), v.z());
        out << buf;
    }
    for (const auto& f : mesh.faces())
        out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
    if (!out)
        throw IoError("write failed: " + path.string());
}

void save_mesh_obj(const TriMesh& mesh, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write mesh file: " + path.string());
    char buf[128];
    for (const Vec3& v : mesh.vertices()) {
        std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
        out << buf;
    }
    for (const auto& f : mesh.faces())
        out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    if (!out)
        throw IoError("write failed: " + path.string());
}

} // namespace meshref
