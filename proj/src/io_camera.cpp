#include <fstream>
#include <sstream>

#include "meshref/io.hpp"

namespace meshref {

std::vector<CameraView> load_cameras(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open camera file: " + path.string());
    std::vector<CameraView> cams;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        if (line.find_first_not_of(" \t\r\n") == std::string::npos)
            continue;
        std::istringstream ls(line);
        CameraView cam;
        double r[9];
        double t[3];
        if (!(ls >> cam.id >> cam.fx >> cam.fy >> cam.cx >> cam.cy >> cam.width >> cam.height
                 >> r[0] >> r[1] >> r[2] >> r[3] >> r[4] >> r[5] >> r[6] >> r[7] >> r[8]
                 >> t[0] >> t[1] >> t[2]))
            throw IoError(path.string() + ":" + std::to_string(lineno) + ": malformed camera line");
        cam.rotation << r[0], r[1], r[2], r[3], r[4], r[5], r[6], r[7], r[8];
        cam.translation = Vec3(t[0], t[1], t[2]);
        try {
            cam.validate();
        } catch (const Error& e) {
            throw IoError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
        cams.push_back(std::move(cam));
    }
    if (cams.empty())
        throw IoError(path.string() + ": no cameras found");
    return cams;
}

void save_cameras(const std::vector<CameraView>& cams, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write camera file: " + path.string());
    out << "# id fx fy cx cy width height r11 r12 r13 r21 r22 r23 r31 r32 r33 t1 t2 t3\n";
    char buf[64];
    auto w = [&](double v) {
        std::snprintf(buf, sizeof(buf), " %.17g", v);
        out << buf;
    };
    for (const CameraView& c : cams) {
        out << c.id;
        w(c.fx);
        w(c.fy);
        w(c.cx);
        w(c.cy);
        out << ' ' << c.width << ' ' << c.height;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                w(c.rotation(i, j));
        for (int i = 0; i < 3; ++i)
            w(c.translation(i));
        out << '\n';
    }
    if (!out)
        throw IoError("write failed: " + path.string());
}

void attach_images(std::vector<CameraView>& cams, const std::filesystem::path& dir) {
    for (CameraView& cam : cams) {
        const std::string id = std::to_string(cam.id);
        const std::string padded = (cam.id < 10 ? "0" : "") + id;
        Image img;
        bool found = false;
        for (const std::string& stem : {"cam_" + padded, "cam_" + id, padded, id}) {
            for (const char* ext : {".pgm", ".png"}) {
                const auto candidate = dir / (stem + ext);
                if (std::filesystem::exists(candidate)) {
                    img = load_image(candidate);
                    found = true;
                    break;
                }
            }
            if (found)
                break;
        }
        if (!found)
            throw IoError("no image for camera " + id + " in " + dir.string() +
                          " (expected cam_" + padded + ".pgm/.png)");
        if (img.width != cam.width || img.height != cam.height)
            throw IoError("image size mismatch for camera " + id);
        cam.image = std::move(img);
    }
}

} // namespace meshref
