#include "lfscan/core/sidecar.hpp"

#include <cmath>
#include <fstream>

#include "lfscan/core/errors.hpp"

namespace lfscan {

using nlohmann::json;

json grid_to_json(const LensletGrid& grid) {
    json j;
    j["schema_version"] = kSidecarSchemaVersion;
    j["pitch_u_um"] = grid.pitch_u_um;
    j["row_pitch_v_um"] = grid.row_pitch_v_um;
    j["odd_row_offset_um"] = grid.odd_row_offset_um;
    j["rotation_rad"] = grid.rotation_rad;
    j["origin_um"] = {grid.origin_um.x, grid.origin_um.y};
    j["rows"] = grid.rows;
    j["cols"] = grid.cols;
    if (!grid.centers_px.empty()) {
        json centers = json::array();
        for (const Vec2& c : grid.centers_px) {
            if (std::isnan(c.x) || std::isnan(c.y))
                centers.push_back(nullptr); // unobserved lens
            else
                centers.push_back({c.x, c.y});
        }
        j["centers_px"] = std::move(centers);
    }
    return j;
}

LensletGrid grid_from_json(const json& j) {
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != kSidecarSchemaVersion)
        throw IoError("lenslet grid sidecar: unsupported schema_version");
    LensletGrid g;
    g.pitch_u_um = j.at("pitch_u_um").get<double>();
    g.row_pitch_v_um = j.at("row_pitch_v_um").get<double>();
    g.odd_row_offset_um = j.at("odd_row_offset_um").get<double>();
    g.rotation_rad = j.at("rotation_rad").get<double>();
    g.origin_um = Vec2{j.at("origin_um")[0].get<double>(), j.at("origin_um")[1].get<double>()};
    g.rows = j.at("rows").get<int>();
    g.cols = j.at("cols").get<int>();
    if (j.contains("centers_px")) {
        for (const auto& c : j["centers_px"]) {
            if (c.is_null())
                g.centers_px.push_back(Vec2{std::nan(""), std::nan("")});
            else
                g.centers_px.push_back(Vec2{c[0].get<double>(), c[1].get<double>()});
        }
        if (static_cast<int>(g.centers_px.size()) != g.rows * g.cols)
            throw IoError("lenslet grid sidecar: centers_px length must equal rows*cols");
    }
    if (!g.valid()) throw IoError("lenslet grid sidecar: invalid geometry");
    return g;
}

json schedule_to_json(const ShiftSchedule& schedule) {
    json j;
    j["schema_version"] = kSidecarSchemaVersion;
    j["enhancement_factor"] = schedule.enhancement_factor;
    json shifts = json::array();
    for (const Vec2& s : schedule.shifts_um) shifts.push_back({s.x, s.y});
    j["shifts_um"] = std::move(shifts);
    return j;
}

ShiftSchedule schedule_from_json(const json& j) {
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != kSidecarSchemaVersion)
        throw IoError("shift schedule sidecar: unsupported schema_version");
    ShiftSchedule s;
    s.enhancement_factor = j.at("enhancement_factor").get<int>();
    for (const auto& e : j.at("shifts_um"))
        s.shifts_um.push_back(Vec2{e[0].get<double>(), e[1].get<double>()});
    return s;
}

void save_json(const json& j, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << j.dump(2) << "\n";
    if (!f) throw IoError("write failed: " + path);
}

json load_json(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open: " + path);
    json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw IoError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

} // namespace lfscan
