#include "trackkit/motio.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace trackkit::io {

namespace {

std::vector<double> split_csv_line(const std::string& line) {
    std::vector<double> fields;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        fields.push_back(std::stod(tok));
    }
    return fields;
}

}  // namespace

std::vector<MotRow> read_mot_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    std::vector<MotRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto f = split_csv_line(line);
        if (f.size() < 6) throw FormatError("short row in " + path.string() + ": " + line);
        MotRow row;
        row.frame = static_cast<int>(f[0]);
        row.id = static_cast<int>(f[1]);
        row.box = Box::from_tlwh(f[2], f[3], f[4], f[5]);
        row.confidence = f.size() > 6 ? f[6] : 1.0;
        rows.push_back(row);
    }
    return rows;
}

std::map<int, std::vector<MotRow>> group_by_frame(const std::vector<MotRow>& rows) {
    std::map<int, std::vector<MotRow>> grouped;
    for (const auto& r : rows) grouped[r.frame].push_back(r);
    return grouped;
}

namespace {

void write_rows(const std::filesystem::path& path, std::vector<MotRow>& rows,
                bool results) {
    std::sort(rows.begin(), rows.end(), [](const MotRow& a, const MotRow& b) {
        return a.frame != b.frame ? a.frame < b.frame : a.id < b.id;
    });
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    char buf[256];
    for (const auto& r : rows) {
        if (results) {
            std::snprintf(buf, sizeof(buf), "%d,%d,%.2f,%.2f,%.2f,%.2f,%.2f,-1,-1,-1\n",
                          r.frame, r.id, r.box.left(), r.box.top(), r.box.w, r.box.h,
                          r.confidence);
        } else {
            std::snprintf(buf, sizeof(buf), "%d,-1,%.2f,%.2f,%.2f,%.2f,%.2f\n",
                          r.frame, r.box.left(), r.box.top(), r.box.w, r.box.h,
                          r.confidence);
        }
        out << buf;
    }
}

}  // namespace

void write_mot_results(const std::filesystem::path& path, std::vector<MotRow> rows) {
    write_rows(path, rows, true);
}

void write_mot_detections(const std::filesystem::path& path, std::vector<MotRow> rows) {
    write_rows(path, rows, false);
}

std::vector<PoseRow> read_pose_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    std::vector<PoseRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto f = split_csv_line(line);
        if (f.size() < 6) throw FormatError("short pose row in " + path.string());
        rows.push_back(PoseRow{static_cast<int>(f[0]), static_cast<int>(f[1]),
                               static_cast<int>(f[2]), f[3], f[4],
                               static_cast<int>(f[5])});
    }
    return rows;
}

void write_pose_table(const std::filesystem::path& path, std::vector<PoseRow> rows) {
    std::sort(rows.begin(), rows.end(), [](const PoseRow& a, const PoseRow& b) {
        if (a.frame != b.frame) return a.frame < b.frame;
        if (a.person != b.person) return a.person < b.person;
        return a.keypoint < b.keypoint;
    });
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.2f,%.2f,%d\n", r.frame, r.person,
                      r.keypoint, r.x, r.y, r.visible);
        out << buf;
    }
}

std::map<int, std::map<int, Pose>> group_poses(const std::vector<PoseRow>& rows,
                                               int keypoint_count) {
    std::map<int, std::map<int, Pose>> grouped;
    for (const auto& r : rows) {
        Pose& pose = grouped[r.frame][r.person];
        if (pose.points.empty()) pose.points.resize(keypoint_count);
        if (r.keypoint < 0 || r.keypoint >= keypoint_count)
            throw FormatError("keypoint index out of range in pose table");
        pose.points[r.keypoint] = Keypoint{r.x, r.y, r.visible != 0};
    }
    return grouped;
}

}  // namespace trackkit::io
