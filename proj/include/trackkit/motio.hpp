#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "trackkit/types.hpp"

namespace trackkit::io {

/// One MOTChallenge-style text row.
struct MotRow {
    int frame = 0;  // 1-based
    int id = -1;    // -1 for detections
    Box box;
    double confidence = 1.0;
};

/// Parse `frame,id,x,y,w,h,conf[,...]` rows; extra columns are ignored.
/// x,y are the top-left corner in pixels.
std::vector<MotRow> read_mot_file(const std::filesystem::path& path);

/// Detections grouped by frame, i.e. rows with any id column.
std::map<int, std::vector<MotRow>> group_by_frame(const std::vector<MotRow>& rows);

/// Write result rows as `frame,id,x,y,w,h,conf,-1,-1,-1`, sorted by
/// (frame, id), with fixed 2-decimal formatting so identical inputs produce
/// byte-identical files.
void write_mot_results(const std::filesystem::path& path, std::vector<MotRow> rows);

/// Write detection rows as `frame,-1,x,y,w,h,conf`.
void write_mot_detections(const std::filesystem::path& path, std::vector<MotRow> rows);

/// One row of a pose table: `frame,person,keypoint,x,y,visible`.
struct PoseRow {
    int frame = 0;
    int person = 0;
    int keypoint = 0;
    double x = 0.0;
    double y = 0.0;
    int visible = 1;
};

std::vector<PoseRow> read_pose_table(const std::filesystem::path& path);
void write_pose_table(const std::filesystem::path& path, std::vector<PoseRow> rows);

/// Assemble poses per (frame, person) from table rows; keypoint indices are
/// 0-based and missing indices stay invisible.
std::map<int, std::map<int, Pose>> group_poses(const std::vector<PoseRow>& rows,
                                               int keypoint_count);

}  // namespace trackkit::io
