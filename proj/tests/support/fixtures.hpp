#pragma once
// On-disk inputs for exercising the command-line tool end to end.

#include <filesystem>
#include <string>

namespace fixtures {

/// Fresh, empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

struct PipelineFiles {
    std::filesystem::path imu_log;
    std::filesystem::path motion_db;
    std::filesystem::path background_db;
    std::filesystem::path query_signature;
    std::filesystem::path pose;  // pose file of the first motion
};

/// Writes an IMU capture, a six-motion database with 12-frame pose files,
/// a background database and a query signature into `dir`.
PipelineFiles write_pipeline_fixture(const std::filesystem::path& dir);

}  // namespace fixtures
