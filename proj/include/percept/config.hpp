#pragma once

#include <cstdint>
#include <string>

namespace percept {

// Campaign + analysis settings; JSON on disk, overridable per flag on the
// command line. The credential itself never appears here, only the name of
// the environment variable that holds it.
struct RunConfig {
    // provider
    std::string base_url = "https://api.openai.com";
    std::string endpoint_path = "/v1/chat/completions";
    std::string model = "gpt-4";
    double temperature = 0.7;
    std::string credential_env = "OPENAI_API_KEY";
    int parallelism = 1;
    int timeout_s = 120;
    // campaign
    std::string modality = "pitch";
    int repetitions = 10;
    int max_requeries = 10;
    std::uint64_t seed = 0;
    bool extended_colors = false;
    // analysis
    int n_boot = 1000;
    int mds_dim = 3;
    std::string mds_method = "classical";
    bool smooth = false;
    // paths
    std::string cache_path;
    std::string out_dir = ".";
};

RunConfig load_config(const std::string& path);

}  // namespace percept
