#include "percept/config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "percept/errors.hpp"

namespace percept {

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError("config parse error in " + path + ": " + e.what());
    }
    RunConfig cfg;
    try {
        cfg.base_url = j.value("base_url", cfg.base_url);
        cfg.endpoint_path = j.value("endpoint_path", cfg.endpoint_path);
        cfg.model = j.value("model", cfg.model);
        cfg.temperature = j.value("temperature", cfg.temperature);
        cfg.credential_env = j.value("credential_env", cfg.credential_env);
        cfg.parallelism = j.value("parallelism", cfg.parallelism);
        cfg.timeout_s = j.value("timeout_s", cfg.timeout_s);
        cfg.modality = j.value("modality", cfg.modality);
        cfg.repetitions = j.value("repetitions", cfg.repetitions);
        cfg.max_requeries = j.value("max_requeries", cfg.max_requeries);
        cfg.seed = j.value("seed", cfg.seed);
        cfg.extended_colors = j.value("extended_colors", cfg.extended_colors);
        cfg.n_boot = j.value("n_boot", cfg.n_boot);
        cfg.mds_dim = j.value("mds_dim", cfg.mds_dim);
        cfg.mds_method = j.value("mds_method", cfg.mds_method);
        cfg.smooth = j.value("smooth", cfg.smooth);
        cfg.cache_path = j.value("cache_path", cfg.cache_path);
        cfg.out_dir = j.value("out_dir", cfg.out_dir);
    } catch (const nlohmann::json::exception& e) {
        throw DataError("bad config value in " + path + ": " + e.what());
    }
    if (cfg.parallelism < 1) throw DataError("parallelism must be >= 1");
    if (cfg.repetitions < 1) throw DataError("repetitions must be >= 1");
    if (cfg.max_requeries < 0) throw DataError("max_requeries must be >= 0");
    return cfg;
}

}  // namespace percept
