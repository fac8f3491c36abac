#include <doctest.h>

#include "helpers.hpp"
#include "percept/config.hpp"
#include "percept/errors.hpp"

using namespace percept;

TEST_CASE("config defaults") {
    RunConfig cfg;
    CHECK(cfg.base_url == "https://api.openai.com");
    CHECK(cfg.endpoint_path == "/v1/chat/completions");
    CHECK(cfg.model == "gpt-4");
    CHECK(cfg.temperature == 0.7);
    CHECK(cfg.credential_env == "OPENAI_API_KEY");
    CHECK(cfg.parallelism == 1);
    CHECK(cfg.timeout_s == 120);
    CHECK(cfg.modality == "pitch");
    CHECK(cfg.repetitions == 10);
    CHECK(cfg.max_requeries == 10);
    CHECK(cfg.seed == 0);
    CHECK_FALSE(cfg.extended_colors);
    CHECK(cfg.n_boot == 1000);
    CHECK(cfg.mds_dim == 3);
    CHECK(cfg.mds_method == "classical");
    CHECK_FALSE(cfg.smooth);
    CHECK(cfg.cache_path.empty());
    CHECK(cfg.out_dir == ".");
}

TEST_CASE("config files override every field they mention") {
    testutil::TempDir dir;
    const auto path = dir.file("run.json");
    testutil::spit(path, R"({
        "base_url": "http://127.0.0.1:8080",
        "endpoint_path": "/chat",
        "model": "local-model",
        "temperature": 0.0,
        "credential_env": "LOCAL_KEY",
        "parallelism": 4,
        "timeout_s": 30,
        "modality": "color",
        "repetitions": 3,
        "max_requeries": 1,
        "seed": 42,
        "extended_colors": true,
        "n_boot": 200,
        "mds_dim": 2,
        "mds_method": "smacof",
        "smooth": true,
        "cache_path": "cache.jsonl",
        "out_dir": "out"
    })");

    const auto cfg = load_config(path);
    CHECK(cfg.base_url == "http://127.0.0.1:8080");
    CHECK(cfg.endpoint_path == "/chat");
    CHECK(cfg.model == "local-model");
    CHECK(cfg.temperature == 0.0);
    CHECK(cfg.credential_env == "LOCAL_KEY");
    CHECK(cfg.parallelism == 4);
    CHECK(cfg.timeout_s == 30);
    CHECK(cfg.modality == "color");
    CHECK(cfg.repetitions == 3);
    CHECK(cfg.max_requeries == 1);
    CHECK(cfg.seed == 42);
    CHECK(cfg.extended_colors);
    CHECK(cfg.n_boot == 200);
    CHECK(cfg.mds_dim == 2);
    CHECK(cfg.mds_method == "smacof");
    CHECK(cfg.smooth);
    CHECK(cfg.cache_path == "cache.jsonl");
    CHECK(cfg.out_dir == "out");
}

TEST_CASE("unmentioned config fields keep their defaults") {
    testutil::TempDir dir;
    const auto path = dir.file("partial.json");
    testutil::spit(path, R"({"model": "tiny", "seed": 9})");
    const auto cfg = load_config(path);
    CHECK(cfg.model == "tiny");
    CHECK(cfg.seed == 9);
    CHECK(cfg.temperature == 0.7);
    CHECK(cfg.n_boot == 1000);
}

TEST_CASE("config errors are data errors") {
    testutil::TempDir dir;

    SUBCASE("missing file") {
        CHECK_THROWS_WITH_AS(load_config(dir.file("absent.json")),
                             doctest::Contains("cannot open"), DataError);
    }
    SUBCASE("malformed json") {
        const auto path = dir.file("bad.json");
        testutil::spit(path, "{not json");
        CHECK_THROWS_WITH_AS(load_config(path), doctest::Contains("parse error"),
                             DataError);
    }
    SUBCASE("wrong value type") {
        const auto path = dir.file("type.json");
        testutil::spit(path, R"({"temperature": "hot"})");
        CHECK_THROWS_WITH_AS(load_config(path), doctest::Contains("bad config value"),
                             DataError);
    }
    SUBCASE("parallelism below one") {
        const auto path = dir.file("par.json");
        testutil::spit(path, R"({"parallelism": 0})");
        CHECK_THROWS_WITH_AS(load_config(path),
                             doctest::Contains("parallelism must be >= 1"), DataError);
    }
    SUBCASE("repetitions below one") {
        const auto path = dir.file("reps.json");
        testutil::spit(path, R"({"repetitions": 0})");
        CHECK_THROWS_AS(load_config(path), DataError);
    }
    SUBCASE("negative max_requeries") {
        const auto path = dir.file("req.json");
        testutil::spit(path, R"({"max_requeries": -1})");
        CHECK_THROWS_AS(load_config(path), DataError);
    }
}
