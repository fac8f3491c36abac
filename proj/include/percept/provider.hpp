#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "percept/io.hpp"
#include "percept/prompts.hpp"
#include "percept/stimuli.hpp"

namespace percept {

// One completion call. Slot identity (pair or chip, repetition) plus the
// attempt index; deterministic providers key their output on the slot so
// concurrency and retries cannot change a campaign's records.
struct Request {
    std::string prompt;
    Modality modality = Modality::pitch;
    int id_a = -1;
    int id_b = -1;
    std::string chip_id;
    int repetition = 0;
    int attempt = 0;
};

class Provider {
public:
    virtual ~Provider() = default;
    virtual std::string complete(const Request& req) = 0;
    virtual std::string id() const = 0;
};

class MockProvider : public Provider {
public:
    using Fn = std::function<std::string(const Request&)>;
    MockProvider(std::string id, Fn fn) : id_(std::move(id)), fn_(std::move(fn)) {}
    std::string complete(const Request& req) override { return fn_(req); }
    std::string id() const override { return id_; }

private:
    std::string id_;
    Fn fn_;
};

// Ground truth plus clamped Gaussian noise, rendered as decimal text.
// Deterministic per (seed, pair, repetition) and independent of call order.
class SyntheticRespondent : public Provider {
public:
    using GroundTruth = std::function<double(int, int)>;
    SyntheticRespondent(GroundTruth gt, double noise_sd, std::uint64_t seed,
                        std::string id = "synthetic");
    std::string complete(const Request& req) override;
    std::string id() const override { return id_; }

private:
    GroundTruth gt_;
    double noise_sd_;
    std::uint64_t seed_;
    std::string id_;
};

// The octave-modulated similarity used by synthetic campaigns, normalized
// into [0,1]: exp(-0.1*delta) * (1 + 0.3*cos(2*pi*delta/12)) / 1.3.
double helix_ground_truth(int i, int j);

struct CacheEntry {
    std::string key;
    std::string prompt;
    std::string model;
    double temperature = 0.0;
    int repetition = 0;
    std::string response;
    std::string timestamp;
};

// Append-only JSONL store keyed by a hash of (prompt, model, temperature,
// repetition, attempt). Replaying a cached campaign issues no provider calls.
class ResponseCache {
public:
    explicit ResponseCache(std::string path);  // loads the file if it exists

    static std::string make_key(std::string_view prompt, std::string_view model,
                                double temperature, int repetition, int attempt);

    std::optional<std::string> lookup(const std::string& key) const;
    void append(const CacheEntry& entry);
    std::size_t size() const;
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::map<std::string, std::string> responses_;
    mutable std::mutex mutex_;
};

// Read-through cache wrapper: hits never reach the inner provider.
class CachingProvider : public Provider {
public:
    CachingProvider(Provider& inner, ResponseCache& cache, std::string model,
                    double temperature);
    std::string complete(const Request& req) override;
    std::string id() const override { return inner_.id(); }
    long hits() const { return hits_.load(); }

private:
    Provider& inner_;
    ResponseCache& cache_;
    std::string model_;
    double temperature_;
    std::atomic<long> hits_{0};
};

// Cache-only provider; a miss is a terminal ProviderError.
class ReplayProvider : public Provider {
public:
    ReplayProvider(ResponseCache& cache, std::string model, double temperature);
    std::string complete(const Request& req) override;
    std::string id() const override { return model_; }

private:
    ResponseCache& cache_;
    std::string model_;
    double temperature_;
};

struct HttpOptions {
    std::string base_url = "https://api.openai.com";
    std::string endpoint_path = "/v1/chat/completions";
    std::string model = "gpt-4";
    double temperature = 0.7;
    std::string credential_env = "OPENAI_API_KEY";
    int timeout_s = 120;
    int max_attempts = 6;  // transient-error retries with exponential backoff
    std::function<void(int)> sleep_ms;  // injectable for tests; default sleeps
};

// Chat-completion client. Auth and malformed-body errors are terminal;
// transport errors, 429 and 5xx retry with backoff 1 s doubling to a 32 s cap.
class HttpProvider : public Provider {
public:
    explicit HttpProvider(HttpOptions options);
    std::string complete(const Request& req) override;
    std::string id() const override { return options_.model; }
    long retries() const { return retries_.load(); }

private:
    HttpOptions options_;
    std::atomic<long> retries_{0};
};

// Parses a mock provider description:
//   constant:<text>          always answer <text>
//   invalid                  always answer non-numeric text
//   oov                      always answer a color name outside the term list
//   term:<name>              always answer <name>
//   synthetic:helix:<sd>     synthetic respondent over the helix ground truth
//   abort-after:<n>:<spec>   delegate to <spec>, fail the (n+1)-th call
std::unique_ptr<Provider> make_mock_provider(const std::string& spec, std::uint64_t seed);

struct CampaignOptions {
    int repetitions = 10;
    int max_requeries = 10;  // re-queries after the first invalid parse
    bool include_diagonal = false;
    int parallelism = 1;
    std::uint64_t seed = 0;
    std::string checkpoint_path;  // partial records written here on abort
};

// One record per (unordered pair, repetition), in pair-major order. Invalid
// parses are re-queried up to max_requeries; exhausted slots carry an empty
// rating. Terminal provider errors write the checkpoint and rethrow.
std::vector<RatingRecord> elicit_similarity(const StimulusSet& set, Provider& provider,
                                            const CampaignOptions& options);

// One record per (chip, repetition); the term list is reshuffled per
// repetition from the campaign seed. Exhausted slots carry the term "error".
std::vector<NamingRecord> elicit_naming(const std::vector<PaletteEntry>& palette,
                                        Language language, Provider& provider,
                                        const CampaignOptions& options);

}  // namespace percept
