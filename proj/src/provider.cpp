#include "percept/provider.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <thread>

#include "percept/errors.hpp"
#include "percept/rng.hpp"
#include "percept/util.hpp"

namespace percept {

namespace {

constexpr std::uint64_t kSynthStream = 0x5E5;
constexpr std::uint64_t kNameStream = 0x4A3E;

std::uint64_t pair_key(int id_a, int id_b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(id_a)) << 32) |
           static_cast<std::uint32_t>(id_b);
}

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

SyntheticRespondent::SyntheticRespondent(GroundTruth gt, double noise_sd, std::uint64_t seed,
                                         std::string id)
    : gt_(std::move(gt)), noise_sd_(noise_sd), seed_(seed), id_(std::move(id)) {}

std::string SyntheticRespondent::complete(const Request& req) {
    double value = gt_(req.id_a, req.id_b);
    if (noise_sd_ > 0.0) {
        Rng rng(substream(seed_, pair_key(req.id_a, req.id_b),
                          static_cast<std::uint64_t>(req.repetition), kSynthStream));
        value += rng.normal(0.0, noise_sd_);
    }
    value = std::clamp(value, 0.0, 1.0);
    return format_double(value);
}

double helix_ground_truth(int i, int j) {
    const double delta = std::abs(i - j);
    return std::exp(-0.1 * delta) * (1.0 + 0.3 * std::cos(2.0 * M_PI * delta / 12.0)) / 1.3;
}

ResponseCache::ResponseCache(std::string path) : path_(std::move(path)) {
    if (path_.empty() || !std::filesystem::exists(path_)) return;
    std::ifstream in(path_);
    if (!in) throw DataError("cannot open cache file: " + path_);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw DataError(path_ + ":" + std::to_string(line_no) +
                            ": bad cache line: " + e.what());
        }
        if (!j.contains("key") || !j.contains("response"))
            throw DataError(path_ + ":" + std::to_string(line_no) + ": cache line lacks key");
        responses_.emplace(j["key"].get<std::string>(), j["response"].get<std::string>());
    }
}

std::string ResponseCache::make_key(std::string_view prompt, std::string_view model,
                                    double temperature, int repetition, int attempt) {
    std::string material;
    material.reserve(prompt.size() + model.size() + 32);
    material += prompt;
    material += '|';
    material += model;
    material += '|';
    material += format_double(temperature);
    material += '|';
    material += std::to_string(repetition);
    material += '|';
    material += std::to_string(attempt);
    return to_hex(fnv1a64(material));
}

std::optional<std::string> ResponseCache::lookup(const std::string& key) const {
    std::lock_guard lock(mutex_);
    auto it = responses_.find(key);
    if (it == responses_.end()) return std::nullopt;
    return it->second;
}

void ResponseCache::append(const CacheEntry& entry) {
    std::lock_guard lock(mutex_);
    auto inserted = responses_.emplace(entry.key, entry.response);
    if (!inserted.second) return;  // already stored; the log stays append-only
    if (path_.empty()) return;
    std::ofstream out(path_, std::ios::app | std::ios::binary);
    if (!out) throw DataError("cannot append to cache file: " + path_);
    nlohmann::json j{{"key", entry.key},
                     {"prompt", entry.prompt},
                     {"model", entry.model},
                     {"temperature", entry.temperature},
                     {"repetition", entry.repetition},
                     {"response", entry.response},
                     {"timestamp", entry.timestamp}};
    out << j.dump() << '\n';
}

std::size_t ResponseCache::size() const {
    std::lock_guard lock(mutex_);
    return responses_.size();
}

CachingProvider::CachingProvider(Provider& inner, ResponseCache& cache, std::string model,
                                 double temperature)
    : inner_(inner), cache_(cache), model_(std::move(model)), temperature_(temperature) {}

std::string CachingProvider::complete(const Request& req) {
    const std::string key =
        ResponseCache::make_key(req.prompt, model_, temperature_, req.repetition, req.attempt);
    if (auto cached = cache_.lookup(key)) {
        ++hits_;
        return *cached;
    }
    std::string response = inner_.complete(req);
    cache_.append({key, req.prompt, model_, temperature_, req.repetition, response,
                   utc_timestamp()});
    return response;
}

ReplayProvider::ReplayProvider(ResponseCache& cache, std::string model, double temperature)
    : cache_(cache), model_(std::move(model)), temperature_(temperature) {}

std::string ReplayProvider::complete(const Request& req) {
    const std::string key =
        ResponseCache::make_key(req.prompt, model_, temperature_, req.repetition, req.attempt);
    if (auto cached = cache_.lookup(key)) return *cached;
    throw ProviderError("replay cache miss (key " + key + ", repetition " +
                        std::to_string(req.repetition) + ", attempt " +
                        std::to_string(req.attempt) + ")");
}

std::unique_ptr<Provider> make_mock_provider(const std::string& spec, std::uint64_t seed) {
    if (spec == "invalid") {
        return std::make_unique<MockProvider>(
            "mock-invalid", [](const Request&) { return std::string("no rating from me"); });
    }
    if (spec == "oov") {
        return std::make_unique<MockProvider>(
            "mock-oov", [](const Request&) { return std::string("navy"); });
    }
    if (spec.rfind("constant:", 0) == 0) {
        std::string text = spec.substr(9);
        return std::make_unique<MockProvider>(
            "mock-constant", [text](const Request&) { return text; });
    }
    if (spec.rfind("term:", 0) == 0) {
        std::string term = spec.substr(5);
        return std::make_unique<MockProvider>("mock-term",
                                              [term](const Request&) { return term; });
    }
    if (spec.rfind("synthetic:helix:", 0) == 0) {
        auto sd = parse_double(spec.substr(16));
        if (!sd || *sd < 0.0) throw DataError("bad noise sd in mock spec: " + spec);
        return std::make_unique<SyntheticRespondent>(helix_ground_truth, *sd, seed);
    }
    if (spec.rfind("abort-after:", 0) == 0) {
        const std::string rest = spec.substr(12);
        const auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw DataError("abort-after needs a count and a delegate spec");
        auto count = parse_int(rest.substr(0, colon));
        if (!count || *count < 0) throw DataError("bad abort-after count in: " + spec);
        std::shared_ptr<Provider> inner(make_mock_provider(rest.substr(colon + 1), seed));
        auto calls = std::make_shared<std::atomic<long>>(0);
        const long limit = static_cast<long>(*count);
        return std::make_unique<MockProvider>(
            inner->id(), [inner, calls, limit](const Request& req) {
                if (calls->fetch_add(1) >= limit)
                    throw ProviderError("mock provider aborted after " +
                                        std::to_string(limit) + " calls");
                return inner->complete(req);
            });
    }
    throw DataError("unknown mock provider spec: " + spec);
}

namespace {

// Runs slots 0..n-1 on `workers` threads. The first exception stops
// scheduling and is rethrown after all workers drain.
void run_slots(int n_slots, int workers, const std::function<void(int)>& work) {
    workers = std::max(1, std::min(workers, n_slots));
    if (workers == 1) {
        for (int s = 0; s < n_slots; ++s) work(s);
        return;
    }
    std::atomic<int> next{0};
    std::atomic<bool> abort{false};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto body = [&] {
        for (;;) {
            if (abort.load()) return;
            const int s = next.fetch_add(1);
            if (s >= n_slots) return;
            try {
                work(s);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                abort.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

std::vector<RatingRecord> elicit_similarity(const StimulusSet& set, Provider& provider,
                                            const CampaignOptions& options) {
    if (options.repetitions < 1) throw DataError("repetitions must be >= 1");
    if (options.max_requeries < 0) throw DataError("max_requeries must be >= 0");
    struct Slot {
        int i, j, rep;
    };
    std::vector<Slot> slots;
    const int n = set.size();
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            if (i == j && !options.include_diagonal) continue;
            for (int rep = 0; rep < options.repetitions; ++rep) slots.push_back({i, j, rep});
        }

    std::vector<std::optional<RatingRecord>> results(slots.size());
    if (!options.checkpoint_path.empty() &&
        std::filesystem::exists(options.checkpoint_path)) {
        std::map<std::tuple<std::string, std::string, int>, RatingRecord> done;
        for (auto& rec : read_rating_csv(options.checkpoint_path))
            done.emplace(std::make_tuple(rec.stim_a, rec.stim_b, rec.repetition), rec);
        for (std::size_t s = 0; s < slots.size(); ++s) {
            auto it = done.find(std::make_tuple(set[slots[s].i].label, set[slots[s].j].label,
                                                slots[s].rep));
            if (it != done.end()) results[s] = it->second;
        }
    }

    auto run_one = [&](int s) {
        if (results[static_cast<std::size_t>(s)]) return;  // restored from checkpoint
        const Slot slot = slots[static_cast<std::size_t>(s)];
        const StimulusDescriptor& a = set[slot.i];
        const StimulusDescriptor& b = set[slot.j];
        Request req;
        req.prompt = render_similarity_prompt(set.modality, a, b);
        req.modality = set.modality;
        req.id_a = slot.i;
        req.id_b = slot.j;
        req.repetition = slot.rep;
        RatingRecord rec;
        rec.modality = set.modality;
        rec.stim_a = a.label;
        rec.stim_b = b.label;
        rec.rater_id = provider.id();
        rec.repetition = slot.rep;
        rec.scale_max = 1.0;  // the prompt pins the 0-1 model scale
        for (int attempt = 0; attempt <= options.max_requeries; ++attempt) {
            req.attempt = attempt;
            rec.raw = provider.complete(req);
            if (auto rating = parse_rating(rec.raw)) {
                rec.rating = *rating;
                break;
            }
        }
        results[static_cast<std::size_t>(s)] = std::move(rec);
    };

    auto collect = [&] {
        std::vector<RatingRecord> records;
        records.reserve(slots.size());
        for (auto& r : results)
            if (r) records.push_back(std::move(*r));
        return records;
    };

    try {
        run_slots(static_cast<int>(slots.size()), options.parallelism, run_one);
    } catch (const ProviderError&) {
        if (!options.checkpoint_path.empty())
            write_rating_csv(options.checkpoint_path, collect());
        throw;
    }
    auto records = collect();
    if (!options.checkpoint_path.empty())
        std::filesystem::remove(options.checkpoint_path);
    return records;
}

std::vector<NamingRecord> elicit_naming(const std::vector<PaletteEntry>& palette,
                                        Language language, Provider& provider,
                                        const CampaignOptions& options) {
    if (options.repetitions < 1) throw DataError("repetitions must be >= 1");
    if (palette.empty()) throw DataError("empty palette");
    const auto& terms = default_terms(language);
    struct Slot {
        int chip, rep;
    };
    std::vector<Slot> slots;
    for (int chip = 0; chip < static_cast<int>(palette.size()); ++chip)
        for (int rep = 0; rep < options.repetitions; ++rep) slots.push_back({chip, rep});

    std::vector<std::optional<NamingRecord>> results(slots.size());
    if (!options.checkpoint_path.empty() &&
        std::filesystem::exists(options.checkpoint_path)) {
        std::map<std::pair<std::string, int>, NamingRecord> done;
        for (auto& rec : read_naming_csv(options.checkpoint_path))
            done.emplace(std::make_pair(rec.chip_id, rec.repetition), rec);
        for (std::size_t s = 0; s < slots.size(); ++s) {
            auto it = done.find({palette[static_cast<std::size_t>(slots[s].chip)].chip_id,
                                 slots[s].rep});
            if (it != done.end()) results[s] = it->second;
        }
    }

    auto run_one = [&](int s) {
        if (results[static_cast<std::size_t>(s)]) return;
        const Slot slot = slots[static_cast<std::size_t>(s)];
        const PaletteEntry& chip = palette[static_cast<std::size_t>(slot.chip)];
        const auto shuffled =
            shuffle_terms(substream(options.seed, kNameStream,
                                    static_cast<std::uint64_t>(slot.chip),
                                    static_cast<std::uint64_t>(slot.rep)),
                          terms);
        Request req;
        req.prompt = render_naming_prompt(language, shuffled, chip.hex);
        req.chip_id = chip.chip_id;
        req.id_a = slot.chip;
        req.repetition = slot.rep;
        NamingRecord rec;
        rec.chip_id = chip.chip_id;
        rec.language = language;
        rec.source = provider.id();
        rec.repetition = slot.rep;
        rec.term = "error";
        for (int attempt = 0; attempt <= options.max_requeries; ++attempt) {
            req.attempt = attempt;
            rec.raw = provider.complete(req);
            if (auto term = parse_color_name(rec.raw, terms)) {
                rec.term = *term;
                break;
            }
        }
        results[static_cast<std::size_t>(s)] = std::move(rec);
    };

    auto collect = [&] {
        std::vector<NamingRecord> records;
        records.reserve(slots.size());
        for (auto& r : results)
            if (r) records.push_back(std::move(*r));
        return records;
    };

    try {
        run_slots(static_cast<int>(slots.size()), options.parallelism, run_one);
    } catch (const ProviderError&) {
        if (!options.checkpoint_path.empty())
            write_naming_csv(options.checkpoint_path, collect());
        throw;
    }
    auto records = collect();
    if (!options.checkpoint_path.empty())
        std::filesystem::remove(options.checkpoint_path);
    return records;
}

}  // namespace percept
