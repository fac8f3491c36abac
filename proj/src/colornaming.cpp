#include "percept/colornaming.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "percept/errors.hpp"
#include "percept/rng.hpp"
#include "percept/simstats.hpp"

namespace percept {

namespace {

constexpr std::uint64_t kAriStream = 0xA21;

std::string mode_term(const std::map<std::string, int>& counts) {
    // std::map iterates in lexicographic order, so the first maximum is the
    // tie-break winner.
    std::string best;
    int best_count = 0;
    for (const auto& [term, count] : counts) {
        if (count > best_count) {
            best = term;
            best_count = count;
        }
    }
    return best;
}

}  // namespace

NamingMap dominant_terms(const std::vector<NamingRecord>& records) {
    std::map<std::string, std::map<std::string, int>> by_chip;
    for (const auto& rec : records) {
        auto& counts = by_chip[rec.chip_id];
        if (rec.term != "error") ++counts[rec.term];
    }
    NamingMap map;
    for (const auto& [chip, counts] : by_chip) {
        int total = 0;
        for (const auto& [term, count] : counts) total += count;
        if (total == 0) {
            map.excluded.push_back(chip);
            continue;
        }
        ChipSummary summary;
        summary.chip_id = chip;
        summary.dominant = mode_term(counts);
        summary.count = total;
        summary.agreement =
            static_cast<double>(counts.at(summary.dominant)) / static_cast<double>(total);
        if (summary.agreement < 0.5)
            summary.marker = "-";
        else if (summary.agreement < 0.9)
            summary.marker = "*";
        map.chips.push_back(std::move(summary));
    }
    return map;
}

std::array<int, 3> parse_hex_color(const std::string& hex) {
    auto nibble = [&](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw DataError("bad hex color '" + hex + "'");
    };
    if (hex.size() != 7 || hex[0] != '#') throw DataError("bad hex color '" + hex + "'");
    std::array<int, 3> rgb{};
    for (int c = 0; c < 3; ++c)
        rgb[static_cast<std::size_t>(c)] =
            nibble(hex[1 + 2 * c]) * 16 + nibble(hex[2 + 2 * c]);
    return rgb;
}

std::string format_hex_color(const std::array<int, 3>& rgb) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
    return buf;
}

std::vector<ClusterLegend> cluster_average_color(const NamingMap& map,
                                                 const std::vector<PaletteEntry>& palette) {
    std::map<std::string, std::array<int, 3>> chip_rgb;
    for (const auto& entry : palette) chip_rgb[entry.chip_id] = parse_hex_color(entry.hex);
    std::map<std::string, std::pair<std::array<double, 3>, int>> sums;
    for (const auto& chip : map.chips) {
        auto it = chip_rgb.find(chip.chip_id);
        if (it == chip_rgb.end())
            throw DataError("palette has no entry for chip '" + chip.chip_id + "'");
        auto& [sum, count] = sums[chip.dominant];
        for (std::size_t c = 0; c < 3; ++c) sum[c] += it->second[c];
        ++count;
    }
    std::vector<ClusterLegend> legends;
    for (const auto& [term, entry] : sums) {
        const auto& [sum, count] = entry;
        std::array<int, 3> rgb{};
        for (std::size_t c = 0; c < 3; ++c)
            rgb[c] = static_cast<int>(std::floor(sum[c] / count + 0.5));
        legends.push_back({term, count, format_hex_color(rgb)});
    }
    return legends;
}

std::pair<Partition, Partition> paired_partitions(const NamingMap& a, const NamingMap& b) {
    std::map<std::string, std::string> terms_a, terms_b;
    for (const auto& chip : a.chips) terms_a[chip.chip_id] = chip.dominant;
    for (const auto& chip : b.chips) terms_b[chip.chip_id] = chip.dominant;
    Partition pa, pb;
    std::map<std::string, int> label_ids_a, label_ids_b;
    for (const auto& [chip, term] : terms_a) {
        auto it = terms_b.find(chip);
        if (it == terms_b.end()) continue;
        pa.universe.push_back(chip);
        pb.universe.push_back(chip);
        pa.labels.push_back(
            label_ids_a.emplace(term, static_cast<int>(label_ids_a.size())).first->second);
        pb.labels.push_back(
            label_ids_b.emplace(it->second, static_cast<int>(label_ids_b.size())).first->second);
    }
    return {std::move(pa), std::move(pb)};
}

namespace {

struct PairCounts {
    long long n2 = 0;   // C(n,2)
    long long idx = 0;  // sum over contingency cells of C(n_ij,2)
    long long ea = 0;   // sum over rows of C(a_i,2)
    long long eb = 0;   // sum over cols of C(b_j,2)
};

long long choose2(long long n) { return n * (n - 1) / 2; }

PairCounts pair_counts(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw DataError("partitions differ in size");
    if (a.size() < 2) throw DataError("partition comparison needs at least 2 chips");
    std::map<std::pair<int, int>, long long> contingency;
    std::map<int, long long> rows, cols;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++contingency[{a[i], b[i]}];
        ++rows[a[i]];
        ++cols[b[i]];
    }
    PairCounts pc;
    pc.n2 = choose2(static_cast<long long>(a.size()));
    for (const auto& [cell, count] : contingency) pc.idx += choose2(count);
    for (const auto& [label, count] : rows) pc.ea += choose2(count);
    for (const auto& [label, count] : cols) pc.eb += choose2(count);
    return pc;
}

bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
    // Equal up to relabeling: the chip->label maps must be bijectively linked.
    std::map<int, int> fwd, rev;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto f = fwd.emplace(a[i], b[i]);
        if (!f.second && f.first->second != b[i]) return false;
        auto r = rev.emplace(b[i], a[i]);
        if (!r.second && r.first->second != a[i]) return false;
    }
    return true;
}

}  // namespace

double rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    PairCounts pc = pair_counts(a, b);
    // agreements = same/same pairs + different/different pairs
    return static_cast<double>(pc.n2 + 2 * pc.idx - pc.ea - pc.eb) /
           static_cast<double>(pc.n2);
}

double adjusted_rand(const std::vector<int>& a, const std::vector<int>& b) {
    PairCounts pc = pair_counts(a, b);
    const long long num = 2 * (pc.n2 * pc.idx - pc.ea * pc.eb);
    const long long den = pc.n2 * (pc.ea + pc.eb) - 2 * pc.ea * pc.eb;
    if (den == 0) {
        // Both partitions all-singleton or both one-cluster.
        if (same_partition(a, b)) return 1.0;
        throw DataError("adjusted Rand undefined for these degenerate partitions");
    }
    return static_cast<double>(num) / static_cast<double>(den);
}

AriReport ari_bootstrap(const std::vector<NamingRecord>& records_a,
                        const std::vector<NamingRecord>& records_b, int n_boot,
                        std::uint64_t seed) {
    if (n_boot < 1) throw DataError("n_boot must be >= 1");
    // Non-error response multisets per chip; errors are discarded before any
    // resampling so the chip universe is fixed across replicates.
    auto collect = [](const std::vector<NamingRecord>& records) {
        std::map<std::string, std::vector<std::string>> by_chip;
        for (const auto& rec : records)
            if (rec.term != "error") by_chip[rec.chip_id].push_back(rec.term);
        return by_chip;
    };
    auto responses_a = collect(records_a);
    auto responses_b = collect(records_b);
    std::vector<std::string> universe;
    for (const auto& [chip, terms] : responses_a)
        if (responses_b.count(chip)) universe.push_back(chip);
    if (universe.size() < 2) throw DataError("ARI needs at least 2 shared chips");

    auto labels_for = [&](const std::map<std::string, std::vector<std::string>>& responses,
                          Rng* rng) {
        std::vector<int> labels;
        std::map<std::string, int> label_ids;
        labels.reserve(universe.size());
        for (const auto& chip : universe) {
            const auto& terms = responses.at(chip);
            std::map<std::string, int> counts;
            if (rng) {
                for (std::size_t k = 0; k < terms.size(); ++k)
                    ++counts[terms[rng->below(terms.size())]];
            } else {
                for (const auto& term : terms) ++counts[term];
            }
            const std::string term = mode_term(counts);
            labels.push_back(
                label_ids.emplace(term, static_cast<int>(label_ids.size())).first->second);
        }
        return labels;
    };

    AriReport report;
    report.n_boot = n_boot;
    report.seed = seed;
    report.n_chips = static_cast<int>(universe.size());
    const auto point_a = labels_for(responses_a, nullptr);
    const auto point_b = labels_for(responses_b, nullptr);
    report.rand = rand_index(point_a, point_b);
    report.ari = adjusted_rand(point_a, point_b);
    std::vector<double> aris(static_cast<std::size_t>(n_boot));
    for (int b = 0; b < n_boot; ++b) {
        Rng rng(substream(seed, kAriStream, static_cast<std::uint64_t>(b)));
        aris[static_cast<std::size_t>(b)] =
            adjusted_rand(labels_for(responses_a, &rng), labels_for(responses_b, &rng));
    }
    report.ci_low = percentile(aris, 2.5);
    report.ci_high = percentile(aris, 97.5);
    return report;
}

}  // namespace percept
