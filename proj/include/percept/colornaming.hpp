#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "percept/io.hpp"

namespace percept {

struct ChipSummary {
    std::string chip_id;
    std::string dominant;
    double agreement = 0.0;  // mode count / non-error count
    std::string marker;      // "-" below 0.5, "*" below 0.9, "" otherwise
    int count = 0;           // non-error responses
};

struct NamingMap {
    std::vector<ChipSummary> chips;      // sorted by chip_id
    std::vector<std::string> excluded;   // chips whose responses were all "error"
};

struct ClusterLegend {
    std::string term;
    int chip_count = 0;
    std::string avg_hex;  // channel-wise mean of member chips
};

// chip -> integer cluster label over a shared universe.
struct Partition {
    std::vector<std::string> universe;  // sorted chip ids
    std::vector<int> labels;
};

struct AriReport {
    double rand = 0.0;
    double ari = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    int n_boot = 0;
    std::uint64_t seed = 0;
    int n_chips = 0;
};

// Mode term per chip after discarding "error" responses; ties break to the
// lexicographically smallest term. All-error chips land in `excluded`.
NamingMap dominant_terms(const std::vector<NamingRecord>& records);

// Per dominant term, the channel-wise mean RGB of member chips, rounded to
// nearest (half away from zero). Every retained chip needs a palette entry.
std::vector<ClusterLegend> cluster_average_color(const NamingMap& map,
                                                 const std::vector<PaletteEntry>& palette);

// Dominant-term partitions restricted to the chips named in both maps.
std::pair<Partition, Partition> paired_partitions(const NamingMap& a, const NamingMap& b);

// Fraction of chip pairs on which the partitions agree (same/same or
// different/different).
double rand_index(const std::vector<int>& a, const std::vector<int>& b);

// Permutation-model chance-corrected Rand index, computed exactly from the
// contingency table in integer arithmetic. 1 for identical partitions, about
// 0 for random labelings, -0.5 for orthogonal ones.
double adjusted_rand(const std::vector<int>& a, const std::vector<int>& b);

// Point estimate from full response multisets; CI from n_boot replicates that
// resample each chip's responses with replacement in both datasets.
AriReport ari_bootstrap(const std::vector<NamingRecord>& records_a,
                        const std::vector<NamingRecord>& records_b, int n_boot,
                        std::uint64_t seed);

// "#rrggbb" -> channels; throws DataError on malformed input.
std::array<int, 3> parse_hex_color(const std::string& hex);
std::string format_hex_color(const std::array<int, 3>& rgb);

}  // namespace percept
