#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "percept/io.hpp"
#include "percept/stimuli.hpp"

namespace percept {

struct AggregateMatrix {
    SimilarityMatrix matrix;   // per-pair mean over valid ratings, both orderings pooled
    Eigen::MatrixXd counts;    // valid record count per cell
    std::string source;        // rater/model id, or "mixed"
};

struct CorrelationReport {
    double r = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    int n_pairs = 0;
    int n_boot = 0;
    std::uint64_t seed = 0;
};

struct IrrReport {
    double mean_r = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    int n_splits = 0;
    std::uint64_t seed = 0;
};

struct DeltaReport {
    double delta_r = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double r_a = 0.0;
    double r_b = 0.0;
    int n_boot = 0;
    std::uint64_t seed = 0;
};

// Mean rating per unordered pair over `labels`. Any off-diagonal pair with no
// valid record raises DataError listing the gaps. Diagonal cells default to
// scale_max unless diagonal records exist.
AggregateMatrix aggregate(const std::vector<RatingRecord>& records,
                          const std::vector<std::string>& labels);

// Row-major strict upper triangle, length n(n-1)/2.
std::vector<double> upper_triangle(const Eigen::MatrixXd& m);

// Product-moment correlation; throws DataError on length < 3, length
// mismatch, or constant input.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

// q-th percentile in [0,100] with linear interpolation between order
// statistics (the numpy default).
double percentile(std::vector<double> values, double q);

// Point estimate from the unresampled aggregate; CI from n_boot replicates
// that resample each pair's rating multiset with replacement.
CorrelationReport bootstrap_ci(const std::vector<RatingRecord>& records,
                               const SimilarityMatrix& human, int n_boot, std::uint64_t seed);

// Rater-level split-half reliability: raters are split into random halves,
// per-half pair means are correlated over pairs covered by both halves.
// No Spearman-Brown correction is applied.
IrrReport split_half_irr(const std::vector<RatingRecord>& records, int n_splits,
                         std::uint64_t seed);

// Paired bootstrap of r_A - r_B against a shared human matrix.
DeltaReport delta_r(const std::vector<RatingRecord>& records_a,
                    const std::vector<RatingRecord>& records_b, const SimilarityMatrix& human,
                    int n_boot, std::uint64_t seed);

}  // namespace percept
