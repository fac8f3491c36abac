#include "percept/simstats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "percept/errors.hpp"
#include "percept/rng.hpp"

namespace percept {

namespace {

constexpr std::uint64_t kBootStream = 0xB007;
constexpr std::uint64_t kSplitStream = 0x5714;

std::map<std::string, int> label_index(const std::vector<std::string>& labels) {
    std::map<std::string, int> idx;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!idx.emplace(labels[i], static_cast<int>(i)).second)
            throw DataError("duplicate stimulus label '" + labels[i] + "'");
    }
    return idx;
}

// Valid ratings grouped by unordered pair (i <= j), in record order.
struct PairedRatings {
    int n = 0;
    double scale_max = 1.0;
    std::vector<std::string> labels;
    std::map<std::pair<int, int>, std::vector<double>> ratings;
};

PairedRatings group_by_pair(const std::vector<RatingRecord>& records,
                            const std::vector<std::string>& labels) {
    PairedRatings g;
    g.n = static_cast<int>(labels.size());
    g.labels = labels;
    auto idx = label_index(labels);
    bool have_scale = false;
    for (const auto& rec : records) {
        auto a = idx.find(rec.stim_a);
        auto b = idx.find(rec.stim_b);
        if (a == idx.end()) throw DataError("unknown stimulus label '" + rec.stim_a + "'");
        if (b == idx.end()) throw DataError("unknown stimulus label '" + rec.stim_b + "'");
        if (!have_scale) {
            g.scale_max = rec.scale_max;
            have_scale = true;
        } else if (rec.scale_max != g.scale_max) {
            throw DataError("records mix scale_max values");
        }
        if (!rec.rating) continue;
        int i = a->second, j = b->second;
        if (i > j) std::swap(i, j);
        g.ratings[{i, j}].push_back(*rec.rating);
    }
    return g;
}

Eigen::MatrixXd mean_matrix(const PairedRatings& g, bool require_full) {
    const int n = g.n;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    std::vector<std::string> missing;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            auto it = g.ratings.find({i, j});
            if (it == g.ratings.end() || it->second.empty()) {
                if (i == j) {
                    m(i, i) = g.scale_max;
                } else if (require_full) {
                    missing.push_back("(" + g.labels[static_cast<std::size_t>(i)] +
                                      ", " + g.labels[static_cast<std::size_t>(j)] + ")");
                }
                continue;
            }
            double sum = 0.0;
            for (double v : it->second) sum += v;
            double mean = sum / static_cast<double>(it->second.size());
            m(i, j) = mean;
            m(j, i) = mean;
        }
    }
    if (!missing.empty()) {
        std::string list;
        for (std::size_t k = 0; k < missing.size() && k < 10; ++k) {
            if (k) list += ", ";
            list += missing[k];
        }
        if (missing.size() > 10) list += ", ...";
        throw DataError("pairs with no valid ratings: " + list);
    }
    return m;
}

}  // namespace

AggregateMatrix aggregate(const std::vector<RatingRecord>& records,
                          const std::vector<std::string>& labels) {
    if (records.empty()) throw DataError("no records to aggregate");
    Modality modality = records.front().modality;
    std::set<std::string> sources;
    for (const auto& rec : records) {
        if (rec.modality != modality) throw DataError("records mix modalities");
        sources.insert(rec.rater_id);
    }
    auto g = group_by_pair(records, labels);
    AggregateMatrix agg;
    agg.matrix.labels = labels;
    agg.matrix.values = mean_matrix(g, /*require_full=*/true);
    agg.matrix.scale_max = g.scale_max;
    agg.counts = Eigen::MatrixXd::Zero(g.n, g.n);
    for (const auto& [pair, vals] : g.ratings) {
        agg.counts(pair.first, pair.second) = static_cast<double>(vals.size());
        agg.counts(pair.second, pair.first) = static_cast<double>(vals.size());
    }
    agg.source = sources.size() == 1 ? *sources.begin() : "mixed";
    return agg;
}

std::vector<double> upper_triangle(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw DataError("upper_triangle needs a square matrix");
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(m.rows() * (m.rows() - 1) / 2));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i + 1; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DataError("pearson inputs differ in length");
    const std::size_t n = x.size();
    if (n < 3) throw DataError("pearson needs at least 3 observations");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw DataError("pearson undefined for constant input");
    return sxy / std::sqrt(sxx * syy);
}

double percentile(std::vector<double> values, double q) {
    if (values.empty()) throw DataError("percentile of empty sample");
    if (q < 0.0 || q > 100.0) throw DataError("percentile rank must be in [0,100]");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * q / 100.0;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = static_cast<std::size_t>(std::ceil(h));
    if (lo == hi) return values[lo];
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

namespace {

// One bootstrap draw of the per-pair mean matrix: each pair's rating multiset
// is resampled with replacement at its observed size.
Eigen::MatrixXd resample_means(const PairedRatings& g, Rng& rng) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(g.n, g.n);
    for (int i = 0; i < g.n; ++i) m(i, i) = g.scale_max;
    for (const auto& [pair, vals] : g.ratings) {
        double sum = 0.0;
        for (std::size_t k = 0; k < vals.size(); ++k)
            sum += vals[rng.below(vals.size())];
        const double mean = sum / static_cast<double>(vals.size());
        m(pair.first, pair.second) = mean;
        m(pair.second, pair.first) = mean;
        if (pair.first == pair.second) m(pair.first, pair.first) = mean;
    }
    return m;
}

}  // namespace

CorrelationReport bootstrap_ci(const std::vector<RatingRecord>& records,
                               const SimilarityMatrix& human, int n_boot, std::uint64_t seed) {
    if (n_boot < 1) throw DataError("n_boot must be >= 1");
    auto g = group_by_pair(records, human.labels);
    const auto human_flat = upper_triangle(human.values);
    CorrelationReport report;
    report.n_pairs = static_cast<int>(human_flat.size());
    report.n_boot = n_boot;
    report.seed = seed;
    report.r = pearson(upper_triangle(mean_matrix(g, true)), human_flat);
    std::vector<double> rs(static_cast<std::size_t>(n_boot));
    for (int b = 0; b < n_boot; ++b) {
        Rng rng(substream(seed, kBootStream, static_cast<std::uint64_t>(b)));
        rs[static_cast<std::size_t>(b)] =
            pearson(upper_triangle(resample_means(g, rng)), human_flat);
    }
    report.ci_low = percentile(rs, 2.5);
    report.ci_high = percentile(rs, 97.5);
    return report;
}

IrrReport split_half_irr(const std::vector<RatingRecord>& records, int n_splits,
                         std::uint64_t seed) {
    if (n_splits < 1) throw DataError("n_splits must be >= 1");
    // Pair keys are label pairs here; raters need not share a stimulus index.
    std::set<std::string> rater_set;
    for (const auto& rec : records) rater_set.insert(rec.rater_id);
    if (rater_set.size() < 2) throw DataError("split-half IRR needs at least 2 raters");
    std::vector<std::string> raters(rater_set.begin(), rater_set.end());

    using PairKey = std::pair<std::string, std::string>;
    std::map<PairKey, std::map<std::string, std::pair<double, int>>> by_pair;
    for (const auto& rec : records) {
        if (!rec.rating) continue;
        PairKey key = rec.stim_a <= rec.stim_b ? PairKey{rec.stim_a, rec.stim_b}
                                               : PairKey{rec.stim_b, rec.stim_a};
        auto& cell = by_pair[key][rec.rater_id];
        cell.first += *rec.rating;
        cell.second += 1;
    }

    std::vector<double> rs;
    rs.reserve(static_cast<std::size_t>(n_splits));
    const int max_attempts = 10 * n_splits + 100;
    int attempts = 0;
    for (std::uint64_t s = 0; static_cast<int>(rs.size()) < n_splits; ++s) {
        if (++attempts > max_attempts)
            throw DataError("split-half IRR: too many degenerate splits");
        Rng rng(substream(seed, kSplitStream, s));
        std::vector<std::string> order = raters;
        rng.shuffle(order);
        const std::size_t half = order.size() / 2;
        std::set<std::string> first_half(order.begin(), order.begin() + half);
        std::vector<double> xs, ys;
        for (const auto& [key, per_rater] : by_pair) {
            double sum1 = 0.0, sum2 = 0.0;
            int n1 = 0, n2 = 0;
            for (const auto& [rater, cell] : per_rater) {
                if (first_half.count(rater)) {
                    sum1 += cell.first;
                    n1 += cell.second;
                } else {
                    sum2 += cell.first;
                    n2 += cell.second;
                }
            }
            if (n1 > 0 && n2 > 0) {
                xs.push_back(sum1 / n1);
                ys.push_back(sum2 / n2);
            }
        }
        try {
            rs.push_back(pearson(xs, ys));
        } catch (const DataError&) {
            continue;  // halves share too few pairs or are constant; redraw
        }
    }
    IrrReport report;
    report.n_splits = n_splits;
    report.seed = seed;
    double sum = 0.0;
    for (double r : rs) sum += r;
    report.mean_r = sum / static_cast<double>(rs.size());
    report.ci_low = percentile(rs, 2.5);
    report.ci_high = percentile(rs, 97.5);
    return report;
}

DeltaReport delta_r(const std::vector<RatingRecord>& records_a,
                    const std::vector<RatingRecord>& records_b, const SimilarityMatrix& human,
                    int n_boot, std::uint64_t seed) {
    if (n_boot < 1) throw DataError("n_boot must be >= 1");
    auto ga = group_by_pair(records_a, human.labels);
    auto gb = group_by_pair(records_b, human.labels);
    {
        std::set<std::pair<int, int>> pa, pb;
        for (const auto& [pair, vals] : ga.ratings)
            if (!vals.empty()) pa.insert(pair);
        for (const auto& [pair, vals] : gb.ratings)
            if (!vals.empty()) pb.insert(pair);
        if (pa != pb) throw DataError("delta_r record sets cover different pairs");
    }
    const auto human_flat = upper_triangle(human.values);
    DeltaReport report;
    report.n_boot = n_boot;
    report.seed = seed;
    report.r_a = pearson(upper_triangle(mean_matrix(ga, true)), human_flat);
    report.r_b = pearson(upper_triangle(mean_matrix(gb, true)), human_flat);
    report.delta_r = report.r_a - report.r_b;
    std::vector<double> deltas(static_cast<std::size_t>(n_boot));
    for (int b = 0; b < n_boot; ++b) {
        Rng rng(substream(seed, kBootStream, static_cast<std::uint64_t>(b), 0xDE17A));
        const double ra = pearson(upper_triangle(resample_means(ga, rng)), human_flat);
        const double rb = pearson(upper_triangle(resample_means(gb, rng)), human_flat);
        deltas[static_cast<std::size_t>(b)] = ra - rb;
    }
    report.ci_low = percentile(deltas, 2.5);
    report.ci_high = percentile(deltas, 97.5);
    return report;
}

}  // namespace percept
