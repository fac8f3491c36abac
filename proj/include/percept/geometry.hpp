#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace percept {

struct Embedding {
    Eigen::MatrixXd coords;  // n x dim
    std::string method;      // "classical" | "majorization"
    double stress = 0.0;     // Kruskal stress-1 against the input dissimilarities
    int iterations = 0;
    std::vector<double> eigenvalues;    // classical only, descending
    int n_negative_eigenvalues = 0;     // classical only, truncated count
};

struct IntervalProfile {
    std::vector<double> mean;  // mean similarity at index separation k
    std::vector<int> count;    // samples per k: n - k
};

struct ProcrustesResult {
    Eigen::MatrixXd x_std;      // reference, centered and unit Frobenius norm
    Eigen::MatrixXd y_aligned;  // other matrix mapped onto x_std
    double disparity = 0.0;     // squared Frobenius residual, 1 - (sum of svals)^2
};

enum class MdsInit { classical, random };

// d = s_max - s with zero diagonal; input must be symmetric to 1e-9.
Eigen::MatrixXd sim_to_dissim(const Eigen::MatrixXd& s);

// Torgerson scaling: double-center -D^2/2, eigendecompose, keep the top `dim`
// nonnegative eigenpairs (fewer if the spectrum runs out, recorded in the
// result). Eigenvector signs are fixed by making each vector's
// largest-magnitude component positive.
Embedding classical_mds(const Eigen::MatrixXd& d, int dim);

// Stress majorization (Guttman transform). Raw stress is checked to be
// nonincreasing every iteration; an increase beyond 1e-12 indicates a bug and
// throws. Default init is the classical solution.
Embedding smacof(const Eigen::MatrixXd& d, int dim, MdsInit init = MdsInit::classical,
                 int max_iter = 300, double tol = 1e-9, std::uint64_t seed = 0);

// Kruskal stress-1 over the strict upper triangle.
double stress1(const Eigen::MatrixXd& d, const Eigen::MatrixXd& coords);

// profile(k) = mean of S[i, i+k]; smoothed matrix is the Toeplitz matrix with
// entry profile(|i-j|).
std::pair<Eigen::MatrixXd, IntervalProfile> subdiagonal_smooth(const Eigen::MatrixXd& s);

// Interior local maxima with prominence (min rise over both neighbors) at
// least `threshold`; 0 reports every strict local max.
std::vector<int> detect_peaks(const std::vector<double>& profile, double threshold = 0.0);

// Full Procrustes: translation + rotation/reflection + uniform scale of y
// onto x, both standardized first. Matches the usual disparity convention of
// scientific computing libraries.
ProcrustesResult procrustes_align(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

}  // namespace percept
