#include "percept/geometry.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "percept/errors.hpp"
#include "percept/rng.hpp"

namespace percept {

namespace {

void check_square(const Eigen::MatrixXd& m, const char* what) {
    if (m.rows() != m.cols()) throw DataError(std::string(what) + " must be square");
    if (m.rows() < 2) throw DataError(std::string(what) + " needs at least 2 rows");
}

void check_dissimilarity(const Eigen::MatrixXd& d) {
    check_square(d, "dissimilarity matrix");
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
        for (Eigen::Index j = 0; j < d.cols(); ++j) {
            if (!std::isfinite(d(i, j)) || d(i, j) < 0.0)
                throw DataError("dissimilarities must be finite and nonnegative");
            if (std::abs(d(i, j) - d(j, i)) > 1e-9)
                throw DataError("dissimilarity matrix is not symmetric");
        }
        if (std::abs(d(i, i)) > 1e-12) throw DataError("dissimilarity diagonal must be zero");
    }
}

Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& coords) {
    const Eigen::Index n = coords.rows();
    Eigen::MatrixXd dist(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        dist(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double v = (coords.row(i) - coords.row(j)).norm();
            dist(i, j) = v;
            dist(j, i) = v;
        }
    }
    return dist;
}

double raw_stress(const Eigen::MatrixXd& d, const Eigen::MatrixXd& coords) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < d.rows(); ++i)
        for (Eigen::Index j = i + 1; j < d.cols(); ++j) {
            double diff = d(i, j) - (coords.row(i) - coords.row(j)).norm();
            s += diff * diff;
        }
    return s;
}

}  // namespace

Eigen::MatrixXd sim_to_dissim(const Eigen::MatrixXd& s) {
    check_square(s, "similarity matrix");
    if (!s.isApprox(s.transpose(), 1e-9) &&
        (s - s.transpose()).cwiseAbs().maxCoeff() > 1e-9)
        throw DataError("similarity matrix is not symmetric");
    const double s_max = s.maxCoeff();
    Eigen::MatrixXd d = (s_max - s.array()).matrix();
    d = ((d + d.transpose()) / 2.0).eval();  // cancel rounding-level asymmetry
    d.diagonal().setZero();
    return d;
}

Embedding classical_mds(const Eigen::MatrixXd& d, int dim) {
    check_dissimilarity(d);
    const Eigen::Index n = d.rows();
    if (dim < 1 || dim > static_cast<int>(n) - 1)
        throw DataError("embedding dimension must be in [1, n-1]");
    const Eigen::MatrixXd d2 = d.cwiseProduct(d);
    const Eigen::MatrixXd j =
        Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / double(n));
    const Eigen::MatrixXd b = -0.5 * j * d2 * j;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
    if (solver.info() != Eigen::Success) throw DataError("eigendecomposition failed");

    // Eigen returns ascending order; walk from the back for descending.
    Embedding emb;
    emb.method = "classical";
    const auto& evals = solver.eigenvalues();
    const auto& evecs = solver.eigenvectors();
    emb.eigenvalues.resize(static_cast<std::size_t>(n));
    // Exact Euclidean input leaves n-1-rank eigenvalues at numerical zero on
    // either side of 0; only count ones negative beyond roundoff scale.
    const double negative_floor =
        -1e-12 * std::max(std::abs(evals(0)), std::abs(evals(n - 1)));
    for (Eigen::Index k = 0; k < n; ++k) {
        double ev = evals(n - 1 - k);
        emb.eigenvalues[static_cast<std::size_t>(k)] = ev;
        if (ev < negative_floor) ++emb.n_negative_eigenvalues;
    }
    int kept = 0;
    for (int k = 0; k < dim; ++k)
        if (emb.eigenvalues[static_cast<std::size_t>(k)] > 0.0) ++kept;
    emb.coords = Eigen::MatrixXd::Zero(n, kept);
    for (int k = 0; k < kept; ++k) {
        Eigen::VectorXd v = evecs.col(n - 1 - k);
        Eigen::Index imax = 0;
        v.cwiseAbs().maxCoeff(&imax);
        if (v(imax) < 0.0) v = -v;
        emb.coords.col(k) = v * std::sqrt(emb.eigenvalues[static_cast<std::size_t>(k)]);
    }
    emb.iterations = 0;
    emb.stress = stress1(d, emb.coords);
    return emb;
}

Embedding smacof(const Eigen::MatrixXd& d, int dim, MdsInit init, int max_iter, double tol,
                 std::uint64_t seed) {
    check_dissimilarity(d);
    const Eigen::Index n = d.rows();
    if (dim < 1 || dim > static_cast<int>(n) - 1)
        throw DataError("embedding dimension must be in [1, n-1]");
    Eigen::MatrixXd x;
    if (init == MdsInit::classical) {
        Eigen::MatrixXd c = classical_mds(d, dim).coords;
        x = Eigen::MatrixXd::Zero(n, dim);
        x.leftCols(c.cols()) = c;  // pad if the spectrum gave fewer axes
    } else {
        Rng rng(substream(seed, 0x53AC0F));
        x = Eigen::MatrixXd(n, dim);
        for (Eigen::Index i = 0; i < n; ++i)
            for (int k = 0; k < dim; ++k) x(i, k) = rng.normal();
    }
    double stress_prev = raw_stress(d, x);
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        // Guttman transform: X' = (1/n) B(X) X.
        Eigen::MatrixXd bmat = Eigen::MatrixXd::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                if (i == j) continue;
                double dist = (x.row(i) - x.row(j)).norm();
                if (dist > 0.0) bmat(i, j) = -d(i, j) / dist;
            }
            bmat(i, i) = -bmat.row(i).sum();
        }
        Eigen::MatrixXd x_next = bmat * x / static_cast<double>(n);
        double stress_next = raw_stress(d, x_next);
        if (stress_next > stress_prev + 1e-12)
            throw std::logic_error("smacof stress increased; majorization step is broken");
        x = std::move(x_next);
        const bool converged =
            stress_prev - stress_next < tol * std::max(stress_prev, 1e-300);
        stress_prev = stress_next;
        if (converged) {
            ++iter;
            break;
        }
    }
    Embedding emb;
    emb.method = "majorization";
    emb.coords = std::move(x);
    emb.iterations = iter;
    emb.stress = stress1(d, emb.coords);
    return emb;
}

double stress1(const Eigen::MatrixXd& d, const Eigen::MatrixXd& coords) {
    check_square(d, "dissimilarity matrix");
    if (coords.rows() != d.rows()) throw DataError("coordinate row count mismatch");
    double num = 0.0, den = 0.0;
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < d.cols(); ++j) {
            double dhat = (coords.row(i) - coords.row(j)).norm();
            num += (d(i, j) - dhat) * (d(i, j) - dhat);
            den += d(i, j) * d(i, j);
        }
    }
    if (den == 0.0) throw DataError("stress-1 undefined for an all-zero dissimilarity matrix");
    return std::sqrt(num / den);
}

std::pair<Eigen::MatrixXd, IntervalProfile> subdiagonal_smooth(const Eigen::MatrixXd& s) {
    check_square(s, "similarity matrix");
    const Eigen::Index n = s.rows();
    IntervalProfile profile;
    profile.mean.resize(static_cast<std::size_t>(n));
    profile.count.resize(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        double sum = 0.0;
        for (Eigen::Index i = 0; i + k < n; ++i) sum += s(i, i + k);
        profile.mean[static_cast<std::size_t>(k)] = sum / static_cast<double>(n - k);
        profile.count[static_cast<std::size_t>(k)] = static_cast<int>(n - k);
    }
    Eigen::MatrixXd smoothed(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            smoothed(i, j) = profile.mean[static_cast<std::size_t>(std::abs(i - j))];
    return {std::move(smoothed), std::move(profile)};
}

std::vector<int> detect_peaks(const std::vector<double>& profile, double threshold) {
    std::vector<int> peaks;
    if (profile.size() < 3) return peaks;
    for (std::size_t k = 1; k + 1 < profile.size(); ++k) {
        const double rise_left = profile[k] - profile[k - 1];
        const double rise_right = profile[k] - profile[k + 1];
        if (rise_left > 0.0 && rise_right > 0.0 &&
            std::min(rise_left, rise_right) >= threshold)
            peaks.push_back(static_cast<int>(k));
    }
    return peaks;
}

ProcrustesResult procrustes_align(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw DataError("procrustes inputs must share a shape");
    if (x.rows() < 2) throw DataError("procrustes needs at least 2 points");
    auto standardize = [](const Eigen::MatrixXd& m) {
        Eigen::MatrixXd c = m.rowwise() - m.colwise().mean();
        double norm = c.norm();
        if (norm == 0.0) throw DataError("procrustes input has zero variance");
        return Eigen::MatrixXd(c / norm);
    };
    Eigen::MatrixXd mx = standardize(x);
    Eigen::MatrixXd my = standardize(y);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(my.transpose() * mx,
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::MatrixXd r = svd.matrixU() * svd.matrixV().transpose();
    const double scale = svd.singularValues().sum();
    ProcrustesResult result;
    result.x_std = std::move(mx);
    result.y_aligned = my * r * scale;
    result.disparity = (result.x_std - result.y_aligned).squaredNorm();
    return result;
}

}  // namespace percept
