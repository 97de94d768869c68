#pragma once

#include "bincs/sparse_matrix.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace bincs {

/// Dense real measurement matrix with cached column norms.
class RealMatrix {
public:
    RealMatrix() = default;
    explicit RealMatrix(Eigen::MatrixXd entries);

    Index rows() const { return static_cast<Index>(entries_.rows()); }
    Index cols() const { return static_cast<Index>(entries_.cols()); }
    const Eigen::MatrixXd& entries() const { return entries_; }
    const Eigen::VectorXd& column_norms() const { return norms_; }

private:
    Eigen::MatrixXd entries_;
    Eigen::VectorXd norms_;
};

using Rng = std::mt19937_64;

/// Independent stream for one (seed, k, trial) triple, so trials can run in any order.
Rng trial_stream(std::uint64_t seed, std::uint64_t k, std::uint64_t trial);
/// Stream used to draw the Gaussian baseline for a master seed.
Rng matrix_stream(std::uint64_t seed);

/// 0/1 copy of a binary matrix. Throws ZeroColumn.
RealMatrix binarize_to_real(const SparseBinaryMatrix& h);

/// i.i.d. standard normal entries, drawn column by column.
RealMatrix gaussian_matrix(Index m, Index n, Rng& rng);

struct SparseSignal {
    Index n = 0;
    std::vector<Index> support;  ///< strictly increasing
    std::vector<double> values;  ///< nonzero

    Eigen::VectorXd dense() const;
};

/// Uniform support without replacement, standard normal values (zeros redrawn).
/// Throws BadK unless 1 <= k <= n.
SparseSignal generate_sparse_signal(Index n, Index k, Rng& rng);

struct OmpResult {
    Eigen::VectorXd x;
    /// Columns in the order they were selected.
    std::vector<Index> selected;
    /// Residual norm before the first iteration and after each one.
    std::vector<double> residual_norms;
};

/// Orthogonal matching pursuit with at most k iterations. Selection maximizes
/// |<a_j, r>| / ||a_j|| (smallest index on ties); coefficients are the least
/// squares fit on the selected columns. Stops early once ||r|| <= 1e-12 ||y||.
/// Throws BadK (k > m), ShapeMismatch, SingularSupport.
OmpResult omp_detailed(const RealMatrix& a, const Eigen::VectorXd& y, Index k);
Eigen::VectorXd omp(const RealMatrix& a, const Eigen::VectorXd& y, Index k);

struct SparsityRecord {
    Index k = 0;
    std::uint64_t trials = 0;
    std::uint64_t perfect = 0;
    double percent = 0.0;
    double mean_rel_err = 0.0;
};

struct ExperimentResult {
    std::string matrix_id;
    Index m = 0;
    Index n = 0;
    std::uint64_t seed = 0;
    double threshold = 0.0;
    std::vector<SparsityRecord> records;

    /// Header `matrix,m,n,k,trials,perfect,percent,mean_rel_err,seed` plus one row per k.
    std::string to_csv(bool with_header = true) const;
};

std::string experiment_csv_header();

inline constexpr double kPerfectRecoveryThreshold = 1e-3;

struct ExperimentOptions {
    std::string matrix_id = "matrix";
    double threshold = kPerfectRecoveryThreshold;
    /// 0 picks the hardware concurrency; results do not depend on it.
    unsigned threads = 0;
};

/// Monte Carlo protocol: per trial draw a k-sparse x, measure y = A x, recover
/// with OMP, and count e = ||x* - x|| / ||x|| <= threshold as perfect. A trial
/// whose support turns singular is imperfect with e = 1.
/// Throws BadK unless every k lies in [1, m]; BadParams when trials == 0.
ExperimentResult run_experiment(const RealMatrix& a, const std::vector<Index>& k_list, std::uint64_t trials,
                                std::uint64_t seed, const ExperimentOptions& options = {});

}  // namespace bincs
