#include "bincs/recovery.hpp"

#include "bincs/error.hpp"
#include "bincs/format.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <sstream>
#include <thread>

namespace bincs {

RealMatrix::RealMatrix(Eigen::MatrixXd entries)
    : entries_(std::move(entries)), norms_(entries_.colwise().norm().transpose()) {}

namespace {

std::seed_seq make_seq(std::initializer_list<std::uint64_t> words) {
    std::vector<std::uint32_t> halves;
    for (auto w : words) {
        halves.push_back(static_cast<std::uint32_t>(w));
        halves.push_back(static_cast<std::uint32_t>(w >> 32));
    }
    return std::seed_seq(halves.begin(), halves.end());
}

constexpr std::uint64_t kTrialTag = 0x747269616cULL;   // "trial"
constexpr std::uint64_t kMatrixTag = 0x6761757373ULL;  // "gauss"

}  // namespace

Rng trial_stream(std::uint64_t seed, std::uint64_t k, std::uint64_t trial) {
    auto seq = make_seq({kTrialTag, seed, k, trial});
    return Rng(seq);
}

Rng matrix_stream(std::uint64_t seed) {
    auto seq = make_seq({kMatrixTag, seed});
    return Rng(seq);
}

RealMatrix binarize_to_real(const SparseBinaryMatrix& h) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(h.rows(), h.cols());
    for (Index j = 0; j < h.cols(); ++j) {
        const auto col = h.column(j);
        if (col.empty()) throw Error(ErrorKind::ZeroColumn, "column " + std::to_string(j) + " is all zero");
        for (Index r : col) a(r, j) = 1.0;
    }
    return RealMatrix(std::move(a));
}

RealMatrix gaussian_matrix(Index m, Index n, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd a(m, n);
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < m; ++i) a(i, j) = normal(rng);
    }
    return RealMatrix(std::move(a));
}

Eigen::VectorXd SparseSignal::dense() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (std::size_t t = 0; t < support.size(); ++t) x(support[t]) = values[t];
    return x;
}

SparseSignal generate_sparse_signal(Index n, Index k, Rng& rng) {
    if (k < 1 || k > n) {
        throw Error(ErrorKind::BadK, "sparsity k=" + std::to_string(k) + " outside [1, " +
                                         std::to_string(n) + "]");
    }
    SparseSignal s;
    s.n = n;
    std::vector<Index> all(n);
    std::iota(all.begin(), all.end(), Index{0});
    s.support.reserve(k);
    std::sample(all.begin(), all.end(), std::back_inserter(s.support), k, rng);
    std::normal_distribution<double> normal(0.0, 1.0);
    s.values.reserve(k);
    for (Index t = 0; t < k; ++t) {
        double v = 0.0;
        while (v == 0.0) v = normal(rng);
        s.values.push_back(v);
    }
    return s;
}

OmpResult omp_detailed(const RealMatrix& a, const Eigen::VectorXd& y, Index k) {
    const Eigen::MatrixXd& A = a.entries();
    if (y.size() != A.rows()) {
        throw Error(ErrorKind::ShapeMismatch, "measurement length " + std::to_string(y.size()) +
                                                  " does not match " + std::to_string(A.rows()) + " rows");
    }
    if (k > a.rows()) {
        throw Error(ErrorKind::BadK, "k=" + std::to_string(k) + " exceeds m=" + std::to_string(a.rows()));
    }
    const Eigen::VectorXd& norms = a.column_norms();
    OmpResult out;
    out.x = Eigen::VectorXd::Zero(A.cols());
    Eigen::VectorXd r = y;
    const double y_norm = y.norm();
    out.residual_norms.push_back(y_norm);
    std::vector<bool> chosen(A.cols(), false);
    Eigen::VectorXd coef;

    for (Index it = 0; it < k; ++it) {
        if (r.norm() <= 1e-12 * y_norm) break;
        const Eigen::VectorXd corr = A.transpose() * r;
        Index pick = 0;
        double best = -1.0;
        for (Index j = 0; j < a.cols(); ++j) {
            if (chosen[j] || norms(j) <= 0.0) continue;
            const double score = std::abs(corr(j)) / norms(j);
            if (score > best) {
                best = score;
                pick = j;
            }
        }
        if (best < 0.0) break;
        chosen[pick] = true;
        out.selected.push_back(pick);

        Eigen::MatrixXd sub(A.rows(), static_cast<Eigen::Index>(out.selected.size()));
        for (std::size_t c = 0; c < out.selected.size(); ++c) sub.col(c) = A.col(out.selected[c]);
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
        if (qr.rank() < sub.cols()) {
            throw Error(ErrorKind::SingularSupport,
                        "selected columns are rank deficient at iteration " + std::to_string(it + 1));
        }
        coef = qr.solve(y);
        r = y - sub * coef;
        out.residual_norms.push_back(r.norm());
    }
    for (std::size_t c = 0; c < out.selected.size(); ++c) out.x(out.selected[c]) = coef(c);
    return out;
}

Eigen::VectorXd omp(const RealMatrix& a, const Eigen::VectorXd& y, Index k) {
    return omp_detailed(a, y, k).x;
}

std::string experiment_csv_header() { return "matrix,m,n,k,trials,perfect,percent,mean_rel_err,seed\n"; }

std::string ExperimentResult::to_csv(bool with_header) const {
    std::ostringstream out;
    if (with_header) out << experiment_csv_header();
    for (const auto& r : records) {
        out << matrix_id << ',' << m << ',' << n << ',' << r.k << ',' << r.trials << ',' << r.perfect << ','
            << format_sig(r.percent, 6) << ',' << format_sig(r.mean_rel_err, 6) << ',' << seed << '\n';
    }
    return out.str();
}

ExperimentResult run_experiment(const RealMatrix& a, const std::vector<Index>& k_list, std::uint64_t trials,
                                std::uint64_t seed, const ExperimentOptions& options) {
    for (Index k : k_list) {
        if (k < 1 || k > a.rows()) {
            throw Error(ErrorKind::BadK, "sparsity k=" + std::to_string(k) + " outside [1, " +
                                             std::to_string(a.rows()) + "]");
        }
    }
    if (trials == 0) throw Error(ErrorKind::BadParams, "need at least one trial");

    ExperimentResult result;
    result.matrix_id = options.matrix_id;
    result.m = a.rows();
    result.n = a.cols();
    result.seed = seed;
    result.threshold = options.threshold;

    unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                            : options.threads;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));

    std::vector<double> errors(trials);
    std::vector<char> perfect(trials);
    for (Index k : k_list) {
        auto run_trial = [&](std::uint64_t t) {
            Rng rng = trial_stream(seed, k, t);
            const SparseSignal sig = generate_sparse_signal(a.cols(), k, rng);
            const Eigen::VectorXd x = sig.dense();
            const Eigen::VectorXd y = a.entries() * x;
            try {
                const Eigen::VectorXd xr = omp(a, y, k);
                errors[t] = (xr - x).norm() / x.norm();
                perfect[t] = errors[t] <= options.threshold;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::SingularSupport) throw;
                errors[t] = 1.0;
                perfect[t] = 0;
            }
        };
        if (threads <= 1) {
            for (std::uint64_t t = 0; t < trials; ++t) run_trial(t);
        } else {
            std::atomic<std::uint64_t> next{0};
            std::vector<std::exception_ptr> failures(threads);
            {
                std::vector<std::jthread> pool;
                for (unsigned w = 0; w < threads; ++w) {
                    pool.emplace_back([&, w] {
                        try {
                            for (std::uint64_t t = next++; t < trials; t = next++) run_trial(t);
                        } catch (...) {
                            failures[w] = std::current_exception();
                            next = trials;
                        }
                    });
                }
            }
            for (const auto& f : failures)
                if (f) std::rethrow_exception(f);
        }
        SparsityRecord rec;
        rec.k = k;
        rec.trials = trials;
        double sum = 0.0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            rec.perfect += perfect[t] ? 1 : 0;
            sum += errors[t];
        }
        rec.percent = 100.0 * static_cast<double>(rec.perfect) / static_cast<double>(trials);
        rec.mean_rel_err = sum / static_cast<double>(trials);
        result.records.push_back(rec);
    }
    return result;
}

}  // namespace bincs
