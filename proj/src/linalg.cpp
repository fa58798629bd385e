#include "jacobilab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace jacobilab {

SymmetricMatrix::SymmetricMatrix(int dim)
    : dim_(dim), tri_(static_cast<std::size_t>(dim) * (dim + 1) / 2, 0.0) {
    if (dim < 1) throw InvalidMatrix("SymmetricMatrix: dimension must be positive");
}

SymmetricMatrix SymmetricMatrix::from_dense(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw InvalidMatrix("from_dense: matrix must be square");
    SymmetricMatrix out(static_cast<int>(m.rows()));
    for (int a = 0; a < out.dim_; ++a)
        for (int b = 0; b <= a; ++b)
            out.set(a, b, 0.5 * (m(a, b) + m(b, a)));
    return out;
}

Eigen::MatrixXd SymmetricMatrix::dense() const {
    Eigen::MatrixXd m(dim_, dim_);
    for (int a = 0; a < dim_; ++a)
        for (int b = 0; b <= a; ++b)
            m(a, b) = m(b, a) = (*this)(a, b);
    return m;
}

double SymmetricMatrix::max_abs() const {
    double mx = 0.0;
    for (double v : tri_) mx = std::max(mx, std::abs(v));
    return mx;
}

int EigenClusterSet::total_multiplicity() const {
    int total = 0;
    for (const auto& c : clusters) total += c.multiplicity;
    return total;
}

SymEigenResult sym_eigen(const SymmetricMatrix& m) {
    Eigen::MatrixXd dense = m.dense();
    if (!dense.allFinite()) throw InvalidMatrix("sym_eigen: non-finite entries");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
    if (solver.info() != Eigen::Success)
        throw InvalidMatrix("sym_eigen: eigensolver failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::MatrixXd orthonormal_complement(const Eigen::VectorXd& x) {
    const double norm = x.norm();
    if (!(norm > 0.0)) throw ZeroVector("orthonormal_complement: zero vector");
    const auto n = x.size();
    if (n < 2) return Eigen::MatrixXd(n, 0);
    // The trailing columns of the Householder Q for [x] span x^perp.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
    Eigen::MatrixXd q = qr.householderQ();
    return q.rightCols(n - 1);
}

EigenClusterSet cluster_eigenvalues(const std::vector<double>& ascending_values,
                                    double rel_tol) {
    if (ascending_values.empty())
        throw EmptyInput("cluster_eigenvalues: empty input");
    if (!(rel_tol > 0.0))
        throw InvalidMatrix("cluster_eigenvalues: rel_tol must be positive");

    double radius = 0.0;
    for (double v : ascending_values) radius = std::max(radius, std::abs(v));
    const double gap_tol = rel_tol * std::max(1.0, radius);

    EigenClusterSet out;
    out.tolerance_used = gap_tol;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= ascending_values.size(); ++i) {
        const bool close_gap =
            i < ascending_values.size() &&
            ascending_values[i] - ascending_values[i - 1] <= gap_tol;
        if (close_gap) continue;
        double sum = 0.0;
        for (std::size_t j = start; j < i; ++j) sum += ascending_values[j];
        out.clusters.push_back(
            {sum / static_cast<double>(i - start), static_cast<int>(i - start)});
        start = i;
    }
    return out;
}

std::vector<Eigen::VectorXd> sample_unit_sphere(int dim, int count,
                                                std::uint64_t seed) {
    if (dim < 1) throw InvalidMatrix("sample_unit_sphere: dim must be positive");
    if (count < 0) throw InvalidMatrix("sample_unit_sphere: negative count");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Eigen::VectorXd> out;
    out.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(out.size()) < count) {
        Eigen::VectorXd v(dim);
        for (int i = 0; i < dim; ++i) v[i] = gauss(rng);
        const double norm = v.norm();
        if (norm < 1e-12) continue;  // redraw; essentially never happens
        out.push_back(v / norm);
    }
    return out;
}

namespace {

int numeric_rank(const Eigen::MatrixXd& m, double tol) {
    if (m.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    const double threshold = tol * std::max(1.0, sv.size() ? sv[0] : 0.0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > threshold) ++rank;
    return rank;
}

}  // namespace

int subspace_intersection_dim(const Eigen::MatrixXd& basis_a,
                              const Eigen::MatrixXd& basis_b, double tol) {
    if (basis_a.rows() != basis_b.rows())
        throw InvalidMatrix("subspace_intersection_dim: ambient dims differ");
    const int rank_a = numeric_rank(basis_a, tol);
    const int rank_b = numeric_rank(basis_b, tol);
    if (rank_a != basis_a.cols())
        throw DegenerateBasis("subspace_intersection_dim: first basis dependent");
    if (rank_b != basis_b.cols())
        throw DegenerateBasis("subspace_intersection_dim: second basis dependent");

    Eigen::MatrixXd joint(basis_a.rows(), basis_a.cols() + basis_b.cols());
    joint << basis_a, basis_b;
    return rank_a + rank_b - numeric_rank(joint, tol);
}

}  // namespace jacobilab
