#pragma once

// Deterministic dense linear algebra and sampling primitives shared by the
// whole library. Everything here is a pure function of its arguments.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "jacobilab/errors.hpp"

namespace jacobilab {

/// Symmetric real matrix stored as one (lower) triangle, so the symmetry
/// invariant holds exactly by construction.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(int dim);

    /// Builds from a dense matrix, averaging the two triangles.
    static SymmetricMatrix from_dense(const Eigen::MatrixXd& m);

    int dim() const { return dim_; }
    double operator()(int a, int b) const { return tri_[index(a, b)]; }
    void set(int a, int b, double value) { tri_[index(a, b)] = value; }

    Eigen::MatrixXd dense() const;
    double max_abs() const;

private:
    std::size_t index(int a, int b) const {
        if (a < b) std::swap(a, b);
        return static_cast<std::size_t>(a) * (a + 1) / 2 + b;
    }

    int dim_;
    std::vector<double> tri_;
};

struct EigenCluster {
    double value;
    int multiplicity;
};

/// Clustered eigenvalues with strictly increasing cluster values; adjacent
/// cluster values are separated by more than tolerance_used.
struct EigenClusterSet {
    std::vector<EigenCluster> clusters;
    double tolerance_used = 0.0;

    int total_multiplicity() const;
};

struct SymEigenResult {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // orthonormal columns, same order
};

/// Full eigendecomposition of a symmetric matrix.
/// Throws InvalidMatrix on non-finite entries.
SymEigenResult sym_eigen(const SymmetricMatrix& m);

/// n-1 orthonormal columns spanning the hyperplane orthogonal to x.
/// Throws ZeroVector when x vanishes.
Eigen::MatrixXd orthonormal_complement(const Eigen::VectorXd& x);

/// Merges ascending values into clusters: adjacent values belong to the same
/// cluster iff their gap is at most rel_tol * max(1, spectral radius).
/// The cluster value is the arithmetic mean of its members.
EigenClusterSet cluster_eigenvalues(const std::vector<double>& ascending_values,
                                    double rel_tol);

/// Deterministic unit vectors: normalized iid standard Gaussians drawn from a
/// generator seeded with `seed`. Pure function of (dim, count, seed).
std::vector<Eigen::VectorXd> sample_unit_sphere(int dim, int count,
                                                std::uint64_t seed);

/// dim(span A ∩ span B), with columns as basis vectors. Singular values below
/// tol * max(1, sigma_max) count as zero. Throws DegenerateBasis when either
/// input is not linearly independent.
int subspace_intersection_dim(const Eigen::MatrixXd& basis_a,
                              const Eigen::MatrixXd& basis_b, double tol);

}  // namespace jacobilab
