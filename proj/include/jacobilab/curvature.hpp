#pragma once

// Algebraic curvature tensors on R^n with the standard scalar product.
//
// Index convention (fixed throughout the library):
//   R[i][j][k][l] = R(E_i, E_j, E_k, E_l) and J_X(Y) = R(Y, X) X,
// so the Jacobi matrix entry is (J_X)_{ab} = sum_{i,j} R[b][i][j][a] x_i x_j.
// Sign conventions differ across the literature; everything here is wired to
// this one.

#include <vector>

#include <Eigen/Dense>

#include "jacobilab/errors.hpp"

namespace jacobilab {

/// Dense 4-index tensor with the Riemann Z2 symmetries and the first Bianchi
/// identity. Immutable in practice: constructors validate, users only read.
class CurvatureTensor {
public:
    explicit CurvatureTensor(int dim);

    int dim() const { return dim_; }

    double operator()(int i, int j, int k, int l) const {
        return c_[index(i, j, k, l)];
    }
    double& at(int i, int j, int k, int l) { return c_[index(i, j, k, l)]; }

    double max_abs() const;

    CurvatureTensor scaled(double factor) const;
    CurvatureTensor plus(const CurvatureTensor& other, double factor = 1.0) const;

private:
    std::size_t index(int i, int j, int k, int l) const {
        const std::size_t n = static_cast<std::size_t>(dim_);
        return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
    }

    int dim_;
    std::vector<double> c_;
};

/// Max absolute violation per symmetry class, as reported by
/// validate_symmetries.
struct SymmetryReport {
    double pair_symmetry = 0.0;      // R_ijkl = R_klij
    double first_antisymmetry = 0.0;   // R_ijkl = -R_jikl
    double second_antisymmetry = 0.0;  // R_ijkl = -R_ijlk
    double bianchi = 0.0;              // R_ijkl + R_jkil + R_kijl = 0

    double max_violation() const;
    bool passes(double tol) const { return max_violation() <= tol; }
};

/// One tensor component given by index (0-based) and value; the Z2 orbit is
/// filled in automatically.
struct GeneratorEntry {
    int i, j, k, l;
    double value;
};

/// Skew-adjoint endomorphism; the constructor rejects matrices with
/// ||P + P^T||_max > 1e-10.
class SkewEndomorphism {
public:
    explicit SkewEndomorphism(Eigen::MatrixXd matrix);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Eigen::MatrixXd& matrix() const { return m_; }

private:
    Eigen::MatrixXd m_;
};

/// Parameters of the two-root family R = sign * (-1/3 R^P + mu R^0) with
/// P(E_i) = sqrt(nu_i) F_i on the paired frame (E_1, F_1, ..., E_{n/2}, F_{n/2}).
struct TwoRootModelParams {
    int dim = 0;
    double mu = 0.0;
    std::vector<double> nus;  // positive, non-increasing, size dim/2
    Eigen::MatrixXd frame;    // columns E_1, F_1, ..., orthonormal
    int sign = +1;

    /// Standard basis frame.
    static TwoRootModelParams standard(int dim, double mu,
                                       std::vector<double> nus, int sign = +1);

    void validate() const;  // throws InvalidModelParams
};

/// Densifies generator entries by the Z2 symmetries. Conflicting values
/// (differing by more than 1e-10) raise SymmetryConflict; a first-Bianchi
/// violation in the densified tensor raises BianchiViolation.
CurvatureTensor build_act(int dim, const std::vector<GeneratorEntry>& entries);

/// Report-only check of all four symmetry classes.
SymmetryReport validate_symmetries(const CurvatureTensor& R);

/// Constant-sectional-curvature-one tensor:
/// R0[i][j][k][l] = d_jk d_il - d_ik d_jl.
CurvatureTensor build_r0(int dim);

/// Tensor generated by a skew-adjoint P:
/// R^P(X,Y,Z,W) = g(PX,Z)g(PY,W) - g(PY,Z)g(PX,W) + 2 g(PX,Y)g(PZ,W).
CurvatureTensor build_rp(const SkewEndomorphism& P);

/// P with P(E_i) = sqrt(nu_i) F_i, P(F_i) = -sqrt(nu_i) E_i on a paired frame.
SkewEndomorphism paired_frame_endomorphism(const Eigen::MatrixXd& frame,
                                           const std::vector<double>& nus);

CurvatureTensor build_two_root_model(const TwoRootModelParams& params);

/// Componentwise R - c * R0.
CurvatureTensor shift(const CurvatureTensor& R, double c);

/// kappa(x, y) = R(x,y,y,x) / (e_x e_y - g(x,y)^2).
/// Throws DegeneratePlane when the plane is (numerically) degenerate.
double sectional_curvature(const CurvatureTensor& R, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y);

/// Canonical generator set: nonzero components with i<j, k<l and
/// (i,j) <= (k,l) lexicographically. Round-trips exactly through build_act.
std::vector<GeneratorEntry> canonical_generators(const CurvatureTensor& R);

}  // namespace jacobilab
