#include "jacobilab/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace jacobilab {

namespace {

constexpr double kGeneratorTol = 1e-10;

void check_index(int v, int dim, const char* what) {
    if (v < 0 || v >= dim) {
        std::ostringstream msg;
        msg << what << ": index " << v << " out of range [0, " << dim << ")";
        throw Error(msg.str());
    }
}

}  // namespace

CurvatureTensor::CurvatureTensor(int dim)
    : dim_(dim),
      c_(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0) {
    if (dim < 2) throw InvalidModelParams("CurvatureTensor: dim must be >= 2");
}

double CurvatureTensor::max_abs() const {
    double mx = 0.0;
    for (double v : c_) mx = std::max(mx, std::abs(v));
    return mx;
}

CurvatureTensor CurvatureTensor::scaled(double factor) const {
    CurvatureTensor out(dim_);
    for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = factor * c_[i];
    return out;
}

CurvatureTensor CurvatureTensor::plus(const CurvatureTensor& other,
                                      double factor) const {
    if (other.dim_ != dim_)
        throw InvalidModelParams("CurvatureTensor::plus: dimension mismatch");
    CurvatureTensor out(dim_);
    for (std::size_t i = 0; i < c_.size(); ++i)
        out.c_[i] = c_[i] + factor * other.c_[i];
    return out;
}

double SymmetryReport::max_violation() const {
    return std::max(std::max(pair_symmetry, bianchi),
                    std::max(first_antisymmetry, second_antisymmetry));
}

SkewEndomorphism::SkewEndomorphism(Eigen::MatrixXd matrix) : m_(std::move(matrix)) {
    if (m_.rows() != m_.cols())
        throw NotSkew("SkewEndomorphism: matrix must be square");
    const double violation = (m_ + m_.transpose()).cwiseAbs().maxCoeff();
    if (violation > 1e-10)
        throw NotSkew("SkewEndomorphism: ||P + P^T||_max = " +
                      std::to_string(violation));
}

CurvatureTensor build_act(int dim, const std::vector<GeneratorEntry>& entries) {
    CurvatureTensor tensor(dim);
    std::vector<char> assigned(
        static_cast<std::size_t>(dim) * dim * dim * dim, 0);

    auto place = [&](int i, int j, int k, int l, double value) {
        const std::size_t flat =
            ((static_cast<std::size_t>(i) * dim + j) * dim + k) * dim + l;
        if (assigned[flat]) {
            if (std::abs(tensor(i, j, k, l) - value) > kGeneratorTol) {
                std::ostringstream msg;
                msg << "build_act: conflicting values for component (" << i << ","
                    << j << "," << k << "," << l << "): " << tensor(i, j, k, l)
                    << " vs " << value;
                throw SymmetryConflict(msg.str());
            }
            return;
        }
        assigned[flat] = 1;
        tensor.at(i, j, k, l) = value;
    };

    for (const auto& e : entries) {
        check_index(e.i, dim, "build_act");
        check_index(e.j, dim, "build_act");
        check_index(e.k, dim, "build_act");
        check_index(e.l, dim, "build_act");
        // Full Z2 orbit of the generator.
        place(e.i, e.j, e.k, e.l, e.value);
        place(e.j, e.i, e.k, e.l, -e.value);
        place(e.i, e.j, e.l, e.k, -e.value);
        place(e.j, e.i, e.l, e.k, e.value);
        place(e.k, e.l, e.i, e.j, e.value);
        place(e.l, e.k, e.i, e.j, -e.value);
        place(e.k, e.l, e.j, e.i, -e.value);
        place(e.l, e.k, e.j, e.i, e.value);
    }

    const SymmetryReport report = validate_symmetries(tensor);
    const double tol = kGeneratorTol * (1.0 + tensor.max_abs());
    if (report.bianchi > tol)
        throw BianchiViolation("build_act: first Bianchi violation " +
                               std::to_string(report.bianchi));
    if (report.max_violation() > tol)
        throw SymmetryConflict("build_act: symmetry violation " +
                               std::to_string(report.max_violation()));
    return tensor;
}

SymmetryReport validate_symmetries(const CurvatureTensor& R) {
    const int n = R.dim();
    SymmetryReport rep;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    const double v = R(i, j, k, l);
                    rep.first_antisymmetry = std::max(
                        rep.first_antisymmetry, std::abs(v + R(j, i, k, l)));
                    rep.second_antisymmetry = std::max(
                        rep.second_antisymmetry, std::abs(v + R(i, j, l, k)));
                    rep.pair_symmetry = std::max(rep.pair_symmetry,
                                                 std::abs(v - R(k, l, i, j)));
                    rep.bianchi = std::max(
                        rep.bianchi,
                        std::abs(v + R(j, k, i, l) + R(k, i, j, l)));
                }
    return rep;
}

CurvatureTensor build_r0(int dim) {
    CurvatureTensor tensor(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            if (i == j) continue;
            tensor.at(i, j, j, i) = 1.0;
            tensor.at(i, j, i, j) = -1.0;
        }
    return tensor;
}

CurvatureTensor build_rp(const SkewEndomorphism& P) {
    const int n = P.dim();
    const Eigen::MatrixXd& p = P.matrix();
    CurvatureTensor tensor(n);
    // g(P E_i, E_k) = p(k, i)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    tensor.at(i, j, k, l) = p(k, i) * p(l, j) - p(k, j) * p(l, i) +
                                            2.0 * p(j, i) * p(l, k);
    return tensor;
}

SkewEndomorphism paired_frame_endomorphism(const Eigen::MatrixXd& frame,
                                           const std::vector<double>& nus) {
    const int n = static_cast<int>(frame.rows());
    if (frame.cols() != n || n % 2 != 0)
        throw InvalidModelParams("paired_frame_endomorphism: frame must be square, even dim");
    if (static_cast<int>(nus.size()) != n / 2)
        throw InvalidModelParams("paired_frame_endomorphism: need dim/2 nu values");
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n / 2; ++i) {
        const double root = std::sqrt(nus[i]);
        const Eigen::VectorXd e = frame.col(2 * i);
        const Eigen::VectorXd f = frame.col(2 * i + 1);
        p += root * (f * e.transpose() - e * f.transpose());
    }
    return SkewEndomorphism(p);
}

TwoRootModelParams TwoRootModelParams::standard(int dim, double mu,
                                                std::vector<double> nus,
                                                int sign) {
    TwoRootModelParams params;
    params.dim = dim;
    params.mu = mu;
    params.nus = std::move(nus);
    params.frame = Eigen::MatrixXd::Identity(dim, dim);
    params.sign = sign;
    return params;
}

void TwoRootModelParams::validate() const {
    if (dim < 6 || dim % 2 != 0)
        throw InvalidModelParams("two-root model: dim must be even and >= 6");
    if (sign != 1 && sign != -1)
        throw InvalidModelParams("two-root model: sign must be +1 or -1");
    if (static_cast<int>(nus.size()) != dim / 2)
        throw InvalidModelParams("two-root model: need dim/2 nu values");
    for (std::size_t i = 0; i < nus.size(); ++i) {
        if (!(nus[i] > 0.0))
            throw InvalidModelParams("two-root model: nus must be positive");
        if (i > 0 && nus[i] > nus[i - 1] + 1e-12)
            throw InvalidModelParams("two-root model: nus must be non-increasing");
    }
    if (frame.rows() != dim || frame.cols() != dim)
        throw InvalidModelParams("two-root model: frame must be dim x dim");
    const double ortho =
        (frame.transpose() * frame - Eigen::MatrixXd::Identity(dim, dim))
            .cwiseAbs()
            .maxCoeff();
    if (ortho > 1e-10)
        throw InvalidModelParams("two-root model: frame not orthonormal, defect " +
                                 std::to_string(ortho));
}

CurvatureTensor build_two_root_model(const TwoRootModelParams& params) {
    params.validate();
    const SkewEndomorphism p = paired_frame_endomorphism(params.frame, params.nus);
    const CurvatureTensor rp = build_rp(p);
    const CurvatureTensor r0 = build_r0(params.dim);
    return rp.scaled(-params.sign / 3.0).plus(r0, params.sign * params.mu);
}

CurvatureTensor shift(const CurvatureTensor& R, double c) {
    return R.plus(build_r0(R.dim()), -c);
}

double sectional_curvature(const CurvatureTensor& R, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y) {
    const int n = R.dim();
    if (x.size() != n || y.size() != n)
        throw InvalidModelParams("sectional_curvature: vector dimension mismatch");
    const double ex = x.squaredNorm();
    const double ey = y.squaredNorm();
    const double gxy = x.dot(y);
    const double denom = ex * ey - gxy * gxy;
    if (denom <= 1e-14 * ex * ey)
        throw DegeneratePlane("sectional_curvature: degenerate plane");
    double numer = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    numer += R(i, j, k, l) * x[i] * y[j] * y[k] * x[l];
    return numer / denom;
}

std::vector<GeneratorEntry> canonical_generators(const CurvatureTensor& R) {
    const int n = R.dim();
    std::vector<GeneratorEntry> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    if (std::make_pair(i, j) > std::make_pair(k, l)) continue;
                    const double v = R(i, j, k, l);
                    if (v != 0.0) out.push_back({i, j, k, l, v});
                }
    return out;
}

}  // namespace jacobilab
