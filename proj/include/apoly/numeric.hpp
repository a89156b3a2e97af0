#pragma once
// Numerical back end: damped Gauss-Newton least squares (real or complex),
// univariate root finding via the companion matrix, and an adapter that turns
// a polynomial system into residual/Jacobian callbacks so solutions of the
// representation systems can be located and polished numerically.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "apoly/core.hpp"
#include "apoly/mpoly.hpp"

namespace apoly {

using Cx = std::complex<double>;

// ---------------------------------------------------------------------------
// Damped Gauss-Newton (Levenberg style) for min ||F(x)||^2.
// ---------------------------------------------------------------------------

struct GaussNewtonOptions {
    int max_iterations = 120;
    double residual_tol = 1e-14;  // stop when ||F||_inf drops below this
    double step_tol = 1e-15;      // stop when the accepted step is this small
    double lambda_init = 1e-3;
    double lambda_max = 1e12;
};

template <typename Scalar>
struct GaussNewtonResult {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
    double residual = std::numeric_limits<double>::infinity();  // ||F||_inf
    bool converged = false;
    int iterations = 0;
};

// fn(x, F, J) must resize and fill the residual vector F (size m) and the
// Jacobian J (m x n) at x (size n).  Works for real and complex Scalar.
template <typename Scalar>
GaussNewtonResult<Scalar> gauss_newton(
    const std::function<void(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>&,
                             Eigen::Matrix<Scalar, Eigen::Dynamic, 1>&,
                             Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>&)>& fn,
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x,
    const GaussNewtonOptions& opt = {}) {
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    GaussNewtonResult<Scalar> out;
    Vec F;
    Mat J;
    fn(x, F, J);
    double cost = F.squaredNorm();
    double lambda = opt.lambda_init;
    for (int it = 0; it < opt.max_iterations; ++it) {
        out.iterations = it + 1;
        if (F.size() == 0 || F.template lpNorm<Eigen::Infinity>() < opt.residual_tol) break;
        Mat H = J.adjoint() * J;
        Vec g = J.adjoint() * F;
        bool stepped = false;
        for (int tries = 0; tries < 40 && lambda <= opt.lambda_max; ++tries) {
            Mat Hd = H;
            for (Eigen::Index i = 0; i < Hd.rows(); ++i) Hd(i, i) += Scalar(lambda);
            Vec delta = Hd.ldlt().solve(g);
            Vec cand = x - delta;
            Vec Fc;
            Mat Jc;
            fn(cand, Fc, Jc);
            double cc = Fc.squaredNorm();
            if (std::isfinite(cc) && cc < cost) {
                x = std::move(cand);
                F = std::move(Fc);
                J = std::move(Jc);
                cost = cc;
                lambda = std::max(lambda * 0.35, 1e-14);
                stepped = true;
                if (delta.norm() < opt.step_tol) it = opt.max_iterations;  // done
                break;
            }
            lambda *= 8.0;
        }
        if (!stepped) break;  // stuck in a local minimum of ||F||
    }
    out.x = std::move(x);
    out.residual = F.size() == 0 ? 0.0 : F.template lpNorm<Eigen::Infinity>();
    out.converged = out.residual < 1e-10;
    return out;
}

// ---------------------------------------------------------------------------
// Univariate roots: balanced companion matrix + Eigen's eigensolver.
// ---------------------------------------------------------------------------

// Coefficients ascending: c[0] + c[1] x + ... + c[d] x^d.  Near-zero leading
// coefficients (relative to the largest) are stripped first.
inline std::vector<Cx> poly_roots(std::vector<Cx> c) {
    double big = 0.0;
    for (auto& z : c) big = std::max(big, std::abs(z));
    if (big == 0.0) throw ZeroPolynomial("root finding on the zero polynomial");
    while (c.size() > 1 && std::abs(c.back()) < 1e-13 * big) c.pop_back();
    std::size_t d = c.size() - 1;
    if (d == 0) return {};
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t i = 0; i + 1 < d; ++i) A(i + 1, i) = 1.0;
    for (std::size_t i = 0; i < d; ++i) A(i, d - 1) = -c[i] / c[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, /*computeEigenvectors=*/false);
    std::vector<Cx> roots(es.eigenvalues().data(), es.eigenvalues().data() + d);
    std::sort(roots.begin(), roots.end(), [](const Cx& a, const Cx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

// Ascending coefficients of p viewed as univariate in `var`; every other
// variable must be absent.  Coefficients are converted to double exactly
// enough for root finding.
inline std::vector<Cx> univariate_coefficients(const SparsePoly& p, const std::string& var) {
    if (p.is_zero()) throw ZeroPolynomial("univariate coefficients of the zero polynomial");
    std::vector<Cx> c(static_cast<std::size_t>(std::max(p.degree(var), 0)) + 1, Cx(0, 0));
    int vi = p.var_index(var);
    for (const auto& t : p.terms()) {
        int e = 0;
        for (std::size_t i = 0; i < t.e.size(); ++i) {
            if ((int)i == vi) {
                e = t.e[i];
            } else if (t.e[i] != 0) {
                throw ApolyError("polynomial is not univariate in " + var);
            }
        }
        c[e] += t.c.get_d();
    }
    return c;
}

// ---------------------------------------------------------------------------
// Polynomial systems as numerical least-squares problems.
// ---------------------------------------------------------------------------

// Compiles a list of polynomials into fast residual/Jacobian evaluation over
// the given unknowns; all other variables must be supplied as fixed values.
class NumericSystem {
public:
    NumericSystem(const std::vector<SparsePoly>& equations,
                  std::vector<std::string> unknowns,
                  const std::map<std::string, Cx>& fixed = {})
        : unknowns_(std::move(unknowns)) {
        for (const auto& e : equations) {
            std::vector<SparsePoly> row;
            for (const auto& u : unknowns_) row.push_back(e.derivative(u));
            eqs_.push_back(e);
            jac_.push_back(std::move(row));
        }
        fixed_ = fixed;
    }

    const std::vector<std::string>& unknowns() const { return unknowns_; }
    std::size_t size() const { return eqs_.size(); }

    std::map<std::string, Cx> point_of(const Eigen::VectorXcd& x) const {
        std::map<std::string, Cx> pt = fixed_;
        for (std::size_t i = 0; i < unknowns_.size(); ++i) pt[unknowns_[i]] = x((Eigen::Index)i);
        return pt;
    }

    void operator()(const Eigen::VectorXcd& x, Eigen::VectorXcd& F, Eigen::MatrixXcd& J) const {
        auto pt = point_of(x);
        F.resize((Eigen::Index)eqs_.size());
        J.resize((Eigen::Index)eqs_.size(), (Eigen::Index)unknowns_.size());
        for (std::size_t i = 0; i < eqs_.size(); ++i) {
            F((Eigen::Index)i) = eqs_[i].eval<Cx>(pt);
            for (std::size_t j = 0; j < unknowns_.size(); ++j)
                J((Eigen::Index)i, (Eigen::Index)j) = jac_[i][j].eval<Cx>(pt);
        }
    }

    double residual_at(const std::map<std::string, Cx>& pt) const {
        double r = 0.0;
        for (const auto& e : eqs_) r = std::max(r, std::abs(e.eval<Cx>(pt)));
        return r;
    }

private:
    std::vector<SparsePoly> eqs_;
    std::vector<std::vector<SparsePoly>> jac_;
    std::vector<std::string> unknowns_;
    std::map<std::string, Cx> fixed_;
};

struct Witness {
    std::map<std::string, Cx> point;
    double residual = std::numeric_limits<double>::infinity();
};

// Deterministic multi-start solve: seeds are drawn from mt19937(seed) inside
// a centered box, converged solutions deduplicated by rounded coordinates.
inline std::vector<Witness> solve_multistart(const NumericSystem& sys, int starts,
                                             unsigned seed, double box = 2.0,
                                             double accept = 1e-10) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(-box, box);
    std::vector<Witness> found;
    auto fn = std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&, Eigen::MatrixXcd&)>(
        [&sys](const Eigen::VectorXcd& x, Eigen::VectorXcd& F, Eigen::MatrixXcd& J) {
            sys(x, F, J);
        });
    for (int s = 0; s < starts; ++s) {
        Eigen::VectorXcd x0((Eigen::Index)sys.unknowns().size());
        for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) = Cx(U(rng), U(rng));
        auto res = gauss_newton<Cx>(fn, x0);
        if (res.residual > accept) continue;
        bool dup = false;
        for (const auto& w : found) {
            double dist = 0.0;
            for (std::size_t i = 0; i < sys.unknowns().size(); ++i)
                dist = std::max(dist, std::abs(w.point.at(sys.unknowns()[i]) -
                                               res.x((Eigen::Index)i)));
            if (dist < 1e-6) {
                dup = true;
                break;
            }
        }
        if (!dup) found.push_back({sys.point_of(res.x), res.residual});
    }
    return found;
}

}  // namespace apoly
