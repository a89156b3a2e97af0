#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include "apoly/charvar.hpp"
#include "apoly/numeric.hpp"

using namespace apoly;

namespace {
SparsePoly V(const std::string& n) { return SparsePoly::variable(n); }
SparsePoly C(long c) { return SparsePoly::constant(Coef(c)); }

bool has_root_near(const std::vector<Cx>& roots, Cx want, double tol = 1e-9) {
    for (auto& r : roots)
        if (std::abs(r - want) < tol) return true;
    return false;
}
}  // namespace

TEST_CASE("companion-matrix roots") {
    SECTION("real cubic with known roots") {
        auto r = poly_roots({Cx(-6), Cx(11), Cx(-6), Cx(1)});
        REQUIRE(r.size() == 3);
        REQUIRE(has_root_near(r, Cx(1)));
        REQUIRE(has_root_near(r, Cx(2)));
        REQUIRE(has_root_near(r, Cx(3)));
    }
    SECTION("complex pair") {
        auto r = poly_roots({Cx(1), Cx(0), Cx(1)});  // x^2 + 1
        REQUIRE(r.size() == 2);
        REQUIRE(has_root_near(r, Cx(0, 1)));
        REQUIRE(has_root_near(r, Cx(0, -1)));
    }
    SECTION("tiny leading coefficients are stripped") {
        auto r = poly_roots({Cx(-2), Cx(1), Cx(1e-16)});
        REQUIRE(r.size() == 1);
        REQUIRE(has_root_near(r, Cx(2)));
    }
    SECTION("constants and zero") {
        REQUIRE(poly_roots({Cx(5)}).empty());
        REQUIRE_THROWS_AS(poly_roots({Cx(0), Cx(0)}), ZeroPolynomial);
    }
    SECTION("high multiplicity stays clustered") {
        // (x-1)^4: companion eigenvalues scatter ~ eps^(1/4); keep a loose gate
        auto r = poly_roots({Cx(1), Cx(-4), Cx(6), Cx(-4), Cx(1)});
        for (auto& z : r) REQUIRE(std::abs(z - Cx(1)) < 1e-3);
    }
}

TEST_CASE("univariate coefficient extraction") {
    auto x = V("x");
    auto p = x.pow(3) - C(2) * x + C(5);
    auto c = univariate_coefficients(p, "x");
    REQUIRE(c.size() == 4);
    REQUIRE(c[0] == Cx(5));
    REQUIRE(c[1] == Cx(-2));
    REQUIRE(c[2] == Cx(0));
    REQUIRE(c[3] == Cx(1));
    REQUIRE_THROWS_AS(univariate_coefficients(x * V("y"), "x"), ApolyError);
    REQUIRE_THROWS_AS(univariate_coefficients(SparsePoly(), "x"), ZeroPolynomial);
    auto roots = poly_roots(univariate_coefficients((x - C(4)) * (x + C(9)), "x"));
    REQUIRE(has_root_near(roots, Cx(4)));
    REQUIRE(has_root_near(roots, Cx(-9)));
}

TEST_CASE("gauss-newton on real systems") {
    using Vec = Eigen::VectorXd;
    using Mat = Eigen::MatrixXd;
    SECTION("square root of two") {
        std::function<void(const Vec&, Vec&, Mat&)> fn = [](const Vec& x, Vec& F, Mat& J) {
            F.resize(1);
            J.resize(1, 1);
            F(0) = x(0) * x(0) - 2.0;
            J(0, 0) = 2.0 * x(0);
        };
        Vec x0(1);
        x0 << 1.0;
        auto r = gauss_newton<double>(fn, x0);
        REQUIRE(r.converged);
        REQUIRE(std::abs(r.x(0) - std::sqrt(2.0)) < 1e-12);
    }
    SECTION("overdetermined but consistent") {
        std::function<void(const Vec&, Vec&, Mat&)> fn = [](const Vec& x, Vec& F, Mat& J) {
            F.resize(3);
            J.resize(3, 1);
            F(0) = x(0) - 1.0;
            F(1) = 2.0 * (x(0) - 1.0);
            F(2) = x(0) * x(0) - 1.0;
            J(0, 0) = 1.0;
            J(1, 0) = 2.0;
            J(2, 0) = 2.0 * x(0);
        };
        Vec x0(1);
        x0 << 0.3;
        auto r = gauss_newton<double>(fn, x0);
        REQUIRE(r.converged);
        REQUIRE(std::abs(r.x(0) - 1.0) < 1e-10);
    }
    SECTION("inconsistent system reports the miss") {
        std::function<void(const Vec&, Vec&, Mat&)> fn = [](const Vec& x, Vec& F, Mat& J) {
            F.resize(2);
            J.resize(2, 1);
            F(0) = x(0);
            F(1) = x(0) - 1.0;
            J(0, 0) = 1.0;
            J(1, 0) = 1.0;
        };
        Vec x0(1);
        x0 << 5.0;
        auto r = gauss_newton<double>(fn, x0);
        REQUIRE_FALSE(r.converged);
        REQUIRE(std::abs(r.x(0) - 0.5) < 1e-6);  // least-squares point
    }
}

TEST_CASE("numeric polynomial systems") {
    auto x = V("x"), y = V("y");
    SECTION("complex root polishing") {
        NumericSystem sys({x * x + C(1)}, {"x"});
        std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&, Eigen::MatrixXcd&)> fn =
            [&](const Eigen::VectorXcd& v, Eigen::VectorXcd& F, Eigen::MatrixXcd& J) {
                sys(v, F, J);
            };
        Eigen::VectorXcd x0(1);
        x0 << Cx(0.2, 0.8);
        auto r = gauss_newton<Cx>(fn, x0);
        REQUIRE(r.converged);
        REQUIRE(std::abs(r.x(0) - Cx(0, 1)) < 1e-12);
    }
    SECTION("multistart finds all circle-line intersections") {
        NumericSystem sys({x * x + y * y - C(25), x - y - C(1)}, {"x", "y"});
        auto ws = solve_multistart(sys, 40, /*seed=*/11);
        REQUIRE(ws.size() == 2);  // (4,3) and (-3,-4)
        for (auto& w : ws) {
            REQUIRE(w.residual < 1e-10);
            REQUIRE(sys.residual_at(w.point) < 1e-10);
            Cx xv = w.point.at("x"), yv = w.point.at("y");
            bool a = std::abs(xv - Cx(4)) < 1e-7 && std::abs(yv - Cx(3)) < 1e-7;
            bool b = std::abs(xv - Cx(-3)) < 1e-7 && std::abs(yv - Cx(-4)) < 1e-7;
            REQUIRE((a || b));
        }
    }
    SECTION("fixed variables are honored") {
        NumericSystem sys({x * y - C(6)}, {"x"}, {{"y", Cx(3)}});
        auto ws = solve_multistart(sys, 8, 5);
        REQUIRE_FALSE(ws.empty());
        REQUIRE(std::abs(ws[0].point.at("x") - Cx(2)) < 1e-9);
        REQUIRE(ws[0].point.at("y") == Cx(3));
    }
}

TEST_CASE("witnesses on the trefoil riley branch satisfy L M^6 = -1") {
    auto simp = tietze_simplify(wirtinger(parse_dt({4, 6, 2})));
    auto branches = build_branch_systems(simp);
    REQUIRE(branches[0].branch == "riley");
    Cx M0(0.83, 0.31);
    NumericSystem sys(branches[0].equations, {"t2", "L"}, {{"M", M0}});
    auto ws = solve_multistart(sys, 30, /*seed=*/2024);
    REQUIRE_FALSE(ws.empty());
    bool found_irreducible = false;
    for (const auto& w : ws) {
        Cx L = w.point.at("L");
        double on_factor = std::abs(L * std::pow(M0, 6) + Cx(1));
        double on_trivial = std::abs(L - Cx(1));
        REQUIRE(std::min(on_factor, on_trivial) < 1e-7);
        if (on_factor < 1e-7) found_irreducible = true;
    }
    REQUIRE(found_irreducible);
}
