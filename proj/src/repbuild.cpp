#include "awrep/repbuild.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace awrep::repbuild {

using qkernel::Factor;
using qkernel::near;
using qkernel::near_zero;
using qkernel::qnum;

std::string to_string(Variant v) {
    switch (v) {
        case Variant::GeneralClassical: return "GeneralClassical";
        case Variant::ZeroA12Classical: return "ZeroA12Classical";
        case Variant::ZeroA12NonClassical: return "ZeroA12NonClassical";
        case Variant::Border: return "Border";
    }
    return "?";
}

std::string to_string(Branch b) {
    switch (b) {
        case Branch::Designated: return "designated";
        case Branch::Negated: return "negated";
        case Branch::Swapped: return "swapped";
        case Branch::SwappedNegated: return "swapped-negated";
    }
    return "?";
}

std::string to_string(Basis b) {
    switch (b) {
        case Basis::V: return "V";
        case Basis::X: return "X";
        case Basis::Y: return "Y";
    }
    return "?";
}

AlgebraParams apply_branch(const AlgebraParams& ap, Branch b) {
    switch (b) {
        case Branch::Designated: return ap;
        case Branch::Negated: return {-ap.A1, -ap.A2, ap.A3};
        case Branch::Swapped: return {ap.A2, ap.A1, ap.A3};
        case Branch::SwappedNegated: return {-ap.A2, -ap.A1, ap.A3};
    }
    return ap;
}

double Rep::max_abs() const {
    return std::max({I1.cwiseAbs().maxCoeff(), I2.cwiseAbs().maxCoeff(), I3.cwiseAbs().maxCoeff()});
}

namespace {

std::string fmt(Scalar z) {
    std::ostringstream os;
    os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
}

// Lambda for p = q^{x+1/2} given as a value
Scalar lambda_of(Scalar p, const FieldCfg& cfg) { return (p - 1.0 / p) / cfg.s(); }

Matrix zeros(int n) { return Matrix::Zero(n, n); }

bool is_diagonal(const Matrix& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (i != j && m(i, j) != Scalar(0.0)) return false;
    return true;
}

// V-basis diagonal of I1, I2 for given algebra parameters
std::pair<Scalar, Scalar> v_diagonal(int j, Scalar qmu, const AlgebraParams& ap, const FieldCfg& cfg) {
    Scalar x = qmu * cfg.q_pow(-j);
    Scalar lam = qnum(x, cfg);
    Scalar gj = (x * cfg.q12() + 1.0 / (x * cfg.q12())) / cfg.S();
    Scalar x1 = x / cfg.q();
    Scalar gj1 = (x1 * cfg.q12() + 1.0 / (x1 * cfg.q12())) / cfg.S();
    Scalar gg = gj * gj1;
    if (std::abs(gg) <= cfg.tol()) {
        if (near_zero(ap.A1, cfg.tol()) && near_zero(ap.A2, cfg.tol())) return {0.0, 0.0};
        throw GDenominatorZero("g_j g_{j+1} vanishes at j = " + std::to_string(j));
    }
    Scalar s = cfg.s();
    return {-(ap.A1 - I_unit * lam * ap.A2 * s) / gg, -(-I_unit * lam * ap.A1 * s + ap.A2) / gg};
}

// V-basis matrices from q^mu, algebra parameters and D~_1..D~_N
Rep v_basis(Scalar qmu, const AlgebraParams& ap, int N, const std::vector<Scalar>& dt,
            const FieldCfg& cfg, bool with_diagonal) {
    const int n = N + 1;
    Rep r;
    r.I1 = zeros(n);
    r.I2 = zeros(n);
    r.I3 = zeros(n);
    const Scalar q12 = cfg.q12();
    for (int j = 0; j < n; ++j) {
        Scalar x = qmu * cfg.q_pow(-j);
        Scalar lam = qnum(x, cfg);
        Scalar den = x + 1.0 / x;
        r.I3(j, j) = -I_unit * lam;
        if (j > 0) {
            r.I1(j - 1, j) = -dt[j] / (q12 * den);
            r.I2(j - 1, j) = I_unit * x * dt[j] / den;
        }
        if (j < N) {
            r.I1(j + 1, j) = -1.0 / (q12 * den);
            r.I2(j + 1, j) = -I_unit / (x * den);
        }
        if (with_diagonal) {
            auto [d1, d2] = v_diagonal(j, qmu, ap, cfg);
            r.I1(j, j) = d1;
            r.I2(j, j) = d2;
        }
    }
    r.basis = Basis::V;
    r.ap = ap;
    r.meta.qmu = qmu;
    return r;
}

Matrix i2_from_aw3(const Matrix& i1, const Matrix& i3, Scalar A2, const FieldCfg& cfg) {
    const int n = static_cast<int>(i1.rows());
    return cfg.q12() * i3 * i1 - i1 * i3 / cfg.q12() - A2 * Matrix::Identity(n, n);
}

}  // namespace

LambdaG lambda_g(int j, const RepParams& p, const FieldCfg& cfg) {
    Scalar pj = p.qmu * cfg.q_pow(-j) * cfg.q12();
    return {lambda_of(pj, cfg), (pj + 1.0 / pj) / cfg.S()};
}

Scalar lambda_root(int k, const RepParams& p, const FieldCfg& cfg) {
    if (k == 0) return lambda_of(p.qmu * cfg.q12(), cfg);
    return lambda_of(p.qmu * cfg.q12() / p.qj(k - 1), cfg);
}

Scalar ctilde(Scalar qlam, const AlgebraParams& ap, const FieldCfg& cfg) {
    const Scalar q = cfg.q(), q12 = cfg.q12();
    Scalar l = qnum(qlam, cfg), l1 = qnum(qlam * q, cfg);
    Scalar v = -q * l * l1 - I_unit * q * (l + l1) * ap.A3;
    bool zero12 = ap.A1 == Scalar(0.0) && ap.A2 == Scalar(0.0);
    if (!zero12) {
        if (std::abs(l - l1) <= cfg.tol()) {
            if (near_zero(ap.A1, cfg.tol()) && near_zero(ap.A2, cfg.tol())) return v;
            throw ShiftDenominatorZero("[lambda] = [lambda+1] in C~_lambda");
        }
        Scalar d = l - l1;
        v -= q * (ap.A1 * ap.A1 + I_unit * (1.0 / (qlam * q12) - qlam * q12) * ap.A1 * ap.A2 + ap.A2 * ap.A2) /
             (d * d);
    }
    return v;
}

Scalar dtilde(int j, const RepParams& p, const FieldCfg& cfg) {
    auto [lj, gj] = lambda_g(j, p, cfg);
    if (std::abs(gj) <= cfg.tol()) throw GDenominatorZero("g_" + std::to_string(j) + " vanishes");
    const Scalar S = cfg.S(), s = cfg.s();
    Scalar prod = 1.0;
    for (int k = 0; k <= 3; ++k) prod *= lj - lambda_root(k, p, cfg);
    return cfg.q() * s * s / (S * S * S * S) * prod / (gj * gj);
}

AlgebraParams params_from_roots(const RepParams& p, const FieldCfg& cfg) {
    const Scalar q = cfg.q(), q12 = cfg.q12(), S = cfg.S(), qd = cfg.qdiff();
    const auto& [h1, h2, h3] = p.jh;
    const Scalar J = h1 * h2 * h3, M = p.qmu * q12, mu2 = p.qmu * p.qmu;
    AlgebraParams ap;
    Scalar lsum = 0.0;
    for (int k = 0; k <= 3; ++k) lsum += lambda_root(k, p, cfg);
    ap.A3 = I_unit * lsum / (S * S);
    ap.A1 = I_unit / (S * qd) *
            (J / M + h2 * h3 / (h1 * M) + h1 * h3 / (h2 * M) + h1 * h2 / (h3 * M) - M * h3 / (h1 * h2) -
             M / J - M * h1 / (h2 * h3) - M * h2 / (h1 * h3));
    ap.A2 = 1.0 / (S * qd) *
            (J / (mu2 * q) - h2 * h3 / h1 - h1 * h3 / h2 - h1 * h2 / h3 - h1 / (h2 * h3) - h2 / (h1 * h3) -
             h3 / (h1 * h2) + mu2 * q / J);
    return ap;
}

std::optional<int> forbidden_l(Scalar qx, int lo, int hi, const FieldCfg& cfg) {
    for (int l = lo; l <= hi; ++l)
        if (near(qx * qx, -cfg.q_pow(l), cfg.tol())) return l;
    return std::nullopt;
}

int finite_root_index(const RepParams& p, const FieldCfg& cfg) {
    Scalar lN1 = lambda_g(p.N + 1, p, cfg).lambda;
    for (int i = 0; i < 3; ++i)
        if (near(lambda_root(i + 1, p, cfg), lN1, cfg.tol())) return i;
    return -1;
}

int top_level_index(const RepParams& p, const FieldCfg& cfg) {
    for (int i = 0; i < 3; ++i)
        if (near(p.qj(i), cfg.q_pow(p.N + 1), cfg.tol())) return i;
    return -1;
}

namespace {

// skip: root index exempt from the Lambda_k test (-1 for none)
void check_lambda_roots(const RepParams& p, const FieldCfg& cfg, int skip = -1) {
    if (finite_root_index(p, cfg) < 0)
        throw InvariantViolation("none of Lambda_{j1}, Lambda_{j2}, Lambda_{j3} equals Lambda_{N+1}");
    for (int k = 1; k <= p.N; ++k) {
        Scalar lk = lambda_g(k, p, cfg).lambda;
        for (int i = 0; i < 3; ++i)
            if (i != skip && near(lambda_root(i + 1, p, cfg), lk, cfg.tol()))
                throw InvariantViolation("Lambda_{j" + std::to_string(i + 1) + "} equals Lambda_" +
                                         std::to_string(k) + " (reducible)");
    }
}

}  // namespace

void check_general_classical(const RepParams& p, const FieldCfg& cfg) {
    if (p.N < 0) throw InvariantViolation("N must be nonnegative");
    if (auto l = forbidden_l(p.qmu, -1, 2 * p.N + 1, cfg))
        throw InvariantViolation("q^{2mu} = -q^l with forbidden l = " + std::to_string(*l));
    check_lambda_roots(p, cfg);
}

namespace {

// Newton on the continuant det(m - x) of a tridiagonal matrix. Kept only when
// the total correction is small, so a root never moves to a neighbour.
Scalar polish_tridiagonal(const Matrix& m, Scalar x0) {
    const auto n = m.rows();
    Scalar x = x0;
    for (int it = 0; it < 4; ++it) {
        Scalar p0 = 1.0, p1 = m(0, 0) - x, d0 = 0.0, d1 = -1.0;
        for (Eigen::Index k = 1; k < n; ++k) {
            const Scalar bc = m(k - 1, k) * m(k, k - 1), a = m(k, k) - x;
            const Scalar p2 = a * p1 - bc * p0, d2 = a * d1 - p1 - bc * d0;
            p0 = p1, p1 = p2, d0 = d1, d1 = d2;
            const double s = std::max(std::abs(p1), std::abs(d1));
            if (s > 1e100) p0 /= s, p1 /= s, d0 /= s, d1 /= s;
        }
        if (d1 == Scalar(0.0)) break;
        const Scalar step = p1 / d1;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        x -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) break;
    }
    return std::abs(x - x0) <= 1e-6 * (1.0 + std::abs(x0)) ? x : x0;
}

}  // namespace

std::vector<Scalar> eigenvalues(const Matrix& m) {
    const auto n = m.rows();
    std::vector<Scalar> ev;
    if (is_diagonal(m)) {
        for (Eigen::Index j = 0; j < n; ++j) ev.push_back(m(j, j));
        return ev;
    }
    bool tri = true;
    for (Eigen::Index i = 0; i < n && tri; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (std::abs(i - j) > 1 && m(i, j) != Scalar(0.0)) {
                tri = false;
                break;
            }
    Matrix b = m;
    if (tri) {
        // diagonal similarity making the tridiagonal matrix complex symmetric
        Vector d = Vector::Ones(n);
        for (Eigen::Index j = 0; j + 1 < n; ++j) {
            Scalar up = m(j, j + 1), lo = m(j + 1, j);
            d(j + 1) = d(j) * (up != Scalar(0.0) && lo != Scalar(0.0) ? std::sqrt(lo / up) : Scalar(1.0));
        }
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) b(i, j) = m(i, j) * d(j) / d(i);
    }
    Eigen::ComplexEigenSolver<Matrix> es(b, false);
    for (Eigen::Index j = 0; j < n; ++j) ev.push_back(es.eigenvalues()(j));
    if (tri)
        for (auto& x : ev) x = polish_tridiagonal(m, x);
    return ev;
}

void finish_meta(Rep& rep, const FieldCfg& cfg) {
    rep.q12 = cfg.q12();
    const int n = rep.dim();
    rep.meta.spectrum = eigenvalues(rep.I3);
    try {
        rep.meta.casimir_value = ctilde(rep.meta.qmu, rep.ap, cfg);
    } catch (const Error&) {
        // fall back to the normalized trace of the Casimir matrix
        const Scalar q = cfg.q(), q12 = cfg.q12();
        const auto& [A1, A2, A3] = rep.ap;
        Matrix c = q * q * rep.I1 * rep.I1 + rep.I2 * rep.I2 + q * q * rep.I3 * rep.I3 -
                   (std::pow(q12, 5) - q12) * rep.I1 * rep.I2 * rep.I3 + q * (q + 1.0) * A1 * rep.I1 +
                   (q + 1.0) * A2 * rep.I2 + q * (q + 1.0) * A3 * rep.I3;
        rep.meta.casimir_value = c.trace() / double(n);
    }
}

Rep build_classical(const RepParams& p, Branch branch, const FieldCfg& cfg) {
    check_general_classical(p, cfg);
    AlgebraParams ap = apply_branch(params_from_roots(p, cfg), branch);
    std::vector<Scalar> dt(p.N + 1, 0.0);
    for (int j = 1; j <= p.N; ++j) dt[j] = dtilde(j, p, cfg);
    Rep r = v_basis(p.qmu, ap, p.N, dt, cfg, true);
    r.meta.variant = to_string(Variant::GeneralClassical);
    finish_meta(r, cfg);
    return r;
}

Rep build_from_algebra(Scalar qmu, const AlgebraParams& ap, int N, const FieldCfg& cfg) {
    if (auto l = forbidden_l(qmu, -1, 2 * N + 1, cfg))
        throw InvariantViolation("q^{2mu} = -q^l with forbidden l = " + std::to_string(*l));
    Scalar c0 = ctilde(qmu, ap, cfg);
    double scale = std::max(1.0, std::abs(c0));
    std::vector<Scalar> dt(N + 2, 0.0);
    for (int j = 1; j <= N + 1; ++j) dt[j] = c0 - ctilde(qmu * cfg.q_pow(-j), ap, cfg);
    if (std::abs(dt[N + 1]) > cfg.tol() * scale)
        throw InvariantViolation("D~_{N+1} != 0: q^mu does not give an (N+1)-dimensional representation");
    for (int k = 1; k <= N; ++k)
        if (std::abs(dt[k]) <= cfg.tol() * scale)
            throw InvariantViolation("D~_" + std::to_string(k) + " = 0 (reducible)");
    Rep r = v_basis(qmu, ap, N, dt, cfg, true);
    r.meta.variant = to_string(Variant::GeneralClassical);
    finish_meta(r, cfg);
    return r;
}

Scalar coeff_A(int j, Scalar qmu, const std::array<Scalar, 3>& jh, const FieldCfg& cfg) {
    const Scalar t = 1.0 / (qmu * qmu);
    std::vector<Factor> num, den;
    for (auto h : jh) num.push_back({1.0 - cfg.q_pow(j + 1) / (h * h), false});
    num.push_back({1.0 + t * cfg.q_pow(j), true});
    den.push_back({1.0 + t * cfg.q_pow(2 * j), true});
    den.push_back({1.0 + t * cfg.q_pow(2 * j + 1), true});
    return qkernel::removable_ratio(1.0, num, den, cfg.tol());
}

Scalar coeff_C(int j, Scalar qmu, const std::array<Scalar, 3>& jh, const FieldCfg& cfg) {
    const Scalar t = 1.0 / (qmu * qmu), q = cfg.q();
    const Scalar J = jh[0] * jh[1] * jh[2];
    std::vector<Factor> num, den;
    num.push_back({1.0 - cfg.q_pow(j), false});
    for (auto h : jh) num.push_back({1.0 + t * cfg.q_pow(j - 1) * h * h, true});
    den.push_back({1.0 + t * cfg.q_pow(2 * j - 1), true});
    den.push_back({1.0 + t * cfg.q_pow(2 * j), true});
    return qkernel::removable_ratio(-(qmu * qmu * q * q / (J * J)), num, den, cfg.tol());
}

namespace {

// X-basis I1 for the designated branch, without the boundary term.
Rep x_basis(const RepParams& p, const FieldCfg& cfg, std::vector<Scalar>& A, std::vector<Scalar>& C) {
    const int N = p.N, n = N + 1;
    A.assign(n, 0.0);
    C.assign(n, 0.0);
    for (int j = 0; j <= N; ++j) {
        A[j] = coeff_A(j, p.qmu, p.jh, cfg);
        C[j] = coeff_C(j, p.qmu, p.jh, cfg);
    }
    for (int k = 1; k <= N; ++k)
        if (std::abs(A[k - 1]) <= cfg.tol())
            throw RescaleSingular("A_" + std::to_string(k - 1) + " vanishes");
    const Scalar qnu = p.qnu(cfg);
    const Scalar f = I_unit * qnu / cfg.qdiff();
    Rep r;
    r.I1 = zeros(n);
    r.I3 = zeros(n);
    for (int j = 0; j <= N; ++j) {
        r.I3(j, j) = -I_unit * qnum(p.qmu * cfg.q_pow(-j), cfg);
        r.I1(j, j) = f * (A[j] + C[j] - 1.0 + 1.0 / (qnu * qnu));
        if (j > 0) r.I1(j - 1, j) = -f * C[j];
        if (j < N) r.I1(j + 1, j) = -f * A[j];
    }
    r.basis = Basis::X;
    r.meta.qmu = p.qmu;
    r.meta.qnu = qnu;
    return r;
}

void finish_x(Rep& r, const RepParams& p, const AlgebraParams& designated, Branch branch,
              const FieldCfg& cfg) {
    AlgebraParams ap = apply_branch(designated, branch);
    if (branch == Branch::Negated) {
        r.I1 = -r.I1;
    } else if (branch != Branch::Designated) {
        // same off-diagonal products, diagonal of the chosen branch
        for (int j = 0; j <= p.N; ++j) r.I1(j, j) = v_diagonal(j, p.qmu, ap, cfg).first;
    }
    r.ap = ap;
    r.I2 = i2_from_aw3(r.I1, r.I3, ap.A2, cfg);
    finish_meta(r, cfg);
}

}  // namespace

Rep build_classical_x(const RepParams& p, Branch branch, const FieldCfg& cfg) {
    check_general_classical(p, cfg);
    std::vector<Scalar> A, C;
    Rep r = x_basis(p, cfg, A, C);
    r.meta.variant = to_string(Variant::GeneralClassical);
    finish_x(r, p, params_from_roots(p, cfg), branch, cfg);
    return r;
}

std::array<Scalar, 2> solve_mu_zero(Scalar A3, int N, const FieldCfg& cfg) {
    Scalar h = cfg.half_pow(N + 1);
    Scalar c = -I_unit * cfg.S() * A3 * cfg.qdiff() / (h + 1.0 / h);
    Scalar d = std::sqrt(c * c + 4.0);
    return {(c + d) / 2.0, (c - d) / 2.0};
}

void check_zero_classical(Scalar A3, int N, const FieldCfg& cfg) {
    Scalar h = cfg.half_pow(N + 1);
    for (int k = -1; k <= 2 * N + 1; ++k) {
        Scalar lhs = (h + 1.0 / h) * (cfg.half_pow(k - N) + cfg.half_pow(N - k)) / cfg.qdiff();
        for (int eps : {1, -1})
            if (near(lhs, -double(eps) * cfg.S() * A3, cfg.tol())) {
                std::ostringstream os;
                os << "A3 = " << fmt(A3) << " is excluded (equality at k = " << k << ", eps = " << eps << ")";
                throw InvariantViolation(os.str());
            }
    }
}

Rep build_zero_classical(Scalar A3, int N, int root_choice, const FieldCfg& cfg) {
    if (N < 0) throw InvariantViolation("N must be nonnegative");
    if (root_choice != 0 && root_choice != 1) throw InvariantViolation("root choice must be 0 or 1");
    check_zero_classical(A3, N, cfg);
    Scalar qmu = solve_mu_zero(A3, N, cfg)[root_choice] * cfg.half_pow(N);
    const Scalar S = cfg.S();
    RepParams p;
    p.qmu = qmu;
    p.N = N;
    Scalar l0 = lambda_root(0, p, cfg);
    std::vector<Scalar> dt(N + 1, 0.0);
    for (int j = 1; j <= N; ++j) {
        Scalar lj = lambda_g(j, p, cfg).lambda;
        dt[j] = cfg.q() / (S * S) * (lj - l0) * (lj + l0 + I_unit * S * S * A3);
    }
    Rep r = v_basis(qmu, AlgebraParams{0.0, 0.0, A3}, N, dt, cfg, false);
    r.meta.variant = to_string(Variant::ZeroA12Classical);
    finish_meta(r, cfg);
    return r;
}

Scalar zero_nonclassical_qmu(int N, int eps, const FieldCfg& cfg) {
    return I_unit * double(eps) * cfg.half_pow(2 * N + 1);
}

Scalar zero_nonclassical_dtilde(int j, Scalar A3, int N, int eps, const FieldCfg& cfg) {
    const Scalar qd = cfg.qdiff();
    Scalar a = cfg.half_pow(j), b = cfg.half_pow(2 * N + 2 - j);
    return cfg.q() * (a - 1.0 / a) * (b - 1.0 / b) / qd *
           ((a + 1.0 / a) * (b + 1.0 / b) / qd + double(eps) * cfg.S() * A3);
}

Scalar zero_nonclassical_a(Scalar A3, int N, int eps, int a_branch, const FieldCfg& cfg) {
    Scalar a2 = -zero_nonclassical_dtilde(N + 1, A3, N, eps, cfg);
    return double(a_branch) * std::sqrt(a2);
}

Scalar zero_nonclassical_special_A3(int N, int eps, const FieldCfg& cfg) {
    Scalar h = cfg.half_pow(N + 1);
    return -double(eps) * (h + 1.0 / h) * (h + 1.0 / h) / (cfg.qdiff() * cfg.S());
}

Rep build_zero_nonclassical(Scalar A3, int N, int eps, int a_branch, const FieldCfg& cfg) {
    if (N < 0) throw InvariantViolation("N must be nonnegative");
    if (eps != 1 && eps != -1) throw InvariantViolation("epsilon must be +1 or -1");
    if (a_branch != 1 && a_branch != -1) throw InvariantViolation("a branch must be +1 or -1");
    Scalar qmu = zero_nonclassical_qmu(N, eps, cfg);
    std::vector<Scalar> dt(N + 1, 0.0);
    for (int j = 1; j <= N; ++j) dt[j] = zero_nonclassical_dtilde(j, A3, N, eps, cfg);
    Rep r = v_basis(qmu, AlgebraParams{0.0, 0.0, A3}, N, dt, cfg, false);
    // v_{N+1} = a v_N folded into the last column
    Scalar a = zero_nonclassical_a(A3, N, eps, a_branch, cfg);
    Scalar x = qmu * cfg.q_pow(-N), den = x + 1.0 / x;
    r.I1(N, N) += a * (-1.0 / (cfg.q12() * den));
    r.I2(N, N) += a * (-I_unit / (x * den));
    r.meta.variant = to_string(Variant::ZeroA12NonClassical);
    finish_meta(r, cfg);
    return r;
}

void check_border(const RepParams& p, int l, const FieldCfg& cfg) {
    if (l != 2 * p.N && l != 2 * p.N + 1)
        throw InvariantViolation("border index l must be 2N or 2N+1");
    if (!near(p.qmu * p.qmu, -cfg.q_pow(l), cfg.tol()))
        throw InvariantViolation("q^{2mu} is not on the border -q^" + std::to_string(l));
    const int fin = top_level_index(p, cfg);
    if (fin < 0) throw InvariantViolation("border build needs some q^{j_i} = q^{N+1}");
    // at l = 2N the root q^{N+1} also equals -q^{2mu+1-N}; that coincidence is
    // part of the border structure, not a reducibility witness
    check_lambda_roots(p, cfg, l == 2 * p.N ? fin : -1);
}

Rep build_border(const RepParams& p, int l, Branch branch, const FieldCfg& cfg) {
    check_border(p, l, cfg);
    std::vector<Scalar> A, C;
    Rep r = x_basis(p, cfg, A, C);
    const int N = p.N;
    const Scalar f = I_unit * p.qnu(cfg) / cfg.qdiff();
    if (l == 2 * N + 1) r.I1(N, N) += -f * A[N];            // x_{N+1} = x_N
    else if (N > 0) r.I1(N - 1, N) += -f * A[N];            // x_{N+1} = x_{N-1}
    r.meta.variant = to_string(Variant::Border) + "(" + std::to_string(l) + ")";
    finish_x(r, p, params_from_roots(p, cfg), branch, cfg);
    return r;
}

ShiftTriple shift_O(Scalar qlam, const AlgebraParams& ap, const FieldCfg& cfg) {
    Scalar l = qnum(qlam, cfg), lp = qnum(qlam * cfg.q(), cfg);
    ShiftTriple t{0.0, I_unit, cfg.q12() / qlam};
    if (ap.A1 != Scalar(0.0) || ap.A2 != Scalar(0.0)) {
        Scalar d = l * (l - lp);
        if (std::abs(d) <= cfg.tol()) throw ShiftDenominatorZero("[lambda]([lambda]-[lambda+1]) = 0 in O_lambda");
        t.c3 = (-I_unit * cfg.q12() * ap.A1 + ap.A2 / qlam) / d;
    }
    return t;
}

ShiftTriple shift_R(Scalar qlam, const AlgebraParams& ap, const FieldCfg& cfg) {
    Scalar l = qnum(qlam, cfg), lm = qnum(qlam / cfg.q(), cfg);
    ShiftTriple t{0.0, I_unit, -qlam * cfg.q12()};
    if (ap.A1 != Scalar(0.0) || ap.A2 != Scalar(0.0)) {
        Scalar d = l * (l - lm);
        if (std::abs(d) <= cfg.tol()) throw ShiftDenominatorZero("[lambda]([lambda]-[lambda-1]) = 0 in R_lambda");
        t.c3 = (-I_unit * cfg.q12() * ap.A1 - qlam * ap.A2) / d;
    }
    return t;
}

ShiftOps shift_ops(Scalar qlam, const AlgebraParams& ap, const FieldCfg& cfg) {
    return {shift_O(qlam, ap, cfg), shift_R(qlam, ap, cfg)};
}

Matrix apply_triple(const ShiftTriple& t, const Rep& rep) {
    return t.c3 * rep.I3 + t.c2 * rep.I2 + t.c1 * rep.I1;
}

Scalar trace_formula(Scalar qmu, int N, const FieldCfg& cfg) {
    Scalar h = cfg.half_pow(N + 1);
    return -I_unit * (h - 1.0 / h) / cfg.s() * qnum(qmu / cfg.half_pow(N), cfg);
}

}  // namespace awrep::repbuild
