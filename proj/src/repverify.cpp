#include "awrep/repverify.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <limits>
#include <cmath>

namespace awrep::repverify {

using qkernel::near;
using qkernel::qnum;

namespace {

void check_shapes(const Rep& rep) {
    const auto n = rep.I1.rows();
    for (const Matrix* m : {&rep.I1, &rep.I2, &rep.I3})
        if (m->rows() != n || m->cols() != n) throw DimensionMismatch("generator matrices must be square and equal-sized");
}

// Diagonal d with D^{-1} M D balanced for the summed magnitudes of the generators.
Eigen::VectorXd balance(const std::vector<const Matrix*>& ms) {
    const auto n = ms.front()->rows();
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
    for (auto* m : ms) {
        double s = std::max(m->cwiseAbs().maxCoeff(), 1e-300);
        B += m->cwiseAbs() / s;
    }
    Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = 0, r = 0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                c += B(j, i) * d(i) / d(j);
                r += B(i, j) * d(j) / d(i);
            }
            if (c == 0 || r == 0) continue;
            double f = std::sqrt(r / c);
            if (std::abs(std::log(f)) > 1e-3) done = false;
            d(i) *= f;
        }
        if (done) break;
    }
    return d;
}

Matrix scaled(const Matrix& m, const Eigen::VectorXd& d) {
    // D^{-1} M D
    Matrix r = m;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) *= d(j) / d(i);
    return r;
}

// Stacked operator X -> (X A_k - B_k X)_k on column-major vec(X).
Matrix sylvester_stack(const std::array<Matrix, 3>& A, const std::array<Matrix, 3>& B) {
    const auto n = A[0].rows();
    const auto n2 = n * n;
    Matrix K = Matrix::Zero(3 * n2, n2);
    for (int k = 0; k < 3; ++k) {
        double s = std::max({A[k].cwiseAbs().maxCoeff(), B[k].cwiseAbs().maxCoeff(), 1e-300});
        for (Eigen::Index c = 0; c < n; ++c)
            for (Eigen::Index r = 0; r < n; ++r) {
                Eigen::Index col = c * n + r;  // entry X(r, c)
                // (X A)(r, c') = sum_c X(r,c) A(c,c')
                for (Eigen::Index cp = 0; cp < n; ++cp) K(k * n2 + cp * n + r, col) += A[k](c, cp) / s;
                // (B X)(r', c) = sum_r B(r', r) X(r, c)
                for (Eigen::Index rp = 0; rp < n; ++rp) K(k * n2 + c * n + rp, col) -= B[k](rp, r) / s;
            }
    }
    return K;
}

struct Balanced {
    std::array<Matrix, 3> m;
    Eigen::VectorXd d;
};

Balanced balanced(const Rep& rep) {
    Balanced b;
    b.d = balance({&rep.I1, &rep.I2, &rep.I3});
    b.m = {scaled(rep.I1, b.d), scaled(rep.I2, b.d), scaled(rep.I3, b.d)};
    return b;
}

Vector eigvec_for(const Rep& rep, int j, Scalar ev) {
    const int n = rep.dim();
    Vector x = Vector::Zero(n);
    bool diag = true;
    for (int r = 0; r < n && diag; ++r)
        for (int c = 0; c < n; ++c)
            if (r != c && rep.I3(r, c) != Scalar(0.0)) {
                diag = false;
                break;
            }
    if (diag) {
        x(j) = 1.0;
        return x;
    }
    Matrix m = rep.I3 - ev * Matrix::Identity(n, n);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    x = svd.matrixV().col(n - 1);
    return x / x.norm();
}

}  // namespace

std::array<double, 3> relation_residual(const Rep& rep, const AlgebraParams& ap) {
    check_shapes(rep);
    const auto n = rep.I1.rows();
    const Scalar q12 = rep.q12;
    Matrix E = Matrix::Identity(n, n);
    Matrix r1 = q12 * rep.I1 * rep.I2 - rep.I2 * rep.I1 / q12 - rep.I3 - ap.A3 * E;
    Matrix r2 = q12 * rep.I2 * rep.I3 - rep.I3 * rep.I2 / q12 - rep.I1 - ap.A1 * E;
    Matrix r3 = q12 * rep.I3 * rep.I1 - rep.I1 * rep.I3 / q12 - rep.I2 - ap.A2 * E;
    return {r1.cwiseAbs().maxCoeff(), r2.cwiseAbs().maxCoeff(), r3.cwiseAbs().maxCoeff()};
}

Matrix casimir_matrix(const Rep& rep, const AlgebraParams& ap) {
    check_shapes(rep);
    const Scalar q12 = rep.q12, q = q12 * q12;
    const Scalar q52 = q * q * q12;
    return q * q * rep.I1 * rep.I1 + rep.I2 * rep.I2 + q * q * rep.I3 * rep.I3 -
           (q52 - q12) * rep.I1 * rep.I2 * rep.I3 + q * (q + 1.0) * ap.A1 * rep.I1 +
           (q + 1.0) * ap.A2 * rep.I2 + q * (q + 1.0) * ap.A3 * rep.I3;
}

std::pair<Scalar, double> casimir_eval(const Rep& rep, const AlgebraParams& ap) {
    Matrix c = casimir_matrix(rep, ap);
    const auto n = c.rows();
    Scalar v = c.trace() / double(n);
    double dev = (c - v * Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    return {v, dev};
}

ShiftResiduals shift_action_check(const Rep& rep, const AlgebraParams& ap, int j, const FieldCfg& cfg) {
    check_shapes(rep);
    const Scalar q = cfg.q();
    const Scalar ql = rep.meta.qmu * cfg.q_pow(-j);
    Vector x = eigvec_for(rep, j, -I_unit * qnum(ql, cfg));
    Matrix Cm = casimir_matrix(rep, ap);
    using repbuild::apply_triple;
    using repbuild::ctilde;
    Matrix O = apply_triple(repbuild::shift_O(ql, ap, cfg), rep);
    Matrix R = apply_triple(repbuild::shift_R(ql, ap, cfg), rep);
    Matrix Om1 = apply_triple(repbuild::shift_O(ql / q, ap, cfg), rep);
    Matrix Rp1 = apply_triple(repbuild::shift_R(ql * q, ap, cfg), rep);
    Vector Ox = O * x, Rx = R * x;
    // each residual is measured relative to 1 + |outer operator| * |inner vector|
    auto inf = [](const Matrix& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); };
    auto rel = [](const Vector& v, double scale) { return v.cwiseAbs().maxCoeff() / (1.0 + scale); };
    const double n3 = inf(rep.I3);
    const double nOx = Ox.cwiseAbs().maxCoeff(), nRx = Rx.cwiseAbs().maxCoeff();
    ShiftResiduals r;
    r.shift_up = rel(rep.I3 * Ox + I_unit * qnum(ql * q, cfg) * Ox, n3 * nOx);
    r.shift_down = rel(rep.I3 * Rx + I_unit * qnum(ql / q, cfg) * Rx, n3 * nRx);
    r.or_product = rel(Om1 * Rx - ctilde(ql / q, ap, cfg) * x + Cm * x, inf(Om1) * nRx + inf(Cm));
    r.ro_product = rel(Rp1 * Ox - ctilde(ql, ap, cfg) * x + Cm * x, inf(Rp1) * nOx + inf(Cm));
    return r;
}

std::pair<double, double> annihilation_norms(const Rep& rep, const AlgebraParams& ap, const FieldCfg& cfg) {
    const int N = rep.dim() - 1;
    const Scalar q0 = rep.meta.qmu, qN = rep.meta.qmu * cfg.q_pow(-N);
    Vector v0 = eigvec_for(rep, 0, -I_unit * qnum(q0, cfg));
    Vector vN = eigvec_for(rep, N, -I_unit * qnum(qN, cfg));
    Matrix O = repbuild::apply_triple(repbuild::shift_O(q0, ap, cfg), rep);
    Matrix R = repbuild::apply_triple(repbuild::shift_R(qN, ap, cfg), rep);
    return {(O * v0).norm(), (R * vN).norm()};
}

std::vector<double> commutant_singular_values(const Rep& rep) {
    check_shapes(rep);
    Balanced b = balanced(rep);
    Matrix K = sylvester_stack(b.m, b.m);
    Eigen::BDCSVD<Matrix> svd(K);
    auto s = svd.singularValues();
    return std::vector<double>(s.data(), s.data() + s.size());
}

int commutant_dim(const Rep& rep, double rank_tol) {
    auto s = commutant_singular_values(rep);
    if (s.empty()) return 0;
    double smax = s.front();
    int k = 0;
    for (double x : s)
        if (x <= rank_tol * smax) ++k;
    return k;
}

namespace {

struct IntertwinerSvd {
    Eigen::VectorXd s;
    Matrix V;
    Eigen::VectorXd d1, d2;
};

IntertwinerSvd intertwiner_svd(const Rep& rep1, const Rep& rep2) {
    check_shapes(rep1);
    check_shapes(rep2);
    if (rep1.dim() != rep2.dim()) throw DimensionMismatch("representations have different dimensions");
    Balanced b1 = balanced(rep1), b2 = balanced(rep2);
    Matrix K = sylvester_stack(b1.m, b2.m);
    Eigen::BDCSVD<Matrix> svd(K, Eigen::ComputeFullV);
    return {svd.singularValues(), svd.matrixV(), b1.d, b2.d};
}

}  // namespace

std::optional<Matrix> intertwiner(const Rep& rep1, const Rep& rep2, double rank_tol) {
    auto r = intertwiner_svd(rep1, rep2);
    const auto n2 = r.s.size();
    if (n2 == 0 || r.s(n2 - 1) > rank_tol * r.s(0)) return std::nullopt;
    const int n = rep1.dim();
    Vector v = r.V.col(n2 - 1);
    // T' = D2^{-1} T D1  =>  T = D2 T' D1^{-1}
    Matrix T(n, n);
    for (int c = 0; c < n; ++c)
        for (int rr = 0; rr < n; ++rr) T(rr, c) = v(c * n + rr) * r.d2(rr) / r.d1(c);
    return T / T.norm();
}

double intertwiner_gap(const Rep& rep1, const Rep& rep2) {
    auto r = intertwiner_svd(rep1, rep2);
    const auto n2 = r.s.size();
    return n2 ? r.s(n2 - 1) / r.s(0) : 0.0;
}

Scalar trace_class(const Rep& rep, const FieldCfg& cfg) {
    const int N = rep.dim() - 1;
    Scalar h = cfg.half_pow(N + 1);
    if (std::abs(h - 1.0 / h) <= cfg.tol()) throw DegeneratePrefactor("q^{(N+1)/2} = q^{-(N+1)/2}");
    return I_unit * rep.I3.trace() * cfg.s() / (h - 1.0 / h);
}

AlgebraParams iso_params(const AlgebraParams& ap, const awsym::Iso& iso) {
    switch (iso.kind) {
        case awsym::IsoKind::Rho: return {ap.A2, ap.A3, ap.A1};
        case awsym::IsoKind::Sigma: return {ap.A2, ap.A1, ap.A3};
        case awsym::IsoKind::Tau:
            return {double(iso.eps) * ap.A1, double(iso.eps2) * ap.A2, double(iso.eps * iso.eps2) * ap.A3};
    }
    return ap;
}

Rep apply_iso_matrix(const Rep& rep, const awsym::Iso& iso, const FieldCfg& cfg) {
    check_shapes(rep);
    Rep r = rep;
    switch (iso.kind) {
        case awsym::IsoKind::Rho:
            r.I1 = rep.I2;
            r.I2 = rep.I3;
            r.I3 = rep.I1;
            break;
        case awsym::IsoKind::Sigma:
            r.I1 = rep.I2;
            r.I2 = rep.I1;
            r.I3 = rep.I3 + (rep.I2 * rep.I1 - rep.I1 * rep.I2) * cfg.S();
            break;
        case awsym::IsoKind::Tau:
            r.I1 = double(iso.eps) * rep.I1;
            r.I2 = double(iso.eps2) * rep.I2;
            r.I3 = double(iso.eps * iso.eps2) * rep.I3;
            break;
    }
    r.ap = iso_params(rep.ap, iso);
    r.meta.variant = rep.meta.variant + "|" + iso.name();
    r.meta.spectrum = repbuild::eigenvalues(r.I3);
    r.meta.casimir_value = casimir_eval(r, r.ap).first;
    return r;
}

bool pairwise_distinct(const std::vector<Scalar>& v, double tol) {
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t k = 0; k < i; ++k)
            if (near(v[i], v[k], tol)) return false;
    return true;
}

double spectrum_distance(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("spectra of different length");
    std::vector<bool> used(b.size(), false);
    double worst = 0;
    for (Scalar x : a) {
        std::size_t best = 0;
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < b.size(); ++k)
            if (!used[k] && std::abs(x - b[k]) < d) d = std::abs(x - b[k]), best = k;
        used[best] = true;
        worst = std::max(worst, d / (1.0 + std::abs(x)));
    }
    return worst;
}

std::vector<int> eigenspace_dims(const Rep& rep, double tol) {
    const int n = rep.dim();
    Eigen::ComplexEigenSolver<Matrix> es(rep.I3, false);
    std::vector<Scalar> distinct;
    for (int i = 0; i < n; ++i) {
        Scalar e = es.eigenvalues()(i);
        if (std::none_of(distinct.begin(), distinct.end(), [&](Scalar d) { return near(d, e, std::sqrt(tol)); }))
            distinct.push_back(e);
    }
    std::vector<int> dims;
    for (Scalar e : distinct) {
        Matrix m = rep.I3 - e * Matrix::Identity(n, n);
        Eigen::JacobiSVD<Matrix> svd(m);
        auto s = svd.singularValues();
        double scale = std::max(1.0, rep.I3.cwiseAbs().maxCoeff());
        int k = 0;
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) <= tol * scale) ++k;
        dims.push_back(k);
    }
    return dims;
}

bool is_diagonalizable(const Rep& rep, double tol) {
    auto dims = eigenspace_dims(rep, tol);
    int total = 0;
    for (int d : dims) total += d;
    return total == rep.dim();
}

Rep direct_sum(const Rep& a, const Rep& b) {
    const int n = a.dim(), m = b.dim();
    Rep r = a;
    auto blk = [&](const Matrix& x, const Matrix& y) {
        Matrix z = Matrix::Zero(n + m, n + m);
        z.topLeftCorner(n, n) = x;
        z.bottomRightCorner(m, m) = y;
        return z;
    };
    r.I1 = blk(a.I1, b.I1);
    r.I2 = blk(a.I2, b.I2);
    r.I3 = blk(a.I3, b.I3);
    r.meta.spectrum.insert(r.meta.spectrum.end(), b.meta.spectrum.begin(), b.meta.spectrum.end());
    r.meta.variant = "direct-sum";
    return r;
}

VerifyReport verify(const Rep& rep, const FieldCfg& cfg) {
    VerifyReport vr;
    vr.residuals = relation_residual(rep, rep.ap);
    vr.scale = 1.0 + rep.max_abs();
    auto [cv, dev] = casimir_eval(rep, rep.ap);
    vr.casimir_value = cv;
    vr.casimir_deviation = dev;
    vr.casimir_expected = rep.meta.casimir_value;
    vr.spectrum = rep.meta.spectrum;
    vr.commutant_dim = commutant_dim(rep);
    vr.trace_class = trace_class(rep, cfg);
    vr.trace_expected = qnum(rep.meta.qmu / cfg.half_pow(rep.dim() - 1), cfg);
    const double tol = cfg.tol();
    vr.flags.irreducible = vr.commutant_dim == 1;
    vr.flags.spectrum_distinct = pairwise_distinct(vr.spectrum, tol);
    vr.flags.trace_matches = near(vr.trace_class, vr.trace_expected, std::sqrt(tol));
    double cscale = std::max(1.0, vr.scale * vr.scale);
    vr.flags.casimir_matches = std::abs(vr.casimir_value - vr.casimir_expected) <= tol * cscale;
    return vr;
}

}  // namespace awrep::repverify
