#include "awrep/leonard.hpp"

#include <Eigen/LU>

#include "awrep/mpcomplex.hpp"

#include <algorithm>
#include <cmath>

namespace awrep::leonard {

using qkernel::Factor;
using qkernel::near;
using qkernel::qnum;
using qkernel::removable_ratio;
using repbuild::AlgebraParams;
using repbuild::Basis;

namespace {

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

template <class F>
void with_side(const char* side, F&& f) {
    try {
        f();
    } catch (const InvariantViolation& e) {
        throw InvariantViolation(std::string(side) + " side: " + e.what());
    }
}

}  // namespace

void check_dual_hypotheses(const RepParams& p, const FieldCfg& cfg) {
    with_side("mu", [&] {
        repbuild::check_general_classical(p, cfg);
        if (repbuild::top_level_index(p, cfg) < 0)
            throw InvariantViolation("none of q^{j1}, q^{j2}, q^{j3} equals q^{N+1}");
    });
    RepParams pn = p;
    pn.qmu = p.qnu(cfg);
    with_side("nu", [&] { repbuild::check_general_classical(pn, cfg); });
}

Matrix dual_i3(const RepParams& p, const FieldCfg& cfg) {
    const int N = p.N, n = N + 1;
    const Scalar qnu = p.qnu(cfg);
    const Scalar f = I_unit * p.qmu / cfg.qdiff();
    const Scalar tail = 1.0 / (p.qmu * p.qmu);
    Matrix m = Matrix::Zero(n, n);
    for (int j = 0; j <= N; ++j) {
        Scalar B = repbuild::coeff_A(j, qnu, p.jh, cfg);
        Scalar D = repbuild::coeff_C(j, qnu, p.jh, cfg);
        m(j, j) = f * (B + D - 1.0 + tail);
        if (j > 0) m(j - 1, j) = -f * D;
        if (j < N) m(j + 1, j) = -f * B;
    }
    return m;
}

Scalar dual_det_closed_form(const RepParams& p, const FieldCfg& cfg) {
    const int N = p.N;
    const Scalar qnu = p.qnu(cfg);
    Scalar v = std::pow(-I_unit * p.qmu / cfg.qdiff(), N + 1);
    for (int k = 0; k < 3; ++k)
        for (int m = 1; m <= N + 1; ++m) v *= cfg.q_pow(m) / p.qj(k) - 1.0;
    for (int m = N + 1; m <= 2 * N + 1; ++m) v /= 1.0 + cfg.q_pow(m) / (qnu * qnu);
    return v;
}

Rep build_dual(const RepParams& p, Branch branch, const FieldCfg& cfg) {
    if (branch == Branch::Swapped || branch == Branch::SwappedNegated)
        throw InvariantViolation("the dual form exists for the designated and negated branches only");
    check_dual_hypotheses(p, cfg);
    const int N = p.N, n = N + 1;
    const Scalar qnu = p.qnu(cfg);
    Rep r;
    r.I3 = dual_i3(p, cfg);
    r.I1 = Matrix::Zero(n, n);
    for (int j = 0; j <= N; ++j) r.I1(j, j) = -I_unit * qnum(qnu * cfg.q_pow(-j), cfg);
    AlgebraParams ap = repbuild::params_from_roots(p, cfg);
    if (branch == Branch::Negated) r.I1 = -r.I1;
    ap = repbuild::apply_branch(ap, branch);
    r.I2 = cfg.q12() * r.I3 * r.I1 - r.I1 * r.I3 / cfg.q12() - ap.A2 * Matrix::Identity(n, n);
    r.ap = ap;
    r.basis = Basis::Y;
    r.meta.qmu = p.qmu;
    r.meta.qnu = qnu;
    r.meta.variant = "Dual";
    repbuild::finish_meta(r, cfg);
    return r;
}

Matrix dual_equivalence(const Rep& repX, const Rep& repY, double rank_tol) {
    auto T = repverify::intertwiner(repX, repY, rank_tol);
    if (!T) throw NotEquivalent("no intertwiner between the two representations");
    Scalar t00 = (*T)(0, 0);
    if (std::abs(t00) <= 1e-14) throw NotEquivalent("intertwiner has T(0,0) = 0");
    Matrix t = *T / t00;
    Eigen::FullPivLU<Matrix> lu(*T);
    lu.setThreshold(1e-13);
    if (!lu.isInvertible()) throw NotEquivalent("intertwiner is singular");
    return t;
}

Rep double_dual(const RepParams& p, const FieldCfg& cfg) {
    RepParams pn = p;
    pn.qmu = p.qnu(cfg);
    Rep d = build_dual(pn, Branch::Designated, cfg);
    const int n = d.dim();
    AlgebraParams ap = repbuild::params_from_roots(p, cfg);
    Rep r;
    r.I1 = d.I3;
    r.I3 = d.I1;
    r.I2 = cfg.q12() * r.I3 * r.I1 - r.I1 * r.I3 / cfg.q12() - ap.A2 * Matrix::Identity(n, n);
    r.ap = ap;
    r.basis = Basis::X;
    r.meta.qmu = p.qmu;
    r.meta.qnu = pn.qmu;
    r.meta.variant = "DoubleDual";
    repbuild::finish_meta(r, cfg);
    return r;
}

RacahParams racah_params(const RepParams& p, const FieldCfg& cfg) {
    const Scalar q = cfg.q(), m2 = p.qmu * p.qmu;
    RacahParams rp;
    rp.alpha = 1.0 / p.qj(0);
    rp.beta = -p.qj(0) / (m2 * q);
    rp.gamma = 1.0 / p.qj(2);
    rp.delta = -m2 * q / (p.qj(0) * p.qj(1));
    rp.N = p.N;
    return rp;
}

RacahCoeffs racah_coeffs(int n, const RacahParams& rp, const FieldCfg& cfg) {
    const auto& [al, be, ga, de, N] = rp;
    (void)N;
    const Scalar ab = al * be, gd = ga * de, q = cfg.q();
    auto qp = [&](int k) { return cfg.q_pow(k); };
    const double tol = cfg.tol();
    RacahCoeffs c;
    // moving factors depend on alpha beta (A, C) or gamma delta (B, D) and are
    // written as 1 - c X so that border singularities cancel
    c.A = removable_ratio(1.0,
                          {{1.0 - al * qp(n + 1)}, {1.0 - be * de * qp(n + 1)}, {1.0 - ga * qp(n + 1)},
                           {1.0 - ab * qp(n + 1), true}},
                          {{1.0 - ab * qp(2 * n + 1), true}, {1.0 - ab * qp(2 * n + 2), true}}, tol);
    c.B = removable_ratio(1.0,
                          {{1.0 - al * qp(n + 1)}, {1.0 - be * de * qp(n + 1)}, {1.0 - ga * qp(n + 1)},
                           {1.0 - gd * qp(n + 1), true}},
                          {{1.0 - gd * qp(2 * n + 1), true}, {1.0 - gd * qp(2 * n + 2), true}}, tol);
    c.C = removable_ratio(q * ga * de,
                          {{1.0 - qp(n)},
                           {1.0 - be * qp(n), true},
                           {1.0 - ab * qp(n) / ga, true},
                           {1.0 - al * qp(n) / de, true}},
                          {{1.0 - ab * qp(2 * n), true}, {1.0 - ab * qp(2 * n + 1), true}}, tol);
    c.D = removable_ratio(q * be * al,
                          {{1.0 - qp(n)},
                           {1.0 - de * qp(n), true},
                           {1.0 - ga * qp(n) / be, true},
                           {1.0 - gd * qp(n) / al, true}},
                          {{1.0 - gd * qp(2 * n), true}, {1.0 - gd * qp(2 * n + 1), true}}, tol);
    return c;
}

Scalar racah_mu(int x, const RacahParams& rp, const FieldCfg& cfg) {
    return cfg.q_pow(-x) + rp.gamma * rp.delta * cfg.q_pow(x + 1);
}

namespace {

constexpr mp_bitcnt_t kRacahBits = 256;

// Parameters of the series in extended precision. A value sitting on an
// integer power of q (finiteness or border condition) is made exact, since the
// truncation of the sums depends on it and they cancel heavily for |q| > 1.
struct MpRacah {
    qkernel::MpC q, al, be, ga, de;

    MpRacah(const RacahParams& rp, const FieldCfg& cfg)
        : q(qkernel::MpC(cfg.q12(), kRacahBits) * qkernel::MpC(cfg.q12(), kRacahBits)),
          al(rp.alpha, kRacahBits),
          be(rp.beta, kRacahBits),
          ga(rp.gamma, kRacahBits),
          de(rp.delta, kRacahBits) {
        const int range = 4 * rp.N + 8;
        auto power = [&](Scalar v) -> std::optional<int> {
            for (int m = -range; m <= range; ++m)
                if (near(v, cfg.q_pow(m), cfg.tol())) return m;
            return std::nullopt;
        };
        if (auto m = power(rp.alpha)) al = qkernel::ipow(q, *m);
        if (auto m = power(rp.gamma)) ga = qkernel::ipow(q, *m);
        if (auto m = power(rp.alpha * rp.beta)) be = qkernel::ipow(q, *m) / al;
        if (auto m = power(rp.beta * rp.delta)) de = qkernel::ipow(q, *m) / be;
        else if (auto m2 = power(rp.gamma * rp.delta)) de = qkernel::ipow(q, *m2) / ga;
    }

    Scalar poly(int n, int x, double tol) const {
        using qkernel::ipow;
        return qkernel::phi43_mp({ipow(q, -n), al * be * ipow(q, n + 1), ipow(q, -x), ga * de * ipow(q, x + 1)},
                                 {al * q, be * de * q, ga * q}, q, q, std::max(n, 0), tol)
            .value();
    }
};

}  // namespace

Scalar racah_poly(int n, int x, const RacahParams& rp, const FieldCfg& cfg) {
    return MpRacah(rp, cfg).poly(n, x, cfg.tol());
}

Matrix racah_table(const RacahParams& rp, const FieldCfg& cfg) {
    const int n = rp.N + 1;
    MpRacah mp(rp, cfg);
    Matrix t(n, n);
    for (int j = 0; j < n; ++j)
        for (int x = 0; x < n; ++x) t(j, x) = mp.poly(j, x, cfg.tol());
    return t;
}

TransitionReport transition_matrix(const RepParams& p, Branch branch, const FieldCfg& cfg,
                                   bool compare_intertwiner) {
    Rep X = repbuild::build_classical_x(p, branch, cfg);
    Rep Y = build_dual(p, branch, cfg);
    const int N = p.N;
    RacahParams rp = racah_params(p, cfg);
    TransitionReport rep;
    rep.r.assign(N + 1, 1.0);
    for (int j = 1; j <= N; ++j) {
        Scalar C = repbuild::coeff_C(j, p.qmu, p.jh, cfg);
        if (std::abs(C) <= cfg.tol()) throw ZeroDenominator("C_" + std::to_string(j) + " = 0");
        rep.r[j] = rep.r[j - 1] * repbuild::coeff_A(j - 1, p.qmu, p.jh, cfg) / C;
    }
    Matrix R = racah_table(rp, cfg);
    rep.P = R;
    for (int j = 0; j <= N; ++j) rep.P.row(j) *= rep.r[j];
    const Scalar qnu = p.qnu(cfg), qd = cfg.qdiff();
    Matrix AX = I_unit / qnu * qd * X.I1, AY = I_unit / qnu * qd * Y.I1;
    Matrix BX = I_unit / p.qmu * qd * X.I3, BY = I_unit / p.qmu * qd * Y.I3;
    const double nP = max_abs(rep.P);
    rep.residual_A = max_abs(AX * rep.P - rep.P * AY) / (1.0 + std::max(max_abs(AX), max_abs(AY)) * nP);
    rep.residual_B = max_abs(BX * rep.P - rep.P * BY) / (1.0 + std::max(max_abs(BX), max_abs(BY)) * nP);
    if (compare_intertwiner) {
        if (auto T = repverify::intertwiner(Y, X)) {
            Matrix t = *T / (*T)(0, 0) * rep.P(0, 0);
            rep.intertwiner_deviation = max_abs(t - rep.P) / nP;
        }
    }
    return rep;
}

LeonardPairData leonard_pair(const RepParams& p, Branch branch, const FieldCfg& cfg) {
    Rep X = repbuild::build_classical_x(p, branch, cfg);
    Rep Y = build_dual(p, branch, cfg);
    const Scalar qnu = p.qnu(cfg), qd = cfg.qdiff();
    LeonardPairData d;
    d.A_X = I_unit / qnu * qd * X.I1;
    d.A_Y = I_unit / qnu * qd * Y.I1;
    d.B_X = I_unit / p.qmu * qd * X.I3;
    d.B_Y = I_unit / p.qmu * qd * Y.I3;
    d.P = transition_matrix(p, branch, cfg, false).P;
    d.rp = racah_params(p, cfg);
    d.qnu = qnu;
    return d;
}

namespace {

struct Residual {
    double worst = 0;
    void add(Scalar lhs, Scalar rhs, std::initializer_list<Scalar> terms) {
        double scale = 0;
        for (Scalar t : terms) scale = std::max(scale, std::abs(t));
        worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + scale));
    }
};

}  // namespace

RecurrenceResiduals recurrence_difference_check(const RacahParams& rp, const FieldCfg& cfg) {
    const int N = rp.N;
    const double tol = cfg.tol();
    const Scalar ab = rp.alpha * rp.beta, gd = rp.gamma * rp.delta, q = cfg.q();
    std::vector<RacahCoeffs> c;
    for (int n = 0; n <= N; ++n) c.push_back(racah_coeffs(n, rp, cfg));
    Matrix R = racah_table(rp, cfg);
    // the index N+1 only enters through A_N and B_N, which vanish under the finiteness condition
    Vector extraRow, extraCol;
    if (std::abs(c[N].A) > tol) {
        extraRow.resize(N + 1);
        for (int k = 0; k <= N; ++k) extraRow(k) = racah_poly(N + 1, k, rp, cfg);
    }
    if (std::abs(c[N].B) > tol) {
        extraCol.resize(N + 1);
        for (int j = 0; j <= N; ++j) extraCol(j) = racah_poly(j, N + 1, rp, cfg);
    }
    auto Rat = [&](int j, int k) -> Scalar {
        if (j < 0 || k < 0) return 0.0;
        if (j == N + 1) return extraRow.size() ? extraRow(k) : Scalar(0.0);
        if (k == N + 1) return extraCol.size() ? extraCol(j) : Scalar(0.0);
        return R(j, k);
    };
    Residual rec, dif;
    for (int j = 0; j <= N; ++j)
        for (int k = 0; k <= N; ++k) {
            Scalar t1 = c[j].A * Rat(j + 1, k);
            Scalar t2 = (c[j].A + c[j].C - 1.0 - gd * q) * R(j, k);
            Scalar t3 = c[j].C * Rat(j - 1, k);
            Scalar rhs = racah_mu(k, rp, cfg) * R(j, k);
            rec.add(t1 - t2 + t3, rhs, {t1, t2, t3, rhs});
            Scalar lhs = (cfg.q_pow(-j) + ab * cfg.q_pow(j + 1)) * R(j, k);
            Scalar u1 = c[k].D * Rat(j, k - 1);
            Scalar u2 = (c[k].B + c[k].D - 1.0 - ab * q) * R(j, k);
            Scalar u3 = c[k].B * Rat(j, k + 1);
            dif.add(lhs, u1 - u2 + u3, {lhs, u1, u2, u3});
        }
    return {rec.worst, dif.worst};
}

bool ConditionReport::passes() const {
    return std::all_of(conditions.begin(), conditions.end(), [](const ConditionResult& c) { return c.pass; });
}

bool ConditionReport::classical() const { return passes() && border.empty(); }

std::optional<std::string> ConditionReport::first_failure() const {
    for (const auto& c : conditions)
        if (!c.pass) return c.name + (c.witness ? " fails at " + std::to_string(*c.witness) : std::string(" fails"));
    if (!border.empty())
        return border.front().first + " = q^-l at border l = " + std::to_string(border.front().second);
    return std::nullopt;
}

ConditionReport validate_conditions(const RacahParams& rp, const FieldCfg& cfg) {
    const int N = rp.N;
    const double tol = cfg.tol();
    const auto& [al, be, ga, de, _] = rp;
    (void)_;
    const Scalar q = cfg.q(), ab = al * be, gd = ga * de;
    auto qm = [&](int k) { return cfg.q_pow(-k); };
    ConditionReport rep;

    ConditionResult fin{"alpha q = q^-N or beta delta q = q^-N or gamma q = q^-N", false, std::nullopt};
    fin.pass = near(al * q, qm(N), tol) || near(be * de * q, qm(N), tol) || near(ga * q, qm(N), tol);
    rep.conditions.push_back(fin);

    // lhs != c * q^-k for k = 1..N
    struct Ineq {
        const char* name;
        Scalar lhs, c;
    };
    const Ineq ineqs[] = {
        {"alpha != q^-k", al, 1.0},           {"beta delta != q^-k", be * de, 1.0},
        {"gamma != q^-k", ga, 1.0},           {"beta != q^-k", be, 1.0},
        {"alpha != delta q^-k", al, de},      {"alpha beta != gamma q^-k", ab, ga},
        {"gamma delta != alpha q^-k", gd, al}, {"gamma != beta q^-k", ga, be},
        {"delta != q^-k", de, 1.0},
    };
    for (const auto& iq : ineqs) {
        ConditionResult r{iq.name, true, std::nullopt};
        for (int k = 1; k <= N && r.pass; ++k)
            if (near(iq.lhs, iq.c * qm(k), tol)) {
                r.pass = false;
                r.witness = k;
            }
        rep.conditions.push_back(r);
    }
    for (auto [name, x] : {std::pair{"alpha beta q", ab * q}, std::pair{"gamma delta q", gd * q}}) {
        ConditionResult r{std::string(name) + " != q^-l", true, std::nullopt};
        for (int l = 1; l <= 2 * N - 1 && r.pass; ++l)
            if (near(x, qm(l), tol)) {
                r.pass = false;
                r.witness = l;
            }
        rep.conditions.push_back(r);
        std::vector<int> ls{-1, 0, 2 * N, 2 * N + 1};
        std::sort(ls.begin(), ls.end());
        ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
        for (int l : ls)
            if (near(x, qm(l), tol)) rep.border.emplace_back(name, l);
    }
    return rep;
}

BorderCheck border_recurrence_check(const RepParams& p, int l, const FieldCfg& cfg) {
    repbuild::check_border(p, l, cfg);
    const int N = p.N;
    RacahParams rp = racah_params(p, cfg);
    const Scalar gd = rp.gamma * rp.delta, q = cfg.q();
    std::vector<RacahCoeffs> c;
    for (int n = 0; n <= N; ++n) c.push_back(racah_coeffs(n, rp, cfg));
    Matrix R(N + 2, N + 1);
    for (int j = 0; j <= N + 1; ++j)
        for (int k = 0; k <= N; ++k) R(j, k) = racah_poly(j, k, rp, cfg);
    Residual rec, id;
    for (int k = 0; k <= N; ++k) {
        const Scalar theta = racah_mu(k, rp, cfg);
        for (int j = 0; j < N; ++j) {
            Scalar t1 = c[j].A * R(j + 1, k);
            Scalar t2 = (c[j].A + c[j].C - 1.0 - gd * q) * R(j, k);
            Scalar t3 = j > 0 ? c[j].C * R(j - 1, k) : Scalar(0.0);
            Scalar rhs = theta * R(j, k);
            rec.add(t1 - t2 + t3, rhs, {t1, t2, t3, rhs});
        }
        const auto& cN = c[N];
        Scalar below = N > 0 ? R(N - 1, k) : Scalar(0.0);
        Scalar t1, t2, rhs = theta * R(N, k);
        if (l == 2 * N + 1) {
            // x_{N+1} = x_N
            t1 = -(cN.C - 1.0 - gd * q) * R(N, k);
            t2 = cN.C * below;
            id.add(R(N, k), R(N + 1, k), {R(N, k), R(N + 1, k)});
        } else {
            // x_{N+1} = x_{N-1}
            t1 = (cN.A + cN.C) * below;
            t2 = -(cN.A + cN.C - 1.0 - gd * q) * R(N, k);
            if (N > 0) id.add(R(N + 1, k), below, {R(N + 1, k), below});
        }
        rec.add(t1 + t2, rhs, {t1, t2, rhs});
    }
    return {rec.worst, id.worst};
}

}  // namespace awrep::leonard
