#include <doctest.h>

#include "support.hpp"

using namespace awtest;
using namespace awrep::repverify;
using awrep::awsym::Iso;
using awrep::awsym::IsoKind;

namespace {

bool close(Scalar a, Scalar b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

Rep sample_rep(Branch b = Branch::Designated) {
    FieldCfg c = FieldCfg::for_dim(1.3, 4);
    RepParams p;
    p.N = 4;
    p.qmu = Scalar(0.8, 0.5);
    p.jh = {c.half_pow(5), Scalar(1.1), Scalar(0.9, 0.2)};
    return repbuild::build_classical(p, b, c);
}

}  // namespace

TEST_CASE("relation residual oracle") {
    Rep z;
    z.I1 = z.I2 = z.I3 = Matrix::Zero(3, 3);
    z.q12 = 1.3;
    auto r = relation_residual(z, {0.0, 0.0, 1.0});
    CHECK(r[0] == doctest::Approx(1.0));
    CHECK(r[1] == 0.0);
    CHECK(r[2] == 0.0);
    z.I2 = Matrix::Zero(2, 2);
    CHECK_THROWS_AS(relation_residual(z, {}), DimensionMismatch);

    Rep v = sample_rep();
    CHECK(rel_residual(v) < 1e-12);
    for (double d : {1e-6, 1e-3}) {
        Rep w = v;
        w.I1(1, 2) += d;
        auto res = relation_residual(w, w.ap);
        CHECK(*std::max_element(res.begin(), res.end()) > 0.1 * d);
    }
}

TEST_CASE("casimir value and scalarity") {
    for (const auto& job : general_jobs(20, 31, 8)) {
        Rep r = sweep::build_job(job);
        auto [v, dev] = casimir_eval(r, r.ap);
        CHECK(dev / (1 + r.max_abs()) < 1e-10);
        CHECK(close(v, repbuild::ctilde(job.params.qmu, r.ap, job.cfg()), 1e-9 * (1 + r.max_abs())));
    }
}

TEST_CASE("shift identities at every admissible index") {
    for (const auto& job : general_jobs(20, 37, 8)) {
        Rep r = sweep::build_job(job);
        FieldCfg c = job.cfg();
        int checked = 0;
        for (int j = 0; j <= job.params.N; ++j) {
            try {
                CHECK(shift_action_check(r, r.ap, j, c).max() < 1e-9);
                ++checked;
            } catch (const ShiftDenominatorZero&) {
            }
        }
        CHECK(checked > 0);
        auto [o, rr] = annihilation_norms(r, r.ap, c);
        CHECK(o < 1e-9 * (1 + r.max_abs()));
        CHECK(rr < 1e-9 * (1 + r.max_abs()));
    }
}

TEST_CASE("commutant dimension") {
    Rep v = sample_rep();
    CHECK(commutant_dim(v) == 1);
    CHECK(commutant_dim(direct_sum(v, v)) == 4);
    // an equivalent rep of the same algebra from the second root
    FieldCfg c = FieldCfg::for_dim(1.3, 4);
    Scalar qmu2 = -c.q_pow(4) / v.meta.qmu;
    Rep w = repbuild::build_from_algebra(qmu2, v.ap, 4, c);
    CHECK(commutant_dim(direct_sum(v, w)) == 4);
    // inequivalent: different algebra
    Rep u = sample_rep(Branch::Negated);
    CHECK(commutant_dim(direct_sum(v, u)) == 2);
}

TEST_CASE("intertwiners") {
    Rep v = sample_rep();
    auto T = intertwiner(v, v);
    REQUIRE(T.has_value());
    Matrix S = *T / (*T)(0, 0);
    CHECK((S - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-10);

    FieldCfg c = FieldCfg::for_dim(1.3, 4);
    Rep w = repbuild::build_from_algebra(-c.q_pow(4) / v.meta.qmu, v.ap, 4, c);
    auto U = intertwiner(v, w);
    REQUIRE(U.has_value());
    for (const Matrix* m : {&v.I1, &v.I2, &v.I3}) {
        const Matrix* n = m == &v.I1 ? &w.I1 : m == &v.I2 ? &w.I2 : &w.I3;
        CHECK((*U * *m - *n * *U).cwiseAbs().maxCoeff() < 1e-10 * (1 + w.max_abs()));
    }
    CHECK(close(trace_class(v, c), trace_class(w, c), 1e-12));
    CHECK_FALSE(intertwiner(v, sample_rep(Branch::Negated)).has_value());
}

TEST_CASE("same-algebra inequivalent pairs") {
    int inequivalent = 0;
    for (const auto& job : general_jobs(12, 41, 4)) {
        FieldCfg c = job.cfg();
        Rep v = repbuild::build_classical(job.params, job.branch, c);
        std::mt19937_64 rng(job.params.N);
        for (int t = 0; t < 8; ++t) {
            auto x = other_root(v.ap, job.params.N, c, v.meta.qmu * random_unit_scale(rng));
            if (!x) continue;
            Rep w;
            try {
                w = repbuild::build_from_algebra(*x, v.ap, job.params.N, c.with_tol(1e-6));
            } catch (const Error&) {
                continue;
            }
            const bool same = close(trace_class(v, c), trace_class(w, c), 1e-7);
            const bool differ = !close(trace_class(v, c), trace_class(w, c), 1e-3);
            if (!same && !differ) continue;
            CHECK(intertwiner(v, w).has_value() == same);
            if (differ) ++inequivalent;
        }
    }
    CHECK(inequivalent > 5);
}

TEST_CASE("trace class") {
    FieldCfg c = FieldCfg::for_dim(1.3, 0);
    RepParams p;
    p.N = 0;
    p.qmu = Scalar(0.8, 0.5);
    p.jh = {c.q12(), 1.1, Scalar(0.9, 0.2)};
    Rep r = repbuild::build_classical(p, Branch::Designated, c);
    CHECK(close(r.I3.trace(), -Scalar(0.0, 1.0) * qkernel::qnum(p.qmu, c), 1e-14));
    CHECK(close(trace_class(r, c), qkernel::qnum(p.qmu, c), 1e-14));
}

TEST_CASE("matrix isomorphisms") {
    FieldCfg c = FieldCfg::for_dim(1.3, 4);
    Rep v = sample_rep();
    Rep t = apply_iso_matrix(v, {IsoKind::Tau, 1, 1}, c);
    CHECK(t.I1 == v.I1);
    CHECK(t.I3 == v.I3);
    Rep r3 = apply_iso_matrix(apply_iso_matrix(apply_iso_matrix(v, {IsoKind::Rho}, c), {IsoKind::Rho}, c),
                              {IsoKind::Rho}, c);
    CHECK(r3.I1 == v.I1);
    CHECK(r3.I2 == v.I2);
    CHECK(r3.I3 == v.I3);
    for (Iso iso : {Iso{IsoKind::Rho}, Iso{IsoKind::Sigma}, Iso{IsoKind::Tau, -1, 1}, Iso{IsoKind::Tau, 1, -1}}) {
        Rep w = apply_iso_matrix(v, iso, c);
        CHECK_MESSAGE(rel_residual(w) < 1e-11, iso.name());
    }
}

TEST_CASE("branch symmetry through sigma") {
    FieldCfg c = FieldCfg::for_dim(1.3, 4);
    Rep d = sample_rep(Branch::Designated);
    Rep s = apply_iso_matrix(sample_rep(Branch::Swapped), {IsoKind::Sigma}, c);
    CHECK(close(s.ap.A1, d.ap.A1, 1e-14));
    CHECK(rel_residual(s) < 1e-11);
    CHECK(intertwiner(s, d).has_value());
}

TEST_CASE("eigenspaces and diagonalizability") {
    for (const auto& job : general_jobs(15, 43, 8)) {
        Rep r = sweep::build_job(job);
        for (int d : eigenspace_dims(r, 1e-9)) CHECK(d == 1);
        CHECK(is_diagonalizable(r, 1e-9));
    }
    std::mt19937_64 rng(3);
    for (int N : {2, 4}) {
        for (int l : {2 * N, 2 * N + 1}) {
            FieldCfg c = FieldCfg::for_dim(1.3, N);
            Rep b = repbuild::build_border(border_params(N, l, c.q12(), rng), l, Branch::Designated, c);
            CHECK(is_diagonalizable(b, 1e-9));
            CHECK(commutant_dim(b) == 1);
        }
    }
    // a Jordan block is not diagonalizable
    Rep j;
    j.I1 = j.I2 = Matrix::Zero(2, 2);
    j.I3 = Matrix::Zero(2, 2);
    j.I3(0, 1) = 1.0;
    CHECK_FALSE(is_diagonalizable(j, 1e-9));
    CHECK(eigenspace_dims(j, 1e-9) == std::vector<int>{1});
}

TEST_CASE("spectrum distance") {
    std::vector<Scalar> a{1.0, 2.0, Scalar(0.0, 3.0)}, b{Scalar(0.0, 3.0), 1.0, 2.0};
    CHECK(spectrum_distance(a, b) == 0.0);
    b[1] = 1.5;
    CHECK(spectrum_distance(a, b) > 0.2);
}

TEST_CASE("verify report") {
    Rep v = sample_rep();
    auto vr = verify(v, FieldCfg::for_dim(1.3, 4));
    CHECK(vr.flags.irreducible);
    CHECK(vr.flags.spectrum_distinct);
    CHECK(vr.flags.trace_matches);
    CHECK(vr.flags.casimir_matches);
    CHECK(vr.commutant_dim == 1);
    CHECK(vr.max_residual() / vr.scale < 1e-12);
}
