#include "awrep/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "awrep/leonard.hpp"

namespace awrep::sweep {

Rep build_job(const Job& job) {
    const FieldCfg cfg = job.cfg();
    const auto& p = job.params;
    switch (job.variant) {
        case Variant::GeneralClassical:
            return job.basis == Basis::X ? repbuild::build_classical_x(p, job.branch, cfg)
                                         : repbuild::build_classical(p, job.branch, cfg);
        case Variant::ZeroA12Classical: return repbuild::build_zero_classical(job.A3, p.N, job.root, cfg);
        case Variant::ZeroA12NonClassical:
            return repbuild::build_zero_nonclassical(job.A3, p.N, p.eps, p.a_branch, cfg);
        case Variant::Border: return repbuild::build_border(p, p.border_l, job.branch, cfg);
    }
    throw InvariantViolation("unknown variant");
}

PointResult construct_and_verify(const Job& job, std::size_t index) {
    PointResult r;
    r.index = index;
    try {
        Rep rep = build_job(job);
        const double scale = 1.0 + rep.max_abs();
        auto res = repverify::relation_residual(rep, rep.ap);
        r.residual = *std::max_element(res.begin(), res.end()) / scale;
        r.casimir_deviation = repverify::casimir_eval(rep, rep.ap).second / (scale * scale);
        r.commutant_dim = repverify::commutant_dim(rep);
        r.trace_class = repverify::trace_class(rep, job.cfg());
        r.pass = r.residual <= job.tol && r.casimir_deviation <= job.tol && r.commutant_dim == 1;
        if (!r.pass) {
            r.exit_code = 3;
            r.error = r.commutant_dim != 1 ? "commutant dimension " + std::to_string(r.commutant_dim)
                                           : "residual above tolerance";
        }
    } catch (const Error& e) {
        r.exit_code = e.exit_code();
        r.error = e.what();
    } catch (const std::exception& e) {
        r.exit_code = 3;
        r.error = e.what();
    }
    return r;
}

std::vector<PointResult> run_serial(const std::vector<Job>& grid) {
    std::vector<PointResult> out;
    out.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out.push_back(construct_and_verify(grid[i], i));
    return out;
}

std::vector<PointResult> run_parallel(const std::vector<Job>& grid, int threads) {
    std::vector<PointResult> out(grid.size());
    const auto n = static_cast<std::int64_t>(grid.size());
    if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t i = 0; i < n; ++i) out[i] = construct_and_verify(grid[i], static_cast<std::size_t>(i));
    return out;
}

Aggregate aggregate(std::vector<PointResult> points) {
    Aggregate a;
    std::size_t built = 0;
    double sum = 0;
    for (const auto& p : points) {
        (p.pass ? a.passed : a.failed)++;
        if (p.exit_code == 0 || p.exit_code == 3) {
            ++built;
            sum += p.residual;
            a.max_residual = std::max(a.max_residual, p.residual);
            a.max_casimir_deviation = std::max(a.max_casimir_deviation, p.casimir_deviation);
        }
    }
    a.mean_residual = built ? sum / double(built) : 0.0;
    a.points = std::move(points);
    return a;
}

namespace {

bool acceptable(const Job& job, const RandomOptions& opt) {
    try {
        // checks rerun with the margin as tolerance keep the point away from
        // every excluded value, including roots of unity
        FieldCfg wide(job.q12, opt.margin, 2 * job.params.N + 4);
        if (opt.dual_valid) leonard::check_dual_hypotheses(job.params, wide);
        else repbuild::check_general_classical(job.params, wide);
        RepParams pn = job.params;
        pn.qmu = job.params.qnu(wide);
        if (repbuild::forbidden_l(pn.qmu, -1, 2 * pn.N + 1, wide)) return false;
        repbuild::build_classical(job.params, job.branch, job.cfg());
        return true;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace

std::vector<Job> random_grid(std::size_t count, std::uint64_t seed, const RandomOptions& opt) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> pickN(opt.n_min, opt.n_max), pick3(0, 2);
    std::vector<Job> grid;
    for (std::size_t i = 0; grid.size() < count; ++i) {
        Job job;
        job.params.N = pickN(rng);
        const bool circle = opt.circle_q && (!opt.real_q || grid.size() % 2 == 1);
        if (circle) job.q12 = std::exp(Scalar(0.0, (0.3 + 0.9 * unit(rng)) / 2));
        else job.q12 = std::sqrt(1.1 + 1.4 * unit(rng));
        job.params.qmu = std::exp(Scalar(0.5 * normal(rng), normal(rng)));
        const int fin = pick3(rng);
        for (int k = 0; k < 3; ++k) job.params.jh[k] = std::exp(Scalar(0.5 * normal(rng), normal(rng)));
        job.params.jh[fin] = std::pow(job.q12, job.params.N + 1);
        if (acceptable(job, opt)) grid.push_back(job);
    }
    return grid;
}

}  // namespace awrep::sweep
