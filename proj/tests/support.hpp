#pragma once

// Parameter generators and small helpers shared by the unit, integration and
// acceptance tests.

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "awrep/leonard.hpp"
#include "awrep/repbuild.hpp"
#include "awrep/repverify.hpp"
#include "awrep/sweep.hpp"

namespace awtest {

using namespace awrep;
using qkernel::FieldCfg;
using repbuild::AlgebraParams;
using repbuild::Branch;
using repbuild::Rep;
using repbuild::RepParams;

inline constexpr Branch kAllBranches[] = {Branch::Designated, Branch::Negated, Branch::Swapped,
                                          Branch::SwappedNegated};

// Valid general-classical jobs, alternating real q in [1.1, 2.5] and q on the
// unit circle with angle in [0.3, 1.2].
inline std::vector<sweep::Job> general_jobs(std::size_t count, std::uint64_t seed, int n_max = 10,
                                            bool dual_valid = false, int n_min = 1) {
    sweep::RandomOptions opt;
    opt.n_min = n_min;
    opt.n_max = n_max;
    opt.dual_valid = dual_valid;
    return sweep::random_grid(count, seed, opt);
}

inline double rel_residual(const Rep& r) {
    auto res = repverify::relation_residual(r, r.ap);
    return *std::max_element(res.begin(), res.end()) / (1.0 + r.max_abs());
}

inline double rel_casimir(const Rep& r) {
    return repverify::casimir_eval(r, r.ap).second / (1.0 + r.max_abs());
}

inline Scalar random_q12(std::mt19937_64& rng, bool circle) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (circle) return std::exp(Scalar(0.0, (0.3 + 0.9 * u(rng)) / 2));
    return std::sqrt(1.1 + 1.4 * u(rng));
}

inline Scalar random_unit_scale(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    return std::exp(Scalar(0.5 * g(rng), g(rng)));
}

// Border parameters: q^{2mu} = -q^l, some q^{j_i} = q^{N+1}, the rest random
// and kept away from every other excluded value.
inline RepParams border_params(int N, int l, Scalar q12, std::mt19937_64& rng) {
    FieldCfg wide(q12, 0.05, 2 * N + 4);
    for (;;) {
        RepParams p;
        p.N = N;
        p.variant = repbuild::Variant::Border;
        p.border_l = l;
        p.qmu = Scalar(0.0, 1.0) * wide.half_pow(l);
        for (auto& h : p.jh) h = random_unit_scale(rng);
        p.jh[std::uniform_int_distribution<int>(0, 2)(rng)] = wide.half_pow(N + 1);
        try {
            repbuild::check_border(p, l, wide);
            return p;
        } catch (const Error&) {
        }
    }
}

// Another q^mu giving an (N+1)-dimensional representation of the same
// algebra: a root of C~(x) - C~(x q^{-N-1}) found by Newton's method.
inline std::optional<Scalar> other_root(const AlgebraParams& ap, int N, const FieldCfg& cfg, Scalar start) {
    auto f = [&](Scalar x) { return repbuild::ctilde(x, ap, cfg) - repbuild::ctilde(x * cfg.q_pow(-N - 1), ap, cfg); };
    Scalar x = start;
    try {
        for (int it = 0; it < 80; ++it) {
            const Scalar fx = f(x);
            const double scale = 1.0 + std::abs(repbuild::ctilde(x, ap, cfg));
            if (std::abs(fx) <= 1e-13 * scale) return x;
            const Scalar h = 1e-7 * std::max(1.0, std::abs(x));
            const Scalar d = (f(x + h) - f(x - h)) / (2.0 * h);
            if (std::abs(d) == 0.0) return std::nullopt;
            Scalar step = fx / d;
            if (std::abs(step) > 0.5 * std::abs(x)) step *= 0.5 * std::abs(x) / std::abs(step);
            x -= step;
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag()) || std::abs(x) < 1e-6) return std::nullopt;
        }
    } catch (const Error&) {
    }
    return std::nullopt;
}

inline std::vector<Scalar> sorted(std::vector<Scalar> v) {
    std::sort(v.begin(), v.end(), [](Scalar a, Scalar b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return v;
}

}  // namespace awtest
