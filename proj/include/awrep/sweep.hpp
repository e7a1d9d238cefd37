#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "awrep/repverify.hpp"

namespace awrep::sweep {

using qkernel::FieldCfg;
using repbuild::Basis;
using repbuild::Branch;
using repbuild::Rep;
using repbuild::RepParams;
using repbuild::Variant;

// One construction request. params.N is used by every variant; q^mu and
// q^{j_i/2} only by the general and border variants.
struct Job {
    Variant variant = Variant::GeneralClassical;
    Scalar q12{1.5};
    RepParams params;
    Branch branch = Branch::Designated;
    Basis basis = Basis::V;  // V or X for the general variant
    Scalar A3{0.0};          // zero-parameter variants
    int root = 0;            // which solution of the zero-case equation
    double tol = 1e-9;

    FieldCfg cfg() const { return FieldCfg::for_dim(q12, params.N, tol); }
};

Rep build_job(const Job& job);

struct PointResult {
    std::size_t index = 0;
    bool pass = false;
    int exit_code = 0;
    std::string error;             // "Kind: message" when the build or a check threw
    double residual = 0;           // max relation residual / (1 + max entry)
    double casimir_deviation = 0;  // / (1 + max entry)^2
    int commutant_dim = 0;
    Scalar trace_class{0.0};
};

// Build, verify and classify one point; never throws.
PointResult construct_and_verify(const Job& job, std::size_t index);

// Reference implementation, one point after another.
std::vector<PointResult> run_serial(const std::vector<Job>& grid);
// OpenMP over grid points; results are stored by grid index, so the output is
// identical to run_serial. threads <= 0 keeps the OpenMP default.
std::vector<PointResult> run_parallel(const std::vector<Job>& grid, int threads = 0);

struct Aggregate {
    std::vector<PointResult> points;
    std::size_t passed = 0, failed = 0;
    double max_residual = 0, mean_residual = 0, max_casimir_deviation = 0;
};
Aggregate aggregate(std::vector<PointResult> points);

struct RandomOptions {
    int n_min = 1, n_max = 8;
    bool real_q = true, circle_q = true;  // alternate when both are set
    bool dual_valid = false;              // also require the dual hypotheses
    double margin = 0.05;                 // relative distance kept from excluded values
};
// Valid general-classical jobs, reproducible from the seed.
std::vector<Job> random_grid(std::size_t count, std::uint64_t seed, const RandomOptions& opt = {});

}  // namespace awrep::sweep
