#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "awrep/awsym.hpp"
#include "awrep/repbuild.hpp"

namespace awrep::repverify {

using qkernel::FieldCfg;
using repbuild::AlgebraParams;
using repbuild::Rep;

// Default relative threshold for rank decisions (singular values).
inline constexpr double kRankTol = 1e-9;

struct VerifyFlags {
    bool irreducible = false;
    bool spectrum_distinct = false;
    bool trace_matches = false;
    bool casimir_matches = false;
};

struct VerifyReport {
    std::array<double, 3> residuals{};
    double scale = 1.0;  // 1 + max-abs matrix entry
    Scalar casimir_value{0.0};
    Scalar casimir_expected{0.0};
    double casimir_deviation = 0.0;
    std::vector<Scalar> spectrum;
    int commutant_dim = 0;
    Scalar trace_class{0.0};
    Scalar trace_expected{0.0};
    VerifyFlags flags;

    double max_residual() const { return std::max({residuals[0], residuals[1], residuals[2]}); }
};

// max-abs entries of the three defining relations evaluated on the matrices
std::array<double, 3> relation_residual(const Rep& rep, const AlgebraParams& ap);

Matrix casimir_matrix(const Rep& rep, const AlgebraParams& ap);
// (mean diagonal value, max deviation from value * Id)
std::pair<Scalar, double> casimir_eval(const Rep& rep, const AlgebraParams& ap);

struct ShiftResiduals {
    double shift_up = 0, shift_down = 0, or_product = 0, ro_product = 0;
    double max() const { return std::max({shift_up, shift_down, or_product, ro_product}); }
};
// Residuals of the four shift identities at the I3-eigenvector with index j,
// each relative to 1 + (operator norm) * (vector norm) of its leading term
// (eigenvalue -i[mu-j]); the vector is normalized to unit length.
ShiftResiduals shift_action_check(const Rep& rep, const AlgebraParams& ap, int j, const FieldCfg& cfg);
// (|O_mu v_0|, |R_{mu-N} v_N|) for unit eigenvectors
std::pair<double, double> annihilation_norms(const Rep& rep, const AlgebraParams& ap, const FieldCfg& cfg);

int commutant_dim(const Rep& rep, double rank_tol = kRankTol);
// Singular values of the stacked commutator operator, descending.
std::vector<double> commutant_singular_values(const Rep& rep);

// T with T I_k^(1) = I_k^(2) T for all k, unit Frobenius norm, or nothing.
std::optional<Matrix> intertwiner(const Rep& rep1, const Rep& rep2, double rank_tol = kRankTol);
// Smallest singular value of the intertwining operator relative to the largest.
double intertwiner_gap(const Rep& rep1, const Rep& rep2);

// [mu - N/2]_q recovered from trace(I3)
Scalar trace_class(const Rep& rep, const FieldCfg& cfg);

// Pulled-back matrices; the result represents the permuted algebra
// (rho: (A2,A3,A1), sigma: (A2,A1,A3), tau: (eA1, e'A2, ee'A3)).
Rep apply_iso_matrix(const Rep& rep, const awsym::Iso& iso, const FieldCfg& cfg);
AlgebraParams iso_params(const AlgebraParams& ap, const awsym::Iso& iso);

// geometric multiplicities of the distinct eigenvalues of I3
std::vector<int> eigenspace_dims(const Rep& rep, double tol);
bool pairwise_distinct(const std::vector<Scalar>& v, double tol);
// max over a of the distance to its nearest unused partner in b, relative to 1 + |a|
double spectrum_distance(const std::vector<Scalar>& a, const std::vector<Scalar>& b);
bool is_diagonalizable(const Rep& rep, double tol);

Rep direct_sum(const Rep& a, const Rep& b);

VerifyReport verify(const Rep& rep, const FieldCfg& cfg);

}  // namespace awrep::repverify
