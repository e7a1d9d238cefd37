#pragma once

#include <optional>
#include <string>
#include <vector>

#include "awrep/repbuild.hpp"
#include "awrep/repverify.hpp"

namespace awrep::leonard {

using qkernel::FieldCfg;
using repbuild::Branch;
using repbuild::Rep;
using repbuild::RepParams;

struct RacahParams {
    Scalar alpha{0.0}, beta{0.0}, gamma{0.0}, delta{0.0};
    int N = 0;
};

struct LeonardPairData {
    Matrix A_X, B_X, A_Y, B_Y;
    Matrix P;
    RacahParams rp;
    Scalar qnu{1.0};
};

// Throws InvariantViolation prefixed with "mu side" or "nu side".
void check_dual_hypotheses(const RepParams& p, const FieldCfg& cfg);

// I1 diagonal, I3 irreducible tridiagonal. Designated and negated branches only.
Rep build_dual(const RepParams& p, Branch branch, const FieldCfg& cfg);

// I3 of the dual form without any precondition checks (used by the
// determinant identity, which holds for arbitrary exponents).
Matrix dual_i3(const RepParams& p, const FieldCfg& cfg);
// det(I3 + i[mu]) of the dual form, closed product
Scalar dual_det_closed_form(const RepParams& p, const FieldCfg& cfg);

// Intertwiner T with T repX = repY T, scaled so T(0,0) = 1. NotEquivalent if absent.
Matrix dual_equivalence(const Rep& repX, const Rep& repY, double rank_tol = repverify::kRankTol);

// Dual of the dual, relabelled back to a rep of the original algebra in the X basis.
Rep double_dual(const RepParams& p, const FieldCfg& cfg);

RacahParams racah_params(const RepParams& p, const FieldCfg& cfg);

struct RacahCoeffs {
    Scalar A, B, C, D;
};
// Coefficients of the recurrence and difference equation at index n, with
// removable border singularities resolved.
RacahCoeffs racah_coeffs(int n, const RacahParams& rp, const FieldCfg& cfg);

// mu(x) = q^{-x} + gamma delta q^{x+1}
Scalar racah_mu(int x, const RacahParams& rp, const FieldCfg& cfg);
Scalar racah_poly(int n, int x, const RacahParams& rp, const FieldCfg& cfg);
// rows n = 0..N, columns x = 0..N
Matrix racah_table(const RacahParams& rp, const FieldCfg& cfg);

struct TransitionReport {
    Matrix P;
    std::vector<Scalar> r;  // row scale factors r_j
    double residual_A = 0;  // |A_X P - P A_Y| / (1 + |A_X||P|)
    double residual_B = 0;
    std::optional<double> intertwiner_deviation;  // |P - T| / |P| with T(0,0) = P(0,0)
};
TransitionReport transition_matrix(const RepParams& p, Branch branch, const FieldCfg& cfg,
                                   bool compare_intertwiner = true);

LeonardPairData leonard_pair(const RepParams& p, Branch branch, const FieldCfg& cfg);

struct RecurrenceResiduals {
    double recurrence = 0, difference = 0;
};
// Residuals relative to 1 + the largest term of each equation.
RecurrenceResiduals recurrence_difference_check(const RacahParams& rp, const FieldCfg& cfg);

struct ConditionResult {
    std::string name;  // the inequality, e.g. "alpha != q^-k"
    bool pass = true;
    std::optional<int> witness;
};

struct ConditionReport {
    std::vector<ConditionResult> conditions;
    // border values l in {-1, 0, 2N, 2N+1}, tagged "alpha beta q" or "gamma delta q"
    std::vector<std::pair<std::string, int>> border;

    bool passes() const;
    // all conditions hold and no border value is hit
    bool classical() const;
    std::optional<std::string> first_failure() const;
};
ConditionReport validate_conditions(const RacahParams& rp, const FieldCfg& cfg);

struct BorderCheck {
    double recurrence = 0;  // modified row-N recurrence, rows 0..N
    double identity = 0;    // R_N vs R_{N+1} (l = 2N+1) or R_{N+1} vs R_{N-1} (l = 2N)
};
BorderCheck border_recurrence_check(const RepParams& p, int l, const FieldCfg& cfg);

}  // namespace awrep::leonard
