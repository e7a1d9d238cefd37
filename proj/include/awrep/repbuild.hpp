#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "awrep/qkernel.hpp"

namespace awrep {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace repbuild {

using qkernel::FieldCfg;

enum class Variant { GeneralClassical, ZeroA12Classical, ZeroA12NonClassical, Border };
std::string to_string(Variant v);

// (q^mu, q^{j_i/2}, N) plus the variant tag. Only powers are stored.
struct RepParams {
    Scalar qmu{1.0};
    std::array<Scalar, 3> jh{1.0, 1.0, 1.0};
    int N = 0;
    Variant variant = Variant::GeneralClassical;
    int eps = 1;       // ZeroA12NonClassical
    int a_branch = 1;  // ZeroA12NonClassical
    int border_l = 0;  // Border: 2N or 2N+1

    Scalar qj(int i) const { return jh[i] * jh[i]; }
    Scalar jprod() const { return jh[0] * jh[1] * jh[2]; }
    // q^nu with nu = -mu - 1 + (j1+j2+j3)/2
    Scalar qnu(const FieldCfg& cfg) const { return jprod() / (qmu * cfg.q()); }
};

struct AlgebraParams {
    Scalar A1{0.0}, A2{0.0}, A3{0.0};
};

// The four solutions of the parameter system: (A1,A2), (-A1,-A2), (A2,A1), (-A2,-A1).
enum class Branch { Designated, Negated, Swapped, SwappedNegated };
std::string to_string(Branch b);
AlgebraParams apply_branch(const AlgebraParams& ap, Branch b);

enum class Basis { V, X, Y };
std::string to_string(Basis b);

struct RepMeta {
    Scalar qmu{1.0};
    std::optional<Scalar> qnu;
    std::vector<Scalar> spectrum;  // eigenvalues of I3
    Scalar casimir_value{0.0};
    std::string variant;
};

struct Rep {
    Matrix I1, I2, I3;
    Basis basis = Basis::V;
    Scalar q12{1.0};
    AlgebraParams ap;
    RepMeta meta;
    int dim() const { return static_cast<int>(I1.rows()); }
    double max_abs() const;
};

struct LambdaG {
    Scalar lambda, g;
};
LambdaG lambda_g(int j, const RepParams& p, const FieldCfg& cfg);
// Lambda_{j_k}; k = 0 gives Lambda_0
Scalar lambda_root(int k, const RepParams& p, const FieldCfg& cfg);

Scalar ctilde(Scalar qlam, const AlgebraParams& ap, const FieldCfg& cfg);
Scalar dtilde(int j, const RepParams& p, const FieldCfg& cfg);

AlgebraParams params_from_roots(const RepParams& p, const FieldCfg& cfg);

// Throws InvariantViolation naming the failed condition.
void check_general_classical(const RepParams& p, const FieldCfg& cfg);
// index i with Lambda_{j_i} = Lambda_{N+1}, or -1
int finite_root_index(const RepParams& p, const FieldCfg& cfg);
// index i with q^{j_i} = q^{N+1}, or -1
int top_level_index(const RepParams& p, const FieldCfg& cfg);
// forbidden l in [lo, hi] with q^{2x} = -q^l, if any
std::optional<int> forbidden_l(Scalar qx, int lo, int hi, const FieldCfg& cfg);

Rep build_classical(const RepParams& p, Branch branch, const FieldCfg& cfg);

// V basis from (q^mu, A1, A2, A3) with D~_j = C~_mu - C~_{mu-j}. Checks
// D~_{N+1} = 0, D~_k != 0 for k = 1..N and the forbidden q^{2mu} values.
Rep build_from_algebra(Scalar qmu, const AlgebraParams& ap, int N, const FieldCfg& cfg);

// Coefficients A_j, C_j of the X basis (border-safe evaluation).
Scalar coeff_A(int j, Scalar qmu, const std::array<Scalar, 3>& jh, const FieldCfg& cfg);
Scalar coeff_C(int j, Scalar qmu, const std::array<Scalar, 3>& jh, const FieldCfg& cfg);

Rep build_classical_x(const RepParams& p, Branch branch, const FieldCfg& cfg);

// Roots of (q^{-(N+1)/2}+q^{(N+1)/2})[mu-N/2] = -i(q^{1/2}+q^{-1/2})A3 as values q^{mu-N/2}.
std::array<Scalar, 2> solve_mu_zero(Scalar A3, int N, const FieldCfg& cfg);
// Throws InvariantViolation with the violating k if some k in {-1..2N+1} gives equality.
void check_zero_classical(Scalar A3, int N, const FieldCfg& cfg);
Rep build_zero_classical(Scalar A3, int N, int root_choice, const FieldCfg& cfg);

Scalar zero_nonclassical_qmu(int N, int eps, const FieldCfg& cfg);
Scalar zero_nonclassical_dtilde(int j, Scalar A3, int N, int eps, const FieldCfg& cfg);
Scalar zero_nonclassical_a(Scalar A3, int N, int eps, int a_branch, const FieldCfg& cfg);
// A3 for which a = 0
Scalar zero_nonclassical_special_A3(int N, int eps, const FieldCfg& cfg);
Rep build_zero_nonclassical(Scalar A3, int N, int eps, int a_branch, const FieldCfg& cfg);

void check_border(const RepParams& p, int l, const FieldCfg& cfg);
Rep build_border(const RepParams& p, int l, Branch branch, const FieldCfg& cfg);

// c3 I3 + c2 I2 + c1 I1
struct ShiftTriple {
    Scalar c3, c2, c1;
};
struct ShiftOps {
    ShiftTriple O, R;
};
ShiftTriple shift_O(Scalar qlam, const AlgebraParams& ap, const FieldCfg& cfg);
ShiftTriple shift_R(Scalar qlam, const AlgebraParams& ap, const FieldCfg& cfg);
ShiftOps shift_ops(Scalar qlam, const AlgebraParams& ap, const FieldCfg& cfg);
Matrix apply_triple(const ShiftTriple& t, const Rep& rep);

// trace(I3) predicted from q^mu and N
Scalar trace_formula(Scalar qmu, int N, const FieldCfg& cfg);

// Eigenvalues; tridiagonal input is symmetrized by a diagonal similarity first.
std::vector<Scalar> eigenvalues(const Matrix& m);

// Fills spectrum, casimir value and the q12 echo.
void finish_meta(Rep& rep, const FieldCfg& cfg);

}  // namespace repbuild
}  // namespace awrep
