#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "awrep/errors.hpp"

namespace awrep {

using Scalar = std::complex<double>;
inline constexpr Scalar I_unit{0.0, 1.0};

namespace qkernel {

// Scalar context. Everything downstream works with stored powers of q,
// never with raw exponents; q12 is the value of q^{1/2}.
class FieldCfg {
public:
    explicit FieldCfg(Scalar q12, double tol = 1e-9, int guard_order = 64);

    // guard order 2N+4, the default when a dimension N+1 is in play
    static FieldCfg for_dim(Scalar q12, int N, double tol = 1e-9) {
        return FieldCfg(q12, tol, 2 * N + 4);
    }

    Scalar q12() const { return q12_; }
    Scalar q() const { return q12_ * q12_; }
    double tol() const { return tol_; }
    int guard_order() const { return guard_; }

    // q^{1/2} + q^{-1/2} and q^{1/2} - q^{-1/2}
    Scalar S() const { return q12_ + 1.0 / q12_; }
    Scalar s() const { return q12_ - 1.0 / q12_; }
    // q - q^{-1}
    Scalar qdiff() const { return q() - 1.0 / q(); }
    // q^{k/2} for integer k
    Scalar half_pow(int k) const;
    Scalar q_pow(int k) const { return half_pow(2 * k); }

    FieldCfg with_tol(double tol) const { return FieldCfg(q12_, tol, guard_); }

private:
    Scalar q12_;
    double tol_;
    int guard_;
};

// approximate equality with a scale floor of 1
bool near(Scalar a, Scalar b, double tol);
bool near_zero(Scalar a, double tol);

// [alpha]_q given the value q^alpha
Scalar qnum(Scalar qalpha, const FieldCfg& cfg);

// principal-branch q^x = exp(x log q)
Scalar qpow(Scalar exponent, const FieldCfg& cfg);

// (a; q)_k
Scalar qpoch(Scalar a, int k, const FieldCfg& cfg);

// Terminating 4phi3. Matching numerator/denominator parameters are
// cancelled first; summation stops at the first vanishing numerator factor.
Scalar phi43(const std::array<Scalar, 4>& num, const std::array<Scalar, 3>& den, Scalar z,
             int nterms, const FieldCfg& cfg);

// Coefficients of z^k, k = 0..nterms, of the same series.
std::vector<Scalar> phi43_coeffs(const std::array<Scalar, 4>& num,
                                 const std::array<Scalar, 3>& den, int nterms,
                                 const FieldCfg& cfg);

// A factor of a product formula. `moving` marks factors that depend on the
// border variable (q^{2mu} or q^{2nu}); those are written as (1 - c X) so two
// of them vanishing at the same point have ratio 1 there.
struct Factor {
    Scalar value;
    bool moving = false;
};

// prefactor * prod(num) / prod(den), resolving removable 0/0 at a border
// point. Throws DenominatorPole when the singularity is genuine.
Scalar removable_ratio(Scalar prefactor, std::vector<Factor> num, std::vector<Factor> den,
                       double tol);

}  // namespace qkernel
}  // namespace awrep
