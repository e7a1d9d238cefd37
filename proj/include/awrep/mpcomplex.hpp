#pragma once

#include <gmpxx.h>

#include <array>

#include "awrep/qkernel.hpp"

namespace awrep::qkernel {

// Complex number over GMP floats; all temporaries keep the precision of the
// left operand.
struct MpC {
    mpf_class re, im;
    MpC(double r, double i, mp_bitcnt_t bits) : re(r, bits), im(i, bits) {}
    MpC(Scalar z, mp_bitcnt_t bits) : MpC(z.real(), z.imag(), bits) {}
    Scalar value() const { return {re.get_d(), im.get_d()}; }
    mp_bitcnt_t bits() const { return re.get_prec(); }
};

MpC operator*(const MpC& a, const MpC& b);
MpC operator/(const MpC& a, const MpC& b);
MpC operator+(const MpC& a, const MpC& b);
MpC one_minus(const MpC& a);
// base^e for integer e
MpC ipow(const MpC& base, int e);

// Terminating 4phi3 on multiprecision parameters; same rules as phi43.
MpC phi43_mp(const std::array<MpC, 4>& num, const std::array<MpC, 3>& den, const MpC& z, const MpC& q,
             int nterms, double tol);

}  // namespace awrep::qkernel
