#include "awrep/mpcomplex.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace awrep::qkernel {

MpC operator*(const MpC& a, const MpC& b) {
    MpC r = a;
    r.re = a.re * b.re - a.im * b.im;
    r.im = a.re * b.im + a.im * b.re;
    return r;
}

MpC operator/(const MpC& a, const MpC& b) {
    MpC r = a;
    mpf_class d(b.re * b.re + b.im * b.im, a.bits());
    r.re = (a.re * b.re + a.im * b.im) / d;
    r.im = (a.im * b.re - a.re * b.im) / d;
    return r;
}

MpC operator+(const MpC& a, const MpC& b) {
    MpC r = a;
    r.re += b.re;
    r.im += b.im;
    return r;
}

MpC one_minus(const MpC& a) {
    MpC r = a;
    r.re = 1 - a.re;
    r.im = -a.im;
    return r;
}

MpC ipow(const MpC& base, int e) {
    MpC r(1.0, 0.0, base.bits());
    MpC b = e < 0 ? r / base : base;
    for (int i = 0; i < std::abs(e); ++i) r = r * b;
    return r;
}

MpC phi43_mp(const std::array<MpC, 4>& num, const std::array<MpC, 3>& den, const MpC& z, const MpC& q,
             int nterms, double tol) {
    const mp_bitcnt_t b = q.bits();
    std::vector<MpC> a(num.begin(), num.end()), d(den.begin(), den.end());
    for (auto it = a.begin(); it != a.end();) {
        auto hit = std::find_if(d.begin(), d.end(), [&](const MpC& y) { return near(y.value(), it->value(), tol); });
        if (hit != d.end()) {
            d.erase(hit);
            it = a.erase(it);
        } else {
            ++it;
        }
    }
    MpC sum(1.0, 0.0, b), term(1.0, 0.0, b), qk(1.0, 0.0, b);
    for (int k = 1; k <= nterms; ++k) {
        MpC numf(1.0, 0.0, b), denf(1.0, 0.0, b);
        bool stop = false;
        for (const auto& x : a) {
            MpC xq = x * qk;
            if (near(xq.value(), 1.0, tol)) stop = true;
            numf = numf * one_minus(xq);
        }
        if (stop) break;
        for (const auto& y : d) {
            MpC yq = y * qk;
            if (near(yq.value(), 1.0, tol)) {
                std::ostringstream os;
                os << "denominator Pochhammer vanishes at term " << k;
                throw DenominatorPole(os.str());
            }
            denf = denf * one_minus(yq);
        }
        qk = qk * q;
        denf = denf * one_minus(qk);
        term = term * numf / denf * z;
        sum = sum + term;
    }
    return sum;
}

}  // namespace awrep::qkernel
