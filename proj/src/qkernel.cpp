#include "awrep/qkernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace awrep::qkernel {

namespace {

Scalar ipow(Scalar base, int k) {
    if (k < 0) return 1.0 / ipow(base, -k);
    Scalar r = 1.0;
    while (k > 0) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

bool finite(Scalar z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

FieldCfg::FieldCfg(Scalar q12, double tol, int guard_order)
    : q12_(q12), tol_(tol), guard_(guard_order) {
    if (!(tol > 0)) throw InvariantViolation("tolerance must be positive");
    if (guard_order < 1) throw InvariantViolation("guard order must be positive");
    if (!finite(q12) || std::abs(q12) <= tol) throw DegenerateBase("q^{1/2} must be nonzero and finite");
    Scalar q = q12 * q12, qk = 1.0;
    for (int k = 1; k <= guard_order; ++k) {
        qk *= q;
        if (std::abs(qk - 1.0) <= tol) {
            std::ostringstream os;
            os << "q is within tolerance of a root of unity (|q^" << k << " - 1| <= " << tol << ")";
            throw DegenerateBase(os.str());
        }
    }
}

Scalar FieldCfg::half_pow(int k) const { return ipow(q12_, k); }

bool near(Scalar a, Scalar b, double tol) {
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= tol * scale;
}

bool near_zero(Scalar a, double tol) { return std::abs(a) <= tol; }

Scalar qnum(Scalar qalpha, const FieldCfg& cfg) {
    Scalar d = cfg.qdiff();
    if (std::abs(d) <= cfg.tol()) throw DegenerateBase("q - q^{-1} vanishes");
    if (std::abs(qalpha) == 0.0) throw DegenerateBase("q^alpha = 0 has no q-number");
    return (qalpha - 1.0 / qalpha) / d;
}

Scalar qpow(Scalar exponent, const FieldCfg& cfg) {
    if (exponent == Scalar(0.0)) return 1.0;
    return std::exp(exponent * std::log(cfg.q()));
}

Scalar qpoch(Scalar a, int k, const FieldCfg& cfg) {
    Scalar r = 1.0, qi = 1.0, q = cfg.q();
    for (int i = 0; i < k; ++i) {
        r *= 1.0 - a * qi;
        qi *= q;
    }
    return r;
}

std::vector<Scalar> phi43_coeffs(const std::array<Scalar, 4>& num,
                                 const std::array<Scalar, 3>& den, int nterms,
                                 const FieldCfg& cfg) {
    const double tol = cfg.tol();
    std::vector<Scalar> a(num.begin(), num.end()), b(den.begin(), den.end());
    for (auto it = a.begin(); it != a.end();) {
        auto hit = std::find_if(b.begin(), b.end(), [&](Scalar x) { return near(x, *it, tol); });
        if (hit != b.end()) {
            b.erase(hit);
            it = a.erase(it);
        } else {
            ++it;
        }
    }
    std::vector<Scalar> c(nterms + 1, 0.0);
    const Scalar q = cfg.q();
    Scalar term = 1.0, qk = 1.0;  // qk = q^{k-1} at step k
    c[0] = 1.0;
    for (int k = 1; k <= nterms; ++k) {
        Scalar numf = 1.0, denf = 1.0;
        bool stop = false;
        for (Scalar x : a) {
            if (near(x * qk, 1.0, tol)) stop = true;
            numf *= 1.0 - x * qk;
        }
        if (stop) break;
        for (Scalar y : b) {
            if (near(y * qk, 1.0, tol)) {
                std::ostringstream os;
                os << "denominator Pochhammer vanishes at term " << k;
                throw DenominatorPole(os.str());
            }
            denf *= 1.0 - y * qk;
        }
        Scalar qq = 1.0 - qk * q;  // (q;q)_k increment
        term *= numf / (denf * qq);
        c[k] = term;
        qk *= q;
    }
    return c;
}

Scalar phi43(const std::array<Scalar, 4>& num, const std::array<Scalar, 3>& den, Scalar z,
             int nterms, const FieldCfg& cfg) {
    auto c = phi43_coeffs(num, den, nterms, cfg);
    Scalar sum = 0.0, zk = 1.0;
    for (Scalar ck : c) {
        sum += ck * zk;
        zk *= z;
    }
    return sum;
}

Scalar removable_ratio(Scalar prefactor, std::vector<Factor> num, std::vector<Factor> den,
                       double tol) {
    int moving_zero_num = 0;
    bool fixed_zero_num = false;
    for (auto& f : den)
        if (!f.moving && near_zero(f.value, tol)) throw DenominatorPole("fixed denominator factor vanishes");
    for (auto& f : num) {
        if (!near_zero(f.value, tol)) continue;
        if (f.moving) ++moving_zero_num;
        else fixed_zero_num = true;
    }
    if (fixed_zero_num) return 0.0;
    int moving_zero_den = 0;
    for (auto& f : den)
        if (near_zero(f.value, tol)) ++moving_zero_den;
    if (moving_zero_den > moving_zero_num) throw DenominatorPole("non-removable singularity");
    // cancel vanishing pairs; what is left is a regular product
    int cancel = moving_zero_den;
    Scalar r = prefactor;
    for (auto& f : num) {
        if (cancel > 0 && f.moving && near_zero(f.value, tol)) {
            --cancel;
            continue;
        }
        r *= f.value;
    }
    for (auto& f : den)
        if (!near_zero(f.value, tol)) r /= f.value;
    return r;
}

}  // namespace awrep::qkernel
