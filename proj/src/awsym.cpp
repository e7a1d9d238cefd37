#include "awrep/awsym.hpp"

#include <algorithm>
#include <sstream>

#include "awrep/errors.hpp"

namespace awrep::awsym {

// ---- Coeff -------------------------------------------------------------

Coeff::Coeff(long n) {
    if (n != 0) terms_[CoeffKey{}] = mpq_class(n);
}

Coeff Coeff::rational(long num, long den) {
    Coeff c;
    mpq_class r(num, den);
    r.canonicalize();
    c.add_term(CoeffKey{}, r);
    return c;
}

Coeff Coeff::v(int e) {
    Coeff c;
    c.terms_[CoeffKey{e, 0, 0, 0}] = 1;
    return c;
}

Coeff Coeff::A(int i) {
    Coeff c;
    CoeffKey k;
    if (i == 1) k.a = 1;
    else if (i == 2) k.b = 1;
    else k.c = 1;
    c.terms_[k] = 1;
    return c;
}

void Coeff::add_term(const CoeffKey& k, const mpq_class& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Coeff& Coeff::operator+=(const Coeff& o) {
    for (auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

Coeff Coeff::operator+(const Coeff& o) const {
    Coeff r = *this;
    r += o;
    return r;
}

Coeff Coeff::operator-() const {
    Coeff r = *this;
    for (auto& kv : r.terms_) kv.second = -kv.second;
    return r;
}

Coeff Coeff::operator-(const Coeff& o) const { return *this + (-o); }

Coeff Coeff::operator*(const Coeff& o) const {
    Coeff r;
    for (auto& [k1, c1] : terms_)
        for (auto& [k2, c2] : o.terms_)
            r.add_term(CoeffKey{k1.e + k2.e, k1.a + k2.a, k1.b + k2.b, k1.c + k2.c}, c1 * c2);
    return r;
}

Coeff Coeff::substitute(const std::array<Coeff, 3>& params) const {
    auto power = [](const Coeff& base, int n) {
        Coeff r(1);
        for (int i = 0; i < n; ++i) r = r * base;
        return r;
    };
    Coeff out;
    for (auto& [k, c] : terms_) {
        Coeff t;
        t.terms_[CoeffKey{k.e, 0, 0, 0}] = c;
        out += t * power(params[0], k.a) * power(params[1], k.b) * power(params[2], k.c);
    }
    return out;
}

std::string Coeff::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : terms_) {
        mpq_class mag = abs(c);
        bool neg = c < 0;
        if (first) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        first = false;
        std::vector<std::string> f;
        if (mag != 1) f.push_back(mag.get_str());
        if (k.e != 0) f.push_back(k.e == 1 ? "v" : "v^" + std::to_string(k.e));
        auto sym = [&](const char* s, int n) {
            if (n == 1) f.push_back(s);
            else if (n > 1) f.push_back(std::string(s) + "^" + std::to_string(n));
        };
        sym("A1", k.a);
        sym("A2", k.b);
        sym("A3", k.c);
        if (f.empty()) f.push_back("1");
        for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "*" : "") << f[i];
    }
    return os.str();
}

// ---- NCPoly ------------------------------------------------------------

NCPoly NCPoly::constant(const Coeff& c) {
    NCPoly p;
    p.add(Word{}, c);
    return p;
}

NCPoly NCPoly::gen(int i) {
    NCPoly p;
    p.add(Word{static_cast<std::uint8_t>(i)}, 1);
    return p;
}

NCPoly NCPoly::word(const Word& w, const Coeff& c) {
    NCPoly p;
    p.add(w, c);
    return p;
}

NCPoly NCPoly::monomial(int k, int m, int n) {
    Word w;
    w.insert(w.end(), k, 1);
    w.insert(w.end(), m, 2);
    w.insert(w.end(), n, 3);
    return word(w);
}

void NCPoly::add(const Word& w, const Coeff& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

NCPoly NCPoly::operator+(const NCPoly& o) const {
    NCPoly r = *this;
    for (auto& [w, c] : o.terms_) r.add(w, c);
    return r;
}

NCPoly NCPoly::operator-(const NCPoly& o) const {
    NCPoly r = *this;
    for (auto& [w, c] : o.terms_) r.add(w, -c);
    return r;
}

NCPoly NCPoly::operator*(const NCPoly& o) const {
    NCPoly r;
    for (auto& [w1, c1] : terms_)
        for (auto& [w2, c2] : o.terms_) {
            Word w = w1;
            w.insert(w.end(), w2.begin(), w2.end());
            r.add(w, c1 * c2);
        }
    return r;
}

NCPoly NCPoly::scaled(const Coeff& c) const {
    NCPoly r;
    if (c.is_zero()) return r;
    for (auto& [w, c1] : terms_) r.add(w, c1 * c);
    return r;
}

Coeff NCPoly::coeff_of(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Coeff() : it->second;
}

Coeff NCPoly::coeff_of(int k, int m, int n) const {
    return coeff_of(monomial(k, m, n).terms_.begin()->first);
}

bool NCPoly::is_normal() const {
    for (auto& [w, c] : terms_)
        if (!std::is_sorted(w.begin(), w.end())) return false;
    return true;
}

std::string NCPoly::str() const {
    if (terms_.empty()) return "0";
    // higher degree first, then by word
    std::vector<const std::pair<const Word, Coeff>*> order;
    for (auto& kv : terms_) order.push_back(&kv);
    std::stable_sort(order.begin(), order.end(),
                     [](auto* x, auto* y) { return x->first.size() > y->first.size(); });
    std::ostringstream os;
    bool first = true;
    for (auto* kv : order) {
        if (!first) os << " + ";
        first = false;
        os << "(" << kv->second.str() << ")";
        const Word& w = kv->first;
        for (std::size_t i = 0; i < w.size();) {
            std::size_t j = i;
            while (j < w.size() && w[j] == w[i]) ++j;
            os << "*I" << int(w[i]);
            if (j - i > 1) os << "^" << (j - i);
            i = j;
        }
    }
    return os.str();
}

NCPoly mul(const NCPoly& p, const NCPoly& r) { return p * r; }

// ---- rules -------------------------------------------------------------

RuleSet RuleSet::aw(const std::array<Coeff, 3>& params) {
    RuleSet rs;
    rs.params = params;
    // I2 I1 -> q I1 I2 - q^{1/2} (I3 + A3)
    rs.r21 = {Coeff::v(2), -Coeff::v(1), -(Coeff::v(1) * params[2])};
    // I3 I2 -> q I2 I3 - q^{1/2} (I1 + A1)
    rs.r32 = {Coeff::v(2), -Coeff::v(1), -(Coeff::v(1) * params[0])};
    // I3 I1 -> q^{-1} I1 I3 + q^{-1/2} (I2 + A2)
    rs.r31 = {Coeff::v(-2), Coeff::v(-1), Coeff::v(-1) * params[1]};
    return rs;
}

RuleSet RuleSet::standard() { return aw({Coeff::A(1), Coeff::A(2), Coeff::A(3)}); }

const Rule& RuleSet::rule(int b, int a) const {
    if (b == 2 && a == 1) return r21;
    if (b == 3 && a == 2) return r32;
    return r31;
}

namespace {

class Reducer {
public:
    Reducer(const RuleSet& rs, std::size_t bound) : rs_(rs), bound_(bound) {}

    NCPoly nf(const Word& w) {
        auto it = memo_.find(w);
        if (it != memo_.end()) return it->second;
        if (++steps_ > bound_) throw NonTermination("rewrite step bound exceeded");
        std::size_t i = 0;
        while (i + 1 < w.size() && w[i] <= w[i + 1]) ++i;
        NCPoly out;
        if (i + 1 >= w.size()) {
            out.add(w, 1);
        } else {
            int b = w[i], a = w[i + 1], g = 6 - a - b;
            const Rule& r = rs_.rule(b, a);
            Word swapped = w;
            std::swap(swapped[i], swapped[i + 1]);
            Word lin(w.begin(), w.begin() + i);
            lin.push_back(static_cast<std::uint8_t>(g));
            lin.insert(lin.end(), w.begin() + i + 2, w.end());
            Word cst(w.begin(), w.begin() + i);
            cst.insert(cst.end(), w.begin() + i + 2, w.end());
            if (!r.lead.is_zero()) out = out + nf(swapped).scaled(r.lead);
            if (!r.lin.is_zero()) out = out + nf(lin).scaled(r.lin);
            if (!r.cst.is_zero()) out = out + nf(cst).scaled(r.cst);
        }
        memo_.emplace(w, out);
        return out;
    }

private:
    const RuleSet& rs_;
    std::size_t bound_;
    std::size_t steps_ = 0;
    std::map<Word, NCPoly> memo_;
};

std::size_t step_bound(const NCPoly& p) {
    std::size_t L = 0;
    for (auto& [w, c] : p.terms()) L = std::max(L, w.size());
    std::size_t l = L + 1;
    return 100000 + 1000 * l * l * l * l;
}

}  // namespace

NCPoly reduce(const NCPoly& p, const RuleSet& rs) {
    Reducer red(rs, step_bound(p));
    NCPoly out;
    for (auto& [w, c] : p.terms()) out = out + red.nf(w).scaled(c);
    return out;
}

std::array<NCPoly, 3> relations(const RuleSet& rs) {
    auto g = [](int i) { return NCPoly::gen(i); };
    auto rel = [&](int x, int y, int z, const Coeff& A) {
        return (g(x) * g(y)).scaled(Coeff::v(1)) - (g(y) * g(x)).scaled(Coeff::v(-1)) - g(z) -
               NCPoly::constant(A);
    };
    return {rel(1, 2, 3, rs.params[2]), rel(2, 3, 1, rs.params[0]), rel(3, 1, 2, rs.params[1])};
}

std::array<NCPoly, 2> overlap_paths(const RuleSet& rs) {
    auto g = [](int i) { return NCPoly::gen(i); };
    auto expand = [&](const Rule& r, int b, int a) {
        return (g(a) * g(b)).scaled(r.lead) + g(6 - a - b).scaled(r.lin) + NCPoly::constant(r.cst);
    };
    // (I3 I2) I1 and I3 (I2 I1)
    NCPoly p1 = expand(rs.r32, 3, 2) * g(1);
    NCPoly p2 = g(3) * expand(rs.r21, 2, 1);
    return {reduce(p1, rs), reduce(p2, rs)};
}

bool diamond_check(const RuleSet& rs) {
    auto paths = overlap_paths(rs);
    return (paths[0] - paths[1]).is_zero();
}

std::vector<NamedTerm> casimir_terms(const RuleSet& rs) {
    auto w = [](Word x, const Coeff& c) { return NCPoly::word(x, c); };
    const auto& P = rs.params;
    Coeff q = Coeff::v(2), q2 = Coeff::v(4);
    return {
        {"I1^2", w({1, 1}, q2)},
        {"I2^2", w({2, 2}, 1)},
        {"I3^2", w({3, 3}, q2)},
        {"I1I2I3", w({1, 2, 3}, -(Coeff::v(5) - Coeff::v(1)))},
        {"A1I1", w({1}, (q2 + q) * P[0])},
        {"A2I2", w({2}, (q + Coeff(1)) * P[1])},
        {"A3I3", w({3}, (q2 + q) * P[2])},
    };
}

NCPoly casimir(const RuleSet& rs, const std::vector<std::string>& drop) {
    NCPoly c;
    for (auto& t : casimir_terms(rs))
        if (std::find(drop.begin(), drop.end(), t.name) == drop.end()) c = c + t.poly;
    return reduce(c, rs);
}

std::array<bool, 3> centrality_check(const NCPoly& c, const RuleSet& rs) {
    std::array<bool, 3> out{};
    for (int i = 1; i <= 3; ++i) {
        NCPoly g = NCPoly::gen(i);
        out[i - 1] = reduce(c * g - g * c, rs).is_zero();
    }
    return out;
}

std::string Iso::name() const {
    switch (kind) {
        case IsoKind::Rho: return "rho";
        case IsoKind::Sigma: return "sigma";
        case IsoKind::Tau: return "tau(" + std::to_string(eps) + "," + std::to_string(eps2) + ")";
    }
    return "?";
}

RuleSet iso_target(const Iso& iso, const RuleSet& source) {
    const auto& P = source.params;
    switch (iso.kind) {
        case IsoKind::Rho: return RuleSet::aw({P[2], P[0], P[1]});
        case IsoKind::Sigma: return RuleSet::aw({P[1], P[0], P[2]});
        case IsoKind::Tau:
            return RuleSet::aw({P[0] * Coeff(iso.eps), P[1] * Coeff(iso.eps2),
                                P[2] * Coeff(iso.eps * iso.eps2)});
    }
    return source;
}

namespace {

std::array<NCPoly, 3> images(const Iso& iso) {
    auto g = [](int i) { return NCPoly::gen(i); };
    switch (iso.kind) {
        case IsoKind::Rho: return {g(2), g(3), g(1)};
        case IsoKind::Sigma: {
            Coeff S = Coeff::v(1) + Coeff::v(-1);
            return {g(2), g(1), g(3) + (g(2) * g(1) - g(1) * g(2)).scaled(S)};
        }
        case IsoKind::Tau:
            return {g(1).scaled(iso.eps), g(2).scaled(iso.eps2), g(3).scaled(iso.eps * iso.eps2)};
    }
    return {g(1), g(2), g(3)};
}

}  // namespace

NCPoly substitute(const Iso& iso, const NCPoly& p) {
    auto img = images(iso);
    NCPoly out;
    for (auto& [w, c] : p.terms()) {
        NCPoly t = NCPoly::constant(c);
        for (auto letter : w) t = t * img[letter - 1];
        out = out + t;
    }
    return out;
}

IsoImage apply_iso(const Iso& iso, const NCPoly& p, const RuleSet& source) {
    RuleSet target = iso_target(iso, source);
    return {reduce(substitute(iso, p), target), target};
}

std::array<bool, 3> iso_homomorphism_check(const Iso& iso, const RuleSet& source) {
    RuleSet target = iso_target(iso, source);
    auto rels = relations(source);
    std::array<bool, 3> out{};
    for (int i = 0; i < 3; ++i) out[i] = reduce(substitute(iso, rels[i]), target).is_zero();
    return out;
}

}  // namespace awrep::awsym
