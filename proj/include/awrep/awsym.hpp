#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace awrep::awsym {

// Key of a coefficient monomial v^e A1^a A2^b A3^c, v standing for q^{1/2}.
struct CoeffKey {
    int e = 0, a = 0, b = 0, c = 0;
    auto operator<=>(const CoeffKey&) const = default;
};

// Exact Laurent polynomial in v with polynomial dependence on A1, A2, A3.
class Coeff {
public:
    Coeff() = default;
    Coeff(long n);  // NOLINT: integers embed implicitly
    static Coeff rational(long num, long den);
    static Coeff v(int e);
    static Coeff A(int i);  // i in {1,2,3}
    static Coeff zero() { return Coeff(); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<CoeffKey, mpq_class>& terms() const { return terms_; }

    Coeff operator+(const Coeff& o) const;
    Coeff operator-(const Coeff& o) const;
    Coeff operator-() const;
    Coeff operator*(const Coeff& o) const;
    Coeff& operator+=(const Coeff& o);
    bool operator==(const Coeff& o) const { return terms_ == o.terms_; }

    // replace A1, A2, A3 by the given coefficients
    Coeff substitute(const std::array<Coeff, 3>& params) const;

    std::string str() const;

private:
    void add_term(const CoeffKey& k, const mpq_class& c);
    std::map<CoeffKey, mpq_class> terms_;
};

// A word in the generators I1, I2, I3 (stored as 1, 2, 3).
using Word = std::vector<std::uint8_t>;

// Element of the free algebra; words need not be ordered until reduced.
class NCPoly {
public:
    NCPoly() = default;
    static NCPoly constant(const Coeff& c);
    static NCPoly gen(int i);
    static NCPoly word(const Word& w, const Coeff& c = 1);
    static NCPoly monomial(int k, int m, int n);  // I1^k I2^m I3^n

    bool is_zero() const { return terms_.empty(); }
    const std::map<Word, Coeff>& terms() const { return terms_; }
    void add(const Word& w, const Coeff& c);

    NCPoly operator+(const NCPoly& o) const;
    NCPoly operator-(const NCPoly& o) const;
    NCPoly operator*(const NCPoly& o) const;  // concatenation product
    NCPoly scaled(const Coeff& c) const;
    bool operator==(const NCPoly& o) const { return terms_ == o.terms_; }

    Coeff coeff_of(const Word& w) const;
    Coeff coeff_of(int k, int m, int n) const;
    bool is_normal() const;  // every word ordered I1 <= I2 <= I3
    std::size_t size() const { return terms_.size(); }

    std::string str() const;

private:
    std::map<Word, Coeff> terms_;
};

NCPoly mul(const NCPoly& p, const NCPoly& r);

// Rewrite rule for an inverted pair (b a), b > a:
//   b a -> lead * a b + lin * I_g + cst
// where g is the remaining generator.
struct Rule {
    Coeff lead, lin, cst;
};

// The three ordering rules together with the algebra parameters they encode.
struct RuleSet {
    Rule r21, r32, r31;
    std::array<Coeff, 3> params;  // A1, A2, A3 as coefficients

    // relations with parameters given as coefficients
    static RuleSet aw(const std::array<Coeff, 3>& params);
    // symbolic parameters A1, A2, A3
    static RuleSet standard();
    const Rule& rule(int b, int a) const;
};

// Normal form under the rules. Throws NonTermination past the step bound.
NCPoly reduce(const NCPoly& p, const RuleSet& rs = RuleSet::standard());

// The defining relations q^{1/2}I1I2 - q^{-1/2}I2I1 - I3 - A3 and cyclic.
std::array<NCPoly, 3> relations(const RuleSet& rs = RuleSet::standard());

// Both reductions of the overlap I3 I2 I1; equal iff the overlap resolves.
std::array<NCPoly, 2> overlap_paths(const RuleSet& rs);
bool diamond_check(const RuleSet& rs = RuleSet::standard());

struct NamedTerm {
    std::string name;
    NCPoly poly;
};
// Terms of the Casimir element with names such as "I2^2", "I1I2I3", "A1I1".
std::vector<NamedTerm> casimir_terms(const RuleSet& rs = RuleSet::standard());
NCPoly casimir(const RuleSet& rs = RuleSet::standard(), const std::vector<std::string>& drop = {});
std::array<bool, 3> centrality_check(const NCPoly& c, const RuleSet& rs = RuleSet::standard());

enum class IsoKind { Rho, Sigma, Tau };
struct Iso {
    IsoKind kind = IsoKind::Rho;
    int eps = 1, eps2 = 1;  // used by Tau
    std::string name() const;
};

// Algebra whose relations the generator images satisfy.
RuleSet iso_target(const Iso& iso, const RuleSet& source = RuleSet::standard());
// Image of p under the generator substitution, not reduced.
NCPoly substitute(const Iso& iso, const NCPoly& p);

struct IsoImage {
    NCPoly poly;
    RuleSet target;
};
IsoImage apply_iso(const Iso& iso, const NCPoly& p, const RuleSet& source = RuleSet::standard());

// every source relation maps to exact zero in the target algebra
std::array<bool, 3> iso_homomorphism_check(const Iso& iso, const RuleSet& source = RuleSet::standard());

}  // namespace awrep::awsym
