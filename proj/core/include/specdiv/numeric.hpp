#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace specdiv {

using Int = mpz_class;
using Rat = mpq_class;

/// Raised when an input violates a documented precondition or file invariant.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a computation exceeds its declared enumeration/size budget.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

using LatticeVector = std::vector<Int>;
using RationalVector = std::vector<Rat>;

inline Int int_from(long v) { return Int(v); }

inline long to_long(const Int& v) {
    if (!v.fits_slong_p()) throw budget_error("integer does not fit in a machine word");
    return v.get_si();
}

inline double to_double(const Int& v) { return v.get_d(); }
inline double to_double(const Rat& v) { return v.get_d(); }

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int mod_floor(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

/// floor(sqrt(n)) for n >= 0.
inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline Int rat_floor(const Rat& q) { return floor_div(q.get_num(), q.get_den()); }
inline Int rat_ceil(const Rat& q) { return ceil_div(q.get_num(), q.get_den()); }

/// Fractional part in [0, 1).
inline Rat rat_mod1(const Rat& q) {
    Rat r = q - Rat(rat_floor(q));
    r.canonicalize();
    return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Maximum worker threads used by internal enumeration; 1 means sequential.
void set_max_threads(int n);
int max_threads();

}  // namespace specdiv
