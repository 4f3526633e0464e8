#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace sextic {

using Int = mpz_class;
using Rat = mpq_class;

using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

inline Rat make_rat(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

/// Reduce q into the half-open interval [0, m) working in Q (m > 0).
inline Rat mod_interval(const Rat& q, const Rat& m) {
    Rat r = q;
    Rat f(r / m);
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), f.get_num_mpz_t(), f.get_den_mpz_t());
    r -= Rat(fl) * m;
    if (r < 0) r += m;  // guard against exact-boundary drift
    if (r >= m) r -= m;
    return r;
}

inline std::string rat_to_string(const Rat& q) {
    if (is_integer(q)) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::optional<Rat> rat_from_string(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::string t = s;
    if (t.find('/') == std::string::npos) t += "/1";
    Rat q;
    if (q.set_str(t, 10) != 0) return std::nullopt;
    if (q.get_den() == 0) return std::nullopt;
    q.canonicalize();
    return q;
}

/// floor(sqrt(n)) for n >= 0.
inline Int isqrt_floor(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

/// Largest integer x with x <= q.
inline Int rat_floor(const Rat& q) {
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return fl;
}

/// Smallest integer x with x >= q.
inline Int rat_ceil(const Rat& q) {
    Int c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return c;
}

}  // namespace sextic
