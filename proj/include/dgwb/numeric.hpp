#ifndef DGWB_NUMERIC_HPP
#define DGWB_NUMERIC_HPP

#include <gmpxx.h>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgwb {

/// Exact rational scalar. GMP keeps values canonical (reduced, positive
/// denominator), which is exactly the invariant we need.
using Rational = mpq_class;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mixed variable registries, mismatched algebras and the like.
struct context_error : error {
    using error::error;
};

/// A structural invariant failed mid-computation (e.g. a broken differential
/// surfacing as im ⊄ ker).
struct invariant_violation : error {
    using error::error;
};

struct parse_error : error {
    int line, col;
    parse_error(const std::string& msg, int line_, int col_)
        : error(msg + " at line " + std::to_string(line_) + ", column " + std::to_string(col_)),
          line(line_), col(col_) {}
};

Rational parse_rational(const std::string& text);
std::string rational_str(const Rational& q);

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;  // row-major

std::size_t rank(QMatrix m);

/// Basis of the right nullspace {v : m·v = 0}, columns as vectors.
std::vector<QVector> nullspace(QMatrix m);

/// Solves m·x = b; returns false when inconsistent.
bool solve(QMatrix m, QVector b, QVector& x);

/// Column span membership: does b lie in the span of the columns of m?
bool in_column_span(const QMatrix& m, const QVector& b);

/// SplitMix64; the fixed stream behind every seeded sampler in the tool.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// Uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    /// Small rational with |numerator| <= 7, 1 <= denominator <= 7.
    Rational small_rational() {
        long num = static_cast<long>(below(15)) - 7;
        long den = static_cast<long>(below(7)) + 1;
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
};

/// Worker cap from DGWB_THREADS (defaults to 1).
unsigned worker_cap();

/// Runs fn(i) for i in [0, n); parallel when the cap allows. Results must be
/// written to index-addressed slots so ordering never matters.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace dgwb

#endif
