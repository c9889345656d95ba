#include "dgwb/numeric.hpp"

#include <cstdlib>
#include <functional>
#include <thread>

namespace dgwb {

Rational parse_rational(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0) throw error("bad rational literal: " + text);
    if (q.get_den() == 0) throw error("zero denominator: " + text);
    q.canonicalize();
    return q;
}

std::string rational_str(const Rational& q) { return q.get_str(); }

namespace {

// Gaussian elimination to row echelon form; returns pivot columns.
std::vector<std::size_t> echelon(QMatrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        Rational inv = 1 / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::size_t rank(QMatrix m) { return echelon(m).size(); }

std::vector<QVector> nullspace(QMatrix m) {
    if (m.empty()) return {};
    std::size_t cols = m[0].size();
    auto pivots = echelon(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<QVector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        QVector v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

bool solve(QMatrix m, QVector b, QVector& x) {
    std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);
    auto pivots = echelon(m);
    x.assign(cols, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == cols) return false;  // pivot in the augmented column
        x[pivots[r]] = m[r][cols];
    }
    return true;
}

bool in_column_span(const QMatrix& m, const QVector& b) {
    if (m.empty()) {
        for (const auto& v : b)
            if (v != 0) return false;
        return true;
    }
    // transpose: columns of m become the generators
    std::size_t rows = m.size();
    QMatrix sys(rows);
    for (std::size_t i = 0; i < rows; ++i) sys[i] = m[i];
    QVector x;
    return solve(std::move(sys), b, x);
}

unsigned worker_cap() {
    const char* env = std::getenv("DGWB_THREADS");
    if (!env) return 1;
    long v = std::strtol(env, nullptr, 10);
    return v > 0 ? static_cast<unsigned>(v) : 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned cap = worker_cap();
    if (cap <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    unsigned workers = static_cast<unsigned>(std::min<std::size_t>(cap, n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace dgwb
