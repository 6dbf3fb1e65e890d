#pragma once

#include <vector>
#include <functional>
#include <thread>
#include <atomic>
#include <complex>

#include "padic.hpp"

namespace lfactor {

enum class Measure { Additive, Multiplicative };

/**
 * Finite coset lattice for one p-adic integration variable: the cosets of
 * p^{Mp} O inside p^{-M} O. A coset is indexed by its digits a_{-M}..a_{Mp-1};
 * the all-zero index is the coset of 0 (skipped for multiplicative measure).
 */
struct LatticeAxis {
    int M = 0;    // lowest valuation -M
    int Mp = 1;   // coset modulus p^{Mp}
};

struct LatticeDomain {
    int64_t p;
    std::vector<LatticeAxis> axes;
    int prec_guard = 4;

    int digits(size_t i) const { return axes[i].M + axes[i].Mp; }
    int64_t cosets_per_axis(size_t i) const { return PAdicScalar::pow_i(p, digits(i)); }
    int64_t total() const {
        int64_t t = 1;
        for (size_t i = 0; i < axes.size(); ++i) t *= cosets_per_axis(i);
        return t;
    }
    int scalar_prec() const {
        int m = 0;
        for (auto& a : axes) m = std::max(m, a.M + a.Mp);
        return m + prec_guard;
    }

    // Representative of coset `idx` on axis i: integer n in [0, p^{M+Mp})
    // read as n * p^{-M}.
    PAdicScalar rep(size_t i, int64_t idx) const {
        PAdicScalar x = PAdicScalar::from_integer(p, idx, scalar_prec());
        return x.shifted(-axes[i].M);
    }
};

namespace detail {

struct Kahan {
    std::complex<double> s{0, 0}, c{0, 0};
    void add(std::complex<double> v) {
        std::complex<double> y = v - c;
        std::complex<double> t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

} // namespace detail

/**
 * Exact-measure sum over the coset lattice of a function asserted to be
 * constant on cosets. Additive measure gives each coset mass q^{-Mp};
 * multiplicative measure weights by q^{val}/(1-1/q) per axis and skips the
 * zero coset. Threaded evaluation reduces over fixed chunks in index order,
 * so the result is bit-identical for any thread count.
 */
inline std::complex<double> integrate_locally_constant(
        const std::function<std::complex<double>(const std::vector<PAdicScalar>&)>& f,
        const LatticeDomain& dom, Measure measure, int threads = 1) {
    size_t d = dom.axes.size();
    int64_t total = dom.total();
    double q = static_cast<double>(dom.p);

    std::vector<int64_t> radix(d);
    for (size_t i = 0; i < d; ++i) radix[i] = dom.cosets_per_axis(i);

    auto eval_index = [&](int64_t flat) -> std::complex<double> {
        std::vector<PAdicScalar> pt(d);
        double weight = 1.0;
        int64_t rem = flat;
        for (size_t i = 0; i < d; ++i) {
            int64_t idx = rem % radix[i];
            rem /= radix[i];
            pt[i] = dom.rep(i, idx);
            weight *= std::pow(q, -dom.axes[i].Mp);
            if (measure == Measure::Multiplicative) {
                if (pt[i].is_zero() || pt[i].val >= dom.axes[i].Mp)
                    return {0, 0};   // zero coset: not in F^x window
                weight *= std::pow(q, static_cast<double>(pt[i].val)) / (1.0 - 1.0 / q);
            }
        }
        return f(pt) * weight;
    };

    const int64_t chunk = 4096;
    int64_t nchunks = (total + chunk - 1) / chunk;
    std::vector<std::complex<double>> partial(nchunks, {0, 0});

    auto run_chunk = [&](int64_t ci) {
        detail::Kahan acc;
        int64_t lo = ci * chunk, hi = std::min(total, lo + chunk);
        for (int64_t j = lo; j < hi; ++j) acc.add(eval_index(j));
        partial[ci] = acc.s;
    };

    if (threads <= 1 || nchunks == 1) {
        for (int64_t ci = 0; ci < nchunks; ++ci) run_chunk(ci);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int64_t> next{0};
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&]() {
                for (;;) {
                    int64_t ci = next.fetch_add(1);
                    if (ci >= nchunks) return;
                    run_chunk(ci);
                }
            });
        for (auto& th : pool) th.join();
    }
    detail::Kahan out;
    for (auto& v : partial) out.add(v);
    return out.s;
}

} // namespace lfactor
