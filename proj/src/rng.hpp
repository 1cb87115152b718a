// Counter-based random streams and a deterministic task runner.
#pragma once

#include <cstdint>
#include <functional>

#include "arith.hpp"

namespace cf {

uint64_t mix64(uint64_t x);

// Stream keyed by (master seed, path); the i-th draw is mix64(key + i * golden).
class Stream {
public:
    explicit Stream(uint64_t key) : key_(key) {}
    static Stream derive(uint64_t master, uint64_t a, uint64_t b = 0, uint64_t c = 0);

    uint64_t next();
    double uniform();                 // [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    uint64_t below(uint64_t n);       // [0, n)
    mpz_class bits(unsigned nbits);   // uniform in [0, 2^nbits)
    // lo + (hi - lo) * k / 2^nbits
    mpq_class rational(const mpq_class& lo, const mpq_class& hi, unsigned nbits);

private:
    uint64_t key_;
    uint64_t counter_ = 0;
};

// Worker count: CF_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();
void set_thread_count(unsigned n);  // 0 restores the default

// Runs body(i) for i in [0, n) on thread_count() threads. Bodies must write
// only to their own slot; results therefore never depend on the thread count.
void parallel_for(size_t n, const std::function<void(size_t)>& body);

}  // namespace cf
