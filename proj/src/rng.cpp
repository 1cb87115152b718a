#include "rng.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cf {

uint64_t mix64(uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

namespace {
constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
std::atomic<unsigned> g_threads{0};
}  // namespace

Stream Stream::derive(uint64_t master, uint64_t a, uint64_t b, uint64_t c) {
    uint64_t k = mix64(master + kGolden);
    k = mix64(k ^ mix64(a + 1));
    k = mix64(k ^ mix64(b + 0x51ed27ULL));
    k = mix64(k ^ mix64(c + 0x2545f491ULL));
    return Stream(k);
}

uint64_t Stream::next() { return mix64(key_ + (++counter_) * kGolden); }

double Stream::uniform() { return double(next() >> 11) * 0x1.0p-53; }

uint64_t Stream::below(uint64_t n) {
    // rejection keeps the draw unbiased
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
        v = next();
    } while (v >= limit);
    return v % n;
}

mpz_class Stream::bits(unsigned nbits) {
    mpz_class r = 0;
    unsigned have = 0;
    while (have < nbits) {
        unsigned take = std::min(64u, nbits - have);
        uint64_t v = next();
        if (take < 64) v &= (uint64_t(1) << take) - 1;
        mpz_class part;
        mpz_import(part.get_mpz_t(), 1, 1, sizeof v, 0, 0, &v);
        r = (r << take) + part;
        have += take;
    }
    return r;
}

mpq_class Stream::rational(const mpq_class& lo, const mpq_class& hi, unsigned nbits) {
    mpz_class k = bits(nbits);
    mpz_class den = mpz_class(1) << nbits;
    mpq_class f(k, den);
    f.canonicalize();
    return lo + (hi - lo) * f;
}

unsigned thread_count() {
    unsigned forced = g_threads.load();
    if (forced) return forced;
    if (const char* env = std::getenv("CF_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return unsigned(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

void set_thread_count(unsigned n) { g_threads.store(n); }

void parallel_for(size_t n, const std::function<void(size_t)>& body) {
    unsigned t = std::min<size_t>(thread_count(), n);
    if (t <= 1) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < t; ++w) {
        pool.emplace_back([&] {
            for (size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace cf
