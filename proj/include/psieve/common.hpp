#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace psieve {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Raised when interval floor certification still straddles an integer at the
// maximum working precision.  Callers must treat this as "unknown", never as 0/1.
struct precision_exhausted : std::runtime_error {
    explicit precision_exhausted(const std::string& what) : std::runtime_error(what) {}
};

// Thread-count resolution: explicit request wins, then PSIEVE_THREADS, then
// hardware_concurrency.  Always at least 1.
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PSIEVE_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Splits [0, n) into contiguous chunks, one worker per chunk.
// fn(chunk_index, begin, end).  Caller owns deterministic merge order.
// A worker exception is rethrown on the calling thread after all workers
// join (lowest chunk index wins).
template <class Fn>
void parallel_chunks(std::size_t n, int threads, Fn&& fn) {
    threads = std::max(1, threads);
    std::size_t nchunks = std::min<std::size_t>(threads, n);
    if (nchunks <= 1) {
        if (n > 0) fn(std::size_t{0}, std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nchunks);
    pool.reserve(nchunks);
    std::size_t base = n / nchunks, rem = n % nchunks, begin = 0;
    for (std::size_t c = 0; c < nchunks; ++c) {
        std::size_t len = base + (c < rem ? 1 : 0);
        std::size_t end = begin + len;
        pool.emplace_back([&fn, &errors, c, begin, end] {
            try {
                fn(c, begin, end);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace psieve
