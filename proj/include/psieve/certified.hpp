#pragma once

// Certified floors and ceilings of b^e for integer b and double e, backed by
// MPFR interval evaluation with directed rounding.  The working interval is
// widened by a configurable guard band (in ulps); if an integer still cannot
// be separated the precision doubles, up to a hard cap, after which
// precision_exhausted is thrown.  There is no silent fallback.

#include <cstdint>
#define MPFR_USE_INTMAX_T
#include <mpfr.h>

#include <string>

#include "psieve/common.hpp"

namespace psieve {

struct CertifyConfig {
    int start_bits = 64;
    int max_bits = 512;
    int guard_ulps = 4;  // extra widening applied to each interval endpoint
};

namespace detail {

class MpfrValue {
  public:
    explicit MpfrValue(int bits) { mpfr_init2(v_, bits); }
    ~MpfrValue() { mpfr_clear(v_); }
    MpfrValue(const MpfrValue&) = delete;
    MpfrValue& operator=(const MpfrValue&) = delete;
    mpfr_ptr get() { return v_; }

  private:
    mpfr_t v_;
};

inline void widen_down(mpfr_ptr x, int ulps) {
    for (int i = 0; i < ulps; ++i) mpfr_nextbelow(x);
}
inline void widen_up(mpfr_ptr x, int ulps) {
    for (int i = 0; i < ulps; ++i) mpfr_nextabove(x);
}

inline u64 floor_to_u64(mpfr_ptr x) {
    if (mpfr_sgn(x) < 0) throw std::domain_error("certified: negative value has no u64 floor");
    if (!mpfr_fits_uintmax_p(x, MPFR_RNDD))
        throw std::domain_error("certified: value exceeds the 64-bit range");
    return static_cast<u64>(mpfr_get_uj(x, MPFR_RNDD));
}

// Certify floor (or ceiling) from an interval builder: fill(lo, hi) must leave
// rigorous lower/upper bounds of the target value in lo/hi.  When both directed
// roundings agree the value is exact and the floor needs no guard band.  An
// optional tie-breaker may resolve an interval that straddles exactly one
// integer m (it must prove or refute that the true value equals m).
template <class Fill, class TieBreak>
u64 certify(Fill&& fill, TieBreak&& tie_break, bool ceiling, const CertifyConfig& cfg,
            const char* what) {
    if (cfg.guard_ulps < 0 || cfg.start_bits < 53)
        throw std::domain_error("certified: bad configuration");
    for (int bits = cfg.start_bits;; bits *= 2) {
        if (bits > cfg.max_bits) bits = cfg.max_bits;
        MpfrValue lo(bits), hi(bits);
        fill(lo.get(), hi.get(), bits);
        if (mpfr_equal_p(lo.get(), hi.get())) {  // exact value
            if (ceiling)
                mpfr_ceil(lo.get(), lo.get());
            else
                mpfr_floor(lo.get(), lo.get());
            return floor_to_u64(lo.get());
        }
        widen_down(lo.get(), cfg.guard_ulps);
        widen_up(hi.get(), cfg.guard_ulps);
        if (ceiling) {
            mpfr_ceil(lo.get(), lo.get());
            mpfr_ceil(hi.get(), hi.get());
        } else {
            mpfr_floor(lo.get(), lo.get());
            mpfr_floor(hi.get(), hi.get());
        }
        u64 a = floor_to_u64(lo.get());
        u64 b = floor_to_u64(hi.get());
        if (a == b) return a;
        if (b == a + 1) {
            // exactly one integer candidate: for a floor it is b, for a
            // ceiling the straddled integer is a (ceil jumps there)
            u64 m = ceiling ? a : b;
            int verdict = tie_break(m, bits);  // 1 = value == m, 0 = unknown
            if (verdict == 1) return m;
        }
        if (bits >= cfg.max_bits)
            throw precision_exhausted(std::string(what) + ": interval straddles an integer at " +
                                      std::to_string(cfg.max_bits) + " bits");
    }
}

inline int no_tie_break(u64, int) { return 0; }

}  // namespace detail

namespace detail {

inline void pow_interval(u64 base, double expo, mpfr_ptr lo, mpfr_ptr hi, int bits) {
    MpfrValue b(bits), e(bits);
    mpfr_set_uj(b.get(), base, MPFR_RNDN);  // exact, bits >= 64
    mpfr_set_d(e.get(), expo, MPFR_RNDN);   // exact, bits >= 53
    mpfr_pow(lo, b.get(), e.get(), MPFR_RNDD);
    mpfr_pow(hi, b.get(), e.get(), MPFR_RNDU);
}

// Proves m^expo == n (returns 1) or gives up (returns 0).  The equality can
// only hold when m^expo is exactly representable, which the directed pow pair
// detects as lo == hi.
inline int pow_equals(u64 m, double expo, u64 n, int bits) {
    if (m == 0) return 0;
    MpfrValue lo(bits), hi(bits);
    pow_interval(m, expo, lo.get(), hi.get(), bits);
    if (!mpfr_equal_p(lo.get(), hi.get())) return 0;
    return mpfr_cmp_ui(lo.get(), static_cast<unsigned long>(n)) == 0 ? 1 : 0;
}

}  // namespace detail

// floor(base^expo), base >= 1, expo > 0.
inline u64 certified_floor_pow(u64 base, double expo, const CertifyConfig& cfg = {}) {
    if (base == 0) throw std::domain_error("certified_floor_pow: base must be positive");
    if (!(expo > 0)) throw std::domain_error("certified_floor_pow: exponent must be positive");
    return detail::certify(
        [&](mpfr_ptr lo, mpfr_ptr hi, int bits) { detail::pow_interval(base, expo, lo, hi, bits); },
        detail::no_tie_break, /*ceiling=*/false, cfg, "certified_floor_pow");
}

// ceil(base^expo), same domain.
inline u64 certified_ceil_pow(u64 base, double expo, const CertifyConfig& cfg = {}) {
    if (base == 0) throw std::domain_error("certified_ceil_pow: base must be positive");
    if (!(expo > 0)) throw std::domain_error("certified_ceil_pow: exponent must be positive");
    return detail::certify(
        [&](mpfr_ptr lo, mpfr_ptr hi, int bits) { detail::pow_interval(base, expo, lo, hi, bits); },
        detail::no_tie_break, /*ceiling=*/true, cfg, "certified_ceil_pow");
}

// floor(n^{1/gamma}) for 0 < gamma < 1, evaluated as exp(log(n)/gamma) so the
// exponent is the exact real 1/gamma, not its double rounding.  Each chain step
// is directed, so [lo, hi] brackets the true power.  When the interval pins a
// single integer candidate m, the tie n^{1/gamma} == m is decided exactly by
// testing m^gamma == n, which dyadic-rational gamma can genuinely attain
// (e.g. 16 = 8^{1/0.75}).
inline u64 certified_floor_root(u64 n, double gamma, const CertifyConfig& cfg = {}) {
    if (n == 0) throw std::domain_error("certified_floor_root: n must be positive");
    if (!(gamma > 0) || !(gamma < 1))
        throw std::domain_error("certified_floor_root: gamma must lie in (0,1)");
    if (n == 1) return 1;  // log 1 = 0 exactly
    return detail::certify(
        [&](mpfr_ptr lo, mpfr_ptr hi, int bits) {
            detail::MpfrValue t(bits);
            mpfr_set_uj(t.get(), n, MPFR_RNDN);
            mpfr_log(lo, t.get(), MPFR_RNDD);
            mpfr_div_d(lo, lo, gamma, MPFR_RNDD);
            mpfr_exp(lo, lo, MPFR_RNDD);
            mpfr_log(hi, t.get(), MPFR_RNDU);
            mpfr_div_d(hi, hi, gamma, MPFR_RNDU);
            mpfr_exp(hi, hi, MPFR_RNDU);
        },
        [&](u64 m, int bits) { return detail::pow_equals(m, gamma, n, bits); },
        /*ceiling=*/false, cfg, "certified_floor_root");
}

}  // namespace psieve
