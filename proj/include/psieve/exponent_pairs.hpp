#pragma once

// Van der Corput exponent-pair calculus over exact rationals.
// Classical normalization:
//   A(k, l) = ( k/(2k+2), (k+l+1)/(2k+2) )
//   B(k, l) = ( l - 1/2,  k + 1/2 )
// Anchors pinning the normalization: A^2(1/2,1/2) = (1/14, 11/14) and
// A^6(1/2,1/2) = (1/254, 247/254).

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "psieve/common.hpp"

namespace psieve {

struct ExponentPair {
    mpq_class kappa;
    mpq_class ell;

    ExponentPair(mpq_class k, mpq_class l) : kappa(std::move(k)), ell(std::move(l)) {
        kappa.canonicalize();
        ell.canonicalize();
    }
    ExponentPair(long kn, long kd, long ln, long ld) : kappa(kn, kd), ell(ln, ld) {
        kappa.canonicalize();
        ell.canonicalize();
    }
    std::string str() const { return kappa.get_str() + " " + ell.get_str(); }
    friend bool operator==(const ExponentPair& a, const ExponentPair& b) {
        return a.kappa == b.kappa && a.ell == b.ell;
    }
};

// 0 <= kappa <= 1/2 <= ell <= 1 and kappa + ell <= 3/2.
inline bool validate_pair(const ExponentPair& p) {
    mpq_class half(1, 2), one(1), threehalf(3, 2);
    if (p.kappa < 0 || p.kappa > half) return false;
    if (p.ell < half || p.ell > one) return false;
    return p.kappa + p.ell <= threehalf;
}

inline ExponentPair a_process(const ExponentPair& p) {
    if (!validate_pair(p)) throw std::domain_error("a_process: invalid exponent pair");
    mpq_class den = 2 * p.kappa + 2;
    return ExponentPair(p.kappa / den, (p.kappa + p.ell + 1) / den);
}

inline ExponentPair b_process(const ExponentPair& p) {
    if (!validate_pair(p)) throw std::domain_error("b_process: invalid exponent pair");
    mpq_class half(1, 2);
    return ExponentPair(p.ell - half, p.kappa + half);
}

// Applies the word left to right; every intermediate pair must stay valid.
inline ExponentPair iterate_pair(std::string_view word, ExponentPair start) {
    if (word.size() > 64) throw std::domain_error("iterate_pair: word longer than 64 steps");
    if (!validate_pair(start)) throw std::domain_error("iterate_pair: invalid start pair");
    ExponentPair cur = std::move(start);
    for (std::size_t i = 0; i < word.size(); ++i) {
        char c = word[i];
        try {
            if (c == 'A')
                cur = a_process(cur);
            else if (c == 'B')
                cur = b_process(cur);
            else
                throw std::domain_error(std::string("unknown process '") + c + "'");
        } catch (const std::domain_error& e) {
            throw std::domain_error("iterate_pair: step " + std::to_string(i + 1) + " (" +
                                    std::string(1, c) + "): " + e.what());
        }
    }
    return cur;
}

}  // namespace psieve
