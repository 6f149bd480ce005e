#pragma once

#include "mplus/rng.hpp"
#include "mplus/words.hpp"

namespace mplus {

// Random exact chain over a basis: a few words of bounded length with small
// rational (and occasionally sqrt2) coefficients at energies 0, 1/2 or 1.
inline Chain random_chain(const Basis& basis, const Rat& e_max, SplitMix64& rng,
                          int max_len = 4, int max_words = 3)
{
    Chain out(e_max);
    int words = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_words)));
    for (int n = 0; n < words; ++n) {
        int len = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_len)));
        Word w(len);
        for (int i = 0; i < len; ++i)
            w[i] = static_cast<BasisIndex>(rng.below(basis.size()));
        Rat num(static_cast<long>(rng.below(7)) - 3);
        Rat den(static_cast<long>(rng.below(3)) + 1);
        Rat irr_num(static_cast<long>(rng.below(5)) - 2);
        QSqrt2 coeff(num / den, irr_num / 2);
        if (coeff.is_zero())
            coeff = QSqrt2(1);
        Rat energy(static_cast<long>(rng.below(3)), 2); // 0, 1/2 or 1
        out.add(w, Novikov::term(coeff, energy, e_max));
    }
    if (out.is_zero())
        out.add({0}, Novikov::constant(QSqrt2(1), e_max));
    return out;
}

inline std::vector<Chain> random_chains(const Basis& basis, const Rat& e_max,
                                        std::uint64_t seed, int count, int max_len = 4)
{
    std::vector<Chain> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        SplitMix64 rng = sample_rng(seed, static_cast<std::uint64_t>(i));
        out.push_back(random_chain(basis, e_max, rng, max_len));
    }
    return out;
}

} // namespace mplus
