#pragma once

#include "mplus/graded.hpp"

#include <algorithm>
#include <numeric>

namespace mplus {

// A tensor word is a nonempty letter sequence; Hochschild chains use
// position 0 as the distinguished module slot.
using Word = std::vector<BasisIndex>;

inline std::string word_str(const Word& w, const Basis& basis)
{
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            out += (char)0xE2, out += (char)0x8A, out += (char)0x97; // U+2297 tensor sign
        out += basis.name(w[i]);
    }
    return out;
}

// Formal sum of tensor words with Novikov coefficients, canonically ordered
// (lexicographic on letters) so equality is decidable.
class Chain {
public:
    Chain() = default;
    explicit Chain(Rat e_max) : e_max_(std::move(e_max)) {}

    static Chain single(const Word& w, const Novikov& c)
    {
        if (w.empty())
            throw InputError("Chain: empty word");
        Chain out(c.e_max());
        out.add(w, c);
        return out;
    }

    const Rat& e_max() const { return e_max_; }
    bool is_zero() const { return words_.empty(); }
    const std::map<Word, Novikov>& words() const { return words_; }

    void add(const Word& w, const Novikov& c)
    {
        if (w.empty())
            throw InputError("Chain: empty word");
        auto it = words_.find(w);
        if (it == words_.end()) {
            if (!c.is_zero())
                words_.emplace(w, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero())
            words_.erase(it);
    }

    Chain& operator+=(const Chain& o)
    {
        for (const auto& [w, c] : o.words_)
            add(w, c);
        return *this;
    }
    Chain& operator-=(const Chain& o)
    {
        for (const auto& [w, c] : o.words_)
            add(w, -c);
        return *this;
    }
    friend Chain operator+(Chain a, const Chain& b) { return a += b; }
    friend Chain operator-(Chain a, const Chain& b) { return a -= b; }

    Chain scaled(const Novikov& s) const
    {
        Chain out(e_max_);
        for (const auto& [w, c] : words_)
            out.add(w, c * s);
        return out;
    }
    Chain scaled(const QSqrt2& s) const
    {
        Chain out(e_max_);
        for (const auto& [w, c] : words_)
            out.add(w, c.scaled(s));
        return out;
    }
    Chain operator-() const { return scaled(QSqrt2(-1)); }

    friend bool operator==(const Chain& a, const Chain& b) { return a.words_ == b.words_; }
    friend bool operator!=(const Chain& a, const Chain& b) { return !(a == b); }

    std::string str(const Basis& basis) const
    {
        if (words_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (const auto& [w, c] : words_) {
            if (!first)
                out += "  +  ";
            first = false;
            out += "(" + c.str() + ") " + word_str(w, basis);
        }
        return out;
    }

private:
    Rat e_max_ = Rat(2);
    std::map<Word, Novikov> words_;
};

// ---------------------------------------------------------------------------
// Koszul signs
// ---------------------------------------------------------------------------

// A letter for sign bookkeeping: an identity token plus its (shifted) degree.
// Tokens let distinct letters of equal degree be tracked through a
// rearrangement; repeated tokens are matched stably (first to first).
struct SignedLetter {
    int token;
    int degree;
};

// Koszul sign of rearranging `before` into `after`: the product of
// (-1)^{d_i d_j} over all pairs that cross. Throws if `after` is not a
// permutation of `before`.
inline int koszul_sign(const std::vector<SignedLetter>& before,
                       const std::vector<SignedLetter>& after)
{
    const std::size_t n = before.size();
    if (after.size() != n)
        throw InputError("koszul_sign: length mismatch");
    std::vector<bool> used(n, false);
    std::vector<std::size_t> perm(n);
    for (std::size_t j = 0; j < n; ++j) {
        bool found = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!used[i] && before[i].token == after[j].token) {
                if (before[i].degree != after[j].degree)
                    throw InputError("koszul_sign: degree mismatch for equal tokens");
                used[i] = true;
                perm[j] = i;
                found = true;
                break;
            }
        }
        if (!found)
            throw InputError("koszul_sign: not a permutation");
    }
    long long crossings = 0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
            if (perm[j] > perm[k])
                crossings += static_cast<long long>(parity(after[j].degree)) *
                             parity(after[k].degree);
    return sign_pow(crossings);
}

inline std::vector<SignedLetter> word_letters(const Word& w, const Basis& basis)
{
    std::vector<SignedLetter> out;
    out.reserve(w.size());
    for (BasisIndex i : w)
        out.push_back({i, basis.shifted_degree(i)});
    return out;
}

// Koszul sign for a rearrangement of basis letters (shifted degrees).
inline int koszul_sign(const Word& before, const Word& after, const Basis& basis)
{
    return koszul_sign(word_letters(before, basis), word_letters(after, basis));
}

// ---------------------------------------------------------------------------
// Cyclic rotation operators
// ---------------------------------------------------------------------------

// t(x_0,...,x_n) = (-1)^{|x_n|'(|x_0|'+...+|x_{n-1}|')} (x_n,x_0,...,x_{n-1});
// t on length-1 words is the identity.
inline std::pair<Word, int> t_rotate_word(const Word& w, const Basis& basis)
{
    if (w.empty())
        throw InputError("t_rotate: empty word");
    if (w.size() == 1)
        return {w, 1};
    long long head = basis.shifted_degree(w.back());
    long long rest = 0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        rest += basis.shifted_degree(w[i]);
    Word rotated;
    rotated.reserve(w.size());
    rotated.push_back(w.back());
    rotated.insert(rotated.end(), w.begin(), w.end() - 1);
    return {rotated, sign_pow(head * rest)};
}

inline Chain t_rotate(const Chain& c, const Basis& basis)
{
    Chain out(c.e_max());
    for (const auto& [w, coeff] : c.words()) {
        auto [rw, sign] = t_rotate_word(w, basis);
        out.add(rw, sign == 1 ? coeff : -coeff);
    }
    return out;
}

inline Chain one_minus_t(const Chain& c, const Basis& basis) { return c - t_rotate(c, basis); }

// N = 1 + t + t^2 + ... + t^{len-1}, per word length.
inline Chain symmetrize_N(const Chain& c, const Basis& basis)
{
    Chain out(c.e_max());
    for (const auto& [w, coeff] : c.words()) {
        Word current = w;
        Novikov sign_coeff = coeff;
        for (std::size_t r = 0; r < w.size(); ++r) {
            out.add(current, sign_coeff);
            auto [rw, sign] = t_rotate_word(current, basis);
            current = std::move(rw);
            if (sign == -1)
                sign_coeff = -sign_coeff;
        }
    }
    return out;
}

// Full Koszul-signed symmetrization [x_1,...,x_k] over all k! permutations.
inline Chain ce_symmetrize(const Word& letters, const Basis& basis, const Novikov& coeff,
                           std::size_t cap = 8)
{
    if (letters.size() > cap)
        throw ResourceError("ce_symmetrize: word length above cap");
    std::vector<std::size_t> perm(letters.size());
    std::iota(perm.begin(), perm.end(), 0);
    // Position tokens keep repeated letters distinct, so a transposition of
    // two equal odd letters still contributes its -1 (the two terms cancel).
    std::vector<SignedLetter> base;
    base.reserve(letters.size());
    for (std::size_t i = 0; i < letters.size(); ++i)
        base.push_back({static_cast<int>(i), basis.shifted_degree(letters[i])});
    Chain out(coeff.e_max());
    do {
        Word w;
        std::vector<SignedLetter> after;
        w.reserve(letters.size());
        after.reserve(letters.size());
        for (std::size_t i : perm) {
            w.push_back(letters[i]);
            after.push_back(base[i]);
        }
        int sign = koszul_sign(base, after);
        out.add(w, sign == 1 ? coeff : -coeff);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

} // namespace mplus
