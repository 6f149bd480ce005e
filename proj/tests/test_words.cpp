#include "mplus/sampling.hpp"
#include "mplus/words.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mplus;

namespace {
// Clifford-torus basis: unit, two degree-1 generators, the top class.
Basis torus_basis() { return Basis{{"e", 0}, {"f_1", 1}, {"f_2", 1}, {"f_12", 2}}; }
const BasisIndex E = 0, F1 = 1, F2 = 2, F12 = 3;
Novikov one(const Rat& emax = Rat(2)) { return Novikov::constant(QSqrt2(1), emax); }
} // namespace

TEST_CASE("koszul sign basics")
{
    // all-even rearrangements are free
    std::vector<SignedLetter> before{{0, 0}, {1, 0}, {2, 0}};
    std::vector<SignedLetter> after{{2, 0}, {0, 0}, {1, 0}};
    CHECK(koszul_sign(before, after) == 1);

    // two odd letters crossing
    std::vector<SignedLetter> b2{{-1, 1}, {-2, 1}};
    std::vector<SignedLetter> a2{{-2, 1}, {-1, 1}};
    CHECK(koszul_sign(b2, a2) == -1);

    CHECK_THROWS_AS(koszul_sign(b2, before), InputError);
}

TEST_CASE("koszul sign: one operation letter crossing another")
{
    // m2 m2 x1 x2 x3 -> m2 x2 x3 m2 x1 with |x_i|' = 0: the second m

    // crosses x2, x3 (even, free) while x1 stays right of it; the two m's
    // never cross each other, but m2 passes x2 and x3 and x1 passes nothing.
    // Crossing count of odd pairs: the m-letters stay ordered, so the sign
    // comes out -1 exactly when an odd letter hops over another odd letter.
    std::vector<SignedLetter> before{{-1, 1}, {-2, 1}, {1, 0}, {2, 0}, {3, 0}};
    std::vector<SignedLetter> after{{-1, 1}, {2, 0}, {3, 0}, {-2, 1}, {1, 0}};
    CHECK(koszul_sign(before, after) == 1);
    // swapping the two m's as well flips the sign
    std::vector<SignedLetter> after2{{-2, 1}, {2, 0}, {3, 0}, {-1, 1}, {1, 0}};
    CHECK(koszul_sign(before, after2) == -1);
}

TEST_CASE("koszul sign is multiplicative under composition")
{
    Basis basis = torus_basis();
    SplitMix64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + static_cast<int>(rng.below(4));
        std::vector<SignedLetter> a;
        for (int i = 0; i < n; ++i)
            a.push_back({i, basis.shifted_degree(static_cast<BasisIndex>(rng.below(4)))});
        std::vector<SignedLetter> b = a, c = a;
        for (int i = n - 1; i > 0; --i)
            std::swap(b[i], b[rng.below(static_cast<std::uint64_t>(i) + 1)]);
        for (int i = n - 1; i > 0; --i)
            std::swap(c[i], c[rng.below(static_cast<std::uint64_t>(i) + 1)]);
        CHECK(koszul_sign(a, c) ==
              koszul_sign(a, b) * koszul_sign(b, c));
    }
}

TEST_CASE("t rotation signs")
{
    Basis basis = torus_basis();
    // |f_1|' = 0: moving it to the front is free
    auto [w1, s1] = t_rotate_word({F1, F12}, basis);
    CHECK(w1 == Word{F12, F1});
    CHECK(s1 == 1);
    // t(f_12 ⊗ e): sign (-1)^{|e|'|f_12|'} = (-1)^{-1} = -1
    auto [w2, s2] = t_rotate_word({F12, E}, basis);
    CHECK(w2 == Word{E, F12});
    CHECK(s2 == -1);
    // length-1 words are fixed
    auto [w3, s3] = t_rotate_word({F12}, basis);
    CHECK(w3 == Word{F12});
    CHECK(s3 == 1);
}

TEST_CASE("full cycle of t is the identity on even words")
{
    Basis basis = torus_basis();
    Chain c = Chain::single({F1, F2, F1, F2}, one());
    Chain r = c;
    for (int i = 0; i < 4; ++i)
        r = t_rotate(r, basis);
    CHECK(r == c);
}

TEST_CASE("full cycle of t returns the word up to sign")
{
    Basis basis = torus_basis();
    SplitMix64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        int len = 1 + static_cast<int>(rng.below(4));
        Word w(len);
        for (int i = 0; i < len; ++i)
            w[i] = static_cast<BasisIndex>(rng.below(4));
        Chain c = Chain::single(w, one());
        Chain r = c;
        for (int i = 0; i < len; ++i)
            r = t_rotate(r, basis);
        CHECK((r == c || r == -c));
    }
}

TEST_CASE("N symmetrization")
{
    Basis basis = torus_basis();
    Chain n3 = symmetrize_N(Chain::single({F1, F1, F12}, one()), basis);
    Chain expected(Rat(2));
    expected.add({F1, F1, F12}, one());
    expected.add({F12, F1, F1}, one());
    expected.add({F1, F12, F1}, one());
    CHECK(n3 == expected);

    // (1 - t) kills length-1 words
    Chain w1 = Chain::single({F1}, one());
    CHECK(one_minus_t(w1, basis).is_zero());

    // N of a t-invariant chain of length n scales by n
    Chain invariant = symmetrize_N(Chain::single({F1, F2, E}, one()), basis);
    Chain n_of_inv = symmetrize_N(invariant, basis);
    CHECK(n_of_inv == invariant.scaled(QSqrt2(3)));
}

TEST_CASE("N output is t-invariant on random chains")
{
    Basis basis = torus_basis();
    for (int s = 0; s < 30; ++s) {
        SplitMix64 rng = sample_rng(99, s);
        Chain c = random_chain(basis, Rat(2), rng);
        Chain n = symmetrize_N(c, basis);
        CHECK(one_minus_t(n, basis).is_zero());
        CHECK(symmetrize_N(one_minus_t(c, basis), basis).is_zero());
    }
}

TEST_CASE("CE symmetrization")
{
    Basis basis = torus_basis();
    // [x] = x
    CHECK(ce_symmetrize({F1}, basis, one()) == Chain::single({F1}, one()));

    // both shifted degree 0: plain symmetrization
    Chain s12 = ce_symmetrize({F1, F2}, basis, one());
    Chain expected(Rat(2));
    expected.add({F1, F2}, one());
    expected.add({F2, F1}, one());
    CHECK(s12 == expected);

    // shifted degrees -1 and 1: the swap picks up a sign
    Chain se = ce_symmetrize({E, F12}, basis, one());
    Chain expected2(Rat(2));
    expected2.add({E, F12}, one());
    expected2.add({F12, E}, -one());
    CHECK(se == expected2);

    // two equal odd letters cancel
    CHECK(ce_symmetrize({F12, F12}, basis, one()).is_zero());

    CHECK_THROWS_AS(ce_symmetrize({F1, F1, F1, F1, F1}, basis, one(), 4), ResourceError);
}

TEST_CASE("chain canonical form merges and drops zeros")
{
    Basis basis = torus_basis();
    Chain c(Rat(2));
    c.add({F1, F2}, one());
    c.add({F1, F2}, -one());
    CHECK(c.is_zero());
    CHECK_THROWS_AS(Chain::single({}, one()), InputError);
}

TEST_CASE("koszul sign agrees with an adjacent-swap oracle")
{
    // independent route: bubble-sort `after` back into `before`, multiplying
    // (-1)^{d_i d_j} for every adjacent transposition performed
    auto bubble_sign = [](std::vector<SignedLetter> seq,
                          const std::vector<SignedLetter>& target) {
        int sign = 1;
        for (std::size_t i = 0; i < target.size(); ++i) {
            std::size_t j = i;
            while (j < seq.size() && seq[j].token != target[i].token)
                ++j;
            REQUIRE(j < seq.size());
            for (; j > i; --j) {
                sign *= sign_pow(static_cast<long long>(parity(seq[j].degree)) *
                                 parity(seq[j - 1].degree));
                std::swap(seq[j], seq[j - 1]);
            }
        }
        return sign;
    };
    SplitMix64 rng(20240613);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng.below(6));
        std::vector<SignedLetter> before;
        for (int i = 0; i < n; ++i)
            before.push_back({i, static_cast<int>(rng.below(4)) - 2});
        std::vector<SignedLetter> after = before;
        for (int i = n - 1; i > 0; --i)
            std::swap(after[i], after[rng.below(static_cast<std::uint64_t>(i) + 1)]);
        CHECK(koszul_sign(before, after) == bubble_sign(after, before));
    }
}
