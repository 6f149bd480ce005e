#include "mplus/clifford.hpp"
#include "mplus/sampling.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mplus;
using namespace mplus::clifford;

namespace {
const Model& fmodel()
{
    static Model m = Builder().build();
    return m;
}
const Model& emodel()
{
    static Model m = Builder(Presentation::IntegerBasis).build();
    return m;
}
Morphism e_to_f() { return basis_change(emodel(), fmodel()); }
Morphism f_to_e() { return basis_change(fmodel(), emodel()); }
const BasisIndex E = 0, F1 = 1, F2 = 2, F12 = 3;

Morphism identity_on(const Model& m)
{
    Morphism h(m.structure, m.structure);
    for (BasisIndex i : m.structure.basis().all())
        h.set_h1(i, {{i, QSqrt2(1)}});
    return h;
}
} // namespace

TEST_CASE("identity morphism passes every check")
{
    Morphism id = identity_on(fmodel());
    CHECK(id.verify_homomorphism(4).pass);
    CHECK(id.verify_cyclic(fmodel().pairing, fmodel().pairing, 4).pass);

    // ĥ is the identity on chains
    AInfinity red = fmodel().reduced();
    for (int s = 0; s < 20; ++s) {
        SplitMix64 rng = sample_rng(17, s);
        Chain c = random_chain(red.basis(), red.e_max(), rng);
        CHECK(id.apply_hat_hoch(c) == c);
        CHECK(id.apply_hat_bar(c) == c);
    }
}

TEST_CASE("basis change is a strict homomorphism both ways")
{
    CHECK(e_to_f().verify_homomorphism(4).pass);
    CHECK(f_to_e().verify_homomorphism(4).pass);
}

TEST_CASE("basis change is cyclic")
{
    CheckReport rep = e_to_f().verify_cyclic(emodel().pairing, fmodel().pairing, 4);
    INFO(rep.summary());
    CHECK(rep.pass);
    CHECK(f_to_e().verify_cyclic(fmodel().pairing, emodel().pairing, 4).pass);
}

TEST_CASE("condition (2) at k = 2 contradicts condition (1) for strict morphisms")
{
    CheckReport rep = e_to_f().verify_cyclic(emodel().pairing, fmodel().pairing, 4, true);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("strict basis change relabels letters")
{
    Morphism h = f_to_e();
    AInfinity red = fmodel().reduced();
    // f_1 ⊗ f_12 maps to ((e_1+e_2)/sqrt2) ⊗ (-e_12), expanded letterwise
    Chain c = Chain::single({F1, F12}, Novikov::constant(QSqrt2(1), red.e_max()));
    Chain img = h.apply_hat_hoch(c);
    QSqrt2 inv_sqrt2(Rat(0), Rat(1, 2));
    Chain want(red.e_max());
    want.add({F1, F12}, Novikov::constant(QSqrt2(-1) * inv_sqrt2, red.e_max()));
    want.add({F2, F12}, Novikov::constant(QSqrt2(-1) * inv_sqrt2, red.e_max()));
    CHECK(img == want);
}

TEST_CASE("hat_h is a chain map for the shipped basis change")
{
    Morphism h = f_to_e();
    AInfinity src = fmodel().reduced();
    AInfinity dst = emodel().reduced();
    for (int s = 0; s < 40; ++s) {
        SplitMix64 rng = sample_rng(2718, s);
        Chain c = random_chain(src.basis(), src.e_max(), rng, 3);
        CHECK(h.apply_hat_hoch(d_hoch(src, c)) == d_hoch(dst, h.apply_hat_hoch(c)));
    }
}

TEST_CASE("perturbed basis change fails verification")
{
    Morphism h(emodel().structure, fmodel().structure);
    QSqrt2 c(Rat(0), Rat(1, 2));
    h.set_h1(E, {{E, QSqrt2(1)}});
    h.set_h1(F1, {{F1, c}, {F2, c}});
    h.set_h1(F2, {{F1, c}, {F2, QSqrt2() - c}});
    h.set_h1(F12, {{F12, QSqrt2(1)}}); // wrong sign on the top class
    CHECK_FALSE(h.verify_homomorphism(4).pass);
}

TEST_CASE("pairing-preserving scaling that is not a homomorphism")
{
    const Model& m = fmodel();
    Morphism h(m.structure, m.structure);
    h.set_h1(E, {{E, QSqrt2(1)}});
    h.set_h1(F1, {{F1, QSqrt2(2)}});
    h.set_h1(F2, {{F2, QSqrt2(Rat(1, 2))}});
    h.set_h1(F12, {{F12, QSqrt2(1)}});
    CheckReport cyc = h.verify_cyclic(m.pairing, m.pairing, 3);
    CHECK(cyc.pass); // condition (1) holds
    CHECK_FALSE(h.verify_homomorphism(2).pass); // m_2(f_1,f_1) scales by 4
}

TEST_CASE("missing h_1 components are reported")
{
    Morphism h(fmodel().structure, fmodel().structure);
    h.set_h1(E, {{E, QSqrt2(1)}});
    CheckReport rep = h.validate();
    CHECK_FALSE(rep.pass);
}

TEST_CASE("m_plus transported across the basis change")
{
    Morphism h = f_to_e();
    AInfinity src = fmodel().reduced();
    AInfinity dst = emodel().reduced();

    Chain alpha = build_alpha(src);
    Novikov eighteen = Novikov::term(QSqrt2(18), Rat(1), src.e_max());
    REQUIRE(m_plus(src, fmodel().pairing, alpha) == eighteen);
    CHECK(m_plus(dst, emodel().pairing, h.apply_hat_hoch(alpha)) == eighteen);

    std::vector<Chain> chains = random_chains(src.basis(), src.e_max(), 97, 100);
    chains.push_back(alpha);
    CheckReport rep = h.verify_mplus_transport(fmodel().pairing, emodel().pairing, chains);
    INFO(rep.summary());
    CHECK(rep.pass);
}

TEST_CASE("m_plus transport under the identity morphism")
{
    Morphism id = identity_on(fmodel());
    std::vector<Chain> chains = {build_alpha(fmodel().reduced())};
    CHECK(id.verify_mplus_transport(fmodel().pairing, fmodel().pairing, chains).pass);
}

TEST_CASE("hat_h preserves word energy for the strict basis change")
{
    Morphism h = f_to_e();
    AInfinity src = fmodel().reduced();
    for (int s = 0; s < 40; ++s) {
        SplitMix64 rng = sample_rng(3333, s);
        Chain c = random_chain(src.basis(), src.e_max(), rng, 3, 1);
        REQUIRE(c.words().size() == 1);
        Rat in_min = c.words().begin()->second.min_exponent();
        Chain img = h.apply_hat_hoch(c);
        for (const auto& [w, coeff] : img.words()) {
            (void)w;
            CHECK(coeff.min_exponent() == in_min);
        }
    }
}
