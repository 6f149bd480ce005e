#include "mplus/clifford.hpp"
#include "mplus/sampling.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mplus;

namespace {
const clifford::Model& model()
{
    static clifford::Model m = clifford::Builder().build();
    return m;
}
AInfinity reduced() { return model().reduced(); }
const BasisIndex E = 0, F1 = 1, F2 = 2, F12 = 3;
} // namespace

TEST_CASE("pairing values of the eigenbasis model")
{
    const Pairing& P = model().pairing;
    CHECK(P.value(F1, F2) == QSqrt2(1));
    CHECK(P.value(F2, F1) == QSqrt2(-1));
    CHECK(P.value(E, F12) == QSqrt2(1));
    CHECK(P.value(F12, E) == QSqrt2(1));
    CHECK(P.value(F1, F1) == QSqrt2(0));
    CHECK(P.value(F1, F12) == QSqrt2(0));
    CHECK(model().pairing.validate(model().structure.basis()).pass);
}

TEST_CASE("pairing validation rejects broken forms")
{
    Basis basis{{"e", 0}, {"f_1", 1}, {"f_2", 1}, {"f_12", 2}};
    Pairing P(basis);
    P.set(F1, F2, QSqrt2(1));
    P.set(F2, F1, QSqrt2(1)); // breaks skew symmetry, and degenerate
    CheckReport rep = P.validate(basis);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("cyclic symmetry holds on the completed model")
{
    AInfinity red = reduced();
    CheckReport rep = verify_cyclic_symmetry(red, model().pairing, 4);
    INFO(rep.summary());
    CHECK(rep.pass);
}

TEST_CASE("cyclic symmetry fails when a constant is flipped")
{
    clifford::Model broken = model();
    // flip the sign of m_2(f_12, f_1)
    Slot slot{2, EnergyClass(Rat(1), 2), {F12, F1}};
    auto fe = broken.structure.constant_at(slot);
    REQUIRE(fe.has_value());
    FieldElement flipped;
    for (const auto& [b, c] : *fe)
        flipped[b] = -c;
    broken.structure.set_constant(slot, flipped);
    CheckReport rep = verify_cyclic_symmetry(broken.structure.reduced(), broken.pairing, 4);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("stokes identity")
{
    // trivial on the canonical model (m_1 = 0)
    CHECK(verify_stokes(reduced(), model().pairing).pass);

    // a nontrivial differential on the same pairing, no unit designated:
    // cyclicity forces m_1(e) = p f_1 + q f_2 with m_1(f_1) = -q f_12 and
    // m_1(f_2) = p f_12, which also squares to zero.
    Basis basis{{"e", 0}, {"f_1", 1}, {"f_2", 1}, {"f_12", 2}};
    Pairing P = model().pairing;
    QSqrt2 p(Rat(1)), q(Rat(-2), Rat(1)); // q = -2 + sqrt2
    auto with_m1 = [&](const QSqrt2& c1, const QSqrt2& c2) {
        AInfinity A(basis, Rat(2));
        A.set_constant(Slot{1, EnergyClass(Rat(0), 0), {E}}, {{F1, p}, {F2, q}});
        A.set_constant(Slot{1, EnergyClass(Rat(0), 0), {F1}},
                       c1.is_zero() ? FieldElement{} : FieldElement{{F12, c1}});
        A.set_constant(Slot{1, EnergyClass(Rat(0), 0), {F2}},
                       c2.is_zero() ? FieldElement{} : FieldElement{{F12, c2}});
        A.set_constant(Slot{1, EnergyClass(Rat(0), 0), {F12}}, {});
        A.set_constant(Slot{0, EnergyClass(Rat(0), 0), {}}, {});
        return A;
    };
    AInfinity cyclic_m1 = with_m1(-q, p);
    CHECK(verify_stokes(cyclic_m1, P).pass);
    CHECK(cyclic_m1.apply_m({cyclic_m1.apply_m_word(1, {E})}).is_zero());

    // injecting a non-cyclic component breaks the identity
    AInfinity broken_m1 = with_m1(-q + QSqrt2(1), p);
    CHECK_FALSE(verify_stokes(broken_m1, P).pass);
}

TEST_CASE("pairing identity vanishes exhaustively and doubles without the restriction")
{
    AInfinity red = reduced();
    CheckReport rep = verify_pairing_identity(red, model().pairing, 4);
    INFO(rep.summary());
    CHECK(rep.pass);
    CHECK(rep.data.at("tuples_checked") == std::to_string((16 + 64 + 256) * 1));
}

TEST_CASE("pairing identity on a hand-checked tuple")
{
    AInfinity red = reduced();
    // (f_2,f_1,f_1,f_1): the two surviving terms are
    // <m_2(f_2,f_1), m_2(f_1,f_1)> = -3/2 T and <m_2(f_1,f_2), m_2(f_1,f_1)> = +3/2 T
    Novikov v = eval_pairing_identity(red, model().pairing, {F2, F1, F1, F1});
    CHECK(v.is_zero());
    Novikov u = eval_pairing_identity(red, model().pairing, {F2, F1, F1, F1}, false);
    CHECK(u.is_zero());
}

TEST_CASE("m_plus on the generating words")
{
    AInfinity red = reduced();
    const Pairing& P = model().pairing;
    Rat emax = red.e_max();
    // <m_2(f_1,f_1), f_12> = 3/2 T
    CHECK(m_plus_word(red, P, {F1, F1, F12}) == Novikov::term(QSqrt2(Rat(3, 2)), Rat(1), emax));
    // length-1 words pair against m_0 = 0 in the reduced model
    CHECK(m_plus_word(red, P, {F12}).is_zero());
    // the curved model pairs m_0 = 3Te against f_12
    MissingLog log;
    CHECK(m_plus_word(model().structure, P, {F12}, &log) ==
          Novikov::term(QSqrt2(3), Rat(1), emax));
}

TEST_CASE("m_plus is rotation invariant and kills (1-t)")
{
    AInfinity red = reduced();
    const Pairing& P = model().pairing;
    // a worked rotation
    Chain w = Chain::single({F1, F1, F12}, Novikov::constant(QSqrt2(1), red.e_max()));
    CHECK(m_plus(red, P, w) == m_plus(red, P, t_rotate(w, red.basis())));

    std::vector<Chain> samples = random_chains(red.basis(), red.e_max(), 2024, 100);
    CheckReport rep = verify_mplus_rotation(red, P, samples);
    INFO(rep.summary());
    CHECK(rep.pass);
}

TEST_CASE("m_plus respects the energy filtration")
{
    AInfinity red = reduced();
    const Pairing& P = model().pairing;
    for (int s = 0; s < 50; ++s) {
        SplitMix64 rng = sample_rng(5150, s);
        Chain c = random_chain(red.basis(), red.e_max(), rng, 3, 1);
        REQUIRE(c.words().size() == 1);
        const auto& [word, coeff] = *c.words().begin();
        Novikov v = m_plus(red, P, c);
        if (!v.is_zero())
            CHECK(v.min_exponent() >= coeff.min_exponent());
    }
}

TEST_CASE("m_plus kills extended bar boundaries; witness search")
{
    AInfinity red = reduced();
    CheckReport rep = verify_mplus_bar_compat(red, model().pairing, 3, 4);
    INFO(rep.summary());
    CHECK(rep.pass);
    CHECK(rep.data.count("mplus_hatd_witness") == 1);
}
