#pragma once

#include "mplus/hochschild.hpp"

namespace mplus {

// A filtered A-infinity homomorphism between two structures, stored as exact
// per-class components h_{k,beta}: source words -> target elements.
// Arity-1 components must be present for every basis letter; higher
// components default to zero (a strict morphism stores only h_1).
class Morphism {
public:
    Morphism() = default;
    Morphism(AInfinity source, AInfinity target)
        : src_(std::move(source)), dst_(std::move(target))
    {
    }

    const AInfinity& source() const { return src_; }
    const AInfinity& target() const { return dst_; }
    const std::map<Slot, FieldElement>& components() const { return comps_; }

    void set_component(const Slot& slot, FieldElement value)
    {
        if (static_cast<int>(slot.inputs.size()) != slot.arity || slot.arity < 1)
            throw InputError("Morphism: bad component arity");
        comps_[slot] = std::move(value);
    }

    void set_h1(BasisIndex src_letter, FieldElement value)
    {
        set_component(Slot{1, EnergyClass(Rat(0), 0), {src_letter}}, std::move(value));
    }

    // h_k(word) = sum_beta T^{lambda(beta)} h_{k,beta}(word), in the target.
    Element apply_h_word(int k, const Word& w, MissingLog* missing = nullptr) const
    {
        Element out(dst_.e_max());
        bool any = false;
        for (const auto& [slot, fe] : comps_) {
            if (slot.arity != k || slot.inputs != w)
                continue;
            any = true;
            for (const auto& [b, c] : fe)
                out.add(b, Novikov::term(c, slot.cls.energy, dst_.e_max()));
        }
        if (k == 1 && !any && missing)
            missing->insert(Slot{1, EnergyClass(Rat(0), 0), w});
        return out;
    }

    Element apply_h1(const Element& x, MissingLog* missing = nullptr) const
    {
        Element out(dst_.e_max());
        for (const auto& [b, c] : x.coeffs()) {
            Element hb = apply_h_word(1, {b}, missing);
            for (const auto& [tb, tc] : hb.coeffs())
                out.add(tb, tc * c);
        }
        return out;
    }

    // Cohomomorphism on plain tensor words: sum over splittings into
    // consecutive blocks, h applied blockwise (no Koszul signs arise since
    // every h_k preserves shifted degree).
    Chain apply_hat_bar(const Chain& chain, MissingLog* missing = nullptr) const
    {
        Chain out(dst_.e_max());
        for (const auto& [w, coeff] : chain.words())
            hat_bar_word(w, 0, Word{}, coeff, out, missing);
        return out;
    }

    // Cohomomorphism on Hochschild chains: the block containing the module
    // slot may wrap around (i letters from the right, the slot, j letters
    // from the left) and carries the t^i rotation sign, exactly as the
    // wrap-around terms of the Hochschild boundary do.
    Chain apply_hat_hoch(const Chain& chain, MissingLog* missing = nullptr) const
    {
        const Basis& basis = src_.basis();
        Chain out(dst_.e_max());
        for (const auto& [w, coeff] : chain.words()) {
            const int L = static_cast<int>(w.size());
            const int k = L - 1;
            for (int i = 0; i <= k; ++i) {
                for (int j = 0; i + j <= k; ++j) {
                    Word block;
                    block.reserve(i + j + 1);
                    for (int s = 0; s < i; ++s)
                        block.push_back(w[L - i + s]);
                    block.push_back(w[0]);
                    for (int t = 1; t <= j; ++t)
                        block.push_back(w[t]);
                    Element slot_val = apply_h_word(i + j + 1, block, missing);
                    if (slot_val.is_zero())
                        continue;
                    long long tail = 0, head = basis.shifted_degree(w[0]);
                    for (int s = 0; s < i; ++s)
                        tail += basis.shifted_degree(w[L - i + s]);
                    for (int t = 1; t <= k - i; ++t)
                        head += basis.shifted_degree(w[t]);
                    int sgn = sign_pow(tail * head);
                    Word rest(w.begin() + j + 1, w.begin() + (k - i) + 1);
                    Chain tails(dst_.e_max());
                    if (rest.empty()) {
                        // no remaining letters: empty tail of blocks
                        for (const auto& [b, c] : slot_val.coeffs()) {
                            Novikov nc = coeff * c;
                            out.add({b}, sgn == 1 ? nc : -nc);
                        }
                        continue;
                    }
                    hat_bar_word(rest, 0, Word{}, Novikov::constant(QSqrt2(1), dst_.e_max()),
                                 tails, missing);
                    for (const auto& [b, c] : slot_val.coeffs())
                        for (const auto& [tw, tc] : tails.words()) {
                            Word nw;
                            nw.reserve(1 + tw.size());
                            nw.push_back(b);
                            nw.insert(nw.end(), tw.begin(), tw.end());
                            Novikov nc = coeff * c * tc;
                            out.add(nw, sgn == 1 ? nc : -nc);
                        }
                }
            }
        }
        return out;
    }

    // h_1 must preserve shifted degree.
    CheckReport validate() const
    {
        CheckReport rep;
        rep.name = "morphism";
        MissingLog missing;
        for (BasisIndex i : src_.basis().all()) {
            Element hi = apply_h_word(1, {i}, &missing);
            for (const auto& [b, c] : hi.coeffs()) {
                (void)c;
                if (dst_.basis().degree(b) != src_.basis().degree(i))
                    rep.fail("h_1 does not preserve the degree of " + src_.basis().name(i));
            }
        }
        for (const auto& s : missing)
            rep.fail("missing h_1 component for " + slot_str(s, src_.basis()));
        return rep;
    }

    // A-infinity homomorphism relations, as the chain-map identity
    // d̂_B ∘ ĥ = ĥ ∘ d̂_A on every basis word up to max_len.
    CheckReport verify_homomorphism(int max_len = 4) const
    {
        CheckReport rep = validate();
        rep.name = "homomorphism";
        MissingLog missing;
        src_.for_each_word(max_len, [&](const Word& w) {
            Chain c = Chain::single(w, Novikov::constant(QSqrt2(1), src_.e_max()));
            Chain lhs = dst_.hat_d(apply_hat_bar(c, &missing), &missing);
            Chain rhs = apply_hat_bar(src_.hat_d(c, &missing), &missing);
            if (lhs != rhs)
                rep.fail("relation fails on " + word_str(w, src_.basis()));
        });
        for (const auto& s : missing)
            rep.fail("undetermined constant/component " + slot_str(s, src_.basis()));
        return rep;
    }

    // Cyclic morphism conditions: (1) h_1 preserves the inner product on all
    // basis pairs; (2) sum_{i+j=k} <h_i(x_1..x_i), h_j(x_{i+1}..x_k)> = 0 for
    // k from min_k (default 3; 2 contradicts (1) for strict morphisms).
    CheckReport verify_cyclic(const Pairing& src_pairing, const Pairing& dst_pairing,
                              int max_k = 4, bool include_k2 = false) const
    {
        CheckReport rep;
        rep.name = "cyclic_homomorphism";
        MissingLog missing;
        for (BasisIndex a : src_.basis().all())
            for (BasisIndex b : src_.basis().all()) {
                Element ha = apply_h_word(1, {a}, &missing);
                Element hb = apply_h_word(1, {b}, &missing);
                Novikov lhs = dst_pairing.pair(ha, hb);
                Novikov rhs = Novikov::constant(src_pairing.value(a, b), src_.e_max());
                if (lhs != rhs)
                    rep.fail("condition (1) fails at (" + src_.basis().name(a) + "," +
                             src_.basis().name(b) + ")");
            }
        const int min_k = include_k2 ? 2 : 3;
        for (int k = min_k; k <= max_k; ++k) {
            src_.for_each_word_of_length(k, [&](const Word& w) {
                Novikov total(dst_.e_max());
                for (int i = 1; i <= k - 1; ++i) {
                    Word left(w.begin(), w.begin() + i);
                    Word right(w.begin() + i, w.end());
                    Element hl = apply_h_word(i, left, &missing);
                    Element hr = apply_h_word(k - i, right, &missing);
                    total += dst_pairing.pair(hl, hr);
                }
                if (!total.is_zero())
                    rep.fail("condition (2) fails at " + word_str(w, src_.basis()) + " -> " +
                             total.str());
            });
        }
        for (const auto& s : missing)
            rep.fail("missing component " + slot_str(s, src_.basis()));
        rep.data["condition2_min_k"] = std::to_string(min_k);
        return rep;
    }

    // m+ is preserved: m+_A(c) = m+_B(ĥ(c)) for every supplied chain.
    CheckReport verify_mplus_transport(const Pairing& src_pairing, const Pairing& dst_pairing,
                              const std::vector<Chain>& chains) const
    {
        CheckReport rep;
        rep.name = "mplus_transport";
        MissingLog missing;
        for (std::size_t i = 0; i < chains.size(); ++i) {
            Novikov lhs = m_plus(src_, src_pairing, chains[i], &missing);
            Novikov rhs = m_plus(dst_, dst_pairing, apply_hat_hoch(chains[i], &missing), &missing);
            if (lhs != rhs)
                rep.fail("m+ mismatch on chain " + std::to_string(i) + ": " + lhs.str() +
                         " vs " + rhs.str());
        }
        for (const auto& s : missing)
            rep.fail("undetermined constant/component " + slot_str(s, src_.basis()));
        rep.data["chains"] = std::to_string(chains.size());
        return rep;
    }

private:
    void hat_bar_word(const Word& w, std::size_t pos, const Word& acc, const Novikov& coeff,
                      Chain& out, MissingLog* missing) const
    {
        if (pos == w.size()) {
            if (!acc.empty())
                out.add(acc, coeff);
            return;
        }
        for (std::size_t blk = 1; pos + blk <= w.size(); ++blk) {
            Word block(w.begin() + pos, w.begin() + pos + blk);
            Element val = apply_h_word(static_cast<int>(blk), block, missing);
            for (const auto& [b, c] : val.coeffs()) {
                Word next = acc;
                next.push_back(b);
                hat_bar_word(w, pos + blk, next, coeff * c, out, missing);
            }
        }
    }

    AInfinity src_;
    AInfinity dst_;
    std::map<Slot, FieldElement> comps_;
};

} // namespace mplus
