#pragma once

#include "mplus/report.hpp"
#include "mplus/words.hpp"

#include <optional>
#include <set>
#include <sstream>

namespace mplus {

// Energy/Maslov bidegree of an operation: an element of the filtration
// monoid G. Energy is an exact nonnegative rational, Maslov index even.
struct EnergyClass {
    Rat energy;
    int maslov = 0;

    EnergyClass() = default;
    EnergyClass(Rat e, int mu) : energy(std::move(e)), maslov(mu) {}

    bool is_zero() const { return energy == 0 && maslov == 0; }

    friend bool operator==(const EnergyClass& a, const EnergyClass& b)
    {
        return a.energy == b.energy && a.maslov == b.maslov;
    }
    friend bool operator<(const EnergyClass& a, const EnergyClass& b)
    {
        if (a.energy != b.energy)
            return a.energy < b.energy;
        return a.maslov < b.maslov;
    }

    std::string str() const { return "(" + rat_str(energy) + "," + std::to_string(maslov) + ")"; }
};

// Key of one structure constant m_{k,beta}(inputs).
struct Slot {
    int arity = 0;
    EnergyClass cls;
    Word inputs;

    friend bool operator<(const Slot& a, const Slot& b)
    {
        if (a.arity != b.arity)
            return a.arity < b.arity;
        if (!(a.cls == b.cls))
            return a.cls < b.cls;
        return a.inputs < b.inputs;
    }
    friend bool operator==(const Slot& a, const Slot& b)
    {
        return a.arity == b.arity && a.cls == b.cls && a.inputs == b.inputs;
    }
};

inline std::string slot_str(const Slot& s, const Basis& basis)
{
    std::string out = "m_{" + std::to_string(s.arity) + "," + s.cls.str() + "}(";
    for (std::size_t i = 0; i < s.inputs.size(); ++i) {
        if (i)
            out += ",";
        out += basis.name(s.inputs[i]);
    }
    return out + ")";
}

// Collects structure-constant slots that an evaluation needed but that are
// neither stored nor fixed by the unit/degree rules.
using MissingLog = std::set<Slot>;

// Gapped filtered A-infinity structure on a finite graded basis, stored as
// exact per-class structure constants. A slot's value is resolved in order:
// explicit store, unit rule, degree rule; anything else is undetermined and
// reported rather than silently treated as zero.
class AInfinity {
public:
    AInfinity() = default;
    AInfinity(Basis basis, Rat e_max) : basis_(std::move(basis)), e_max_(std::move(e_max))
    {
        classes_.insert(EnergyClass(Rat(0), 0));
        degrees_.clear();
        for (BasisIndex i : basis_.all())
            degrees_.insert(basis_.degree(i));
    }

    const Basis& basis() const { return basis_; }
    const Rat& e_max() const { return e_max_; }
    const std::set<EnergyClass>& classes() const { return classes_; }
    const std::map<Slot, FieldElement>& constants() const { return constants_; }

    void set_unit(BasisIndex u) { unit_ = u; }
    std::optional<BasisIndex> unit() const { return unit_; }

    void add_class(const EnergyClass& c)
    {
        if (c.energy < 0)
            throw InputError("AInfinity: negative energy class");
        if (c.energy <= e_max_)
            classes_.insert(c);
    }

    // Store an explicit constant (an empty element is an explicit zero).
    // The output must be homogeneous of degree sum(deg inputs)+2-k-maslov.
    void set_constant(const Slot& slot, FieldElement value)
    {
        if (static_cast<int>(slot.inputs.size()) != slot.arity)
            throw InputError("AInfinity: arity does not match input word");
        add_class(slot.cls);
        int want = mandated_degree(slot);
        for (const auto& [b, c] : value) {
            if (c.is_zero())
                throw InputError("AInfinity: stored zero coefficient");
            if (basis_.degree(b) != want)
                throw InputError("AInfinity: constant " + slot_str(slot, basis_) +
                                 " breaks the degree rule (wants " + std::to_string(want) + ")");
        }
        constants_[slot] = std::move(value);
    }

    int mandated_degree(const Slot& slot) const
    {
        int d = 2 - slot.arity - slot.cls.maslov;
        for (BasisIndex i : slot.inputs)
            d += basis_.degree(i);
        return d;
    }

    // Resolve one per-class constant. nullopt = undetermined.
    std::optional<FieldElement> constant_at(const Slot& slot) const
    {
        auto it = constants_.find(slot);
        if (it != constants_.end())
            return it->second;
        if (unit_) {
            bool has_unit = false;
            for (BasisIndex i : slot.inputs)
                if (i == *unit_)
                    has_unit = true;
            if (has_unit) {
                FieldElement out;
                if (slot.arity == 2 && slot.cls.is_zero()) {
                    if (slot.inputs[0] == *unit_) {
                        field_add(out, slot.inputs[1], QSqrt2(1));
                    } else {
                        field_add(out, slot.inputs[0],
                                  QSqrt2(sign_pow(basis_.degree(slot.inputs[0]))));
                    }
                }
                return out; // zero for every other unit-bearing slot
            }
        }
        if (!degrees_.count(mandated_degree(slot)))
            return FieldElement(); // zero by the degree rule
        return std::nullopt;
    }

    // Summed operation on a basis word: m_k = sum_beta T^{lambda(beta)} m_{k,beta}.
    Element apply_m_word(int k, const Word& inputs, MissingLog* missing = nullptr) const
    {
        if (static_cast<int>(inputs.size()) != k)
            throw InputError("apply_m_word: arity mismatch");
        Element out(e_max_);
        for (const auto& cls : classes_) {
            Slot slot{k, cls, inputs};
            auto fe = constant_at(slot);
            if (!fe) {
                if (missing)
                    missing->insert(slot);
                continue;
            }
            for (const auto& [b, c] : *fe)
                out.add(b, Novikov::term(c, cls.energy, e_max_));
        }
        return out;
    }

    // Multilinear extension to elements.
    Element apply_m(const std::vector<Element>& inputs, MissingLog* missing = nullptr) const
    {
        const int k = static_cast<int>(inputs.size());
        Element out(e_max_);
        Word word(k);
        Novikov coeff = Novikov::constant(QSqrt2(1), e_max_);
        expand_apply(inputs, 0, word, coeff, k, out, missing);
        return out;
    }

    Element m0(MissingLog* missing = nullptr) const { return apply_m_word(0, {}, missing); }
    bool has_nonzero_m0() const
    {
        MissingLog log;
        return !m0(&log).is_zero();
    }

    // Copy with m_0 replaced by the explicit zero constant in every class.
    AInfinity reduced() const
    {
        AInfinity out = *this;
        for (const auto& cls : classes_)
            out.constants_[Slot{0, cls, {}}] = FieldElement();
        return out;
    }

    // Coderivation term of fixed arity:
    //   m̂_k(x_1⊗…⊗x_n) = Σ_i (-1)^{|x_1|'+…+|x_{i-1}|'}
    //                      x_1⊗…⊗m_k(x_i,…,x_{i+k-1})⊗…⊗x_n,
    // with k = 0 inserting m_0 at every position.
    Chain hat_m(int k, const Chain& chain, MissingLog* missing = nullptr) const
    {
        Chain out(e_max_);
        for (const auto& [w, coeff] : chain.words()) {
            const int n = static_cast<int>(w.size());
            if (k > n)
                continue;
            long long prefix = 0;
            for (int i = 0; i + k <= n; ++i) {
                // position i (0-based): block = w[i..i+k)
                Word block(w.begin() + i, w.begin() + i + k);
                Element val = apply_m_word(k, block, missing);
                int sgn = sign_pow(prefix);
                for (const auto& [b, c] : val.coeffs()) {
                    Word nw;
                    nw.reserve(n - k + 1);
                    nw.insert(nw.end(), w.begin(), w.begin() + i);
                    nw.push_back(b);
                    nw.insert(nw.end(), w.begin() + i + k, w.end());
                    Novikov nc = coeff * c;
                    out.add(nw, sgn == 1 ? nc : -nc);
                }
                if (i < n)
                    prefix += basis_.shifted_degree(w[i]);
            }
        }
        return out;
    }

    // Full coderivation d̂ = Σ_k m̂_k (k = 0 included when m_0 is nonzero).
    Chain hat_d(const Chain& chain, MissingLog* missing = nullptr) const
    {
        Chain out(e_max_);
        int max_len = 0;
        for (const auto& [w, c] : chain.words())
            max_len = std::max(max_len, static_cast<int>(w.size()));
        for (int k = 0; k <= max_len; ++k)
            out += hat_m(k, chain, missing);
        return out;
    }

    // ---------------------------------------------------------------------
    // Verifications
    // ---------------------------------------------------------------------

    // d̂∘d̂ = 0 on every basis word of length <= max_len (exact residues).
    CheckReport verify_ainfty(int max_len, MissingLog* missing_out = nullptr) const
    {
        CheckReport rep;
        rep.name = "ainfty";
        MissingLog missing;
        long checked = 0;
        for_each_word(max_len, [&](const Word& w) {
            Chain c = Chain::single(w, Novikov::constant(QSqrt2(1), e_max_));
            Chain dd = hat_d(hat_d(c, &missing), &missing);
            ++checked;
            if (!dd.is_zero())
                rep.fail(word_str(w, basis_) + " -> " + dd.str(basis_));
        });
        // curvature relation m_1(m_0) = 0 when the structure is curved
        MissingLog m0log;
        Element m0el = m0(&m0log);
        if (!m0el.is_zero()) {
            Element r = apply_m({m0el}, &missing);
            if (!r.is_zero())
                rep.fail("m_1(m_0) = " + r.str(basis_));
        }
        if (!missing.empty()) {
            rep.pass = false;
            for (const auto& s : missing)
                rep.witnesses.push_back("undetermined constant " + slot_str(s, basis_));
            if (missing_out)
                *missing_out = missing;
        }
        rep.data["words_checked"] = std::to_string(checked);
        return rep;
    }

    // The three gapped conditions on the stored class set.
    CheckReport verify_gapped() const
    {
        CheckReport rep;
        rep.name = "gapped";
        // condition 2: zero energy only carries the trivial class
        if (!classes_.count(EnergyClass(Rat(0), 0)))
            rep.fail("condition 2: class (0,0) missing");
        for (const auto& c : classes_)
            if (c.energy == 0 && c.maslov != 0)
                rep.fail("condition 2: zero-energy class " + c.str());
        // condition 1: discreteness of the energy projection. For a stored
        // truncation this means the set is additively closed below e_max and
        // bounded away from zero; an accumulating family fails closure.
        Rat min_pos(-1);
        for (const auto& c : classes_)
            if (c.energy > 0 && (min_pos < 0 || c.energy < min_pos))
                min_pos = c.energy;
        for (const auto& a : classes_)
            for (const auto& b : classes_) {
                if (a.energy == 0 || b.energy == 0)
                    continue;
                EnergyClass sum(a.energy + b.energy, a.maslov + b.maslov);
                if (sum.energy <= e_max_ && !classes_.count(sum))
                    rep.fail("condition 1: monoid not closed, missing " + sum.str());
            }
        // condition 3: finitely many classes per energy level (finite store:
        // report the largest fiber).
        std::map<Rat, int> fiber;
        for (const auto& c : classes_)
            fiber[c.energy]++;
        int worst = 0;
        for (const auto& [e, n] : fiber)
            worst = std::max(worst, n);
        rep.data["max_classes_per_energy"] = std::to_string(worst);
        if (min_pos > 0)
            rep.data["min_positive_energy"] = rat_str(min_pos);
        std::string listed;
        for (const auto& c : classes_)
            listed += (listed.empty() ? "" : " ") + c.str();
        rep.data["classes"] = listed;
        return rep;
    }

    // Unit laws: m_2(e,x) = x, m_2(x,e) = (-1)^{deg x} x, and every other
    // unit-bearing operation vanishes.
    CheckReport verify_unit(int max_arity = 4) const
    {
        CheckReport rep;
        rep.name = "unit";
        if (!unit_) {
            rep.fail("no unit designated");
            return rep;
        }
        for (int k = 1; k <= max_arity; ++k) {
            for_each_word_of_length(k, [&](const Word& w) {
                bool has_unit = false;
                for (BasisIndex i : w)
                    if (i == *unit_)
                        has_unit = true;
                if (!has_unit)
                    return;
                for (const auto& cls : classes_) {
                    Slot slot{k, cls, w};
                    auto fe = constant_at(slot);
                    if (!fe) {
                        rep.fail("undetermined constant " + slot_str(slot, basis_));
                        continue;
                    }
                    FieldElement want;
                    if (k == 2 && cls.is_zero()) {
                        if (w[0] == *unit_)
                            field_add(want, w[1], QSqrt2(1));
                        else
                            field_add(want, w[0], QSqrt2(sign_pow(basis_.degree(w[0]))));
                    }
                    if (*fe != want)
                        rep.fail(slot_str(slot, basis_) + " breaks the unit law");
                }
            });
        }
        return rep;
    }

    // Enumeration helpers.
    template <typename F> void for_each_word_of_length(int len, F&& f) const
    {
        Word w(len);
        enumerate_words(w, 0, f);
    }
    template <typename F> void for_each_word(int max_len, F&& f) const
    {
        for (int len = 1; len <= max_len; ++len)
            for_each_word_of_length(len, f);
    }

private:
    template <typename F> void enumerate_words(Word& w, std::size_t pos, F&& f) const
    {
        if (pos == w.size()) {
            f(const_cast<const Word&>(w));
            return;
        }
        for (BasisIndex i : basis_.all()) {
            w[pos] = i;
            enumerate_words(w, pos + 1, f);
        }
    }

    void expand_apply(const std::vector<Element>& inputs, std::size_t pos, Word& word,
                      const Novikov& coeff, int k, Element& out, MissingLog* missing) const
    {
        if (pos == inputs.size()) {
            Element v = apply_m_word(k, word, missing);
            for (const auto& [b, c] : v.coeffs())
                out.add(b, c * coeff);
            return;
        }
        for (const auto& [b, c] : inputs[pos].coeffs()) {
            word[pos] = b;
            expand_apply(inputs, pos + 1, word, coeff * c, k, out, missing);
        }
    }

    Basis basis_;
    Rat e_max_ = Rat(2);
    std::optional<BasisIndex> unit_;
    std::set<EnergyClass> classes_;
    std::set<int> degrees_;
    std::map<Slot, FieldElement> constants_;
};

} // namespace mplus
