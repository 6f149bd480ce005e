#pragma once

#include "mplus/clifford.hpp"

#include <json.hpp>

#include <fstream>

namespace mplus {

using Json = nlohmann::json;

// Exact values serialize as "num/den" strings; floats never appear in
// algebraic documents.
inline Json qsqrt2_to_json(const QSqrt2& v)
{
    return Json{{"rat", rat_str(v.rat)}, {"sqrt2", rat_str(v.irr)}};
}

inline QSqrt2 qsqrt2_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("rat") || !j.contains("sqrt2"))
        throw InputError("expected {rat, sqrt2} object");
    return QSqrt2(rat_parse(j.at("rat").get<std::string>()),
                  rat_parse(j.at("sqrt2").get<std::string>()));
}

// ---------------------------------------------------------------------------
// Algebra documents
// ---------------------------------------------------------------------------

struct AlgebraBundle {
    AInfinity structure;
    Pairing pairing;
};

inline Json algebra_to_json(const AInfinity& A, const Pairing& P)
{
    Json j;
    j["schema"] = "mplus-algebra-v1";
    j["e_max"] = rat_str(A.e_max());
    Json basis = Json::array();
    for (BasisIndex i : A.basis().all())
        basis.push_back({{"name", A.basis().name(i)}, {"degree", A.basis().degree(i)}});
    j["basis"] = basis;
    if (A.unit())
        j["unit"] = A.basis().name(*A.unit());
    Json pairing = Json::array();
    for (const auto& [key, v] : P.entries()) {
        if (v.is_zero())
            continue;
        pairing.push_back({{"left", A.basis().name(key.first)},
                           {"right", A.basis().name(key.second)},
                           {"value", qsqrt2_to_json(v)}});
    }
    j["pairing"] = pairing;
    Json ops = Json::array();
    for (const auto& [slot, fe] : A.constants()) {
        Json inputs = Json::array();
        for (BasisIndex i : slot.inputs)
            inputs.push_back(A.basis().name(i));
        Json output = Json::array();
        for (const auto& [b, c] : fe)
            output.push_back({{"basis", A.basis().name(b)}, {"coeff", qsqrt2_to_json(c)}});
        ops.push_back({{"k", slot.arity},
                       {"energy", rat_str(slot.cls.energy)},
                       {"maslov", slot.cls.maslov},
                       {"inputs", inputs},
                       {"output", output}});
    }
    j["operations"] = ops;
    return j;
}

inline AlgebraBundle algebra_from_json(const Json& j)
{
    if (!j.is_object() || j.value("schema", "") != "mplus-algebra-v1")
        throw InputError("not an mplus algebra document");
    Rat e_max = rat_parse(j.at("e_max").get<std::string>());
    Basis basis;
    for (const auto& b : j.at("basis"))
        basis.add(b.at("name").get<std::string>(), b.at("degree").get<int>());
    AlgebraBundle out{AInfinity(basis, e_max), Pairing(basis)};
    if (j.contains("unit"))
        out.structure.set_unit(basis.index_of(j.at("unit").get<std::string>()));
    for (const auto& p : j.at("pairing"))
        out.pairing.set(basis.index_of(p.at("left").get<std::string>()),
                        basis.index_of(p.at("right").get<std::string>()),
                        qsqrt2_from_json(p.at("value")));
    for (const auto& op : j.at("operations")) {
        Slot slot;
        slot.arity = op.at("k").get<int>();
        slot.cls = EnergyClass(rat_parse(op.at("energy").get<std::string>()),
                               op.at("maslov").get<int>());
        for (const auto& name : op.at("inputs"))
            slot.inputs.push_back(basis.index_of(name.get<std::string>()));
        FieldElement fe;
        for (const auto& term : op.at("output")) {
            QSqrt2 c = qsqrt2_from_json(term.at("coeff"));
            if (!c.is_zero())
                fe[basis.index_of(term.at("basis").get<std::string>())] = c;
        }
        out.structure.set_constant(slot, std::move(fe));
    }
    CheckReport pv = out.pairing.validate(basis);
    if (!pv.pass)
        throw InputError("algebra document: " + pv.summary());
    return out;
}

// ---------------------------------------------------------------------------
// Chain documents (first letter = module slot)
// ---------------------------------------------------------------------------

inline Json chain_to_json(const Chain& c, const Basis& basis)
{
    Json j;
    j["schema"] = "mplus-chain-v1";
    j["e_max"] = rat_str(c.e_max());
    Json words = Json::array();
    for (const auto& [w, coeff] : c.words()) {
        Json letters = Json::array();
        for (BasisIndex i : w)
            letters.push_back(basis.name(i));
        for (const auto& [e, v] : coeff.terms()) {
            Json cj = qsqrt2_to_json(v);
            cj["energy"] = rat_str(e);
            words.push_back({{"coeff", cj}, {"letters", letters}});
        }
    }
    j["words"] = words;
    return j;
}

inline Chain chain_from_json(const Json& j, const Basis& basis, const Rat& e_max)
{
    if (!j.is_object() || j.value("schema", "") != "mplus-chain-v1")
        throw InputError("not an mplus chain document");
    Chain out(e_max);
    for (const auto& wj : j.at("words")) {
        Word w;
        for (const auto& name : wj.at("letters"))
            w.push_back(basis.index_of(name.get<std::string>()));
        const Json& cj = wj.at("coeff");
        Rat energy = cj.contains("energy") ? rat_parse(cj.at("energy").get<std::string>())
                                           : Rat(0);
        out.add(w, Novikov::term(qsqrt2_from_json(cj), energy, e_max));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Morphism documents
// ---------------------------------------------------------------------------

inline Json morphism_to_json(const Morphism& h)
{
    Json j;
    j["schema"] = "mplus-morphism-v1";
    Json comps = Json::array();
    for (const auto& [slot, fe] : h.components()) {
        Json inputs = Json::array();
        for (BasisIndex i : slot.inputs)
            inputs.push_back(h.source().basis().name(i));
        Json output = Json::array();
        for (const auto& [b, c] : fe)
            output.push_back({{"basis", h.target().basis().name(b)}, {"coeff", qsqrt2_to_json(c)}});
        comps.push_back({{"k", slot.arity},
                         {"energy", rat_str(slot.cls.energy)},
                         {"maslov", slot.cls.maslov},
                         {"inputs", inputs},
                         {"output", output}});
    }
    j["components"] = comps;
    return j;
}

inline Morphism morphism_from_json(const Json& j, const AInfinity& source,
                                   const AInfinity& target)
{
    if (!j.is_object() || j.value("schema", "") != "mplus-morphism-v1")
        throw InputError("not an mplus morphism document");
    Morphism h(source, target);
    for (const auto& comp : j.at("components")) {
        Slot slot;
        slot.arity = comp.at("k").get<int>();
        slot.cls = EnergyClass(rat_parse(comp.at("energy").get<std::string>()),
                               comp.at("maslov").get<int>());
        for (const auto& name : comp.at("inputs"))
            slot.inputs.push_back(source.basis().index_of(name.get<std::string>()));
        FieldElement fe;
        for (const auto& term : comp.at("output")) {
            QSqrt2 c = qsqrt2_from_json(term.at("coeff"));
            if (!c.is_zero())
                fe[target.basis().index_of(term.at("basis").get<std::string>())] = c;
        }
        h.set_component(slot, std::move(fe));
    }
    return h;
}

// ---------------------------------------------------------------------------
// Reports and files
// ---------------------------------------------------------------------------

inline Json report_to_json(const CheckReport& rep)
{
    Json j;
    j["check"] = rep.name;
    j["pass"] = rep.pass;
    j["witnesses"] = rep.witnesses;
    j["data"] = rep.data;
    return j;
}

inline Json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw InputError("malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

inline void save_json_file(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

} // namespace mplus
