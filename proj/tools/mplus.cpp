// Command-line front end: verifications, m+ evaluation, the built-in
// Clifford-torus model, and the disc census with its region maps.
// Exit codes: 0 pass, 1 verification failure, 2 usage or input error.

#include "mplus/census.hpp"
#include "mplus/json_io.hpp"
#include "mplus/sampling.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

using namespace mplus;

namespace {

int overall_status = 0; // sticky: 1 once any check fails
const auto run_start = std::chrono::steady_clock::now();

void note_report(Json& out, const CheckReport& rep)
{
    out["reports"].push_back(report_to_json(rep));
    std::cout << rep.summary() << "\n";
    if (!rep.pass)
        overall_status = 1;
}

void write_out(const std::string& path, Json j)
{
    if (path.empty())
        return;
    // wall-clock only; every value above this key is deterministic per seed
    j["timing_ms"] = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - run_start)
                         .count();
    save_json_file(path, j);
}

census::TorusPoint parse_point(const std::string& s)
{
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw InputError("expected 'theta1,theta2' but got '" + s + "'");
    try {
        return census::TorusPoint(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
    } catch (const std::exception&) {
        throw InputError("bad angle pair '" + s + "'");
    }
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

// partition [0,n) across workers; aggregation must be commutative
template <typename F> void parallel_for(long n, int threads, F&& body)
{
    if (threads <= 1) {
        for (long i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&]() {
            for (long i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                body(i);
        });
    for (auto& th : pool)
        th.join();
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int run_verify(const std::string& algebra_path, const std::string& checks_csv, int max_len,
               std::uint64_t seed, int chain_count, bool unreduced, const std::string& out_path)
{
    AlgebraBundle bundle = algebra_from_json(load_json_file(algebra_path));
    AInfinity A = unreduced ? bundle.structure : bundle.structure.reduced();
    const Pairing& P = bundle.pairing;

    std::set<std::string> checks;
    for (const auto& c : split_list(checks_csv))
        checks.insert(c);
    if (checks.empty())
        checks = {"ainfty", "cyclic", "stokes", "prop34", "unit",
                  "gapped", "thm42",  "thm43",  "lemma44"};

    Json out;
    out["algebra"] = algebra_path;
    out["reduced"] = !unreduced;
    std::vector<Chain> samples = random_chains(A.basis(), A.e_max(), seed, chain_count);

    for (const std::string& name : checks) {
        if (name == "ainfty")
            note_report(out, A.verify_ainfty(max_len));
        else if (name == "cyclic")
            note_report(out, verify_cyclic_symmetry(A, P, max_len));
        else if (name == "stokes")
            note_report(out, verify_stokes(A, P));
        else if (name == "prop34")
            note_report(out, verify_pairing_identity(A, P, max_len));
        else if (name == "unit")
            note_report(out, A.verify_unit(max_len));
        else if (name == "gapped")
            note_report(out, A.verify_gapped());
        else if (name == "thm42")
            note_report(out, verify_mplus_boundaries(A, P, std::min(max_len, 3), samples));
        else if (name == "thm43")
            note_report(out, verify_mplus_cyclic_boundaries(A, P, std::min(max_len, 3), samples));
        else if (name == "lemma44")
            note_report(out, verify_mplus_bar_compat(A, P, std::min(max_len, 3), max_len));
        else
            throw InputError("unknown check '" + name + "'");
    }
    write_out(out_path, out);
    return overall_status;
}

// ---------------------------------------------------------------------------
// mplus (evaluate the functional on a chain document)
// ---------------------------------------------------------------------------

int run_mplus(const std::string& algebra_path, const std::string& chain_path, bool unreduced,
              const std::string& out_path)
{
    AlgebraBundle bundle = algebra_from_json(load_json_file(algebra_path));
    AInfinity A = unreduced ? bundle.structure : bundle.structure.reduced();
    Chain chain = chain_from_json(load_json_file(chain_path), A.basis(), A.e_max());

    MissingLog missing;
    Novikov value = m_plus(A, bundle.pairing, chain, &missing);
    bool invariant = is_cyclic_invariant(chain, A.basis());
    bool bar_closed = A.hat_d(chain, &missing).is_zero();
    bool hoch_closed = d_hoch(A, chain, &missing).is_zero();

    std::string status = invariant && bar_closed ? "cyclic cycle"
                         : hoch_closed           ? "Hochschild cycle"
                                                 : "not a cycle";
    std::cout << "m_plus = " << value.str() << "  (" << status << ")\n";
    Json out;
    out["value"] = value.str();
    out["cyclic_invariant"] = invariant;
    out["bar_closed"] = bar_closed;
    out["hochschild_closed"] = hoch_closed;
    out["status"] = status;
    if (!missing.empty()) {
        for (const auto& s : missing)
            out["undetermined"].push_back(slot_str(s, A.basis()));
        std::cerr << "warning: undetermined constants encountered\n";
    }
    write_out(out_path, out);
    return 0;
}

// ---------------------------------------------------------------------------
// clifford
// ---------------------------------------------------------------------------

int run_clifford(bool verify_alpha, const std::string& emit_model,
                 const std::string& emit_alpha, const std::string& emit_e_model,
                 const std::string& emit_basis_change, bool unreduced,
                 const std::string& out_path)
{
    clifford::Model fmodel = clifford::Builder().build();
    Json out;
    if (!fmodel.solve_report.pass) {
        note_report(out, fmodel.solve_report);
        write_out(out_path, out);
        return 1;
    }

    if (!emit_model.empty()) {
        AInfinity A = unreduced ? fmodel.structure : fmodel.reduced();
        save_json_file(emit_model, algebra_to_json(A, fmodel.pairing));
        std::cout << "model written to " << emit_model << "\n";
    }
    if (!emit_alpha.empty()) {
        Chain alpha = clifford::build_alpha(fmodel.reduced());
        save_json_file(emit_alpha, chain_to_json(alpha, fmodel.structure.basis()));
        std::cout << "alpha written to " << emit_alpha << "\n";
    }
    clifford::Model emodel;
    if (!emit_e_model.empty() || !emit_basis_change.empty())
        emodel = clifford::Builder(clifford::Presentation::IntegerBasis).build();
    if (!emit_e_model.empty()) {
        AInfinity A = unreduced ? emodel.structure : emodel.reduced();
        save_json_file(emit_e_model, algebra_to_json(A, emodel.pairing));
        std::cout << "integer-basis model written to " << emit_e_model << "\n";
    }
    if (!emit_basis_change.empty()) {
        // eigenbasis -> integer basis, so the shipped cycle document can be
        // transported directly
        save_json_file(emit_basis_change,
                       morphism_to_json(clifford::basis_change(fmodel, emodel)));
        std::cout << "basis-change morphism written to " << emit_basis_change << "\n";
    }

    if (verify_alpha) {
        AInfinity red = fmodel.reduced();
        note_report(out, red.verify_ainfty(4));
        note_report(out, verify_cyclic_symmetry(red, fmodel.pairing, 4));
        note_report(out, red.verify_unit(4));
        note_report(out, red.verify_gapped());
        note_report(out, clifford::expected_constants_table(fmodel));
        note_report(out, clifford::alpha_cycle_report(fmodel));
        CheckReport eval = clifford::evaluate_alpha(fmodel);
        note_report(out, eval);
        // provenance table
        Json prov = Json::array();
        for (const auto& [slot, tag] : fmodel.provenance)
            prov.push_back({{"slot", slot_str(slot, fmodel.structure.basis())}, {"tag", tag}});
        out["provenance"] = prov;
        out["m_plus_alpha"] = eval.data.count("m_plus_alpha") ? eval.data.at("m_plus_alpha")
                                                              : std::string("?");
        std::cout << "m_plus_alpha: " << out["m_plus_alpha"].get<std::string>() << "\n";
    }
    write_out(out_path, out);
    return overall_status;
}

// ---------------------------------------------------------------------------
// count
// ---------------------------------------------------------------------------

int run_count(const std::string& p_str, const std::string& q_str, const std::string& r_str,
              long samples, std::uint64_t seed, const std::string& checks_csv, int threads,
              const std::string& out_path)
{
    Json out;
    if (samples <= 0) {
        if (p_str.empty() || q_str.empty() || r_str.empty())
            throw InputError("count needs either --samples or all of --p/--q/--r");
        census::TorusPoint p = parse_point(p_str), q = parse_point(q_str),
                           r = parse_point(r_str);
        census::CensusReport rep = census::census(p, q, r);
        census::BiranCornea bc = census::biran_cornea(p, q, r);
        double residual = census::solve_disc_residual(p, q, r);
        for (int c = 0; c < 3; ++c) {
            Json cls;
            cls["class"] = census::maslov4_name(static_cast<census::Maslov4>(c));
            cls["exists"] = rep.per_class[c].exists;
            if (rep.per_class[c].exists)
                cls["orientation"] =
                    rep.per_class[c].orientation == census::Orient::CCW ? "ccw" : "cw";
            out["classes"].push_back(cls);
        }
        out["total"] = rep.total;
        out["cyclic_count"] = rep.cyclic_count;
        out["t_pqr"] = rep.t_pqr;
        out["combined"] = rep.combined;
        out["n_p"] = bc.n_p;
        out["n_q"] = bc.n_q;
        out["n_r"] = bc.n_r;
        out["biran_cornea_holds"] = bc.relation_holds;
        out["solver_residual"] = residual;
        std::cout << out.dump(2) << "\n";
        write_out(out_path, out);
        return 0;
    }

    std::set<std::string> checks;
    for (const auto& c : split_list(checks_csv))
        checks.insert(c);
    if (checks.empty())
        checks = {"parity", "invariant", "biran-cornea", "residual", "witnesses"};

    std::mutex mu;
    bool totals_ok = true, cyclic_ok = true, bc_ok = true, residual_ok = true, agree_ok = true;
    std::set<int> combined;
    double worst_residual = 0;
    struct Witness {
        std::array<census::TorusPoint, 3> tri;
        census::CensusReport rep;
    };
    std::vector<Witness> head; // first few samples, for witness search

    parallel_for(samples, threads, [&](long i) {
        auto tri = census::sample_generic_triple(seed, static_cast<std::uint64_t>(i));
        census::CensusReport rep = census::census(tri[0], tri[1], tri[2]);
        census::BiranCornea bc = census::biran_cornea(tri[0], tri[1], tri[2]);
        double res = 0;
        bool agrees = true;
        try {
            res = census::solve_disc_residual(tri[0], tri[1], tri[2]);
        } catch (const census::DegenerateInput&) {
            agrees = false;
        }
        std::lock_guard<std::mutex> lock(mu);
        totals_ok = totals_ok && (rep.total == 0 || rep.total == 2);
        cyclic_ok = cyclic_ok && (rep.cyclic_count == 0 || rep.cyclic_count == 1);
        combined.insert(rep.combined);
        bc_ok = bc_ok && bc.relation_holds;
        worst_residual = std::max(worst_residual, res);
        residual_ok = residual_ok && res < 1e-9;
        agree_ok = agree_ok && agrees;
        if (head.size() < 512)
            head.push_back({tri, rep});
    });

    auto add_check = [&](const std::string& name, bool pass, const std::string& detail) {
        CheckReport rep;
        rep.name = name;
        rep.pass = pass;
        if (!detail.empty())
            rep.data["detail"] = detail;
        note_report(out, rep);
    };

    out["samples"] = samples;
    out["seed"] = seed;
    if (checks.count("parity"))
        add_check("parity", totals_ok && cyclic_ok,
                  "totals in {0,2}, cyclic counts in {0,1}");
    if (checks.count("invariant"))
        add_check("invariant", combined.size() == 1,
                  combined.size() == 1
                      ? "combined invariant = " + std::to_string(*combined.begin())
                      : "combined invariant varies");
    if (checks.count("biran-cornea"))
        add_check("biran-cornea", bc_ok, "T_pqr + n_q n_r = 1 (mod 2) on all samples");
    if (checks.count("residual"))
        add_check("residual", residual_ok && agree_ok,
                  "max residual " + std::to_string(worst_residual));
    if (checks.count("witnesses")) {
        Json wit;
        bool found_class = false, found_cyclic = false;
        for (std::size_t i = 1; i < head.size() && !(found_class && found_cyclic); ++i) {
            auto differs_class = [&](const Witness& a, const Witness& b) {
                for (int c = 0; c < 3; ++c)
                    if (a.rep.per_class[c].exists != b.rep.per_class[c].exists)
                        return true;
                return false;
            };
            auto tri_json = [](const Witness& w) {
                Json j = Json::array();
                for (const auto& pt : w.tri)
                    j.push_back({pt.a1, pt.a2});
                return j;
            };
            if (!found_class && differs_class(head[0], head[i])) {
                wit["per_class"] = {tri_json(head[0]), tri_json(head[i])};
                found_class = true;
            }
            if (!found_cyclic && head[i].rep.cyclic_count != head[0].rep.cyclic_count) {
                wit["cyclic"] = {tri_json(head[0]), tri_json(head[i])};
                found_cyclic = true;
            }
        }
        out["witnesses"] = wit;
        add_check("witnesses", found_class && found_cyclic,
                  "both witness pairs found in the sample stream");
    }
    write_out(out_path, out);
    return overall_status;
}

// ---------------------------------------------------------------------------
// region
// ---------------------------------------------------------------------------

int run_region(const std::string& p_str, const std::string& q_str, int resolution,
               const std::string& out_svg, int threads)
{
    census::TorusPoint p = p_str.empty() ? census::TorusPoint(0, 0) : parse_point(p_str);
    census::TorusPoint q = q_str.empty()
                               ? census::TorusPoint(0.3 * census::kTau, 0.45 * census::kTau)
                               : parse_point(q_str);

    std::vector<census::RegionCell> cells(static_cast<std::size_t>(resolution) * resolution);
    parallel_for(static_cast<long>(cells.size()), threads, [&](long idx) {
        int i = static_cast<int>(idx % resolution), j = static_cast<int>(idx / resolution);
        census::RegionCell cell;
        cell.i = i;
        cell.j = j;
        cell.r1 = (i + 0.5) / resolution * census::kTau;
        cell.r2 = (j + 0.5) / resolution * census::kTau;
        try {
            cell.report = census::census(p, q, census::TorusPoint(cell.r1, cell.r2));
        } catch (const census::DegenerateInput&) {
            cell.degenerate = true;
        }
        cells[idx] = cell;
    });

    std::ofstream svg(out_svg);
    if (!svg)
        throw InputError("cannot write '" + out_svg + "'");
    census::write_region_svg(svg, cells, resolution);
    std::string csv_path = out_svg;
    auto dot = csv_path.rfind('.');
    csv_path = (dot == std::string::npos ? csv_path : csv_path.substr(0, dot)) + ".csv";
    std::ofstream csv(csv_path);
    if (!csv)
        throw InputError("cannot write '" + csv_path + "'");
    census::write_region_csv(csv, cells);
    std::cout << "region map written to " << out_svg << " and " << csv_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// morphism
// ---------------------------------------------------------------------------

int run_morphism(const std::string& src_path, const std::string& dst_path,
                 const std::string& morphism_path, const std::string& chains_path,
                 const std::string& out_path)
{
    AlgebraBundle src = algebra_from_json(load_json_file(src_path));
    AlgebraBundle dst = algebra_from_json(load_json_file(dst_path));
    Morphism h = morphism_from_json(load_json_file(morphism_path), src.structure.reduced(),
                                    dst.structure.reduced());
    Json out;
    note_report(out, h.verify_homomorphism(4));
    note_report(out, h.verify_cyclic(src.pairing, dst.pairing, 4));
    if (!chains_path.empty()) {
        Chain c = chain_from_json(load_json_file(chains_path), src.structure.basis(),
                                  src.structure.e_max());
        note_report(out, h.verify_mplus_transport(src.pairing, dst.pairing, {c}));
    }
    write_out(out_path, out);
    return overall_status;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact cyclic A-infinity workbench and torus disc census"};
    app.require_subcommand(1);

    // verify
    std::string algebra_path, chain_path, checks_csv, out_path;
    int max_len = 4, chain_count = 100, threads = 1, resolution = 64;
    std::uint64_t seed = 7;
    bool unreduced = false;
    auto* verify = app.add_subcommand("verify", "run verifications on an algebra document");
    verify->add_option("algebra", algebra_path, "algebra JSON document")->required();
    verify->add_option("--checks", checks_csv,
                       "comma list: ainfty,cyclic,stokes,prop34,unit,gapped,thm42,thm43,lemma44");
    verify->add_option("--max-len", max_len, "word/tuple length cap");
    verify->add_option("--seed", seed, "seed for sampled chains");
    verify->add_option("--chains", chain_count, "number of sampled chains");
    verify->add_flag("--unreduced", unreduced, "keep the stored curvature term m_0");
    verify->add_option("--out", out_path, "write the JSON report here");

    // mplus
    auto* mplus_cmd = app.add_subcommand("mplus", "evaluate the m+ functional on a chain");
    mplus_cmd->add_option("algebra", algebra_path, "algebra JSON document")->required();
    mplus_cmd->add_option("chain", chain_path, "chain JSON document")->required();
    mplus_cmd->add_flag("--unreduced", unreduced, "keep the stored curvature term m_0");
    mplus_cmd->add_option("--out", out_path, "write the JSON report here");

    // clifford
    std::string emit_model, emit_alpha, emit_e_model, emit_basis_change;
    bool verify_alpha = false;
    auto* cliff = app.add_subcommand("clifford", "build and check the Clifford-torus model");
    cliff->add_option("--emit-model", emit_model, "write the completed model (JSON)");
    cliff->add_option("--emit-alpha", emit_alpha, "write the distinguished cycle (JSON)");
    cliff->add_option("--emit-e-model", emit_e_model, "write the integer-basis model (JSON)");
    cliff->add_option("--emit-basis-change", emit_basis_change,
                      "write the strict basis-change morphism (JSON)");
    cliff->add_flag("--verify-alpha", verify_alpha, "run the full verification pipeline");
    cliff->add_flag("--unreduced", unreduced, "emit with the curvature term m_0 kept");
    cliff->add_option("--out", out_path, "write the JSON report here");

    // count
    std::string p_str, q_str, r_str;
    long samples = 0;
    auto* count = app.add_subcommand("count", "three-point disc census");
    count->add_option("--p", p_str, "first point, 'theta1,theta2' in radians");
    count->add_option("--q", q_str, "second point");
    count->add_option("--r", r_str, "third point");
    count->add_option("--samples", samples, "Monte Carlo sample count");
    count->add_option("--seed", seed, "Monte Carlo seed");
    count->add_option("--check", checks_csv,
                      "comma list: parity,invariant,biran-cornea,residual,witnesses");
    count->add_option("--threads", threads, "worker threads for sweeps");
    count->add_option("--out", out_path, "write the JSON report here");

    // region
    std::string out_svg = "region.svg";
    auto* region = app.add_subcommand("region", "raster map of the third point");
    region->add_option("--p", p_str, "first point (default origin)");
    region->add_option("--q", q_str, "second point");
    region->add_option("--resolution", resolution, "cells per side");
    region->add_option("--out", out_svg, "SVG output path (CSV sidecar alongside)");
    region->add_option("--threads", threads, "worker threads");

    // morphism
    std::string src_path, dst_path, morphism_path, chains_path;
    auto* morph = app.add_subcommand("morphism", "verify a morphism document");
    morph->add_option("--source", src_path, "source algebra JSON")->required();
    morph->add_option("--target", dst_path, "target algebra JSON")->required();
    morph->add_option("--morphism", morphism_path, "morphism JSON")->required();
    morph->add_option("--chains", chains_path, "chain document for m+ transport");
    morph->add_option("--out", out_path, "write the JSON report here");

    try {
        app.parse(argc, argv);
        if (verify->parsed())
            return run_verify(algebra_path, checks_csv, max_len, seed, chain_count, unreduced,
                              out_path);
        if (mplus_cmd->parsed())
            return run_mplus(algebra_path, chain_path, unreduced, out_path);
        if (cliff->parsed())
            return run_clifford(verify_alpha, emit_model, emit_alpha, emit_e_model,
                                emit_basis_change, unreduced, out_path);
        if (count->parsed())
            return run_count(p_str, q_str, r_str, samples, seed, checks_csv, threads, out_path);
        if (region->parsed())
            return run_region(p_str, q_str, resolution, out_svg, threads);
        if (morph->parsed())
            return run_morphism(src_path, dst_path, morphism_path, chains_path, out_path);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const census::DegenerateInput& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
