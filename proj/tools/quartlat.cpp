#include <quartlat/io.hpp>
#include <quartlat/k3_character.hpp>
#include <quartlat/lemmas.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using namespace quartlat;

namespace {

struct Output {
    nlohmann::json data = nlohmann::json::object();
    std::string text;
    VerificationReport report;
    bool has_report = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

nlohmann::json sig_json(const Signature& s) { return {s.positive, s.negative, s.radical}; }

IntegerLattice load_lattice(const std::string& file, const std::string& name) {
    if (!file.empty() && !name.empty()) throw UsageError("give either --file or --name");
    if (!file.empty()) return lattice_from_json(read_json_file(file));
    if (name.empty()) throw UsageError("--file or --name is required");
    try {
        return make_standard(name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

MuFourK3Lattice load_bundle(const std::string& path) {
    if (path.empty()) return construct(1).k3;
    return bundle_from_json(read_json_file(path));
}

std::string gaussian_text(const GaussianRat& z) { return z.str(); }

// ---- lattice ----

Output lattice_info(const IntegerLattice& l) {
    Output o;
    Signature s = signature(l);
    o.data = {{"label", l.label()},
              {"rank", l.rank()},
              {"signature", sig_json(s)},
              {"det", json_int(l.determinant())},
              {"even", l.even()},
              {"unimodular", l.unimodular()},
              {"lattice", lattice_to_json(l)}};
    std::ostringstream t;
    t << "label " << (l.label().empty() ? "-" : l.label()) << "\nrank " << l.rank() << "\nsignature " << s.str() << "\ndet "
      << l.determinant() << "\neven " << (l.even() ? "yes" : "no") << "\nunimodular " << (l.unimodular() ? "yes" : "no") << "\n";
    o.text = t.str();
    return o;
}

Output lattice_disc(const IntegerLattice& l) {
    if (l.degenerate()) throw FormatError("degenerate lattice has no finite discriminant group");
    Output o;
    auto dg = discriminant_group(l);
    o.data = fqf_to_json(dg.form);
    std::ostringstream t;
    t << "orders";
    for (auto d : dg.form.orders()) t << " " << d;
    t << "\nsize " << dg.form.size() << "\n";
    for (std::uint64_t i = 0; i < dg.form.size(); ++i) {
        auto e = dg.form.element(i);
        t << "(";
        for (std::size_t k = 0; k < e.size(); ++k) t << (k ? "," : "") << e[k];
        t << ") q = " << dg.form.q(e).value() << " mod 2\n";
    }
    o.text = t.str();
    return o;
}

// ---- glue ----

Output glue(const std::string& f1, const std::string& f2, std::uint64_t cap) {
    Output o;
    std::ostringstream t;
    if (f1.empty() != f2.empty()) throw UsageError("give both --file1 and --file2, or neither");
    if (f1.empty()) {
        Construction c = construct(cap);
        o.data = {{"pair", "period"}, {"equivariant", true}, {"glue_maps", c.glue_maps}, {"capped", c.glue_maps_capped},
                  {"overlattice", lattice_info(c.k3.lattice).data}};
        t << "equivariant glue maps " << c.glue_maps << (c.glue_maps_capped ? " (cap reached)" : "") << "\n";
        t << lattice_info(c.k3.lattice).text;
    } else {
        IntegerLattice a = lattice_from_json(read_json_file(f1)), b = lattice_from_json(read_json_file(f2));
        if (a.degenerate() || b.degenerate()) throw FormatError("gluing needs nondegenerate lattices");
        std::uint64_t count;
        std::vector<GlueResult> first;
        try {
            count = count_glue_maps(a, b, std::nullopt, cap);
            GlueOptions opt;
            opt.max_results = 1;
            first = glue_overlattices(a, b, opt);
        } catch (const std::invalid_argument& e) {
            throw FormatError(e.what());
        }
        o.data = {{"equivariant", false}, {"glue_maps", count}, {"capped", cap != 0 && count >= cap}};
        t << "glue maps " << count << (cap != 0 && count >= cap ? " (cap reached)" : "") << "\n";
        if (!first.empty()) {
            o.data["overlattice"] = lattice_info(first.front().overlattice).data;
            t << lattice_info(first.front().overlattice).text;
        }
    }
    o.text = t.str();
    return o;
}

// ---- period ----

Output period_build(const std::string& out) {
    if (out.empty()) throw UsageError("--out is required");
    Output o;
    Construction c = construct();
    write_text_file(out, bundle_to_json(c.k3).dump(1) + "\n");
    o.report = verify_invariants(c.k3);
    o.has_report = true;
    o.data = {{"bundle", out}, {"glue_maps", c.glue_maps}, {"glue_maps_capped", c.glue_maps_capped}};
    o.text = "bundle written to " + out + "\n";
    return o;
}

Output period_verify(const std::string& bundle, long long bound) {
    Output o;
    MuFourK3Lattice m = load_bundle(bundle);
    LemmaRun run = verify_lemmas(m, bound);
    if (bound > 0 && run.enumeration.vectors.empty()) std::cerr << "warning: no hyperelliptic vectors within bound " << bound << "\n";
    o.report = run.report;
    o.has_report = true;
    o.data = {{"bound", bound}, {"hyperelliptic_vectors", run.enumeration.vectors.size()}, {"qualifying_pairs", run.qualifying_pairs}};
    return o;
}

// ---- hyperelliptic ----

Output hyper_enum(const std::string& bundle, long long bound) {
    if (bound < 1) throw UsageError("--bound must be positive");
    Output o;
    MuFourK3Lattice m = load_bundle(bundle);
    MinusPart mp = minus_part(m);
    auto en = enumerate_hyperelliptic(m, mp, Rat(bound));
    if (en.vectors.empty()) std::cerr << "warning: no hyperelliptic vectors within bound " << bound << "\n";
    nlohmann::json vs = nlohmann::json::array();
    std::ostringstream t;
    for (const auto& v : en.vectors) {
        vs.push_back(json_vec(v));
        t << vec_to_string(v) << "\n";
    }
    o.data = {{"bound", bound}, {"visited", en.visited}, {"isotropic", en.isotropic}, {"not_hyperbolic", en.not_hyperbolic}, {"vectors", vs}};
    t << en.vectors.size() << " vectors (bound " << bound << ")\n";
    o.text = t.str();
    return o;
}

Output hyper_decompose(const std::string& bundle, const std::string& eps_text, long long index, long long bound) {
    Output o;
    MuFourK3Lattice m = load_bundle(bundle);
    MinusPart mp = minus_part(m);
    IntVector eps;
    if (!eps_text.empty()) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(eps_text);
        } catch (const nlohmann::json::parse_error& e) {
            throw FormatError(std::string("--eps: ") + e.what());
        }
        eps = parse_int_vector(j);
    } else {
        if (bound < 1) throw UsageError("--bound must be positive when --eps is absent");
        auto en = enumerate_hyperelliptic(m, mp, Rat(bound));
        if (index < 0 || static_cast<std::size_t>(index) >= en.vectors.size())
            throw UsageError("--index out of range (" + std::to_string(en.vectors.size()) + " vectors)");
        eps = en.vectors[index];
    }
    Decomposition d;
    try {
        d = decompose_hyperelliptic(m, mp, eps);
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
    ComplementGenus g = hyperelliptic_complement_genus(m, mp, d.hv);
    o.report = d.checks;
    o.report.append(g.checks);
    o.has_report = true;
    o.data = {{"eps", json_vec(d.hv.eps)}, {"alpha", json_vec(d.hv.alpha)}, {"beta", json_vec(d.hv.beta)},
              {"complement_signature", sig_json(g.signature)}};
    o.text = "eps " + vec_to_string(d.hv.eps) + "\nalpha " + vec_to_string(d.hv.alpha) + "\nbeta " + vec_to_string(d.hv.beta) +
             "\ncomplement signature " + g.signature.str() + "\n";
    return o;
}

Output hyper_model(const std::string& bundle, long long bound, const std::string& which, const std::string& out) {
    if (bound < 1) throw UsageError("--bound must be positive");
    if (which != "pair" && which != "single") throw UsageError("--which must be pair or single");
    Output o;
    MuFourK3Lattice m = load_bundle(bundle);
    MinusPart mp = minus_part(m);
    auto en = enumerate_hyperelliptic(m, mp, Rat(bound));
    auto md = hyperelliptic_models(m, mp, en.vectors);
    if (!md) throw FormatError("no arrangement model within bound " + std::to_string(bound));
    const ArrangementModel& am = which == "pair" ? md->pair : md->single;
    nlohmann::json j = model_to_json(am);
    if (!out.empty()) write_text_file(out, j.dump(1) + "\n");
    o.data = {{"eps1", json_vec(md->eps1)}, {"eps2", json_vec(md->eps2)}, {"model", j}};
    o.text = out.empty() ? j.dump(1) + "\n" : "model written to " + out + "\n";
    return o;
}

// ---- k3-char ----

nlohmann::json char_json(const Character4& c) { return c.c; }

std::string char_text(const Character4& c) {
    return std::to_string(c.c[0]) + "*1 + " + std::to_string(c.c[1]) + "*chi + " + std::to_string(c.c[2]) + "*chi^2 + " +
           std::to_string(c.c[3]) + "*chi^3";
}

Output k3_char(long long a1, long long a2) {
    SingularityProfile p;
    try {
        p = SingularityProfile(a1, a2);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (!p.admissible()) std::cerr << "warning: d = " << p.d() << " exceeds 7; the formulas are outside their range\n";
    Output o;
    Character4 sing = character_H2_singular(p), res = character_H2_resolved(p);
    o.data = {{"a1", a1}, {"a2", a2}, {"d", p.d()}, {"admissible", p.admissible()},
              {"euler_curve", euler_curve(p)}, {"euler_cover", euler_cover(p)},
              {"H2_singular", char_json(sing)}, {"H2_resolved", char_json(res)},
              {"exceptional", char_json(exceptional_character(p))}};
    o.text = "d " + std::to_string(p.d()) + "\ne(C) " + std::to_string(euler_curve(p)) + "\ne(S) " + std::to_string(euler_cover(p)) +
             "\nH2 singular " + char_text(sing) + "\nH2 resolved " + char_text(res) + " (dim " + std::to_string(res.at_identity()) + ")\n";
    o.report = lefschetz_check(p);
    o.has_report = true;
    return o;
}

// ---- quartic ----

Output quartic_classify(const std::string& file) {
    if (file.empty()) throw UsageError("--coeffs is required");
    Output o;
    TernaryQuartic f = quartic_from_json(read_json_file(file));
    if (f.is_zero()) throw FormatError("the zero form is not a curve");
    StabilityVerdict v = classify_stability(f);
    o.data = verdict_to_json(v);
    std::ostringstream t;
    t << stability_name(v.cls) << "\n";
    for (const auto& s : v.singularities) {
        t << "  " << point_text(s.point) << " " << singularity_name(s.type);
        if (s.type == SingularityType::A3OrWorse) t << " (A" << s.a_index << ")";
        t << "\n";
    }
    for (const auto& l : v.multiple_lines) t << "  multiple line " << point_text(l) << "\n";
    if (v.witness) {
        const auto& w = *v.witness;
        t << "  1-PS weights (" << w.weights[0] << "," << w.weights[1] << "," << w.weights[2] << ") mu " << w.mu << "\n";
        long long again = hilbert_mumford(f, w.frame, w.weights);
        o.report.add(make_claim("witness", "the one-parameter subgroup has positive minimal weight on the support", again > 0,
                                {{"mu", again}}));
        o.has_report = true;
    }
    if (!v.note.empty()) t << "  note: " << v.note << "\n";
    o.text = t.str();
    return o;
}

Output quartic_normal_form(const std::string& file) {
    if (file.empty()) throw UsageError("--coeffs is required");
    Output o;
    TernaryQuartic f = quartic_from_json(read_json_file(file));
    if (f.is_zero()) throw FormatError("the zero form is not a curve");
    auto nf = closed_orbit_normal_form(f);
    if (!nf) {
        o.data = {{"normal_form", nullptr}};
        o.text = "no closed-orbit normal form\n";
        return o;
    }
    o.data = {{"normal_form", {{"s", gaussian_json(nf->s)}, {"t", gaussian_json(nf->t)}}}};
    if (nf->frame) o.data["frame"] = gmatrix_json(*nf->frame);
    o.text = "(" + gaussian_text(nf->s) + " : " + gaussian_text(nf->t) + ")\n";
    return o;
}

// ---- arrangement ----

Extension parse_mode(const std::string& m) {
    if (m == "bb") return Extension::BailyBorel;
    if (m == "arrangement") return Extension::Arrangement;
    if (m == "literal") return Extension::ArrangementLiteral;
    throw UsageError("--mode must be bb, arrangement or literal");
}

std::string poset_text(const StratumPoset& p) {
    std::ostringstream t;
    for (std::size_t i = 0; i < p.nodes.size(); ++i)
        t << i << " " << p.nodes[i].label << " dim " << p.nodes[i].space.dim() << " codim " << p.nodes[i].codim << "\n";
    for (auto [a, b] : p.edges) t << a << " < " << b << "\n";
    return t.str();
}

Output arrangement_cmd(const std::string& what, const std::string& file, const std::string& mode, bool affine, long long iso) {
    if (file.empty()) throw UsageError("--model is required");
    ArrangementModel m = model_from_json(read_json_file(file));
    Output o;
    if (what == "strata") {
        StratumPoset p = strata_of_extension(m, parse_mode(mode), !affine);
        o.data = poset_to_json(p);
        o.data["boundary_strata"] = boundary_strata(p);
        o.text = poset_text(p) + "boundary strata " + std::to_string(boundary_strata(p)) + "\n";
    } else if (what == "poset") {
        StratumPoset p = intersection_poset(m);
        o.data = poset_to_json(p);
        o.text = poset_text(p);
    } else if (what == "contraction") {
        ContractionResult c = contraction_hypothesis(m);
        nlohmann::json w = nlohmann::json::object();
        if (c.offending) w["offending"] = {c.offending->first, c.offending->second};
        o.report.add(make_claim("contraction", "no two distinct members meet inside the positive cone", c.holds, w));
        o.has_report = true;
        o.data = {{"holds", c.holds}};
        o.text = std::string("contraction hypothesis ") + (c.holds ? "holds" : "fails") + "\n";
    } else {
        if (iso < 0) throw UsageError("--iso must be nonnegative");
        IsotropicLocalModel lm;
        try {
            lm = isotropic_local_model(m, static_cast<std::size_t>(iso));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        o.data = {{"members", lm.members}, {"classes", lm.classes}, {"trace_dim", lm.trace.dim()},
                  {"intersections_checked", lm.intersections_checked},
                  {"intersections_of_members", lm.intersections_of_members}, {"lifted", lm.lifted}, {"finite", lm.finite}};
        o.text = "members " + std::to_string(lm.members.size()) + "\nparallel classes " + std::to_string(lm.classes.size()) +
                 "\ntrace dim " + std::to_string(lm.trace.dim()) + "\nintersections " + std::to_string(lm.intersections_checked) +
                 "\nlifted " + std::to_string(lm.lifted) + "\n";
    }
    return o;
}

void emit(const Output& o, bool json) {
    if (json) {
        nlohmann::json j = o.data;
        if (o.has_report) j["claims"] = to_json(o.report)["claims"];
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << o.text;
        if (o.has_report) std::cout << to_text(o.report);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quartlat: lattices, K3 characters, quartic stability and arrangement strata"};
    app.require_subcommand(1);
    app.fallthrough();
    bool json = false;
    long long bound = 4;
    std::string out;
    app.add_flag("--json", json, "machine-readable output");
    app.add_option("--bound", bound, "enumeration bound");
    app.add_option("--out", out, "output path");

    std::string file, name, file1, file2, bundle, eps, coeffs, model, mode = "arrangement", which = "pair";
    long long a1 = 0, a2 = 0, index = 0, iso = 0;
    std::uint64_t cap = 4096;
    bool affine = false;
    std::optional<Output> result;
    auto run = [&](auto f) { return [&, f] { result = f(); }; };

    auto* lat = app.add_subcommand("lattice", "integer lattice data");
    lat->require_subcommand(1);
    for (const char* sub : {"info", "disc"}) {
        auto* s = lat->add_subcommand(sub, std::string(sub) == "info" ? "rank, signature, determinant" : "discriminant form");
        s->add_option("--file", file, "lattice JSON");
        s->add_option("--name", name, "standard name: U, An, Dn, En or <a,b,...>");
        std::string what = sub;
        s->callback(run([&, what] {
            IntegerLattice l = load_lattice(file, name);
            return what == "info" ? lattice_info(l) : lattice_disc(l);
        }));
    }

    auto* gl = app.add_subcommand("glue", "count anti-isometries of discriminant forms and glue");
    gl->add_option("--file1", file1, "first lattice JSON");
    gl->add_option("--file2", file2, "second lattice JSON");
    gl->add_option("--cap", cap, "stop counting at this many maps (0 = no cap)");
    gl->callback(run([&] { return glue(file1, file2, cap); }));

    auto* per = app.add_subcommand("period", "the mu4-period lattice");
    per->require_subcommand(1);
    per->add_subcommand("build", "construct and save the bundle")->callback(run([&] { return period_build(out); }));
    auto* pv = per->add_subcommand("verify", "run the lemma checks on a bundle");
    pv->add_option("--bundle", bundle, "bundle JSON (constructed when absent)");
    pv->callback(run([&] { return period_verify(bundle, bound); }));

    auto* hy = app.add_subcommand("hyperelliptic", "hyperelliptic vectors");
    hy->require_subcommand(1);
    auto* he = hy->add_subcommand("enum", "enumerate within the bound");
    he->add_option("--bundle", bundle, "bundle JSON");
    he->callback(run([&] { return hyper_enum(bundle, bound); }));
    auto* hd = hy->add_subcommand("decompose", "decompose one vector");
    hd->add_option("--bundle", bundle, "bundle JSON");
    hd->add_option("--eps", eps, "vector as a JSON array");
    hd->add_option("--index", index, "index into the enumeration");
    hd->callback(run([&] { return hyper_decompose(bundle, eps, index, bound); }));
    auto* hm = hy->add_subcommand("model", "write the arrangement model of two hyperelliptic hyperplanes");
    hm->add_option("--bundle", bundle, "bundle JSON");
    hm->add_option("--which", which, "pair or single");
    hm->callback(run([&] { return hyper_model(bundle, bound, which, out); }));

    auto* kc = app.add_subcommand("k3-char", "characters of the cyclic K3 cover");
    kc->add_option("--a1", a1, "number of nodes")->required();
    kc->add_option("--a2", a2, "number of cusps")->required();
    kc->callback(run([&] { return k3_char(a1, a2); }));

    auto* qu = app.add_subcommand("quartic", "plane quartic stability");
    qu->require_subcommand(1);
    auto* qc = qu->add_subcommand("classify", "stable, strictly semistable or unstable");
    qc->add_option("--coeffs", coeffs, "coefficient JSON")->required();
    qc->callback(run([&] { return quartic_classify(coeffs); }));
    auto* qn = qu->add_subcommand("normal-form", "closed-orbit normal form (s:t)");
    qn->add_option("--coeffs", coeffs, "coefficient JSON")->required();
    qn->callback(run([&] { return quartic_normal_form(coeffs); }));

    auto* ar = app.add_subcommand("arrangement", "hyperplane arrangement strata");
    ar->require_subcommand(1);
    for (const char* sub : {"strata", "poset", "contraction", "local-model"}) {
        auto* s = ar->add_subcommand(sub, sub);
        s->add_option("--model", model, "model JSON")->required();
        std::string what = sub;
        if (what == "strata") {
            s->add_option("--mode", mode, "bb, arrangement or literal");
            s->add_flag("--affine", affine, "cone version");
        }
        if (what == "local-model") s->add_option("--iso", iso, "isotropic index");
        s->callback(run([&, what] { return arrangement_cmd(what, model, mode, affine, iso); }));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 2;
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (!result) return 2;
    emit(*result, json);
    return result->report.any_refuted() ? 1 : 0;
}
