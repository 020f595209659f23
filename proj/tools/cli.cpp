#include "cli.hpp"

#include "blowup/cones.hpp"
#include "blowup/fatpoints.hpp"
#include "blowup/lattice.hpp"
#include "blowup/seshadri.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace blowup::cli {

namespace {

using json = nlohmann::json;

std::string q(const Rational& x) { return to_string(x); }

json surd_json(const Surd& s) {
    if (s.is_rational()) return q(s.rational());
    return json{{"value", s.str()}, {"coeff", q(s.coeff())}, {"radicand", s.radicand().get_str()}};
}

json class_json(const DivisorClass& c) { return c.to_strings(); }

json triple_json(const AlmostUniformClass& a) { return json{{"d", a.d}, {"m", a.m}, {"k", a.k}}; }

DivisorClass parse_class(const std::string& text, int r, const std::string& what) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception&) {
        throw InputError("malformed_json", what + " is not valid JSON");
    }
    if (!j.is_array() || j.empty()) throw InputError("malformed_class", what + " must be a JSON array [d, m_1, ..., m_r]");
    std::vector<Rational> v;
    for (const auto& x : j) {
        if (x.is_string())
            v.push_back(parse_rational(x.get<std::string>()));
        else if (x.is_number_integer())
            v.emplace_back(x.get<long>());
        else
            throw InputError("malformed_class", what + " entries must be integers or rational strings");
    }
    DivisorClass c(std::move(v));
    if (r >= 0 && c.r() != r)
        throw InputError("dimension_mismatch", what + " has " + std::to_string(c.r()) + " multiplicities, expected " + std::to_string(r));
    return c;
}

std::vector<DivisorClass> parse_class_list(const std::string& text, int r, const std::string& what) {
    if (text.empty()) return {};
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception&) {
        throw InputError("malformed_json", what + " is not valid JSON");
    }
    if (!j.is_array()) throw InputError("malformed_class", what + " must be a JSON array of classes");
    std::vector<DivisorClass> out;
    for (const auto& x : j) out.push_back(parse_class(x.dump(), r, what));
    return out;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

struct Globals {
    std::uint64_t seed = 1;
    std::string field = "2147483647";
    int trials = 3;
    bool timing = false;
    std::string digest_material;

    std::uint64_t prime() const {
        if (field == "Q") throw InputError("bad_field", "randomized checks need a prime field");
        try {
            size_t pos = 0;
            unsigned long long p = std::stoull(field, &pos);
            if (pos != field.size()) throw std::invalid_argument("trailing");
            return p;
        } catch (const std::exception&) {
            throw InputError("bad_field", "--field must be Q or a prime, got '" + field + "'");
        }
    }
};

FieldSpec parse_field(const json& f) {
    if (f.is_string()) {
        if (f.get<std::string>() == "Q") return {};
        throw InputError("bad_field", "field must be \"Q\" or {\"Fp\": p}");
    }
    if (f.is_object() && f.contains("Fp")) {
        const auto& p = f["Fp"];
        std::uint64_t v = 0;
        if (p.is_number_unsigned() || p.is_number_integer())
            v = p.get<std::uint64_t>();
        else if (p.is_string())
            v = std::stoull(p.get<std::string>());
        else
            throw InputError("bad_field", "Fp must be a number");
        return FieldSpec{v};
    }
    throw InputError("bad_field", "field must be \"Q\" or {\"Fp\": p}");
}

// {"n":2,"field":"Q"|{"Fp":p},"points":[["1","0","0"],...],"multiplicities":[1,...]}
// or {"n":2,"field":{"Fp":p},"random":{"count":5},"multiplicities":[1]} (points drawn with --seed)
FatPointScheme load_config(const std::string& path, Globals& g) {
    std::ifstream in(path);
    if (!in) throw InputError("missing_file", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    g.digest_material += "\n" + ss.str();
    json j;
    try {
        j = json::parse(ss.str());
    } catch (const json::exception&) {
        throw InputError("malformed_json", path + " is not valid JSON");
    }
    try {
        int n = j.value("n", 2);
        FieldSpec field = j.contains("field") ? parse_field(j["field"]) : FieldSpec{};
        std::vector<long> mult;
        if (j.contains("multiplicities"))
            for (const auto& m : j["multiplicities"]) mult.push_back(m.is_string() ? std::stol(m.get<std::string>()) : m.get<long>());
        if (j.contains("random")) {
            if (field.is_rational()) throw InputError("bad_field", "random points need {\"Fp\": p}");
            size_t count = j["random"].at("count").get<size_t>();
            if (mult.empty()) mult.assign(count, 1);
            return FatPointScheme::random(n, field.p, count, mult, g.seed);
        }
        std::vector<std::vector<Rational>> pts;
        for (const auto& p : j.at("points")) {
            std::vector<Rational> v;
            for (const auto& c : p) v.push_back(c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<long>()));
            pts.push_back(std::move(v));
        }
        if (mult.empty()) mult.assign(pts.size(), 1);
        return FatPointScheme::make(n, field, std::move(pts), std::move(mult));
    } catch (const json::exception& e) {
        throw InputError("malformed_config", std::string("bad point configuration: ") + e.what());
    }
}

ConfigurationTag parse_tag(const std::string& name, int r) { return ConfigurationTag::parse(name, r); }

json seshadri_json(const SeshadriResult& s) {
    json j;
    j["exact"] = s.exact;
    if (s.exact) j["epsilon"] = surd_json(s.value);
    j["lower"] = surd_json(s.lower);
    j["upper"] = surd_json(s.upper);
    j["certificate"] = to_string(s.certificate);
    if (s.F) j["F"] = class_json(*s.F);
    if (s.C) j["C"] = class_json(*s.C);
    if (s.unloading)
        j["unloading"] = json{{"d", s.unloading->d}, {"r", s.unloading->r}, {"n", s.unloading->n},
                              {"hypothesis", s.unloading->hypothesis}};
    if (!s.note.empty()) j["note"] = s.note;
    return j;
}

json nef_proof_json(const NefProof& p) {
    json j;
    j["status"] = to_string(p.status);
    j["s"] = p.box.s;
    j["s_certified"] = p.box.s_certified;
    j["s_justification"] = p.box.s_justification;
    j["box_members"] = p.box.members.size();
    json cands = json::array();
    for (const auto& a : p.filtered) cands.push_back(triple_json(a));
    j["candidates"] = cands;
    json adj = json::array();
    for (const auto& a : p.after_adjunction) adj.push_back(triple_json(a));
    j["after_adjunction"] = adj;
    json log = json::array();
    for (const auto& st : p.log) {
        json e{{"class", class_json(st.candidate)}, {"step", st.step}, {"detail", st.detail}};
        if (st.triple) e["triple"] = triple_json(*st.triple);
        log.push_back(e);
    }
    j["log"] = log;
    json un = json::array();
    for (const auto& c : p.unresolved) un.push_back(class_json(c));
    j["unresolved"] = un;
    if (!p.note.empty()) j["note"] = p.note;
    return j;
}

json nagata_json(const NagataReport& rep) {
    json j{{"r", rep.r},
           {"degree_bound", rep.degree_bound},
           {"square_shortcut", rep.square_shortcut},
           {"enumerated", rep.enumerated},
           {"killed_adjunction", rep.killed_adjunction},
           {"killed_reduction", rep.killed_reduction},
           {"killed_rank", rep.killed_rank}};
    json s = json::array();
    for (const auto& a : rep.survivors) s.push_back(triple_json(a));
    j["survivors"] = s;
    if (rep.square_shortcut) j["note"] = "r is a perfect square: Nagata's theorem rules out abnormal curves";
    return j;
}

struct ProveNefArgs {
    int r = -1;
    std::string cls, hints, spanning = "default", box = "full", s_cert;
    long s = 0;
};

void add_prove_nef(CLI::App* sc, ProveNefArgs& a) {
    sc->add_option("--r", a.r, "number of general points")->required();
    sc->add_option("--class,-F", a.cls, "class [d, m_1, ..., m_r]")->required();
    sc->add_option("--hints", a.hints, "JSON list of known prime classes");
    sc->add_option("--spanning", a.spanning, "default | anticanonical:<a>");
    sc->add_option("--box", a.box, "full | relaxed");
    sc->add_option("--s", a.s, "multiple s with sF effective (0: smallest certified by Riemann-Roch)");
    sc->add_option("--s-certificate", a.s_cert, "justification for a caller-supplied s");
}

json do_prove_nef(const ProveNefArgs& a, const Globals& g) {
    auto F = parse_class(a.cls, a.r, "--class");
    ProveNefOptions opt;
    opt.seed = g.seed;
    opt.trials = g.trials;
    opt.prime = g.prime();
    if (a.spanning.rfind("anticanonical:", 0) == 0) {
        long deg = std::stol(a.spanning.substr(14));
        opt.spanning_nef = anticanonical_spanning_nef(a.r, deg);
    } else if (a.spanning != "default") {
        throw InputError("bad_spanning", "--spanning must be default or anticanonical:<a>");
    }
    if (a.box == "relaxed")
        opt.box.mode = BoxMode::relaxed;
    else if (a.box != "full")
        throw InputError("bad_box", "--box must be full or relaxed");
    opt.box.s = a.s;
    opt.box.s_certificate = a.s_cert;
    return nef_proof_json(prove_nef(F, a.r, parse_class_list(a.hints, a.r, "--hints"), opt));
}

json waldschmidt_json(const WaldschmidtEstimate& w) {
    json e = json::array();
    for (const auto& x : w.entries) e.push_back(json{{"m", x.m}, {"d_m", x.d_m}, {"ratio", q(x.ratio)}});
    return json{{"entries", e}, {"upper", q(w.upper)}, {"lower", q(w.lower)}, {"lower_source", w.lower_source},
                {"pinned", w.pinned()}};
}

GammaCertificate gamma_cert(const std::string& nef_class, const std::string& eps, const FatPointScheme& z) {
    GammaCertificate c;
    if (!nef_class.empty()) c.nef_class = parse_class(nef_class, static_cast<int>(z.size()), "--nef-class");
    if (!eps.empty()) c.epsilon = parse_rational(eps);
    return c;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Globals g;
    CLI::App app{"Exact computations on blow-ups of the plane and fat point ideals", "blowup"};
    app.require_subcommand(1);
    app.add_option("--seed", g.seed, "seed for random points");
    app.add_option("--field", g.field, "prime for randomized checks (or Q)");
    app.add_option("--trials", g.trials, "independent random trials");
    app.add_flag("--timing", g.timing, "include wall-clock time in the report");

    json result;
    std::function<void()> action;
    auto set = [&](CLI::App* sc, std::function<json()> f) {
        sc->callback([&action, f, &result] { action = [f, &result] { result = f(); }; });
    };

    // lattice
    auto* lat = app.add_subcommand("lattice", "intersection form, canonical class, genus, chi, averaging");
    lat->require_subcommand(1);
    int lr = -1;
    std::string la, lb, lc;
    auto* pair = lat->add_subcommand("pair", "intersection number a.b");
    pair->add_option("--r", lr)->required();
    pair->add_option("--a", la)->required();
    pair->add_option("--b", lb)->required();
    set(pair, [&] { return json{{"value", q(intersect(parse_class(la, lr, "--a"), parse_class(lb, lr, "--b"), LatticeContext(lr)))}}; });
    auto* canon = lat->add_subcommand("canonical", "canonical class");
    canon->add_option("--r", lr)->required();
    set(canon, [&] {
        LatticeContext ctx(lr);
        auto K = canonical_class(ctx);
        return json{{"class", class_json(K)}, {"pretty", K.pretty()}, {"square", q(intersect(K, K, ctx))}};
    });
    for (const char* name : {"genus", "chi", "average", "abnormal"}) {
        auto* sc = lat->add_subcommand(name, std::string(name) + " of a class");
        sc->add_option("--r", lr)->required();
        sc->add_option("--c", lc)->required();
        std::string nm = name;
        set(sc, [&, nm] {
            LatticeContext ctx(lr);
            auto C = parse_class(lc, lr, "--c");
            if (nm == "genus") return json{{"genus", q(adjunction_genus(C, ctx))}};
            if (nm == "chi") return json{{"chi", q(riemann_roch_chi(C, ctx))}};
            if (nm == "average") return json{{"class", class_json(average_class(C, ctx))}};
            return json{{"abnormal", is_abnormal(C, ctx)}};
        });
    }

    // cone
    auto* cone = app.add_subcommand("cone", "effective and nef cones of supported configurations");
    cone->require_subcommand(1);
    std::string tag_name = "generic", cc;
    int tr = -1;
    auto* gens = cone->add_subcommand("gens", "generators of EFF and NEF");
    gens->add_option("--tag", tag_name)->required();
    gens->add_option("--r", tr)->required();
    set(gens, [&] {
        auto cd = cone_generators(parse_tag(tag_name, tr));
        json e = json::array(), n = json::array(), l = json::array();
        for (const auto& c : cd.eff_generators) e.push_back(class_json(c));
        for (const auto& c : cd.nef_generators) n.push_back(class_json(c));
        for (const auto& c : cd.nef_ladder) l.push_back(class_json(c));
        json j{{"tag", cd.tag.name()}, {"eff_generators", e}, {"nef_generators", n}, {"finitely_generated", cd.finitely_generated}};
        if (!cd.nef_ladder.empty()) j["nef_ladder"] = l;
        return j;
    });
    auto* nef = cone->add_subcommand("nef", "is the class nef?");
    nef->add_option("--tag", tag_name)->required();
    nef->add_option("--r", tr)->required();
    nef->add_option("--c", cc)->required();
    set(nef, [&] { return json{{"nef", is_nef(parse_class(cc, tr, "--c"), parse_tag(tag_name, tr))}}; });
    auto* eff = cone->add_subcommand("eff", "decompose into effective generators");
    eff->add_option("--tag", tag_name)->required();
    eff->add_option("--r", tr)->required();
    eff->add_option("--c", cc)->required();
    set(eff, [&] {
        auto dec = decompose_effective(parse_class(cc, tr, "--c"), parse_tag(tag_name, tr));
        json j{{"effective", dec.has_value()}};
        if (dec) {
            json d = json::array();
            for (const auto& [gcls, k] : *dec) d.push_back(json{{"generator", class_json(gcls)}, {"coefficient", k}});
            j["decomposition"] = d;
        }
        return j;
    });

    // seshadri
    auto* ses = app.add_subcommand("seshadri", "multipoint Seshadri constants");
    ses->require_subcommand(1);
    auto* exact = ses->add_subcommand("exact", "exact value with certificate");
    exact->add_option("--tag", tag_name)->required();
    exact->add_option("--r", tr)->required();
    set(exact, [&] {
        auto tag = parse_tag(tag_name, tr);
        auto s = epsilon_exact(tag);
        return seshadri_json(s);
    });
    auto* lam = ses->add_subcommand("lambda", "lambda_L and the epsilon inequality");
    lam->add_option("--tag", tag_name)->required();
    lam->add_option("--r", tr)->required();
    set(lam, [&] {
        auto tag = parse_tag(tag_name, tr);
        auto l = lambda_L(tag);
        json j{{"lambda", q(l)}};
        auto e = epsilon_exact(tag);
        if (e.exact && e.value.is_rational()) {
            j["epsilon"] = q(e.value.rational());
            j["inequality_holds"] = check_lambda_epsilon_inequality(l, e.value.rational());
        }
        return j;
    });
    long un = 0, ub = 60;
    auto* bound = ses->add_subcommand("bound", "unloading lower bound for n general points");
    bound->add_option("--n", un)->required();
    bound->add_option("--search-bound", ub);
    set(bound, [&] { return seshadri_json(epsilon_lower_unloading(un, ub)); });
    ProveNefArgs pn;
    auto* spn = ses->add_subcommand("prove-nef", "nefness proof by ruling out negative curves");
    add_prove_nef(spn, pn);
    set(spn, [&] { return do_prove_nef(pn, g); });
    long nr = 0, nb = 20;
    auto* sng = ses->add_subcommand("nagata", "bounded search for abnormal curves");
    sng->add_option("--r", nr)->required();
    sng->add_option("--bound", nb);
    set(sng, [&] { return nagata_json(nagata_search(nr, nb, g.seed, g.trials, g.prime())); });

    auto* tnef = app.add_subcommand("prove-nef", "same as seshadri prove-nef");
    add_prove_nef(tnef, pn);
    set(tnef, [&] { return do_prove_nef(pn, g); });
    auto* tng = app.add_subcommand("nagata", "same as seshadri nagata");
    tng->add_option("--r", nr)->required();
    tng->add_option("--bound", nb);
    set(tng, [&] { return nagata_json(nagata_search(nr, nb, g.seed, g.trials, g.prime())); });

    // fat points
    std::string config, nef_class, eps;
    long mm = 1, rr = 1, mmax = 6, qq = 0;
    auto* gam = app.add_subcommand("gamma", "Waldschmidt constant estimate");
    gam->add_option("--config", config)->required();
    gam->add_option("--m-max", mmax);
    gam->add_option("--nef-class", nef_class, "certified nef class giving gamma >= sum h_i / h_0");
    gam->add_option("--epsilon", eps, "certified epsilon giving gamma >= r epsilon");
    set(gam, [&] {
        auto z = load_config(config, g);
        return waldschmidt_json(waldschmidt_estimate(z, mmax, gamma_cert(nef_class, eps, z)));
    });
    auto* alp = app.add_subcommand("alpha", "least degree of I^(m)");
    alp->add_option("--config", config)->required();
    alp->add_option("-m", mm)->required();
    set(alp, [&] { return json{{"alpha", alpha_symbolic(load_config(config, g), mm)}, {"m", mm}}; });
    auto* reg = app.add_subcommand("reg", "regularity and Hilbert function");
    reg->add_option("--config", config)->required();
    set(reg, [&] {
        auto z = load_config(config, g);
        FatPointIdeal I(z);
        long rg = I.regularity();
        json hf = json::array();
        for (long t = 0; t <= rg + 1; ++t) hf.push_back(I.hilbert_function(t));
        return json{{"regularity", rg}, {"hilbert_function", hf}, {"degree", z.degree()}};
    });
    auto* con = app.add_subcommand("containment", "decide I^(m) in I^r");
    con->add_option("--config", config)->required();
    con->add_option("-m", mm)->required();
    con->add_option("-r", rr)->required();
    set(con, [&] {
        auto z = load_config(config, g);
        FatPointIdeal I(z);
        auto c = I.contains_symbolic_in_power(mm, rr);
        json j{{"contained", c.contained}, {"rule", c.rule}, {"checked_from", c.checked_from}, {"checked_to", c.checked_to}};
        if (c.failing_degree) j["failing_degree"] = *c.failing_degree;
        if (z.reduced() && mm >= rr) {
            auto bh = bh_criteria(I, mm, rr);
            j["bh"] = json{{"verdict", to_string(bh.verdict)}, {"alpha_I", bh.alpha_I}, {"reg_I", bh.reg_I}, {"alpha_symbolic", bh.alpha_sym}};
            if ((bh.verdict == BHVerdict::fails_by_alpha && c.contained) || (bh.verdict == BHVerdict::holds_by_reg && !c.contained))
                throw InconsistencyError("bh_disagreement", "the alpha/reg criteria contradict the direct check");
        }
        return j;
    });
    auto* res = app.add_subcommand("resurgence", "bounds alpha/gamma <= rho <= reg/gamma");
    res->add_option("--config", config)->required();
    res->add_option("--m-max", mmax);
    res->add_option("--nef-class", nef_class);
    res->add_option("--epsilon", eps);
    set(res, [&] {
        auto z = load_config(config, g);
        auto w = waldschmidt_estimate(z, mmax, gamma_cert(nef_class, eps, z));
        auto b = resurgence_bounds(z, w);
        return json{{"lower", q(b.lower)}, {"upper", q(b.upper)}, {"exact", b.exact()}, {"gamma", waldschmidt_json(w)}};
    });
    auto* fro = app.add_subcommand("frobenius", "check I^(qn-n+1) in I^q in characteristic p");
    fro->add_option("--config", config)->required();
    fro->add_option("--q", qq)->required();
    set(fro, [&] {
        auto z = load_config(config, g);
        return json{{"contained", frobenius_containment_check(z, qq)}, {"m", qq * z.n - (z.n - 1)}, {"r", qq}};
    });

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        out << json{{"error", {{"code", "bad_arguments"}, {"message", e.what()}}}}.dump(2) << "\n";
        return 2;
    }
    std::string echo;
    for (const auto& a : args) echo += (echo.empty() ? "" : " ") + a;
    g.digest_material = echo;
    auto t0 = std::chrono::steady_clock::now();
    try {
        if (!action) throw InputError("bad_arguments", "no operation selected");
        action();
    } catch (const InputError& e) {
        err << "input error [" << e.code << "]: " << e.what() << "\n";
        out << json{{"command", args}, {"error", {{"code", e.code}, {"message", e.what()}}}}.dump(2) << "\n";
        return 2;
    } catch (const InconsistencyError& e) {
        err << "internal inconsistency [" << e.code << "]: " << e.what() << "\n";
        out << json{{"command", args}, {"error", {{"code", e.code}, {"message", e.what()}}}}.dump(2) << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        out << json{{"command", args}, {"error", {{"code", "internal"}, {"message", e.what()}}}}.dump(2) << "\n";
        return 3;
    }
    json report{{"command", args}, {"inputs_digest", "fnv1a64:" + hex64(fnv1a(g.digest_material))}, {"seed", g.seed},
                {"results", result}};
    if (g.timing)
        report["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out << report.dump(2) << "\n";
    return 0;
}

}  // namespace blowup::cli
