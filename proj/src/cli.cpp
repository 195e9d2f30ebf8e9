#include "g2glue/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <atomic>
#include <thread>
#include <ostream>
#include <sstream>

#include "g2glue/family.hpp"
#include "g2glue/glue.hpp"

namespace g2glue {

namespace {

using nlohmann::json;

std::array<Elem, 3> parse_triple(const RingPtr& ring, const std::string& text,
                                 const std::string& what) {
    auto parts = split_top(text, ',');
    if (parts.size() != 3)
        throw ParseError(what + " must be three comma-separated values: " + text);
    return {ring->parse_elem(parts[0]), ring->parse_elem(parts[1]),
            ring->parse_elem(parts[2])};
}

ProjPoint parse_point(const RingPtr& ring, const std::string& text) {
    if (text == "inf" || text == "oo") return ProjPoint::infinity(ring);
    if (!text.empty() && text.front() == '[') {
        // [u:v] form.
        auto inner = text.substr(1, text.size() - 2);
        auto parts = split_top(inner, ':');
        if (parts.size() == 2)
            return ProjPoint(ring->parse_elem(parts[0]), ring->parse_elem(parts[1]));
    }
    return ProjPoint::finite(ring->parse_elem(text));
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::vector<std::string> sextic_coeff_strings(const Poly& sextic) {
    std::vector<std::string> cs;
    for (int i = 0; i <= sextic.degree(); ++i) cs.push_back(sextic.coeff(i).str());
    return cs;
}

json payload_json(const GluedPair& g) {
    json j;
    j["gamma"] = json::array(
        {json::array({g.gamma().at(0, 0).str(), g.gamma().at(0, 1).str()}),
         json::array({g.gamma().at(1, 0).str(), g.gamma().at(1, 1).str()})});
    j["gamma_map"] = g.gamma().rational_form("x");
    j["a"] = g.a().str();
    j["b"] = g.b().str();
    j["lambda"] = g.lambda().str();
    j["sextic"] = sextic_coeff_strings(g.sextic());
    j["f"] = {{"x", g.payload().x_t.str()},
              {"y", "y*(" + g.payload().h_t.str() + ")"}};
    j["fprime"] = {{"x", g.payload().xprime_t.str()}, {"y", "y"}};
    j["involutions"] = {{"tau", GluedPair::tau().str()},
                        {"tau_prime", GluedPair::tau_prime().str()},
                        {"sigma_C", GluedPair::sigma_c().str()}};
    return j;
}

void print_payload_text(const GluedPair& g, std::ostream& out) {
    out << "gamma  = " << g.gamma().str() << "   x' = "
        << g.gamma().rational_form("x") << "\n";
    out << "a      = " << g.a().str() << "\n";
    out << "b      = " << g.b().str() << "\n";
    out << "lambda = " << g.lambda().str() << "\n";
    out << "C      : y^2 = " << g.sextic().str("t") << "\n";
    out << "f'     : (t,y) -> (x' = " << g.payload().xprime_t.str()
        << ", y' = y)\n";
    out << "f      : (t,y) -> (x = " << g.payload().x_t.str() << ", y_E = y*("
        << g.payload().h_t.str() << "))\n";
    out << "tau    : " << GluedPair::tau().str() << "   tau' : "
        << GluedPair::tau_prime().str() << "   sigma_C : "
        << GluedPair::sigma_c().str() << "\n";
}

int checks_exit_code(const std::vector<std::pair<std::string, bool>>& rows) {
    for (const auto& [name, ok] : rows)
        if (!ok) return 4;
    return 0;
}

int run_construct(const RunConfig& cfg, std::ostream& out) {
    RingPtr ring = Ring::parse(cfg.field);
    EllCurve e(parse_triple(ring, cfg.e_list, "--e"));
    EllCurve ep(parse_triple(ring, cfg.eprime_list, "--eprime"));
    TwoTorsionIso psi = TwoTorsionIso::parse(cfg.sigma);
    bool smooth = theta_smooth(e, ep, psi);
    bool do_verify = cfg.verify || cfg.command == "verify";

    if (cfg.format == "json") {
        json j;
        j["field"] = ring->to_string();
        j["e"] = {e.root(0).str(), e.root(1).str(), e.root(2).str()};
        j["eprime"] = {ep.root(0).str(), ep.root(1).str(), ep.root(2).str()};
        j["sigma"] = psi.str();
        j["theta_smooth"] = smooth;
        j["j_invariant"] = j_invariant(e).str();
        j["j_invariant_prime"] = j_invariant(ep).str();
        int code = 0;
        if (smooth) {
            GluedPair g = construct(e, ep, psi);
            j.update(payload_json(g));
            if (do_verify) {
                json checks;
                auto rows = verify_all(g, cfg.budget);
                for (const auto& [name, ok] : rows)
                    checks[name] = ok ? "pass" : "fail";
                j["checks"] = checks;
                code = checks_exit_code(rows);
            }
        }
        out << j.dump(2) << "\n";
        return smooth ? code : 3;
    }

    out << "E      : " << e.str() << "\n";
    out << "E'     : " << ep.str() << "\n";
    out << "sigma  = " << psi.str() << "\n";
    out << "j(E)   = " << j_invariant(e).str() << ", j(E') = "
        << j_invariant(ep).str() << "\n";
    out << "theta-smooth: " << (smooth ? "yes" : "no") << "\n";
    if (!smooth) {
        out << "no genus-2 pair exists for this input\n";
        return 3;
    }
    GluedPair g = construct(e, ep, psi);
    print_payload_text(g, out);
    int code = 0;
    if (do_verify) {
        auto rows = verify_all(g, cfg.budget);
        out << "checks:\n";
        for (const auto& [name, ok] : rows)
            out << "  " << (ok ? "PASS" : "FAIL") << "  " << name << "\n";
        code = checks_exit_code(rows);
    }
    return code;
}

int run_census(const RunConfig& cfg, std::ostream& out) {
    RingPtr ring = Ring::parse(cfg.field);
    if (ring->kind() != RingKind::PrimeField)
        throw PreconditionError("census runs over prime fields (fp:<p>)");
    std::uint64_t p = static_cast<std::uint64_t>(ring->characteristic_p());
    out << "e1,e2,e3,ep1,ep2,ep3,sigma,j,jp,theta_smooth,sextic\n";
    std::vector<std::array<Elem, 3>> triples;
    for (std::uint64_t i = 0; i < p; ++i)
        for (std::uint64_t j = 0; j < p; ++j)
            for (std::uint64_t k = 0; k < p; ++k) {
                if (i == j || j == k || i == k) continue;
                triples.push_back({ring->element_at(i), ring->element_at(j),
                                   ring->element_at(k)});
            }
    // Rows are produced in parallel, one block per left-hand curve, and
    // emitted in input order regardless of scheduling.  All computations on
    // ring elements are pure, so the only shared state is the work counter.
    std::vector<std::string> blocks(triples.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        auto sigmas = TwoTorsionIso::all();
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= triples.size()) return;
            EllCurve e(triples[i]);
            std::string jstr = j_invariant(e).str();
            std::string prefix = triples[i][0].str() + ',' +
                                 triples[i][1].str() + ',' +
                                 triples[i][2].str() + ',';
            std::string& block = blocks[i];
            for (const auto& tp : triples) {
                EllCurve ep(tp);
                std::string jpstr = j_invariant(ep).str();
                for (const auto& sigma : sigmas) {
                    bool smooth = theta_smooth(e, ep, sigma);
                    std::string sextic_field;
                    if (smooth && cfg.with_construct) {
                        GluedPair g = construct(e, ep, sigma);
                        sextic_field = join(sextic_coeff_strings(g.sextic()), ";");
                    }
                    block += prefix;
                    block += tp[0].str() + ',' + tp[1].str() + ',' +
                             tp[2].str() + ',';
                    block += std::to_string(sigma.sigma[0] + 1);
                    block += std::to_string(sigma.sigma[1] + 1);
                    block += std::to_string(sigma.sigma[2] + 1);
                    block += ',' + jstr + ',' + jpstr + ',';
                    block += smooth ? '1' : '0';
                    block += ',' + sextic_field + '\n';
                }
            }
        }
    };
    unsigned jobs = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (unsigned i = 0; i + 1 < jobs; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (const auto& block : blocks) out << block;
    return 0;
}

int run_family(const RunConfig& cfg, std::ostream& out) {
    if (cfg.p == 0) throw ParseError("family needs --p <prime>");
    RingPtr base = Ring::prime_field(cfg.p);
    RingPtr ks = Ring::rational_function_field(base, cfg.var);
    EllCurve e(parse_triple(ks, cfg.e_list, "--e"));
    EllCurve ep(parse_triple(ks, cfg.eprime_list, "--eprime"));
    TwoTorsionIso psi = TwoTorsionIso::parse(cfg.sigma);
    FamilyReport report = family_run(e, ep, psi);

    if (cfg.format == "json") {
        json j;
        j["p"] = cfg.p;
        j["var"] = cfg.var;
        j["sigma"] = psi.str();
        j["globally_bad"] = report.globally_bad;
        if (report.globally_bad) {
            j["reason"] = report.globally_bad_reason;
            out << j.dump(2) << "\n";
            return 3;
        }
        json bad = json::array();
        for (const auto& b : report.bad)
            bad.push_back({{"s0", b.s0.str()}, {"reasons", b.reasons}});
        j["bad_locus"] = bad;
        json bad_ext = json::array();
        for (const auto& b : report.bad_ext)
            bad_ext.push_back({{"s0", b.s0.str()},
                               {"ext_degree", b.ext_degree},
                               {"reasons", b.reasons}});
        j["bad_locus_extensions"] = bad_ext;
        j["generic"] = payload_json(*report.generic);
        json specs = json::array();
        for (const auto& [s0, payload] : report.specializations)
            specs.push_back({{"s0", s0.str()},
                             {"lambda", payload.lambda.str()},
                             {"sextic", [&] {
                                  std::vector<std::string> cs;
                                  for (int i = 0; i <= payload.sextic.degree(); ++i)
                                      cs.push_back(payload.sextic.coeff(i).str());
                                  return cs;
                              }()}});
        j["specializations"] = specs;
        out << j.dump(2) << "\n";
        return 0;
    }

    out << "family over F_" << cfg.p << "(" << cfg.var << ")\n";
    if (report.globally_bad) {
        out << "globally bad: " << report.globally_bad_reason << "\n";
        return 3;
    }
    out << "generic construction:\n";
    print_payload_text(*report.generic, out);
    out << "bad locus:\n";
    if (report.bad.empty()) out << "  (empty)\n";
    for (const auto& b : report.bad) {
        out << "  s0 = " << b.s0.str() << "  [" << join(b.reasons, ", ") << "]\n";
    }
    if (!report.bad_ext.empty()) {
        out << "bad locus over extensions (k <= 3):\n";
        for (const auto& b : report.bad_ext)
            out << "  s0 = " << b.s0.str() << " in F_" << cfg.p << "^"
                << b.ext_degree << "  [" << join(b.reasons, ", ") << "]\n";
    }
    out << "specializations at good s0:\n";
    for (const auto& [s0, payload] : report.specializations) {
        out << "  s0 = " << s0.str() << ": lambda = " << payload.lambda.str()
            << ", sextic = " << payload.sextic.str("t") << "\n";
    }
    return 0;
}

int run_moebius(const RunConfig& cfg, std::ostream& out) {
    RingPtr ring = Ring::parse(cfg.ring.empty() ? cfg.field : cfg.ring);
    auto parse_points = [&](const std::string& text, const std::string& what) {
        auto parts = split_top(text, ',');
        if (parts.size() != 3)
            throw ParseError(what + " must be three comma-separated points");
        return std::array<ProjPoint, 3>{parse_point(ring, parts[0]),
                                        parse_point(ring, parts[1]),
                                        parse_point(ring, parts[2])};
    };
    MoebiusMap m = moebius_from_triples(parse_points(cfg.from_list, "--from"),
                                        parse_points(cfg.to_list, "--to"));
    if (cfg.format == "json") {
        json j;
        j["ring"] = ring->to_string();
        j["matrix"] =
            json::array({json::array({m.at(0, 0).str(), m.at(0, 1).str()}),
                         json::array({m.at(1, 0).str(), m.at(1, 1).str()})});
        j["map"] = m.rational_form("t");
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "matrix = " << m.str() << "\n";
    out << "map    = t -> " << m.rational_form("t") << "\n";
    return 0;
}

}  // namespace

std::vector<std::string> RunConfig::to_args() const {
    std::vector<std::string> args{command};
    auto opt = [&](const std::string& flag, const std::string& value) {
        if (!value.empty()) {
            args.push_back(flag);
            args.push_back(value);
        }
    };
    opt("--field", field);
    opt("--e", e_list);
    opt("--eprime", eprime_list);
    if (command != "moebius") opt("--sigma", sigma);
    opt("--ring", ring);
    opt("--from", from_list);
    opt("--to", to_list);
    if (p != 0) opt("--p", std::to_string(p));
    if (command == "family") opt("--var", var);
    opt("--format", format);
    if (verify) args.push_back("--verify");
    if (with_construct) args.push_back("--construct");
    if (budget != 0) opt("--budget", std::to_string(budget));
    return args;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.command == "construct" || cfg.command == "verify")
            return run_construct(cfg, out);
        if (cfg.command == "census") return run_census(cfg, out);
        if (cfg.command == "family") return run_family(cfg, out);
        if (cfg.command == "moebius") return run_moebius(cfg, out);
        throw ParseError("unknown command: " + cfg.command);
    } catch (const ParseError& ex) {
        err << "parse error: " << ex.what() << "\n";
        return 2;
    } catch (const InternalError& ex) {
        err << "internal falsification trigger: " << ex.what() << "\n";
        return 4;
    } catch (const PreconditionError& ex) {
        err << "precondition violated: " << ex.what() << "\n";
        return 3;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 1;
    }
}

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
    CLI::App app{"degree-2 genus-2 covers of elliptic curves, exactly"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_curve_opts = [&](CLI::App* sub, bool need_field) {
        auto* f = sub->add_option("--field", cfg.field, "ring descriptor");
        if (need_field) f->required();
        sub->add_option("--e", cfg.e_list, "roots of E: e1,e2,e3")->required();
        sub->add_option("--eprime", cfg.eprime_list, "roots of E': e1,e2,e3")
            ->required();
        sub->add_option("--sigma", cfg.sigma,
                        "psi as a permutation i,j,k (sigma(1)=i, ...)");
    };

    auto* c_construct = app.add_subcommand("construct", "run the gluing");
    add_curve_opts(c_construct, true);
    c_construct->add_flag("--verify", cfg.verify, "run the full check table");
    c_construct->add_option("--format", cfg.format, "text|json");
    c_construct->add_option("--budget", cfg.budget,
                            "sample budget for point checks (0 = exhaustive)");

    auto* c_verify = app.add_subcommand("verify", "construct + full check table");
    add_curve_opts(c_verify, true);
    c_verify->add_option("--format", cfg.format, "text|json");
    c_verify->add_option("--budget", cfg.budget,
                         "sample budget for point checks (0 = exhaustive)");

    auto* c_census = app.add_subcommand("census", "enumerate all inputs over F_p");
    c_census->add_option("--field", cfg.field, "fp:<p>")->required();
    c_census->add_flag("--construct", cfg.with_construct,
                       "emit the sextic for theta-smooth rows");

    auto* c_family = app.add_subcommand("family", "construction over F_p(s)");
    c_family->add_option("--p", cfg.p, "characteristic")->required();
    c_family->add_option("--var", cfg.var, "parameter variable (default s)");
    c_family->add_option("--e", cfg.e_list, "roots of E(s)")->required();
    c_family->add_option("--eprime", cfg.eprime_list, "roots of E'(s)")->required();
    c_family->add_option("--sigma", cfg.sigma, "psi permutation");
    c_family->add_option("--format", cfg.format, "text|json");

    auto* c_moebius = app.add_subcommand("moebius", "three-point interpolation");
    c_moebius->add_option("--ring", cfg.ring, "ring descriptor")->required();
    c_moebius->add_option("--from", cfg.from_list, "three source points")
        ->required();
    c_moebius->add_option("--to", cfg.to_list, "three target points")->required();
    c_moebius->add_option("--format", cfg.format, "text|json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        if (ex.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "parse error: " << ex.what() << "\n";
        return 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    return run(cfg, out, err);
}

}  // namespace g2glue
