// weilforge command-line driver: example / solve / polarize / verify /
// estimate-radius over the JSON jet formats.
//
// exit codes: 0 ok, 1 verification failure, 2 usage or file problem,
// 3 non-Kahlerian input, 4 non-parallel form, 5 insufficient order.
#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include <weilforge/estimates.hpp>
#include <weilforge/io.hpp>

using namespace weilforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNonKahlerian = 3;
constexpr int kExitNonParallel = 4;
constexpr int kExitOrder = 5;

void write_or_print(const std::string& path, const Json& j) {
    if (path.empty())
        std::cout << dump_canonical(j);
    else
        save_json(path, j);
}

template <class K>
ChristoffelJet<K> connection_from_file(const Json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "metric") return levi_civita(metric_from_json<K>(j));
    if (kind == "christoffel") return christoffel_from_json<K>(j);
    throw JetIoError("expected a metric or christoffel jet file");
}

template <class K>
int run_solve(const std::string& input, int order, const std::string& output) {
    Json j = load_json(input);
    ChristoffelJet<K> gamma = connection_from_file<K>(j);
    {
        auto rep = verify_kahlerian(gamma);
        if (!rep.pass) {
            std::cerr << "non-Kahlerian input: " << rep.first_failure << "\n";
            return kExitNonKahlerian;
        }
    }
    auto sol = solve_connection(gamma, order);
    Json out = solution_to_json(sol);
    auto tables = measure_norms<K>(sol, nullptr, 1);
    Json norms = Json::array();
    for (const auto& [key, v] : tables.plain) {
        auto [k, n, p, q] = key;
        norms.push_back(Json{{"k", k}, {"n", n}, {"p", p}, {"q", q}, {"norm", v}});
    }
    out["diagnostics"]["norms"] = std::move(norms);
    write_or_print(output, out);
    return kExitOk;
}

template <class K>
int run_polarize(const std::string& input, const std::string& solution, int order,
                 const std::string& output) {
    auto metric = metric_from_json<K>(load_json(input));
    auto sol = solution_from_json<K>(load_json(solution));
    if (order > sol.order) {
        std::cerr << "solution order " << sol.order << " is below the requested order\n";
        return kExitOrder;
    }
    PolarizationSolution<K> pol;
    try {
        pol = solve_polarization(sol, metric, order);
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        return kExitNonParallel;
    }
    Json out = polarization_to_json(pol);
    out["diagnostics"]["holomorphy"] = residuals_to_json(holomorphy_residual(sol, pol));
    auto posv = positivity_check(pol);
    out["diagnostics"]["positivity"] =
        Json{{"positive", posv.positive}, {"eigenvalue_floor", posv.eigenvalue_floor}};
    write_or_print(output, out);
    return kExitOk;
}

template <class K>
int run_verify(const std::string& solution, const std::string& polarization) {
    auto sol = solution_from_json<K>(load_json(solution));
    auto fail = [](const std::string& what) {
        std::cout << "FAIL " << what << "\n";
        return kExitVerify;
    };
    for (int i = 1; i <= sol.dim; ++i) {
        if (!(sol.d_of_s[0][i - 1] ==
              WeilElement<K>::generator(sol.dim, {Kind::V1h, i})))
            return fail("D_0 = C");
        for (int k = 0; k <= sol.order; ++k) {
            if (!(sol.d_of_sb[k][i - 1] == -sol.d_of_s[k][i - 1].conj()))
                return fail("reality of D_" + std::to_string(k));
            if (!weakly_hodge_image(sol.d_of_s[k][i - 1], kind_hodge(Kind::V3h)))
                return fail("weak Hodgeness of D_" + std::to_string(k));
        }
    }
    if (!flatness_certified_zero(sol)) return fail("flatness D . D = 0");
    if (linearity_residual(sol) != 0.0) return fail("linearity");
    // D2 = (1/3) sigma R with R = -(D1 . D1)
    auto sg = canonical_sigma<K>(sol.dim);
    auto d1 = sol.derivation(1);
    for (int i = 1; i <= sol.dim; ++i) {
        WeilElement<K> s = WeilElement<K>::generator(sol.dim, {Kind::V3h, i});
        WeilElement<K> r = -d1.apply(d1.apply(s));
        if (!(sol.d_of_s[2][i - 1] ==
              sg.apply(r).scaled(K::one() / K::from_int(3)).truncated(sol.order + 1)))
            return fail("D_2 = (1/3) sigma R");
    }
    if (!polarization.empty()) {
        auto pol = polarization_from_json<K>(load_json(polarization));
        for (int k = 0; k <= pol.order; ++k) {
            if (!hodge_type_11(pol.omega[k])) return fail("Omega Hodge type (1,1)");
            if (!(pol.omega[k].conj() == pol.omega[k])) return fail("Omega reality");
        }
        if (!pol.omega[1].is_zero()) return fail("Omega_1 = 0");
        if (!holomorphy_certified_zero(sol, pol)) return fail("holomorphy D Omega = 0");
        if (!positivity_check(pol).positive) return fail("positivity of Omega_0");
    }
    std::cout << "OK all identities verified\n";
    return kExitOk;
}

template <class K>
int run_radius(const std::string& solution) {
    auto sol = solution_from_json<K>(load_json(solution));
    if (sol.order < 3) {
        std::cerr << "solution order " << sol.order << " is insufficient (need >= 3)\n";
        return kExitOrder;
    }
    auto tables = measure_norms<K>(sol, nullptr, 1);
    auto consts = fit_constants(sol, tables);
    auto rad = estimate_radius(sol, consts);
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["kind"] = "report";
    out["report"] = "estimate-radius";
    if (std::isinf(rad.empirical))
        out["empirical_radius"] = "infinite";
    else
        out["empirical_radius"] = rad.empirical;
    out["theoretical_radius"] = rad.theoretical;
    out["constants"] = Json{{"C0", consts.C0}, {"K", consts.K}};
    Json tn = Json::array();
    for (double v : rad.theta_norms) tn.push_back(v);
    out["theta_norms"] = std::move(tn);
    std::cout << dump_canonical(out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"order-by-order solver for flat extended connections and "
                 "polarizations on formal cotangent geometry"};
    app.require_subcommand(1);

    bool use_float = false;
    double tol = 1e-10;
    if (const char* env = std::getenv("WEILFORGE_TOL")) tol = std::atof(env);
    app.add_flag("--float", use_float, "floating coefficients (default: exact rationals)");
    app.add_option("--tol", tol, "pruning tolerance in float mode");

    std::string name = "flat", input, output, solution, polarization;
    int dim = 1, order = 4;

    auto* ex = app.add_subcommand("example", "emit a built-in metric jet");
    ex->add_option("--name", name, "flat | fubini-study | poincare | product");
    ex->add_option("--dim", dim);
    ex->add_option("--order", order);
    ex->add_option("--output", output);

    auto* sv = app.add_subcommand("solve", "solve the flat linear extended connection");
    sv->add_option("--input", input)->required();
    sv->add_option("--order", order);
    sv->add_option("--output", output);

    auto* pl = app.add_subcommand("polarize", "solve the polarization recursion");
    pl->add_option("--input", input)->required();
    pl->add_option("--solution", solution)->required();
    pl->add_option("--order", order);
    pl->add_option("--output", output);

    auto* vf = app.add_subcommand("verify", "re-check all identities of stored files");
    vf->add_option("--solution", solution)->required();
    vf->add_option("--polarization", polarization);

    auto* er = app.add_subcommand("estimate-radius", "convergence radius estimates");
    er->add_option("--solution", solution)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    CxD::tolerance() = tol;
    try {
        if (ex->parsed()) {
            if (use_float)
                write_or_print(output, metric_to_json(builtin_example<CxD>(name, dim, order)));
            else
                write_or_print(output, metric_to_json(builtin_example<RatC>(name, dim, order)));
            return kExitOk;
        }
        if (sv->parsed())
            return use_float ? run_solve<CxD>(input, order, output)
                             : run_solve<RatC>(input, order, output);
        if (pl->parsed())
            return use_float ? run_polarize<CxD>(input, solution, order, output)
                             : run_polarize<RatC>(input, solution, order, output);
        if (vf->parsed())
            return use_float ? run_verify<CxD>(solution, polarization)
                             : run_verify<RatC>(solution, polarization);
        if (er->parsed())
            return use_float ? run_radius<CxD>(solution) : run_radius<RatC>(solution);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const JetIoError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        std::string what = e.what();
        if (what.find("Kahlerian") != std::string::npos) return kExitNonKahlerian;
        if (what.find("parallel") != std::string::npos) return kExitNonParallel;
        return kExitVerify;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitVerify;
    }
    return kExitUsage;
}
