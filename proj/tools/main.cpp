#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qmf/cli.hpp"
#include "qmf/verify.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"exact q-series engine for the modular structure of Donaldson invariants"};
    app.require_subcommand(1);

    // series
    std::string s_name, s_format = "text";
    int s_order = 12;
    auto* series = app.add_subcommand("series", "dump a named q-expansion exactly");
    series->add_option("--name", s_name, "series name (h, V, T, G2, eta, e1..e3, theta1..3, a, m, k2, f2, U, G)")
        ->required();
    series->add_option("--order", s_order, "q-order to print");
    series->add_option("--format", s_format, "text or json");

    // verify
    std::string v_suite = "all";
    qmf::VerifyOptions vopt;
    long v_t2 = 0;
    auto* verify = app.add_subcommand("verify", "run an identity suite");
    verify->add_option("--suite", v_suite,
                       "theta, electric, magnetic, elliptic, weierstrass, blowup, donaldson or all");
    verify->add_option("--qorder", vopt.qorder, "q-order for series identities");
    verify->add_option("--torder", vopt.torder, "t-order for two-variable identities");
    verify->add_option("--datasets", vopt.datasets, "randomized data sets for the evaluator checks");
    verify->add_option("--seed", vopt.seed, "randomization seed");
    auto* t2opt = verify->add_option(
        "--t2", v_t2, "override the expected T q^2 registry value (negative control)");

    // eval
    std::string e_file, e_mode = "closed";
    int e_qorder = 12, e_lorder = 6, e_dorder = 6;
    auto* eval = app.add_subcommand("eval", "evaluate the structure formula on manifold data");
    eval->add_option("--file", e_file, "manifold JSON file")->required();
    eval->add_option("--mode", e_mode, "closed or taylor");
    eval->add_option("--qorder", e_qorder, "bracket q-order");
    eval->add_option("--lorder", e_lorder, "lambda Taylor order");
    eval->add_option("--dorder", e_dorder, "per-coordinate D Taylor order");

    // blowup
    std::string b_file, b_side = "w";
    auto* blowup = app.add_subcommand("blowup", "propagate basic classes through a blow-up");
    blowup->add_option("--file", b_file, "manifold JSON file")->required();
    blowup->add_option("--side", b_side, "w or w+e");

    // convert
    std::string c_file, c_dir = "f2p";
    auto* convert = app.add_subcommand("convert", "convert between f- and P-presentations");
    convert->add_option("--file", c_file, "manifold JSON file")->required();
    convert->add_option("--direction", c_dir, "f2p or p2f");

    // conjecture-fk
    long k_chi = 0, k_sigma = 0;
    std::string k_sw = "1", k_format = "text";
    int k_order = 12;
    auto* cfk = app.add_subcommand("conjecture-fk", "conjectural basic-class series");
    cfk->add_option("--chi", k_chi, "Euler characteristic")->required();
    cfk->add_option("--sigma", k_sigma, "signature")->required();
    cfk->add_option("--sw", k_sw, "invariant value as a rational string");
    cfk->add_option("--order", k_order, "q-order to print");
    cfk->add_option("--format", k_format, "text or json");

    // ab-series
    std::string a_route = "elliptic";
    int a_order = 12;
    auto* ab = app.add_subcommand("ab-series", "dump the universal operator series");
    ab->add_option("--route", a_route, "elliptic or reversion");
    ab->add_option("--order", a_order, "number of coefficients");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (series->parsed()) {
        return qmf::cli::cmd_series(s_name, s_order, s_format, std::cout, std::cerr);
    }
    if (verify->parsed()) {
        if (t2opt->count() > 0) {
            vopt.t2_expected = v_t2;
        }
        return qmf::cli::cmd_verify(v_suite, vopt, std::cout, std::cerr);
    }
    if (eval->parsed()) {
        return qmf::cli::cmd_eval(e_file, e_mode, e_qorder, e_lorder, e_dorder, std::cout,
                                  std::cerr);
    }
    if (blowup->parsed()) {
        return qmf::cli::cmd_blowup(b_file, b_side, std::cout, std::cerr);
    }
    if (convert->parsed()) {
        return qmf::cli::cmd_convert(c_file, c_dir, std::cout, std::cerr);
    }
    if (cfk->parsed()) {
        return qmf::cli::cmd_conjecture_fk(k_chi, k_sigma, k_sw, k_order, k_format, std::cout,
                                           std::cerr);
    }
    if (ab->parsed()) {
        return qmf::cli::cmd_ab_series(a_route, a_order, std::cout, std::cerr);
    }
    return 2;
}
