#include <iostream>

#include <CLI11.hpp>

#include "tightset/commands.hpp"

// Exit codes: 0 = pass, 1 = a verification failed, 2 = usage or configuration
// error, 3 = violated internal invariant.

int main(int argc, char** argv) {
    using namespace tightset;

    CLI::App app{
        "Constructs and verifies tight sets of points in finite classical "
        "polar spaces."};
    app.require_subcommand(1);

    CmdOptions o;
    std::int64_t qflag = 0;

    auto add_field = [&](CLI::App* c) {
        CLI::Option* qopt = c->add_option("--q", qflag, "field size (a prime power)");
        CLI::Option* popt = c->add_option("--p", o.p, "field characteristic (prime)");
        c->add_option("--f", o.f, "extension degree (default 1)");
        qopt->excludes(popt);
        popt->excludes(qopt);
    };
    auto add_report = [&](CLI::App* c) {
        c->add_option("--report", o.report, "output format: human|structured");
    };

    CLI::App* params = app.add_subcommand(
        "params", "print polar-space parameters and the tight-set targets");
    add_field(params);
    add_report(params);
    params->add_option("--family", o.family, "space family: w|qplus|qminus|q|h")
        ->required();
    params->add_option("--d", o.d, "ambient vector-space dimension")->required();

    CLI::App* lemmas =
        app.add_subcommand("lemmas", "run the octonion counting censuses");
    add_field(lemmas);
    add_report(lemmas);
    lemmas->add_option(
        "--which", o.which,
        "comma list of checks: pairsum,normfiber,zeroprod,ann,fibers (default all)");

    CLI::App* construct = app.add_subcommand(
        "construct", "build the tight set and write it as a point-set file");
    add_field(construct);
    add_report(construct);
    construct->add_option("--out", o.out_path, "output file path")->required();

    CLI::App* verify = app.add_subcommand(
        "verify", "check the two-value perp property of a point-set file");
    add_report(verify);
    verify->add_option("--in", o.in_path, "input point-set file")->required();
    verify->add_option("--mode", o.mode,
                       "full|member-sample|nonmember-sample (default full)");
    verify->add_option(
        "--samples", o.samples,
        "sample count; in full mode, adds this many nonmember corroboration probes");
    verify->add_option("--seed", o.seed, "RNG seed for sampled probes (default 1)");
    verify->add_option("--threads", o.threads, "worker count (default 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit 0; any parse error is usage
    }

    try {
        if (qflag != 0) {
            const auto [p, f] = parse_prime_power(qflag);
            o.p = p;
            o.f = f;
        }
        if (params->parsed()) return cmd_params(o, std::cout);
        if (lemmas->parsed()) return cmd_lemmas(o, std::cout);
        if (construct->parsed()) return cmd_construct(o, std::cout);
        if (verify->parsed()) return cmd_verify(o, std::cout);
        std::cerr << "error: no subcommand selected\n";
        return 2;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
