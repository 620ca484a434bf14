// Batch front-end for the lattice computations: reads lattice/chain JSON,
// runs one computation per invocation, writes a CSV report plus a JSON
// sidecar with the exact parameters, so runs are reproducible byte for byte.

#include <CLI11.hpp>
#include <json.hpp>

#include "specdiv/specdiv.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using specdiv::Int;
using specdiv::Rat;

Rat parse_rational(const std::string& text) {
    Rat r;
    if (r.set_str(text, 10) != 0)
        throw specdiv::validation_error("cannot parse rational: " + text);
    r.canonicalize();
    return r;
}

std::vector<Int> parse_int_list(const std::string& text) {
    std::vector<Int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.emplace_back(item);
    }
    if (out.empty()) throw specdiv::validation_error("empty integer list: " + text);
    return out;
}

struct Report {
    std::string csv;
    nlohmann::json params;
};

void emit(const std::string& command, const std::string& input, const std::string& output,
          const Report& report) {
    {
        std::ofstream os(output, std::ios::binary | std::ios::trunc);
        if (!os) throw specdiv::validation_error("cannot write report: " + output);
        os << report.csv;
    }
    nlohmann::json sidecar;
    sidecar["command"] = command;
    sidecar["input"] = input;
    sidecar["output"] = output;
    sidecar["parameters"] = report.params;
    sidecar["version"] = specdiv::kVersion;
    std::ofstream meta(output + ".meta.json", std::ios::binary | std::ios::trunc);
    if (!meta) throw specdiv::validation_error("cannot write sidecar: " + output + ".meta.json");
    meta << sidecar.dump(2) << "\n";
}

std::string to_csv(const std::function<void(std::ostream&)>& writer) {
    std::ostringstream os;
    writer(os);
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("SPECDIV_THREADS")) {
        int n = std::atoi(threads);
        if (n >= 1) specdiv::set_max_threads(n);
    }

    CLI::App app{"quadratic-lattice boundary multiplicity toolkit"};
    app.require_subcommand(1);

    std::string input, output, omega_text, max_text = "10", x_text, t_text, expected_text = "0";
    long m = 1, m_max = 0, b = 3, nmax = 16, dclass = 1, depth = 0, t_factor = 64;
    std::uint64_t budget = specdiv::kDefaultNodeBudget;

    auto add_io = [&](CLI::App* cmd, bool needs_input = true) {
        if (needs_input) cmd->add_option("--input", input, "input JSON file")->required();
        cmd->add_option("--output", output, "output CSV file")->required();
        cmd->add_option("--budget", budget, "enumeration node budget");
    };

    CLI::App* theta = app.add_subcommand("theta", "theta coefficients of a definite lattice");
    add_io(theta);
    theta->add_option("--max", max_text, "truncation (integer or a/b)");

    CLI::App* mult2 = app.add_subcommand("mult2", "type II boundary multiplicities");
    add_io(mult2);
    mult2->add_option("--b", b, "signature parameter b = rank(D) + 2")->required();
    mult2->add_option("--m", m, "single index m");
    mult2->add_option("--m-max", m_max, "series 1..m_max");

    CLI::App* mult3 = app.add_subcommand("mult3", "type III boundary multiplicities");
    add_io(mult3);
    mult3->add_option("--omega", omega_text, "negative-norm ray, comma separated")->required();
    mult3->add_option("--b", b, "signature parameter b")->required();
    mult3->add_option("--m", m, "single index m");
    mult3->add_option("--m-max", m_max, "series 1..m_max");
    mult3->add_option("--t", t_text, "truncation T (default 64*m)");
    mult3->add_option("--t-factor", t_factor, "T = factor*m for series");

    CLI::App* envm = app.add_subcommand("enum", "vectors of one norm in a definite lattice");
    add_io(envm);
    envm->add_option("--m", m, "norm Q = m")->required();

    CLI::App* quadric = app.add_subcommand("quadric", "hyperboloid bin counts");
    add_io(quadric);
    quadric->add_option("--omega", omega_text, "negative-norm ray")->required();
    quadric->add_option("--m", m, "norm of the slice")->required();
    quadric->add_option("--nmax", nmax, "largest bin");

    CLI::App* cverify = app.add_subcommand("chain-verify", "check the chain axioms");
    add_io(cverify);

    CLI::App* csum = app.add_subcommand("chain-sum", "summed intersections along a chain");
    add_io(csum);
    csum->add_option("--b", b, "signature parameter b")->required();
    csum->add_option("--dclass", dclass, "square class D");
    csum->add_option("--x", x_text, "X grid, comma separated")->required();

    CLI::App* minima = app.add_subcommand("minima", "successive minima of a definite lattice");
    add_io(minima);

    CLI::App* fit = app.add_subcommand("fit", "dyadic growth fit of a CSV series");
    add_io(fit);
    fit->add_option("--expected", expected_text, "reference exponent");

    (void)depth;
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        Report rep;
        std::string command;
        if (theta->parsed()) {
            command = "theta";
            specdiv::IntegralLattice l = specdiv::io::load_lattice(input);
            Rat trunc = parse_rational(max_text);
            specdiv::ThetaTable table = specdiv::theta_series(l, trunc, budget);
            rep.csv = to_csv([&](std::ostream& os) { specdiv::io::write_theta_csv(table, os); });
            rep.params = {{"max", max_text}, {"budget", budget}};
        } else if (mult2->parsed()) {
            command = "mult2";
            specdiv::IntegralLattice d = specdiv::io::load_lattice(input);
            specdiv::MultiplicitySeries series;
            if (m_max > 0) {
                series = specdiv::type_ii_series(d, static_cast<int>(b), Int(m_max), budget);
            } else {
                Rat v = specdiv::type_ii_multiplicity(d, static_cast<int>(b), Int(m), budget);
                series.kind = specdiv::MultiplicityKind::type_ii;
                series.b = static_cast<int>(b);
                series.entries.push_back({Int(m), specdiv::to_double(v), 0.0});
            }
            rep.csv =
                to_csv([&](std::ostream& os) { specdiv::io::write_multiplicity_csv(series, os); });
            rep.params = {{"b", b}, {"m", m}, {"m_max", m_max}, {"budget", budget}};
        } else if (mult3->parsed()) {
            command = "mult3";
            specdiv::IntegralLattice k = specdiv::io::load_lattice(input);
            std::vector<Int> omega = parse_int_list(omega_text);
            specdiv::MultiplicitySeries series;
            if (m_max > 0) {
                series = specdiv::type_iii_series(k, omega, static_cast<int>(b), Int(m_max),
                                                  t_factor, budget);
            } else {
                Rat trunc = t_text.empty() ? Rat(Int(m * t_factor)) : parse_rational(t_text);
                specdiv::PhiResult r =
                    specdiv::type_iii_multiplicity(k, omega, static_cast<int>(b), Int(m), trunc,
                                                   budget);
                series.kind = specdiv::MultiplicityKind::type_iii;
                series.b = static_cast<int>(b);
                series.entries.push_back({Int(m), r.value, r.tail_bound});
            }
            rep.csv =
                to_csv([&](std::ostream& os) { specdiv::io::write_multiplicity_csv(series, os); });
            rep.params = {{"omega", omega_text}, {"b", b},
                          {"m", m},              {"m_max", m_max},
                          {"t", t_text},         {"t_factor", t_factor},
                          {"budget", budget}};
        } else if (envm->parsed()) {
            command = "enum";
            specdiv::IntegralLattice l = specdiv::io::load_lattice(input);
            specdiv::NormSlice slice = specdiv::short_vectors(l, Int(m), budget);
            rep.csv = to_csv([&](std::ostream& os) { specdiv::io::write_vectors_csv(slice, os); });
            rep.params = {{"m", m}, {"budget", budget}};
        } else if (quadric->parsed()) {
            command = "quadric";
            specdiv::IntegralLattice k = specdiv::io::load_lattice(input);
            std::vector<Int> omega = parse_int_list(omega_text);
            specdiv::QuadricBinReport report =
                specdiv::quadric_bin_counts(k, omega, Int(m), nmax, budget);
            rep.csv = to_csv([&](std::ostream& os) { specdiv::io::write_bins_csv(report, os); });
            rep.params = {{"omega", omega_text}, {"m", m}, {"nmax", nmax}, {"budget", budget}};
        } else if (cverify->parsed()) {
            command = "chain-verify";
            specdiv::LatticeChain chain = specdiv::io::load_chain(input);
            std::vector<specdiv::ChainViolation> v = specdiv::verify_chain(chain);
            rep.csv =
                to_csv([&](std::ostream& os) { specdiv::io::write_violations_csv(v, os); });
            rep.params = {{"levels", chain.depth()}};
        } else if (csum->parsed()) {
            command = "chain-sum";
            specdiv::LatticeChain chain = specdiv::io::load_chain(input);
            std::vector<Int> grid = parse_int_list(x_text);
            specdiv::SumExperimentReport report = specdiv::summed_intersection_experiment(
                chain, static_cast<int>(b), Int(dclass), grid, budget);
            rep.csv =
                to_csv([&](std::ostream& os) { specdiv::io::write_chain_sum_csv(report, os); });
            rep.params = {{"b", b}, {"dclass", dclass}, {"x", x_text}, {"budget", budget}};
        } else if (minima->parsed()) {
            command = "minima";
            specdiv::IntegralLattice l = specdiv::io::load_lattice(input);
            specdiv::MinimaProfile profile = specdiv::successive_minima(l, budget);
            rep.csv = to_csv([&](std::ostream& os) { specdiv::io::write_minima_csv(profile, os); });
            rep.params = {{"budget", budget}};
        } else if (fit->parsed()) {
            command = "fit";
            std::ifstream in(input);
            if (!in) throw specdiv::validation_error("cannot open file: " + input);
            std::string line;
            std::vector<std::pair<double, double>> series;
            bool header = true;
            while (std::getline(in, line)) {
                if (header) {
                    header = false;
                    continue;
                }
                std::stringstream row(line);
                std::string mcol, vcol;
                if (!std::getline(row, mcol, ',') || !std::getline(row, vcol, ',')) continue;
                series.emplace_back(std::stod(mcol), std::stod(vcol));
            }
            double expected = std::stod(expected_text);
            specdiv::GrowthFit gfit = specdiv::growth_fit(series, expected);
            rep.csv =
                to_csv([&](std::ostream& os) { specdiv::io::write_fit_csv(gfit, expected, os); });
            rep.params = {{"expected", expected_text}};
        }
        emit(command, input, output, rep);
        return 0;
    } catch (const specdiv::validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const specdiv::budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
