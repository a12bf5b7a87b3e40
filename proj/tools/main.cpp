#include <CLI11.hpp>

#include "convkit/io.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

using namespace convkit;
using convkit::io::json;

namespace {

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fmt6(Cx v) {
    if (v.imag() == 0.0) return fmt6(v.real());
    return fmt6(v.real()) + (v.imag() < 0 ? "-" : "+") + fmt6(std::abs(v.imag())) + "i";
}

/// Collects inputs, checks, and the output payload for one invocation and
/// settles the exit code: 0 clean, 1 when a check failed.
struct Run {
    io::RunReport report;
    std::string out_path;
    std::string report_path;

    explicit Run(std::string command) { report.command = std::move(command); }

    json load(const std::string& path) {
        report.inputs.emplace_back(path, io::file_digest(path));
        return io::load_json_file(path);
    }

    void check(const std::string& name, bool pass, double value, double tolerance) {
        report.checks.push_back({name, pass, value, tolerance});
        std::printf("[%s] %s: value=%s tolerance=%s\n", pass ? "PASS" : "FAIL", name.c_str(),
                    fmt6(value).c_str(), fmt6(tolerance).c_str());
    }

    int finish() {
        if (!out_path.empty()) io::write_json_file(out_path, report.outputs);
        if (!report_path.empty()) io::write_json_file(report_path, report.to_json());
        return report.all_pass() ? 0 : 1;
    }
};

void require_inputs(const std::vector<std::string>& in, std::size_t count, const char* usage) {
    if (in.size() != count) {
        throw std::invalid_argument(std::string("expected ") + std::to_string(count) +
                                    " --in file(s): " + usage);
    }
}

// ---------------------------------------------------------------- group ---

int run_group(const std::string& verb, const std::vector<std::string>& in, Run run, double tol) {
    if (verb == "dft" || verb == "idft") {
        require_inputs(in, 1, "--in signal.json");
        const GroupSignal s = io::group_signal_from_json(run.load(in[0]), in[0]);
        const GroupSignal out = verb == "dft" ? fourier(s) : inverse_fourier(s);
        const GroupSignal back = verb == "dft" ? inverse_fourier(out) : fourier(out);
        run.report.outputs = io::group_signal_to_json(out);
        run.check("inversion_round_trip", max_abs_diff(back.values, s.values) <= 1e-10,
                  max_abs_diff(back.values, s.values), 1e-10);
    } else if (verb == "conv") {
        require_inputs(in, 2, "--in f.json --in h.json");
        const GroupSignal f = io::group_signal_from_json(run.load(in[0]), in[0]);
        const GroupSignal h = io::group_signal_from_json(run.load(in[1]), in[1]);
        const GroupSignal out = convolve(f, h);
        run.report.outputs = io::group_signal_to_json(out);
        const double gap =
            max_abs_diff(fourier(out).values, hadamard(fourier(f).values, fourier(h).values));
        run.check("convolution_theorem", gap <= tol, gap, tol);
    } else if (verb == "plancherel") {
        require_inputs(in, 1, "--in signal.json");
        const GroupSignal f = io::group_signal_from_json(run.load(in[0]), in[0]);
        const GroupSignal fhat = fourier(f);
        double time_energy = 0.0, freq_energy = 0.0;
        for (const Cx& v : f.values) time_energy += std::norm(v);
        for (const Cx& v : fhat.values) freq_energy += std::norm(v);
        freq_energy /= double(f.group.size());
        const double gap =
            std::abs(time_energy - freq_energy) / std::max(1e-300, std::abs(time_energy));
        std::printf("time-domain energy:      %s\n", fmt6(time_energy).c_str());
        std::printf("frequency-domain energy: %s\n", fmt6(freq_energy).c_str());
        run.report.outputs = json{{"time_energy", time_energy},
                                  {"frequency_energy", freq_energy},
                                  {"relative_gap", gap}};
        run.check("plancherel_relative_gap", gap <= tol, gap, tol);
    }
    return run.finish();
}

// ---------------------------------------------------------------- graph ---

GraphShiftSystem load_system(Run& run, const std::string& path, const std::string& shift) {
    const json j = run.load(path);
    if (shift == "custom") {
        return system_from_matrix(io::matrix_from_json(j, path));
    }
    return build_shift(io::graph_from_json(j, path), parse_shift_kind(shift));
}

int run_graph(const std::string& verb, const std::vector<std::string>& in, Run run, double tol,
              const std::string& shift, std::size_t degree) {
    if (verb == "gft" || verb == "igft") {
        require_inputs(in, 2, "--in graph.json --in signal.json");
        const auto sys = load_system(run, in[0], shift);
        const CVec x = io::values_from_json(run.load(in[1])["values"], in[1]);
        const CVec out = verb == "gft" ? gft(sys, x) : igft(sys, x);
        const CVec back = verb == "gft" ? igft(sys, out) : gft(sys, out);
        run.report.outputs = json{{"values", io::values_to_json(out)}};
        run.check("round_trip", max_abs_diff(back, x) <= 1e-9, max_abs_diff(back, x), 1e-9);
    } else if (verb == "conv") {
        require_inputs(in, 3, "--in graph.json --in x.json --in y.json");
        const auto sys = load_system(run, in[0], shift);
        const CVec x = io::values_from_json(run.load(in[1])["values"], in[1]);
        const CVec y = io::values_from_json(run.load(in[2])["values"], in[2]);
        const CVec out = spectral_convolve(sys, x, y);
        run.report.outputs = json{{"values", io::values_to_json(out)}};
        const double comm = max_abs_diff(out, spectral_convolve(sys, y, x));
        run.check("commutativity", comm <= tol, comm, tol);
    } else if (verb == "fit-poly") {
        require_inputs(in, 2, "--in graph.json --in x.json");
        const auto sys = load_system(run, in[0], shift);
        const CVec x = io::values_from_json(run.load(in[1])["values"], in[1]);
        const PolynomialFilter p = fit_polynomial(sys, x);
        std::printf("coefficients (lowest degree first):");
        for (const Cx& c : p.coeffs) std::printf(" %s", fmt6(c).c_str());
        std::printf("\n");
        const double residual =
            max_abs_diff(polynomial_matrix(sys.shift(), p), filter_matrix(sys, x));
        run.report.outputs = io::filter_to_json(p);
        run.check("reproduction_residual", residual <= 1e-6, residual, 1e-6);
    } else if (verb == "shift-invariant") {
        require_inputs(in, 2, "--in graph.json --in matrix.json");
        const auto sys = load_system(run, in[0], shift);
        const Matrix m = io::matrix_from_json(run.load(in[1]), in[1]);
        const auto verdict = is_shift_invariant(sys, m, tol);
        if (verdict.certificate) {
            std::printf("certificate (lowest degree first):");
            for (const Cx& c : verdict.certificate->coeffs) std::printf(" %s", fmt6(c).c_str());
            std::printf("\n");
            run.report.outputs = json{{"certificate", io::filter_to_json(*verdict.certificate)},
                                      {"certificate_residual", verdict.certificate_residual}};
        }
        run.check("shift_invariant", verdict.invariant, verdict.commutator_norm, tol);
    } else if (verb == "gcn") {
        require_inputs(in, 4, "--in graph.json --in X.json --in filter.json --in W.json");
        const auto sys = load_system(run, in[0], shift);
        const Matrix x = io::matrix_from_json(run.load(in[1]), in[1]);
        const PolynomialFilter p = io::filter_from_json(run.load(in[2]), in[2]);
        const Matrix w = io::matrix_from_json(run.load(in[3]), in[3]);
        run.report.outputs = io::matrix_to_json(gcn_layer(sys, x, p, w));
    } else if (verb == "dof") {
        json outputs{{"degree", degree}, {"polynomial", degree + 1}, {"stencil3x3", 9}};
        if (!in.empty()) {
            const auto sys = load_system(run, in[0], shift);
            const auto r = dof_report(sys, degree);
            outputs["max_node_degree"] = r.max_node_degree;
            outputs["free_kernel_params"] = r.free_kernel_params;
        }
        std::printf("polynomial: %zu, stencil3x3: 9\n", degree + 1);
        run.report.outputs = outputs;
    }
    return run.finish();
}

// -------------------------------------------------------------- recover ---

int run_recover(const std::vector<std::string>& in, Run run, double tol,
                const std::string& oracle_kind, const std::string& shift, std::size_t n,
                std::uint64_t seed, double corrupt) {
    ConvolutionAlgebraOracle oracle;
    Matrix reference;
    if (oracle_kind == "hadamard") {
        if (n == 0) throw std::invalid_argument("recover: --n required for the hadamard oracle");
        oracle = hadamard_oracle(n);
        reference = Matrix::identity(n);
    } else if (oracle_kind == "group") {
        if (n == 0) throw std::invalid_argument("recover: --n required for the group oracle");
        oracle = cyclic_convolution_oracle(n);
        CVec delta(n, Cx(0.0, 0.0));
        delta[n > 1 ? 1 : 0] = 1.0;
        reference = eig_circulant(delta).u;
    } else if (oracle_kind == "graph") {
        require_inputs(in, 1, "--in graph.json");
        const auto sys = load_system(run, in[0], shift);
        oracle = spectral_oracle(sys.basis());
        reference = sys.basis();
    } else if (oracle_kind == "multishift") {
        require_inputs(in, 1, "--in multisystem.json");
        const auto sys = io::multishift_from_json(run.load(in[0]), in[0]);
        oracle = multishift_oracle(sys);
        reference = multishift_kernel(sys);
    } else {
        throw std::invalid_argument("recover: unknown oracle kind " + oracle_kind);
    }

    const RecoveredKernel kernel = recover_kernel(oracle, seed);
    run.report.outputs = io::recovered_kernel_to_json(kernel);

    const auto match = match_columns(kernel.columns, reference);
    run.check("matched_distance", match.max_column_distance <= tol, match.max_column_distance,
              tol);

    const ConvolutionAlgebraOracle probe =
        corrupt > 0.0 ? corrupt_oracle(oracle, corrupt, seed) : oracle;
    const auto idem = verify_idempotents(probe, kernel);
    std::printf("idempotent deviation: %s\n", fmt6(idem.max_deviation).c_str());
    run.check("idempotent_deviation", idem.within_tolerance, idem.max_deviation, 1e-6);
    return run.finish();
}

// -------------------------------------------------------------- lattice ---

int run_lattice(const std::string& verb, const std::vector<std::string>& in, Run run,
                std::size_t element) {
    if (verb == "validate") {
        require_inputs(in, 1, "--in lattice.json");
        const auto lat = io::lattice_from_json(run.load(in[0]), in[0]);
        std::vector<std::size_t> labels(lat.size());
        for (std::size_t i = 0; i < lat.size(); ++i) labels[i] = lat.original_label(i);
        std::printf("lattice ok: %zu elements\n", lat.size());
        run.report.outputs = json{{"n", lat.size()}, {"canonical_labels", labels}};
        run.check("meet_semilattice", true, 0.0, 0.0);
    } else if (verb == "shifts") {
        require_inputs(in, 1, "--in lattice.json");
        const auto lat = io::lattice_from_json(run.load(in[0]), in[0]);
        const auto report = check_commutation(lat);
        run.report.outputs = json::array();
        if (element != std::size_t(-1)) {
            run.report.outputs = io::int_matrix_to_json(shift_operator(lat, element));
        } else {
            for (std::size_t a = 0; a < lat.size(); ++a) {
                run.report.outputs.push_back(io::int_matrix_to_json(shift_operator(lat, a)));
            }
        }
        run.check("commutation_violations", report.ok, double(report.violations.size()), 0.0);
    } else if (verb == "diagonalize") {
        require_inputs(in, 1, "--in lattice.json");
        const auto lat = io::lattice_from_json(run.load(in[0]), in[0]);
        const auto d = diagonalize_shifts(lat);
        std::printf("conjugation identities: %zu/%zu\n", d.identities_passed,
                    d.identities_checked);
        run.report.outputs = json{{"zeta", io::int_matrix_to_json(d.zeta)},
                                  {"moebius", io::int_matrix_to_json(d.moebius)},
                                  {"responses", d.responses}};
        run.check("conjugation_identities", d.identities_hold,
                  double(d.identities_checked - d.identities_passed), 0.0);
    } else if (verb == "conv") {
        require_inputs(in, 3, "--in lattice.json --in h.json --in s.json");
        const auto lat = io::lattice_from_json(run.load(in[0]), in[0]);
        const auto h = io::real_values_from_json(run.load(in[1]), in[1]);
        const auto s = io::real_values_from_json(run.load(in[2]), in[2]);
        run.report.outputs = io::real_values_to_json(lattice_convolve(lat, h, s));
    }
    return run.finish();
}

// ------------------------------------------------------------------ cnn ---

int run_cnn(const std::string& verb, const std::vector<std::string>& in, Run run, double tol) {
    if (verb == "conv") {
        require_inputs(in, 2, "--in f.json --in g.json");
        const auto f = io::image_from_json(run.load(in[0]), in[0]);
        const auto g = io::image_from_json(run.load(in[1]), in[1]);
        run.report.outputs = io::image_to_json(convolve(f, g));
    } else if (verb == "equiv") {
        require_inputs(in, 2, "--in image.json --in kernel.json");
        const auto image = io::image_from_json(run.load(in[0]), in[0]);
        const auto kernel = io::kernel3x3_from_json(run.load(in[1]), in[1]);
        const auto report = cnn_equivalence(image, kernel);
        std::printf("max discrepancy: %s\n", fmt6(report.max_discrepancy).c_str());
        run.report.outputs = io::image_to_json(report.convolution);
        run.check("sliding_window_discrepancy", report.max_discrepancy <= tol,
                  report.max_discrepancy, tol);
    }
    return run.finish();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"convolution toolkit: group, graph, lattice, image and multi-shift "
                 "convolution with spectral-kernel recovery"};
    app.require_subcommand(1);

    std::vector<std::string> inputs;
    std::string out_path, report_path;
    double tol = -1.0;
    std::uint64_t seed = 0;
    std::string shift = "adjacency";
    std::size_t degree = 1;
    std::string oracle_kind;
    std::size_t oracle_n = 0;
    double corrupt = 0.0;
    std::size_t element = std::size_t(-1);

    auto add_common = [&](CLI::App* cmd, double default_tol) {
        cmd->add_option("--in", inputs, "input file (repeatable, order matters)");
        cmd->add_option("--out", out_path, "write the output payload here");
        cmd->add_option("--report", report_path, "write the machine-readable run report here");
        cmd->add_option("--tol", tol, "tolerance override");
        cmd->parse_complete_callback([&, default_tol] {
            if (tol < 0.0) tol = default_tol;
        });
    };

    int result = 0;
    auto dispatch = [&](const std::string& domain, const std::string& verb) {
        Run run(domain + " " + verb);
        run.out_path = out_path;
        run.report_path = report_path;
        if (domain == "group") result = run_group(verb, inputs, std::move(run), tol);
        else if (domain == "graph") result = run_graph(verb, inputs, std::move(run), tol, shift, degree);
        else if (domain == "recover")
            result = run_recover(inputs, std::move(run), tol, oracle_kind, shift, oracle_n, seed,
                                 corrupt);
        else if (domain == "lattice") result = run_lattice(verb, inputs, std::move(run), element);
        else if (domain == "cnn") result = run_cnn(verb, inputs, std::move(run), tol);
    };

    CLI::App* group = app.add_subcommand("group", "Fourier analysis on finite abelian groups");
    group->require_subcommand(1);
    for (const char* verb : {"dft", "idft", "conv", "plancherel"}) {
        CLI::App* cmd = group->add_subcommand(verb);
        add_common(cmd, 1e-9);
        cmd->callback([&, verb] { dispatch("group", verb); });
    }

    CLI::App* graph = app.add_subcommand("graph", "graph signal processing on a shift system");
    graph->require_subcommand(1);
    for (const char* verb :
         {"gft", "igft", "conv", "fit-poly", "shift-invariant", "gcn", "dof"}) {
        CLI::App* cmd = graph->add_subcommand(verb);
        add_common(cmd, 1e-9);
        cmd->add_option("--shift", shift,
                        "shift kind: adjacency | laplacian | normalized_laplacian_selfloop | "
                        "custom (first --in is then a matrix file)");
        if (verb == std::string("dof")) cmd->add_option("--degree", degree, "polynomial degree");
        cmd->callback([&, verb] { dispatch("graph", verb); });
    }

    CLI::App* recover = app.add_subcommand(
        "recover", "recover the spectral kernel from a convolution-algebra oracle");
    add_common(recover, 1e-6);
    recover->add_option("--oracle", oracle_kind, "group | graph | hadamard | multishift")
        ->required();
    recover->add_option("--n", oracle_n, "dimension for the group/hadamard oracles");
    recover->add_option("--shift", shift, "shift kind for the graph oracle");
    recover->add_option("--seed", seed, "probe seed");
    recover->add_option("--corrupt", corrupt,
                        "perturb the oracle with seeded noise of this amplitude before the "
                        "idempotent check (diagnostic)");
    recover->callback([&] { dispatch("recover", "kernel"); });

    CLI::App* lattice = app.add_subcommand("lattice", "meet-semilattice signal processing");
    lattice->require_subcommand(1);
    for (const char* verb : {"validate", "shifts", "diagonalize", "conv"}) {
        CLI::App* cmd = lattice->add_subcommand(verb);
        add_common(cmd, 0.0);
        if (verb == std::string("shifts")) {
            cmd->add_option("--element", element, "canonical element index (default: all)");
        }
        cmd->callback([&, verb] { dispatch("lattice", verb); });
    }

    CLI::App* cnn = app.add_subcommand("cnn", "convolution of images on the integer plane");
    cnn->require_subcommand(1);
    for (const char* verb : {"conv", "equiv"}) {
        CLI::App* cmd = cnn->add_subcommand(verb);
        add_common(cmd, 0.0);
        cmd->callback([&, verb] { dispatch("cnn", verb); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return result;
}
