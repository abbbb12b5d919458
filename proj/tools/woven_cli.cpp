// Command-line front end: parses frame files, dispatches to the library, and
// prints one JSON report per invocation on standard output.
//
// Exit codes:
//   0  success / woven / certificate applicable
//   1  checked and negative: not woven, certificate not applicable,
//      or a counterexample search that found nothing
//   2  input error (bad files, bad shapes, bad values, bad usage)
//   3  numerical failure (eigensolver did not converge)
//
// Reports on exit codes 0 and 1 are byte-identical across repeated runs
// except for the timestamp, which --deterministic suppresses.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "woven/certificates.hpp"
#include "woven/duality.hpp"
#include "woven/errors.hpp"
#include "woven/frame.hpp"
#include "woven/numerics.hpp"
#include "woven/report_json.hpp"
#include "woven/weaving.hpp"

namespace {

constexpr int kExitNegative = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNumerical = 3;

using nlohmann::json;

void need_files(const std::vector<std::string>& files, std::size_t count, const char* name) {
    if (files.size() != count) {
        throw woven::ValueError(std::string("certificate ") + name + " takes " +
                                std::to_string(count) + " frame file(s), got " +
                                std::to_string(files.size()));
    }
}

// Perturbation for a frame: explicit coefficients when a file is given,
// otherwise seeded random coefficients.
woven::PerturbationSequence acquire_perturbation(const woven::Frame& frame,
                                                 const std::string& coeffs_path,
                                                 std::uint64_t seed, double scale) {
    if (!coeffs_path.empty()) {
        const woven::DualFamily family = woven::perturbation_space(frame);
        return woven::make_dual(family, woven::load_matrix(coeffs_path)).u;
    }
    return woven::random_dual(frame, seed, scale).u;
}

struct CertifyArgs {
    std::string name;
    std::vector<std::string> files;
    std::string u_file;
    std::string coeffs_file;
    std::string coeffs2_file;
    std::uint64_t seed = 1;
    std::uint64_t seed2 = 0;  // 0: derive as seed + 1
    double scale = 0.1;
    double scale2 = -1.0;  // negative: same as scale
    double eps = 0.0;
    std::string direction = "originals-to-duals";
    bool variant = false;
    double a1 = 0.0, a2 = 0.0, b_psi = 0.0, b1 = 0.0, b2 = 0.0;
    std::vector<double> alpha;
    std::vector<double> beta;
    int threads = 0;
};

woven::CertificateResult run_certificate(const CertifyArgs& a,
                                         std::vector<std::string>& inputs) {
    using namespace woven;
    const ExhaustiveOptions opts{a.threads};
    inputs = a.files;
    if (!a.u_file.empty()) inputs.push_back(a.u_file);
    if (!a.coeffs_file.empty()) inputs.push_back(a.coeffs_file);
    if (!a.coeffs2_file.empty()) inputs.push_back(a.coeffs2_file);
    const std::uint64_t seed2 = a.seed2 != 0 ? a.seed2 : a.seed + 1;
    const double scale2 = a.scale2 >= 0.0 ? a.scale2 : a.scale;

    if (a.name == "synthesis_proximity") {
        need_files(a.files, 2, "synthesis_proximity");
        return cert_synthesis_proximity(load_frame(a.files[0]), load_frame(a.files[1]));
    }
    if (a.name == "operator_multiplier") {
        need_files(a.files, 1, "operator_multiplier");
        if (a.u_file.empty()) throw ValueError("operator_multiplier requires --u MATRIX_FILE");
        return cert_operator_multiplier(load_frame(a.files[0]), load_matrix(a.u_file));
    }
    if (a.name == "transitive_bridge") {
        need_files(a.files, 0, "transitive_bridge");
        return cert_transitive_bridge(a.a1, a.a2, a.b_psi, a.b1, a.b2);
    }
    if (a.name == "bessel_union") {
        if (a.files.empty()) throw ValueError("bessel_union takes at least one frame file");
        std::vector<Frame> frames;
        frames.reserve(a.files.size());
        for (const std::string& path : a.files) frames.push_back(load_frame(path));
        return cert_bessel_union(frames);
    }
    if (a.name == "redundant_small_norm") {
        need_files(a.files, 1, "redundant_small_norm");
        const Frame phi = load_frame(a.files[0]);
        return cert_redundant_small_norm(
            phi, acquire_perturbation(phi, a.coeffs_file, a.seed, a.scale), a.eps, opts);
    }
    if (a.name == "dual_transfer") {
        need_files(a.files, 2, "dual_transfer");
        const Frame phi = load_frame(a.files[0]);
        return cert_dual_transfer(phi, load_frame(a.files[1]),
                                  acquire_perturbation(phi, a.coeffs_file, a.seed, a.scale),
                                  opts);
    }
    if (a.name == "canonical_dual_self") {
        need_files(a.files, 1, "canonical_dual_self");
        return cert_canonical_dual_self(load_frame(a.files[0]));
    }
    if (a.name == "dual_family") {
        need_files(a.files, 1, "dual_family");
        const Frame phi = load_frame(a.files[0]);
        return cert_dual_family(phi,
                                acquire_perturbation(phi, a.coeffs_file, a.seed, a.scale));
    }
    if (a.name == "parseval_dual_pair") {
        need_files(a.files, 2, "parseval_dual_pair");
        const Frame phi = load_frame(a.files[0]);
        const Frame psi = load_frame(a.files[1]);
        return cert_parseval_dual_pair(
            phi, psi, acquire_perturbation(phi, a.coeffs_file, a.seed, a.scale),
            acquire_perturbation(psi, a.coeffs2_file, seed2, scale2), opts);
    }
    if (a.name == "perturbed_duals") {
        need_files(a.files, 2, "perturbed_duals");
        const Frame phi = load_frame(a.files[0]);
        const Frame psi = load_frame(a.files[1]);
        return cert_perturbed_duals(
            phi, psi, acquire_perturbation(phi, a.coeffs_file, a.seed, a.scale),
            acquire_perturbation(psi, a.coeffs2_file, seed2, scale2), a.variant, opts);
    }
    if (a.name == "duals_to_frames") {
        need_files(a.files, 4, "duals_to_frames");
        const Frame phi = load_frame(a.files[0]);
        const Frame psi = load_frame(a.files[1]);
        const Frame phid = load_frame(a.files[2]);
        const Frame psid = load_frame(a.files[3]);
        // The perturbation is the first dual's offset from the canonical dual.
        const Matrix offset =
            synthesis(phid) -
            spd_power(frame_operator(phi), -1.0) * synthesis(phi);
        return cert_duals_to_frames(phi, psi, phid, psid,
                                    PerturbationSequence::from_vectors(offset), opts);
    }
    if (a.name == "canonical_pair") {
        need_files(a.files, 2, "canonical_pair");
        DualDirection dir;
        if (a.direction == "originals-to-duals") {
            dir = DualDirection::OriginalsToDuals;
        } else if (a.direction == "duals-to-originals") {
            dir = DualDirection::DualsToOriginals;
        } else {
            throw ValueError(
                "--direction must be originals-to-duals or duals-to-originals");
        }
        return cert_canonical_pair(load_frame(a.files[0]), load_frame(a.files[1]), dir, opts);
    }
    if (a.name == "canonical_parseval") {
        need_files(a.files, 2, "canonical_parseval");
        return cert_canonical_parseval(load_frame(a.files[0]), load_frame(a.files[1]), opts);
    }
    if (a.name == "scalar_weaving") {
        need_files(a.files, 2, "scalar_weaving");
        return cert_scalar_weaving(load_frame(a.files[0]), load_frame(a.files[1]), a.alpha,
                                   a.beta, opts);
    }
    throw ValueError("unknown certificate: " + a.name);
}

int run(int argc, char** argv) {
    CLI::App app{"finite woven-frame toolkit"};
    app.require_subcommand(1);
    bool deterministic = false;
    app.add_flag("--deterministic", deterministic,
                 "omit the timestamp so reports are byte-identical");

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "optimal frame bounds of one frame");
    std::string bounds_file;
    bounds_cmd->add_option("frame", bounds_file, "frame JSON file")->required();

    // excess
    auto* excess_cmd =
        app.add_subcommand("excess", "excess and greedy spanning/redundant split");
    std::string excess_file;
    excess_cmd->add_option("frame", excess_file, "frame JSON file")->required();

    // dual
    auto* dual_cmd =
        app.add_subcommand("dual", "canonical dual plus seeded random duals");
    std::string dual_file;
    std::uint64_t dual_seed = 1;
    double dual_scale = 0.1;
    std::size_t dual_count = 1;
    dual_cmd->add_option("frame", dual_file, "frame JSON file")->required();
    dual_cmd->add_option("--seed", dual_seed, "seed of the first dual (k-th uses seed+k)");
    dual_cmd->add_option("--scale", dual_scale, "coefficient range [-scale, scale]");
    dual_cmd->add_option("--count", dual_count, "number of random duals");

    // weave
    auto* weave_cmd = app.add_subcommand("weave", "wovenness check of a pair");
    std::vector<std::string> weave_files;
    bool weave_exhaustive = false;
    std::string weave_cert;
    int weave_threads = 0;
    weave_cmd->add_option("frames", weave_files, "two frame JSON files")
        ->expected(2)
        ->required();
    auto* exhaustive_flag = weave_cmd->add_flag(
        "--exhaustive", weave_exhaustive, "scan all partitions (the default mode)");
    weave_cmd
        ->add_option("--cert", weave_cert,
                     "prove wovenness with the named certificate instead of scanning")
        ->excludes(exhaustive_flag);
    weave_cmd->add_option("--threads", weave_threads, "worker count (0 = all available)");

    // weave-multi
    auto* multi_cmd =
        app.add_subcommand("weave-multi", "exhaustive wovenness check of several frames");
    std::vector<std::string> multi_files;
    int multi_threads = 0;
    multi_cmd->add_option("frames", multi_files, "two or more frame JSON files")
        ->expected(2, -1)
        ->required();
    multi_cmd->add_option("--threads", multi_threads, "worker count (0 = all available)");

    // certify
    auto* certify_cmd =
        app.add_subcommand("certify", "evaluate a sufficient-condition certificate");
    CertifyArgs cert;
    certify_cmd->add_option("name", cert.name, "certificate name")->required();
    certify_cmd->add_option("files", cert.files, "frame JSON files (count depends on name)");
    certify_cmd->add_option("--u", cert.u_file, "matrix JSON file (operator_multiplier)");
    certify_cmd->add_option("--coeffs", cert.coeffs_file,
                            "perturbation coefficient matrix for the first frame");
    certify_cmd->add_option("--coeffs2", cert.coeffs2_file,
                            "perturbation coefficient matrix for the second frame");
    certify_cmd->add_option("--seed", cert.seed, "seed for the first random perturbation");
    certify_cmd->add_option("--seed2", cert.seed2,
                            "seed for the second random perturbation (default seed+1)");
    certify_cmd->add_option("--scale", cert.scale, "random coefficient range");
    certify_cmd->add_option("--scale2", cert.scale2,
                            "random coefficient range for the second perturbation");
    certify_cmd->add_option("--eps", cert.eps, "perturbation level (redundant_small_norm)");
    certify_cmd->add_option("--direction", cert.direction,
                            "originals-to-duals or duals-to-originals (canonical_pair)");
    certify_cmd->add_flag("--variant", cert.variant,
                          "use each frame's own inverse operator (perturbed_duals)");
    certify_cmd->add_option("--a1", cert.a1, "lower bound of the first woven pair");
    certify_cmd->add_option("--a2", cert.a2, "lower bound of the second woven pair");
    certify_cmd->add_option("--b-psi", cert.b_psi, "upper bound of the middle frame");
    certify_cmd->add_option("--b1", cert.b1, "upper bound of the first woven pair");
    certify_cmd->add_option("--b2", cert.b2, "upper bound of the second woven pair");
    certify_cmd->add_option("--alpha", cert.alpha, "comma-separated scalars for the first frame")
        ->delimiter(',');
    certify_cmd->add_option("--beta", cert.beta, "comma-separated scalars for the second frame")
        ->delimiter(',');
    certify_cmd->add_option("--threads", cert.threads, "worker count for exhaustive scans");

    // search
    auto* search_cmd =
        app.add_subcommand("search", "seeded random hunt for non-woven pairs");
    std::size_t search_dim = 0;
    std::size_t search_count = 0;
    std::size_t search_trials = 100;
    std::uint64_t search_seed = 1;
    int search_threads = 0;
    search_cmd->add_option("--dim", search_dim, "space dimension")->required();
    search_cmd->add_option("--count", search_count, "vectors per frame")->required();
    search_cmd->add_option("--trials", search_trials, "number of random pairs");
    search_cmd->add_option("--seed", search_seed, "seed of the random stream");
    search_cmd->add_option("--threads", search_threads, "worker count per exhaustive scan");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInputError;
    }

    if (*bounds_cmd) {
        const woven::Frame f = woven::load_frame(bounds_file);
        std::cout << woven::render_report("bounds", {bounds_file},
                                          woven::bounds_to_json(woven::frame_bounds(f)),
                                          deterministic);
        return 0;
    }

    if (*excess_cmd) {
        const woven::Frame f = woven::load_frame(excess_file);
        std::cout << woven::render_report("excess", {excess_file},
                                          woven::excess_to_json(woven::excess(f)),
                                          deterministic);
        return 0;
    }

    if (*dual_cmd) {
        const woven::Frame f = woven::load_frame(dual_file);
        const woven::DualFamily family = woven::perturbation_space(f);
        json duals = json::array();
        for (std::size_t k = 0; k < dual_count; ++k) {
            const woven::DualResult d = woven::random_dual(f, dual_seed + k, dual_scale);
            duals.push_back(json{{"seed", dual_seed + k},
                                 {"frame", woven::frame_to_json(d.dual)},
                                 {"bessel_bound", d.u.bessel_bound},
                                 {"verified", woven::verify_duality(f, d.dual)}});
        }
        const json result{{"canonical", woven::frame_to_json(family.canonical)},
                          {"excess", family.excess()},
                          {"duals", duals}};
        std::cout << woven::render_report("dual", {dual_file}, result, deterministic);
        return 0;
    }

    if (*weave_cmd) {
        if (!weave_cert.empty()) {
            // Certificate mode: a sufficient condition stands in for the scan.
            CertifyArgs shorthand;
            shorthand.name = weave_cert;
            shorthand.files = weave_files;
            shorthand.threads = weave_threads;
            std::vector<std::string> inputs;
            woven::CertificateResult result;
            try {
                result = run_certificate(shorthand, inputs);
            } catch (const woven::NotWoven& e) {
                result.name = weave_cert;
                result.applicable = false;
                result.failed_condition = e.what();
            }
            std::cout << woven::render_report("weave --cert " + weave_cert, inputs,
                                              woven::certificate_to_json(result),
                                              deterministic);
            return result.applicable ? 0 : kExitNegative;
        }
        const woven::Frame phi = woven::load_frame(weave_files[0]);
        const woven::Frame psi = woven::load_frame(weave_files[1]);
        const woven::WeavingVerdict v =
            woven::exhaustive_pair(phi, psi, woven::ExhaustiveOptions{weave_threads});
        std::cout << woven::render_report("weave", weave_files, woven::verdict_to_json(v),
                                          deterministic);
        return v.woven ? 0 : kExitNegative;
    }

    if (*multi_cmd) {
        std::vector<woven::Frame> frames;
        frames.reserve(multi_files.size());
        for (const std::string& path : multi_files) frames.push_back(woven::load_frame(path));
        const woven::WeavingVerdict v =
            woven::exhaustive_multi(frames, woven::ExhaustiveOptions{multi_threads});
        std::cout << woven::render_report("weave-multi", multi_files,
                                          woven::verdict_to_json(v), deterministic);
        return v.woven ? 0 : kExitNegative;
    }

    if (*certify_cmd) {
        std::vector<std::string> inputs;
        woven::CertificateResult result;
        try {
            result = run_certificate(cert, inputs);
        } catch (const woven::NotWoven& e) {
            // "Checked and negative": the hypothesis pair itself failed the
            // exhaustive check, so the certificate cannot apply.
            result.name = cert.name;
            result.applicable = false;
            result.failed_condition = e.what();
        }
        std::cout << woven::render_report("certify " + cert.name, inputs,
                                          woven::certificate_to_json(result), deterministic);
        return result.applicable ? 0 : kExitNegative;
    }

    if (*search_cmd) {
        const std::vector<woven::CounterexampleRecord> found = woven::counterexample_search(
            search_dim, search_count, search_trials, search_seed,
            woven::ExhaustiveOptions{search_threads});
        json records = json::array();
        for (const woven::CounterexampleRecord& rec : found) {
            records.push_back(json{{"trial", rec.trial},
                                   {"phi", woven::frame_to_json(rec.phi)},
                                   {"psi", woven::frame_to_json(rec.psi)},
                                   {"verdict", woven::verdict_to_json(rec.verdict)}});
        }
        const json result{{"dim", search_dim},
                          {"count", search_count},
                          {"trials", search_trials},
                          {"found", found.size()},
                          {"counterexamples", records}};
        std::cout << woven::render_report("search", {}, result, deterministic);
        return found.empty() ? kExitNegative : 0;
    }

    return kExitInputError;  // unreachable: a subcommand is required
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const woven::NoConvergence& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const woven::Error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
