// blindrate: blind code-rate recovery for binary linear block codes over
// BPSK/AWGN, plus the closed-form recovery-quality metrics and the
// threshold optimizer that go with it.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blindrate/codes.hpp"
#include "blindrate/errors.hpp"
#include "blindrate/estimator.hpp"
#include "blindrate/experiment.hpp"
#include "blindrate/frame_io.hpp"
#include "blindrate/optimize.hpp"
#include "blindrate/rng.hpp"
#include "blindrate/theory.hpp"

namespace {

using namespace blindrate;

std::string fmt(double value, int precision = 10) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
    return buffer;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

/// Writes to --out when given, stdout otherwise.
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_ = open_output(path);
            stream_ = &file_;
        }
    }
    std::ostream& stream() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_ = &std::cout;
};

void print_report(std::ostream& out, const RecoveryReport& r) {
    out << "n=" << r.n << '\n'
        << "m_s=" << r.m_s << '\n'
        << "frames_consumed=" << r.frames_consumed << '\n'
        << "k_prime=" << r.k_prime << '\n'
        << "e_c=" << fmt(r.e_c) << '\n'
        << "rho_naive=" << fmt(r.rho_naive) << '\n'
        << "rho_corrected=" << fmt(r.rho_corrected) << '\n'
        << "correction_degenerate=" << (r.correction_degenerate ? 1 : 0) << '\n'
        << "correction_clamped=" << (r.correction_clamped ? 1 : 0) << '\n'
        << "sigma2_hat=" << fmt(r.channel.sigma2) << '\n'
        << "snr_db_hat=" << fmt(r.channel.snr_db) << '\n'
        << "p_e_hat=" << fmt(r.channel.p_e) << '\n'
        << "t1=" << fmt(r.params.t1) << '\n'
        << "t2=" << r.params.t2 << '\n';
}

constexpr const char* kReportCsvHeader =
    "n,m_s,frames_consumed,k_prime,e_c,rho_naive,rho_corrected,sigma2_hat,snr_db_hat,p_e_hat,t1,t2";

std::string report_csv_row(const RecoveryReport& r) {
    std::string row;
    row += std::to_string(r.n) + ',' + std::to_string(r.m_s) + ',' + std::to_string(r.frames_consumed) +
           ',' + std::to_string(r.k_prime) + ',' + fmt(r.e_c) + ',' + fmt(r.rho_naive) + ',' +
           fmt(r.rho_corrected) + ',' + fmt(r.channel.sigma2) + ',' + fmt(r.channel.snr_db) + ',' +
           fmt(r.channel.p_e) + ',' + fmt(r.params.t1) + ',' + std::to_string(r.params.t2);
    return row;
}

struct CodeSelection {
    std::size_t n = 0;
    std::size_t k = 0;
    std::uint64_t code_seed = 1;
    std::string alist_path;

    LinearCode load() const {
        if (!alist_path.empty()) {
            std::ifstream in(alist_path);
            if (!in) throw std::runtime_error("cannot open alist file: " + alist_path);
            return code_from_alist(in);
        }
        return random_code(n, k, code_seed);
    }
};

void add_code_options(CLI::App* cmd, CodeSelection& sel) {
    auto* n_opt = cmd->add_option("--n", sel.n, "codeword length of the random code");
    auto* k_opt = cmd->add_option("--k", sel.k, "message length of the random code");
    cmd->add_option("--code-seed", sel.code_seed, "seed for the random generator matrix")
        ->capture_default_str();
    auto* alist = cmd->add_option("--alist", sel.alist_path,
                                  "alist parity-check file; overrides --n/--k");
    n_opt->needs(k_opt);
    k_opt->needs(n_opt);
    alist->excludes(n_opt);
    cmd->parse_complete_callback([&sel, alist, n_opt]() {
        if (alist->count() == 0 && n_opt->count() == 0)
            throw CLI::ValidationError("code", "give either --alist or --n with --k");
    });
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
    CodeSelection code;
    std::vector<double> snr_db;
    std::size_t messages = 1000;
    std::size_t trials = 1;
    double t1 = -1.0;
    long long t2 = -1;
    std::size_t m_s = 0;
    bool auto_params = false;
    std::uint64_t seed = 1;
    std::string out_path;
    std::string dump_frames_path;
};

int run_simulate(const SimulateOptions& opt) {
    const LinearCode code = opt.code.load();

    std::optional<FilterParams> params;
    if (!opt.auto_params) {
        if (opt.t1 < 0.0 || opt.t2 < 0)
            throw CLI::ValidationError("simulate", "give --t1 and --t2, or pass --auto");
        params = FilterParams{opt.t1, static_cast<std::size_t>(opt.t2),
                              opt.m_s != 0 ? opt.m_s : code.n};
    }
    if (!opt.dump_frames_path.empty() && (opt.snr_db.size() != 1 || opt.trials != 1))
        throw CLI::ValidationError("simulate", "--dump-frames needs exactly one SNR and one trial");

    OutputTarget out(opt.out_path);
    out.stream() << "snr_db,trial,k_prime,e_c_theory,c_observed,rho_naive,rho_corrected,frames_consumed\n";

    for (std::size_t si = 0; si < opt.snr_db.size(); ++si) {
        for (std::size_t trial = 0; trial < opt.trials; ++trial) {
            const bool keep = !opt.dump_frames_path.empty();
            const SimPoint point = run_sim_point(code, opt.snr_db[si], opt.messages, params,
                                                 derive_seed(opt.seed, si, trial), opt.m_s, keep);
            out.stream() << fmt(opt.snr_db[si]) << ',' << trial << ',' << point.report.k_prime << ','
                         << fmt(point.e_c_theory) << ',' << point.c_observed << ','
                         << fmt(point.report.rho_naive) << ',' << fmt(point.report.rho_corrected) << ','
                         << point.report.frames_consumed << '\n';
            if (keep) write_frame_file(opt.dump_frames_path, point.frames);
        }
    }
    return 0;
}

// ------------------------------------------------------------------ theory

struct TheoryOptions {
    std::size_t n = 0;
    double snr_db = 0.0;
    double t1 = 0.0;
    long long t2 = 0;
    std::size_t m_s = 0;
    std::string out_path;
};

int run_theory(const TheoryOptions& opt) {
    if (opt.t1 < 0.0 || opt.t1 > 1.0) throw CLI::ValidationError("theory", "--t1 must lie in [0, 1]");
    if (opt.t2 < 0 || static_cast<std::size_t>(opt.t2) > opt.n)
        throw CLI::ValidationError("theory", "--t2 must lie in 0..n");
    const std::size_t m_s = opt.m_s != 0 ? opt.m_s : opt.n;
    const double sigma = std::pow(10.0, -opt.snr_db / 20.0);
    const TheoryMetrics m = compute_metrics(TheoryInputs{opt.n, m_s, sigma, opt.t1,
                                                         static_cast<std::size_t>(opt.t2)});

    OutputTarget out(opt.out_path);
    out.stream() << "n=" << opt.n << '\n'
                 << "m_s=" << m_s << '\n'
                 << "snr_db=" << fmt(opt.snr_db) << '\n'
                 << "sigma=" << fmt(sigma) << '\n'
                 << "t1=" << fmt(opt.t1) << '\n'
                 << "t2=" << opt.t2 << '\n'
                 << "p_e=" << fmt(m.p_e) << '\n'
                 << "p_u=" << fmt(m.p_u) << '\n'
                 << "p_eu=" << fmt(m.p_eu) << '\n'
                 << "p_er=" << fmt(m.p_er) << '\n'
                 << "algorithmic_error=" << fmt(m.algorithmic_error) << '\n'
                 << "ambient_error=" << fmt(m.ambient_error) << '\n'
                 << "e_c_exact=" << fmt(m.e_c_exact) << '\n'
                 << "e_c_approx=" << fmt(m.e_c_approx) << '\n'
                 << "e_m=" << fmt(m.e_m) << '\n';
    return 0;
}

// ---------------------------------------------------------------- optimize

struct OptimizeOptions {
    std::size_t n = 0;
    double snr_db = 0.0;
    std::size_t budget = 0;  // 0: unconstrained
    double step = 0.01;
    double tolerance = 0.25;
    std::string contour_path;
    std::string out_path;
};

int run_optimize(const OptimizeOptions& opt) {
    const double sigma = std::pow(10.0, -opt.snr_db / 20.0);

    const OptimizationResult result =
        opt.budget == 0 ? optimize_unconstrained(opt.n, sigma, opt.step)
                        : optimize_constrained(opt.n, sigma, opt.budget, opt.step, opt.tolerance);

    OutputTarget out(opt.out_path);
    out.stream() << "mode=" << (opt.budget == 0 ? "unconstrained" : "constrained") << '\n';
    if (opt.budget != 0) {
        out.stream() << "budget=" << opt.budget << '\n'
                     << "f_band_low=" << fmt(static_cast<double>(opt.n) / opt.budget) << '\n'
                     << "f_band_high=" << fmt(static_cast<double>(opt.n) / opt.budget * (1 + opt.tolerance))
                     << '\n';
    }
    out.stream() << "t1_star=" << fmt(result.t1_star) << '\n'
                 << "t2_star=" << result.t2_star << '\n'
                 << "objective=" << fmt(result.objective) << '\n'
                 << "constraint_value=" << fmt(result.constraint_value) << '\n'
                 << "grid_resolution=" << fmt(result.grid_resolution) << '\n';

    if (!opt.contour_path.empty()) {
        std::ofstream contour = open_output(opt.contour_path);
        contour << "t1,t2,algorithmic_error,f_value\n";
        for (const ContourRow& row : contour_grid(opt.n, sigma, opt.step))
            contour << fmt(row.t1) << ',' << row.t2 << ',' << fmt(row.algorithmic_error) << ','
                    << fmt(row.f_value) << '\n';
    }
    return 0;
}

// ----------------------------------------------------------------- recover

struct RecoverCliOptions {
    std::string frames_path;
    std::size_t n = 0;
    double t1 = -1.0;
    long long t2 = -1;
    std::size_t m_s = 0;
    std::string csv_path;
    std::string out_path;
};

int run_recover(const RecoverCliOptions& opt) {
    const std::vector<LlrFrame> frames = read_frame_file(opt.frames_path, opt.n);

    RecoverOptions options;
    options.m_s = opt.m_s;
    const bool has_t1 = opt.t1 >= 0.0;
    const bool has_t2 = opt.t2 >= 0;
    if (has_t1 != has_t2) throw CLI::ValidationError("recover", "--t1 and --t2 go together");
    if (has_t1)
        options.params = FilterParams{opt.t1, static_cast<std::size_t>(opt.t2),
                                      opt.m_s != 0 ? opt.m_s : opt.n};

    const RecoveryReport report = recover(frames, opt.n, options);

    OutputTarget out(opt.out_path);
    print_report(out.stream(), report);

    if (!opt.csv_path.empty()) {
        const bool fresh = !std::ifstream(opt.csv_path).good();
        std::ofstream csv(opt.csv_path, std::ios::app);
        if (!csv) throw std::runtime_error("cannot open CSV file: " + opt.csv_path);
        if (fresh) csv << kReportCsvHeader << '\n';
        csv << report_csv_row(report) << '\n';
    }
    return 0;
}

// --------------------------------------------------------- verify-theorem1

struct VerifyOptions {
    std::size_t d = 0;
    std::size_t m_s = 0;
    double p_e_prime = 0.0;
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    std::string out_path;
};

int run_verify_theorem1(const VerifyOptions& opt) {
    OutputTarget out(opt.out_path);
    out.stream() << "d=" << opt.d << '\n'
                 << "m_s=" << opt.m_s << '\n'
                 << "p_e_prime=" << fmt(opt.p_e_prime) << '\n'
                 << "trials=" << opt.trials << '\n';

    if (opt.p_e_prime == 0.0) {
        // No flips are ever injected, so the conditioning event never occurs.
        out.stream() << "conditioned_trials=0\n"
                     << "observed_frequency=nan\n"
                     << "bound=1\n"
                     << "verdict=PASS (vacuous: no error events)\n";
        return 0;
    }

    const RankIncreaseBound bound = rank_increase_bound(ToyModelParams{opt.d, opt.m_s, opt.p_e_prime});
    const RankIncreaseTrialStats stats =
        simulate_rank_increase(opt.d, opt.m_s, opt.p_e_prime, opt.trials, opt.seed);

    const double se = stats.conditioned_trials > 0
                          ? std::sqrt(stats.frequency * (1.0 - stats.frequency) /
                                      static_cast<double>(stats.conditioned_trials))
                          : 0.0;
    const bool pass = stats.conditioned_trials == 0 || stats.frequency >= bound.bound - 3.0 * se;

    out.stream() << "conditioned_trials=" << stats.conditioned_trials << '\n'
                 << "rank_increased=" << stats.rank_increased << '\n'
                 << "observed_frequency=" << fmt(stats.frequency) << '\n'
                 << "bound=" << fmt(bound.bound, 12) << '\n'
                 << "simplified_bound=" << fmt(bound.simplified_bound, 12) << '\n'
                 << "min_distance_bound=" << fmt(bound.min_distance_bound) << '\n'
                 << "standard_error=" << fmt(se) << '\n'
                 << "verdict=" << (pass ? "PASS" : "FAIL") << " (observed >= bound - 3*stderr)\n";
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"blind code-rate recovery for [n, k] linear block codes over BPSK/AWGN"};
    app.require_subcommand(1);
    int rc = 0;

    SimulateOptions sim_opt;
    auto* sim = app.add_subcommand(
        "simulate", "encode random messages, add noise, run blind recovery, emit per-trial CSV\n"
                    "columns: snr_db,trial,k_prime,e_c_theory,c_observed,rho_naive,rho_corrected,"
                    "frames_consumed");
    add_code_options(sim, sim_opt.code);
    sim->add_option("--snr", sim_opt.snr_db, "SNR points in dB (comma separated)")
        ->required()
        ->delimiter(',');
    sim->add_option("--messages", sim_opt.messages, "codewords transmitted per trial")
        ->capture_default_str();
    sim->add_option("--trials", sim_opt.trials, "trials per SNR point")->capture_default_str();
    sim->add_option("--t1", sim_opt.t1, "reliability threshold in [0, 1]");
    sim->add_option("--t2", sim_opt.t2, "max unreliable symbols per suitable frame");
    sim->add_option("--ms", sim_opt.m_s, "word-matrix rows (default: n)");
    sim->add_flag("--auto", sim_opt.auto_params, "tune t1/t2 from the stream itself");
    sim->add_option("--seed", sim_opt.seed, "base seed; output is byte-identical per seed")
        ->capture_default_str();
    sim->add_option("--out", sim_opt.out_path, "CSV output path (default: stdout)");
    sim->add_option("--dump-frames", sim_opt.dump_frames_path,
                    "also write the received frames (single SNR, single trial only)");
    sim->set_config("--config");
    sim->callback([&]() { rc = run_simulate(sim_opt); });

    TheoryOptions th_opt;
    auto* th = app.add_subcommand("theory", "closed-form recovery metrics as a key=value block");
    th->add_option("--n", th_opt.n, "codeword length")->required();
    th->add_option("--snr-db", th_opt.snr_db, "channel SNR in dB")->required();
    th->add_option("--t1", th_opt.t1, "reliability threshold in [0, 1]")->required();
    th->add_option("--t2", th_opt.t2, "max unreliable symbols per suitable frame")->required();
    th->add_option("--ms", th_opt.m_s, "word-matrix rows (default: n)");
    th->add_option("--out", th_opt.out_path, "output path (default: stdout)");
    th->set_config("--config");
    th->callback([&]() { rc = run_theory(th_opt); });

    OptimizeOptions op_opt;
    auto* op = app.add_subcommand("optimize",
                                  "grid-search t1/t2 minimizing the algorithmic error; --budget adds "
                                  "the frame-budget acceptance constraint");
    op->add_option("--n", op_opt.n, "codeword length")->required();
    op->add_option("--snr-db", op_opt.snr_db, "channel SNR in dB")->required();
    op->add_option("--budget", op_opt.budget, "frame budget M (omit for the unconstrained problem)");
    op->add_option("--step", op_opt.step, "t1 grid step")->capture_default_str();
    op->add_option("--tolerance", op_opt.tolerance, "width of the acceptance band above n/M")
        ->capture_default_str();
    op->add_option("--contour", op_opt.contour_path,
                   "write the full grid as CSV: t1,t2,algorithmic_error,f_value");
    op->add_option("--out", op_opt.out_path, "output path (default: stdout)");
    op->set_config("--config");
    op->callback([&]() { rc = run_optimize(op_opt); });

    RecoverCliOptions rec_opt;
    auto* rec = app.add_subcommand("recover",
                                   "recover the code rate from an LLR frame file (one frame per "
                                   "line, space-separated symbols)");
    rec->add_option("--frames", rec_opt.frames_path, "LLR frame file")->required();
    rec->add_option("--n", rec_opt.n, "codeword length")->required();
    rec->add_option("--t1", rec_opt.t1, "reliability threshold (omit both thresholds to auto-tune)");
    rec->add_option("--t2", rec_opt.t2, "max unreliable symbols per suitable frame");
    rec->add_option("--ms", rec_opt.m_s, "word-matrix rows (default: n)");
    rec->add_option("--csv", rec_opt.csv_path,
                    std::string("append the report as a CSV row; header: ") + kReportCsvHeader);
    rec->add_option("--out", rec_opt.out_path, "output path (default: stdout)");
    rec->set_config("--config");
    rec->callback([&]() { rc = run_recover(rec_opt); });

    VerifyOptions ver_opt;
    auto* ver = app.add_subcommand("verify-theorem1",
                                   "Monte Carlo check of the rank-increase lower bound on the toy "
                                   "model (d columns plus their XOR parity)");
    ver->add_option("--d", ver_opt.d, "independent columns")->required();
    ver->add_option("--ms", ver_opt.m_s, "column length")->required();
    ver->add_option("--pe", ver_opt.p_e_prime, "bit-flip probability")->required();
    ver->add_option("--trials", ver_opt.trials, "Monte Carlo trials")->capture_default_str();
    ver->add_option("--seed", ver_opt.seed, "base seed")->capture_default_str();
    ver->add_option("--out", ver_opt.out_path, "output path (default: stdout)");
    ver->set_config("--config");
    ver->callback([&]() { rc = run_verify_theorem1(ver_opt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return rc;
}
