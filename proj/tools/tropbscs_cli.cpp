// tropbscs command-line front end. Talks to the library only through the C API.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "tropbscs/tropbscs.h"

namespace {

constexpr std::uint64_t kDefaultSeed = 20240917;
constexpr const char* kSeedEnv = "TROPBSCS_SEED";
constexpr const char* kDefaultStation =
    R"({"dist": {"exp": {"mean": 25}}, "b": 5, "c": 100, "m": 4})";

enum ExitCode { kOk = 0, kUsage = 1, kVerifyFail = 2 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(tb_status status, const std::string& what) {
    if (status != TB_OK) {
        throw UsageError(what + ": " + tb_status_name(status) + ": " + tb_last_error());
    }
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using StationPtr = std::unique_ptr<tb_station, Deleter<tb_station, tb_station_free>>;
using TracePtr = std::unique_ptr<tb_trace, Deleter<tb_trace, tb_trace_free>>;
using MatrixPtr = std::unique_ptr<tb_matrix, Deleter<tb_matrix, tb_matrix_free>>;
using NetworkPtr = std::unique_ptr<tb_network, Deleter<tb_network, tb_network_free>>;
using PlanPtr = std::unique_ptr<tb_plan, Deleter<tb_plan, tb_plan_free>>;

std::string take_string(char* s) {
    std::string out = s;
    tb_string_free(s);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Writes via a temporary sibling and renames, so a failed run leaves no partial file.
// Stages every file as <path>.tmp before renaming any, so a failure leaves
// no partial outputs behind.
void write_files(const std::vector<std::pair<std::string, std::string>>& files) {
    std::vector<std::string> staged;
    std::error_code ec;
    auto discard = [&] {
        for (const auto& tmp : staged) std::filesystem::remove(tmp, ec);
    };
    for (const auto& [path, text] : files) {
        const std::string tmp = path + ".tmp";
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            discard();
            throw UsageError("cannot write " + path);
        }
        staged.push_back(tmp);
        out << text;
        if (!out.flush()) {
            discard();
            throw UsageError("cannot write " + path);
        }
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
        std::filesystem::rename(staged[i], files[i].first, ec);
        if (ec) {
            discard();
            throw UsageError("cannot write " + files[i].first);
        }
    }
}

void write_file(const std::string& path, const std::string& text) { write_files({{path, text}}); }

std::string fmt(double v) {
    if (std::isinf(v) && v < 0) return "-inf";
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

std::string fmt_short(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv(kSeedEnv); env && *env) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw UsageError(std::string(kSeedEnv) + " is not an unsigned integer");
        }
    }
    return kDefaultSeed;
}

StationPtr load_station(const std::string& config) {
    const std::string text = config.empty() ? std::string(kDefaultStation) : read_file(config);
    tb_station* st = nullptr;
    check(tb_station_from_json(text.c_str(), &st), "station config");
    return StationPtr(st);
}

double exact_of(const tb_station* st) {
    double exact = 0.0;
    check(tb_station_exact_cycle_time(st, &exact), "exact cycle time");
    return exact;
}

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::size_t k = 0;
    std::size_t reps = 20;
    std::size_t stride = 5;
    double tol = 0.01;
    std::string out;

    [[nodiscard]] std::uint64_t seed_value() const { return seed ? *seed : default_seed(); }
};

int cmd_simulate(const Common& o, const std::string& figure_out) {
    auto st = load_station(o.config);
    const std::size_t horizon = o.k ? o.k : 200;
    tb_trace* raw = nullptr;
    check(tb_simulate(st.get(), horizon, o.seed_value(), &raw), "simulate");
    TracePtr trace(raw);
    const double exact = exact_of(st.get());

    char* csv = nullptr;
    check(tb_trace_to_csv(trace.get(), o.stride, &csv), "trace csv");
    const std::string trace_csv = take_string(csv);
    std::string figure_csv;
    if (!figure_out.empty()) {
        check(tb_trace_to_figure_csv(trace.get(), o.stride, exact, &csv), "figure csv");
        figure_csv = take_string(csv);
    }

    std::size_t n = 0, k = 0;
    double x = 0, y = 0, lambda_hat = 0;
    check(tb_trace_length(trace.get(), &n), "trace");
    check(tb_trace_row(trace.get(), n - 1, &k, &x, &y, &lambda_hat), "trace");

    std::ostream& summary = o.out.empty() ? std::cerr : std::cout;
    std::vector<std::pair<std::string, std::string>> files;
    if (!o.out.empty()) files.emplace_back(o.out, trace_csv);
    if (!figure_out.empty()) files.emplace_back(figure_out, figure_csv);
    write_files(files);
    if (o.out.empty()) std::cout << trace_csv;
    summary << "K=" << k << " lambda_hat=" << fmt(lambda_hat) << " exact=" << fmt(exact) << '\n';
    return kOk;
}

int cmd_verify(const Common& o) {
    auto st = load_station(o.config);
    const std::size_t horizon = o.k ? o.k : 100000;
    const std::uint64_t seed = o.seed_value();
    if (!(o.tol > 0)) throw UsageError("--tol must be positive");

    const double exact = exact_of(st.get());
    double estimate = 0, se = 0;
    check(tb_station_estimate_cycle_time(st.get(), horizon, o.reps, seed, &estimate, &se),
          "estimate");
    const double rel = std::abs(estimate - exact) / exact;
    const bool estimate_ok = rel <= o.tol;

    constexpr std::size_t kEquivalenceHorizon = 100;
    int equal = 0;
    check(tb_station_check_equivalence(st.get(), kEquivalenceHorizon, seed, &equal), "equivalence");

    std::ostringstream report;
    report << "{\n"
           << "  \"exact\": " << fmt(exact) << ",\n"
           << "  \"estimate\": " << fmt(estimate) << ",\n"
           << "  \"std_error\": " << fmt(se) << ",\n"
           << "  \"relative_error\": " << fmt(rel) << ",\n"
           << "  \"tolerance\": " << fmt(o.tol) << ",\n"
           << "  \"horizon\": " << horizon << ",\n"
           << "  \"replications\": " << o.reps << ",\n"
           << "  \"seed\": " << seed << ",\n"
           << "  \"estimate_pass\": " << (estimate_ok ? "true" : "false") << ",\n"
           << "  \"equivalence_horizon\": " << kEquivalenceHorizon << ",\n"
           << "  \"equivalence_pass\": " << (equal ? "true" : "false") << "\n"
           << "}\n";
    if (!o.out.empty()) write_file(o.out, report.str());

    std::cout << "exact          " << fmt(exact) << '\n'
              << "estimate       " << fmt(estimate) << " (K=" << horizon << ", reps=" << o.reps
              << ")\n"
              << "std error      " << fmt(se) << '\n'
              << "relative error " << fmt_short(rel) << " (tol " << fmt_short(o.tol) << ") "
              << (estimate_ok ? "PASS" : "FAIL") << '\n'
              << "y(k) == ||A_k|| for k <= " << kEquivalenceHorizon << ": "
              << (equal ? "PASS" : "FAIL") << '\n';
    return estimate_ok && equal ? kOk : kVerifyFail;
}

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("bad sweep value \"" + item + "\"");
        }
    }
    return out;
}

int cmd_sweep(const Common& o, const std::string& vary, const std::string& values) {
    auto base = load_station(o.config);
    if (vary != "a" && vary != "b" && vary != "c" && vary != "m") {
        throw UsageError("--vary must be one of a, b, c, m");
    }
    const auto points = parse_values(values);
    const std::size_t horizon = o.k ? o.k : 100000;
    const std::uint64_t seed = o.seed_value();

    // Validate every sweep point before running any simulation.
    std::vector<StationPtr> stations;
    for (double v : points) {
        tb_station* st = nullptr;
        check(tb_station_with(base.get(), vary.c_str(), v, &st), "sweep point " + fmt(v));
        stations.emplace_back(st);
    }

    std::ostringstream csv;
    csv << "value,exact,estimate,rel_error\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double exact = exact_of(stations[i].get());
        double estimate = 0, se = 0;
        check(tb_station_estimate_cycle_time(stations[i].get(), horizon, o.reps, seed, &estimate, &se),
              "estimate");
        csv << fmt(points[i]) << ',' << fmt(exact) << ',' << fmt(estimate) << ','
            << fmt(std::abs(estimate - exact) / exact) << '\n';
    }
    if (o.out.empty()) {
        std::cout << csv.str();
    } else {
        write_file(o.out, csv.str());
    }
    return kOk;
}

int cmd_allocate(const Common& o, std::size_t fleet_flag, bool oracle) {
    if (o.config.empty()) throw UsageError("allocate needs --config <network.json>");
    const std::string text = read_file(o.config);
    tb_network* raw = nullptr;
    std::size_t fleet = 0;
    check(tb_network_from_json(text.c_str(), &raw, &fleet), "network config");
    NetworkPtr net(raw);
    if (fleet_flag) fleet = fleet_flag;
    if (!fleet) throw UsageError("fleet size missing: pass --fleet or set \"M\" in the config");

    tb_plan* plan_raw = nullptr;
    check(tb_allocate_heuristic(net.get(), fleet, &plan_raw), "allocate");
    PlanPtr plan(plan_raw);

    std::optional<double> oracle_value;
    PlanPtr best;
    if (oracle) {
        tb_plan* best_raw = nullptr;
        check(tb_allocate_bruteforce(net.get(), fleet, &best_raw), "oracle");
        best.reset(best_raw);
        double v = 0;
        check(tb_plan_objective(best.get(), &v), "oracle");
        oracle_value = v;
    }

    char* json = nullptr;
    check(tb_plan_to_json(plan.get(), net.get(), &json), "plan");
    const std::string plan_json = take_string(json);
    if (o.out.empty()) {
        std::cout << plan_json << '\n';
    } else {
        write_file(o.out, plan_json + "\n");
    }

    double objective = 0;
    check(tb_plan_objective(plan.get(), &objective), "plan");
    std::ostream& info = o.out.empty() ? std::cerr : std::cout;
    info << "heuristic objective " << fmt(objective) << '\n';
    if (oracle_value) {
        std::size_t n = 0;
        check(tb_network_size(net.get(), &n), "network");
        info << "oracle objective    " << fmt(*oracle_value) << " counts [";
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t c = 0;
            check(tb_plan_count(best.get(), i, &c), "oracle");
            info << (i ? ", " : "") << c;
        }
        const double gap = *oracle_value > 0 ? (*oracle_value - objective) / *oracle_value : 0.0;
        info << "]\nrelative gap        " << fmt(gap) << '\n';
    }
    return kOk;
}

MatrixPtr parse_matrix(const std::string& text, const char* what) {
    tb_matrix* m = nullptr;
    check(tb_matrix_from_json(text.c_str(), &m), what);
    return MatrixPtr(m);
}

std::string matrix_json(const tb_matrix* m) {
    char* s = nullptr;
    check(tb_matrix_to_json(m, &s), "matrix output");
    return take_string(s);
}

std::string scalar_json(double v) { return std::isinf(v) && v < 0 ? "\"-inf\"" : fmt(v); }

int cmd_algebra(const std::string& op, const std::string& lhs, const std::string& rhs,
                std::size_t power_exp, const std::string& exponent) {
    using Unary = tb_status (*)(const tb_matrix*, tb_matrix**);
    using Binary = tb_status (*)(const tb_matrix*, const tb_matrix*, tb_matrix**);
    using Query = tb_status (*)(const tb_matrix*, double*);

    if (op == "scalar-pow") {
        const auto slash = exponent.find('/');
        long long num = 0, den = 1;
        try {
            num = std::stoll(exponent.substr(0, slash));
            if (slash != std::string::npos) den = std::stoll(exponent.substr(slash + 1));
        } catch (const std::exception&) {
            throw UsageError("--q must look like p or p/q");
        }
        double x = 0;
        if (lhs == "-inf" || lhs == "\"-inf\"") {
            x = -INFINITY;
        } else {
            try {
                x = std::stod(lhs);
            } catch (const std::exception&) {
                throw UsageError("scalar operand must be a number or -inf");
            }
        }
        double out = 0;
        check(tb_scalar_pow(x, num, den, &out), "scalar-pow");
        std::cout << scalar_json(out) << '\n';
        return kOk;
    }

    auto a = parse_matrix(lhs, "operand A");
    auto emit_matrix = [](tb_status s, tb_matrix* m, const std::string& what) {
        check(s, what);
        MatrixPtr owned(m);
        std::cout << matrix_json(owned.get()) << '\n';
    };

    const std::vector<std::pair<std::string, Unary>> unary = {
        {"conjugate", tb_matrix_conjugate}, {"star", tb_matrix_kleene_star}};
    const std::vector<std::pair<std::string, Binary>> binary = {
        {"add", tb_matrix_add}, {"mul", tb_matrix_mul}, {"solve", tb_matrix_solve_implicit}};
    const std::vector<std::pair<std::string, Query>> queries = {
        {"trace", tb_matrix_trace},
        {"det", tb_matrix_tropical_det},
        {"norm", tb_matrix_norm},
        {"rho", tb_matrix_spectral_radius}};

    for (const auto& [name, fn] : unary) {
        if (op != name) continue;
        tb_matrix* m = nullptr;
        const tb_status status = fn(a.get(), &m);
        emit_matrix(status, m, op);
        return kOk;
    }
    for (const auto& [name, fn] : binary) {
        if (op != name) continue;
        if (rhs.empty()) throw UsageError(op + " needs a second operand");
        auto b = parse_matrix(rhs, "operand B");
        tb_matrix* m = nullptr;
        const tb_status status = fn(a.get(), b.get(), &m);
        emit_matrix(status, m, op);
        return kOk;
    }
    for (const auto& [name, fn] : queries) {
        if (op != name) continue;
        double v = 0;
        check(fn(a.get(), &v), op);
        std::cout << scalar_json(v) << '\n';
        return kOk;
    }
    if (op == "pow") {
        tb_matrix* m = nullptr;
        const tb_status status = tb_matrix_pow(a.get(), power_exp, &m);
        emit_matrix(status, m, op);
        return kOk;
    }
    throw UsageError("unknown algebra operation \"" + op + "\"");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Max-plus battery swapping station toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tb_version()));

    Common opt;
    auto add_station_flags = [&](CLI::App* sub, bool with_reps) {
        sub->add_option("--config", opt.config, "Station config JSON (default: a=25 exp, b=5, c=100, m=4)");
        sub->add_option("--seed", opt.seed, std::string("Random seed (default: $") + kSeedEnv + " or " +
                                                std::to_string(kDefaultSeed) + ")");
        sub->add_option("--k", opt.k, "Horizon K")->check(CLI::PositiveNumber);
        if (with_reps) sub->add_option("--reps", opt.reps, "Replications")->check(CLI::PositiveNumber);
        sub->add_option("--out", opt.out, "Output file");
    };

    auto* simulate = app.add_subcommand("simulate", "Run the scalar recurrence and write its trace");
    add_station_flags(simulate, false);
    simulate->add_option("--stride", opt.stride, "Trace sampling stride")->check(CLI::PositiveNumber);
    std::string figure_out;
    simulate->add_option("--figure-out", figure_out, "Also write k,lambda_hat plus the exact line");

    auto* verify = app.add_subcommand("verify", "Compare Monte Carlo estimate with the exact cycle time");
    add_station_flags(verify, true);
    verify->add_option("--tol", opt.tol, "Relative tolerance");

    auto* sweep = app.add_subcommand("sweep", "Exact vs estimated cycle time over one parameter");
    add_station_flags(sweep, true);
    std::string vary, values;
    sweep->add_option("--vary", vary, "Parameter to vary: a, b, c or m")->required();
    sweep->add_option("--values", values, "Comma-separated values")->required();

    auto* allocate = app.add_subcommand("allocate", "Distribute a battery fleet across stations");
    allocate->add_option("--config", opt.config, "Network config JSON")->required();
    std::size_t fleet = 0;
    allocate->add_option("--fleet,-M", fleet, "Fleet size M (overrides the config)");
    bool oracle = false;
    allocate->add_flag("--oracle", oracle, "Also run the exhaustive search and report the gap");
    allocate->add_option("--out", opt.out, "Plan JSON output file");

    auto* algebra = app.add_subcommand("algebra", "Max-plus matrix queries on JSON operands");
    std::string op, lhs, rhs, exponent = "1";
    std::size_t power_exp = 1;
    algebra->add_option("op", op,
                        "add | mul | solve | pow | conjugate | star | trace | det | norm | rho | scalar-pow")
        ->required();
    algebra->add_option("A", lhs, "First operand (JSON matrix, or a scalar for scalar-pow)")->required();
    algebra->add_option("B", rhs, "Second operand for add, mul, solve");
    algebra->add_option("--p", power_exp, "Integer power for pow");
    algebra->add_option("--q", exponent, "Rational exponent p/q for scalar-pow");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*simulate) return cmd_simulate(opt, figure_out);
        if (*verify) return cmd_verify(opt);
        if (*sweep) return cmd_sweep(opt, vary, values);
        if (*allocate) return cmd_allocate(opt, fleet, oracle);
        if (*algebra) return cmd_algebra(op, lhs, rhs, power_exp, exponent);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
