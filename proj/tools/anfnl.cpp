// anfnl: nonlinearity, weight, Walsh values and nearest affine functions of
// a Boolean function given by its sparse algebraic normal form.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "anfnl/anfnl.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitOverflow = 2;
constexpr int kExitBudget = 3;
constexpr int kExitMismatch = 4;

struct InputOptions {
    std::string file;
    std::string expr;
    int n_override = 0;
};

struct SolveFlags {
    std::string order = "abs-desc";
    bool no_bnb = false;
    std::uint64_t budget = anfnl::kDefaultNodeBudget;
    bool verify = false;
    int verify_threshold = 20;
    std::string dump_coeffs;
    std::string dump_tree;
    bool json = false;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
    auto* file = cmd->add_option("-f,--file", in.file, "read the ANF from a file ('-' for stdin)");
    auto* expr = cmd->add_option("-e,--expr", in.expr, "inline ANF expression");
    file->excludes(expr);
    cmd->add_option("--n", in.n_override, "variable count override")->check(CLI::Range(1, 64));
}

void add_solve_flags(CLI::App* cmd, SolveFlags& fl, bool with_tree_flags = true) {
    cmd->add_option("--order", fl.order, "term ordering for the distance problem")
        ->check(CLI::IsMember({"abs-desc", "input"}))
        ->capture_default_str();
    cmd->add_option("--budget", fl.budget, "node budget for the tree enumeration")
        ->capture_default_str();
    cmd->add_option("--dump-coeffs", fl.dump_coeffs, "write '<mask-hex> <C> <beta>' lines to PATH");
    cmd->add_flag("--json", fl.json, "machine-readable JSON output");
    if (with_tree_flags) {
        cmd->add_flag("--no-bnb", fl.no_bnb, "disable branch-and-bound pruning");
        cmd->add_flag("--verify", fl.verify, "cross-check against the exhaustive oracle (small n)");
        cmd->add_option("--verify-threshold", fl.verify_threshold,
                        "largest n the --verify cross-check may materialize")
            ->check(CLI::Range(1, 24))
            ->capture_default_str();
        cmd->add_option("--dump-tree", fl.dump_tree, "write '<bitstring> <F>' leaf lines to PATH");
    }
}

std::string read_input_text(const InputOptions& in) {
    if (!in.expr.empty()) return in.expr;
    if (in.file.empty() || in.file == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream is(in.file);
    if (!is) throw std::runtime_error("cannot open " + in.file);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

anfnl::AnfFunction load_function(const InputOptions& in) {
    std::optional<int> n;
    if (in.n_override != 0) n = in.n_override;
    return anfnl::parse_anf(read_input_text(in), n);
}

anfnl::SolveOptions make_solve_options(const SolveFlags& fl) {
    anfnl::SolveOptions opts;
    opts.order = fl.order == "input" ? anfnl::OrderStrategy::Input : anfnl::OrderStrategy::AbsDesc;
    opts.branch_and_bound = !fl.no_bnb;
    opts.node_budget = fl.budget;
    opts.verify = fl.verify;
    opts.verify_threshold = fl.verify_threshold;
    return opts;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    return os;
}

void dump_coefficients(const anfnl::DistanceProblem& pb, const std::string& path) {
    std::ofstream os = open_output(path);
    for (const auto& t : pb.terms) {
        anfnl::i128 c = t.beta / anfnl::pow2_i128(pb.n - anfnl::mask_weight(t.mask));
        os << anfnl::mask_to_hex(t.mask) << ' ' << anfnl::to_string(c) << ' '
           << anfnl::to_string(t.beta) << '\n';
    }
}

void dump_tree(const anfnl::DistanceProblem& pb, const std::string& path, std::uint64_t budget) {
    std::ofstream os = open_output(path);
    if (pb.terms.empty()) return;
    anfnl::enumerate_tree(
        pb, std::nullopt,
        [&](const std::vector<std::uint8_t>& bits, anfnl::i128 value) {
            std::string s(bits.size(), '0');
            for (std::size_t i = 0; i < bits.size(); ++i) s[i] = bits[i] ? '1' : '0';
            os << s << ' ' << anfnl::to_string(value) << '\n';
        },
        budget);
}

void print_coefficient_list(const anfnl::DistanceProblem& pb, std::ostream& os) {
    if (pb.terms.size() > 32) {
        os << "coefficients: k = " << pb.terms.size() << " (use --dump-coeffs for the full list)\n";
        return;
    }
    os << "coefficients (" << anfnl::order_strategy_name(pb.order_tag) << " order):\n";
    for (const auto& t : pb.terms) {
        anfnl::i128 c = t.beta / anfnl::pow2_i128(pb.n - anfnl::mask_weight(t.mask));
        os << "  " << anfnl::mask_to_hex(t.mask) << "  C " << anfnl::to_string(c) << "  beta "
           << anfnl::to_string(t.beta) << '\n';
    }
}

anfnl::Mask parse_mask_value(const std::string& text) {
    anfnl::Mask value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    std::from_chars_result res{};
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X'))
        res = std::from_chars(first + 2, last, value, 16);
    else
        res = std::from_chars(first, last, value, 10);
    if (res.ec != std::errc{} || res.ptr != last)
        throw std::runtime_error("bad mask value '" + text + "'");
    return value;
}

int run_nl(const InputOptions& in, const SolveFlags& fl, bool nearest_first) {
    anfnl::AnfFunction f = load_function(in);
    anfnl::SolveOptions opts = make_solve_options(fl);
    anfnl::DistanceProblem pb = anfnl::build_problem(f, opts.order);
    if (!fl.dump_coeffs.empty()) dump_coefficients(pb, fl.dump_coeffs);
    if (!fl.dump_tree.empty()) dump_tree(pb, fl.dump_tree, fl.budget);

    anfnl::AnalysisReport r = anfnl::nonlinearity(f, opts);
    if (fl.json) {
        std::cout << anfnl::report_to_json(r).dump(2) << '\n';
        return kExitOk;
    }
    if (nearest_first) {
        std::cout << "nonlinearity = " << anfnl::to_string(r.nonlinearity) << '\n';
        for (const auto& a : r.nearest)
            std::cout << "w=" << anfnl::mask_to_hex(a.w) << " ("
                      << anfnl::linear_function_name(a.w, r.n) << (a.complement ? " + 1" : "")
                      << ")  W=" << anfnl::to_string(a.walsh) << "  distance "
                      << anfnl::to_string(a.distance) << '\n';
        return kExitOk;
    }
    std::cout << "f = " << anfnl::format_anf(f) << '\n';
    print_coefficient_list(pb, std::cout);
    anfnl::print_report_text(r, std::cout);
    return kExitOk;
}

int run_weight(const InputOptions& in, const SolveFlags& fl) {
    anfnl::AnfFunction f = load_function(in);
    anfnl::SolveOptions opts = make_solve_options(fl);
    anfnl::DistanceProblem pb = anfnl::build_problem(f, opts.order);
    if (!fl.dump_coeffs.empty()) dump_coefficients(pb, fl.dump_coeffs);
    if (fl.json) {
        nlohmann::json j{{"n", f.n},
                         {"p", f.monomials.size()},
                         {"k", pb.terms.size()},
                         {"weight", anfnl::json_int(pb.weight)}};
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "weight = " << anfnl::to_string(pb.weight) << '\n';
    }
    return kExitOk;
}

int run_walsh(const InputOptions& in, const SolveFlags& fl, const std::vector<std::string>& w_args) {
    anfnl::AnfFunction f = load_function(in);
    anfnl::SolveOptions opts = make_solve_options(fl);
    anfnl::DistanceProblem pb = anfnl::build_problem(f, opts.order);
    if (!fl.dump_coeffs.empty()) dump_coefficients(pb, fl.dump_coeffs);

    nlohmann::json rows = nlohmann::json::array();
    for (const auto& arg : w_args) {
        anfnl::Mask w = parse_mask_value(arg);
        if (!anfnl::is_subvector(w, anfnl::full_mask(f.n)))
            throw std::runtime_error("w does not fit in n bits: " + arg);
        anfnl::i128 walsh = w == 0 ? anfnl::checked_sub(anfnl::pow2_i128(f.n),
                                                        anfnl::checked_mul(2, pb.weight))
                                   : anfnl::walsh_of_row(pb, w);
        if (fl.json)
            rows.push_back({{"w", w}, {"walsh", anfnl::json_int(walsh)}});
        else
            std::cout << anfnl::mask_to_hex(w) << ' ' << anfnl::to_string(walsh) << '\n';
    }
    if (fl.json) std::cout << nlohmann::json{{"n", f.n}, {"walsh", rows}}.dump(2) << '\n';
    return kExitOk;
}

int run_ldm(int n, const std::string& out) {
    anfnl::LinearDistanceMatrix m = anfnl::ldm_from_entries(n);
    if (out.empty() || out == "-") {
        anfnl::ldm_write_csv(m, std::cout);
    } else {
        std::ofstream os = open_output(out);
        anfnl::ldm_write_csv(m, os);
    }
    return kExitOk;
}

int run_gen(int n, int p, double q, std::uint64_t seed, bool masks, bool json) {
    anfnl::AnfFunction f = anfnl::gen_random_anf(n, p, q, seed);
    if (json) {
        nlohmann::json jm = nlohmann::json::array();
        for (anfnl::Mask m : f.monomials) jm.push_back(m);
        nlohmann::json j{{"n", n},         {"p", p},           {"q", q},
                         {"seed", seed},   {"stream", anfnl::kGenStreamVersion},
                         {"anf", anfnl::format_anf(f)},        {"masks", jm}};
        std::cout << j.dump(2) << '\n';
    } else if (masks) {
        std::cout << anfnl::format_mask_list(f);
    } else {
        std::cout << anfnl::format_anf(f) << '\n';
    }
    return kExitOk;
}

bool reports_match(const anfnl::AnalysisReport& got, const anfnl::AnalysisReport& want) {
    if (got.nonlinearity != want.nonlinearity || got.weight != want.weight ||
        got.max_abs_half_walsh != want.max_abs_half_walsh)
        return false;
    auto key = [](const anfnl::AnalysisReport& r) {
        std::vector<std::pair<anfnl::Mask, std::string>> k;
        for (const auto& e : r.nearest) k.emplace_back(e.w, anfnl::to_string(e.walsh));
        std::sort(k.begin(), k.end());
        return k;
    };
    return key(got) == key(want);
}

int run_verify(const InputOptions& in, const SolveFlags& fl, int n, int p, double q, int trials,
               std::uint64_t seed, bool have_input) {
    anfnl::SolveOptions opts = make_solve_options(fl);
    opts.verify = false;
    std::vector<anfnl::AnfFunction> functions;
    if (have_input) {
        functions.push_back(load_function(in));
    } else {
        for (int t = 0; t < trials; ++t)
            functions.push_back(anfnl::gen_random_anf(n, p, q, seed + static_cast<std::uint64_t>(t)));
    }
    int matches = 0;
    for (std::size_t t = 0; t < functions.size(); ++t) {
        const anfnl::AnfFunction& f = functions[t];
        if (f.n > anfnl::kMaxTableVars)
            throw std::runtime_error("verify needs n <= 24 for the exhaustive oracle");
        anfnl::AnalysisReport got = anfnl::nonlinearity(f, opts);
        anfnl::AnalysisReport want = anfnl::oracle::nonlinearity_oracle(f);
        if (reports_match(got, want)) {
            ++matches;
            continue;
        }
        std::cerr << "mismatch on instance " << t << " (seed "
                  << (have_input ? 0 : seed + static_cast<std::uint64_t>(t)) << "): solver nl="
                  << anfnl::to_string(got.nonlinearity)
                  << " oracle nl=" << anfnl::to_string(want.nonlinearity) << '\n';
        std::cout << matches << "/" << functions.size() << " matches\n";
        return kExitMismatch;
    }
    std::cout << matches << "/" << functions.size() << " matches\n";
    return kExitOk;
}

int run_bench(int n, int p, double q, int trials, std::uint64_t seed, std::uint64_t budget) {
    std::cout << "n,p,q,seed,k,expected_k,weight,nl,seconds,nodes\n";
    const double expected_k = anfnl::expected_coefficient_count(n, p, q);
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(t);
        anfnl::AnfFunction f = anfnl::gen_random_anf(n, p, q, trial_seed);
        anfnl::SolveOptions opts;
        opts.node_budget = budget;
        anfnl::AnalysisReport r = anfnl::nonlinearity(f, opts);
        char num[64];
        std::snprintf(num, sizeof num, "%.6g", expected_k);
        std::cout << n << ',' << p << ',' << q << ',' << trial_seed << ',' << r.coefficient_count
                  << ',' << num << ',' << anfnl::to_string(r.weight) << ','
                  << anfnl::to_string(r.nonlinearity) << ',';
        std::snprintf(num, sizeof num, "%.6f", r.seconds);
        std::cout << num << ',' << r.stats.nodes << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonlinearity analysis of sparse Boolean functions"};
    app.require_subcommand(1);

    InputOptions in;
    SolveFlags fl;

    auto* nl = app.add_subcommand("nl", "nonlinearity, witnesses and nearest affine functions");
    add_input_options(nl, in);
    add_solve_flags(nl, fl);

    auto* nearest = app.add_subcommand("nearest", "nearest affine functions only");
    add_input_options(nearest, in);
    add_solve_flags(nearest, fl);

    auto* weight = app.add_subcommand("weight", "weight from the combined coefficients");
    add_input_options(weight, in);
    add_solve_flags(weight, fl, false);

    std::vector<std::string> w_args;
    auto* walsh = app.add_subcommand("walsh", "Walsh coefficients W_f(w) for chosen w");
    add_input_options(walsh, in);
    add_solve_flags(walsh, fl, false);
    walsh->add_option("--w", w_args, "row index w, decimal or 0x-hex (repeatable)")->required();

    int ldm_n = 3;
    std::string ldm_out;
    auto* ldm = app.add_subcommand("ldm", "dump the linear distance matrix as CSV");
    ldm->add_option("--n", ldm_n, "matrix order")->required()->check(CLI::Range(1, 12));
    ldm->add_option("--out", ldm_out, "output path (default stdout)");

    int gen_n = 0, gen_p = 0;
    double gen_q = 0.5;
    std::uint64_t gen_seed = 0;
    bool gen_masks = false, gen_json = false;
    auto* gen = app.add_subcommand("gen", "generate a random sparse ANF");
    gen->add_option("--n", gen_n, "variable count")->required()->check(CLI::Range(1, 64));
    gen->add_option("--p", gen_p, "monomial count")->required()->check(CLI::PositiveNumber);
    gen->add_option("--q", gen_q, "variable inclusion probability")->capture_default_str();
    gen->add_option("--seed", gen_seed, "generator seed")->required();
    gen->add_flag("--masks", gen_masks, "emit the mask-list form instead of the human form");
    gen->add_flag("--json", gen_json, "JSON output");

    int ver_p = 8, ver_trials = 50;
    double ver_q = 0.5;
    std::uint64_t ver_seed = 0;
    auto* verify = app.add_subcommand("verify", "diff the sparse solver against the exhaustive oracle");
    add_input_options(verify, in);
    add_solve_flags(verify, fl);
    verify->add_option("--p", ver_p, "monomial count per random instance")->capture_default_str();
    verify->add_option("--q", ver_q, "variable inclusion probability")->capture_default_str();
    verify->add_option("--trials", ver_trials, "number of random instances")->capture_default_str();
    verify->add_option("--seed", ver_seed, "base seed, trial t uses seed + t")->capture_default_str();

    int bench_n = 60, bench_p = 30, bench_trials = 10;
    double bench_q = 0.5;
    std::uint64_t bench_seed = 0;
    std::uint64_t bench_budget = anfnl::kDefaultNodeBudget;
    auto* bench = app.add_subcommand("bench", "timing runs over random instances, CSV output");
    bench->add_option("--n", bench_n, "variable count")->required()->check(CLI::Range(1, 64));
    bench->add_option("--p", bench_p, "monomial count")->required()->check(CLI::PositiveNumber);
    bench->add_option("--q", bench_q, "variable inclusion probability")->capture_default_str();
    bench->add_option("--trials", bench_trials, "trial count")->capture_default_str();
    bench->add_option("--seed", bench_seed, "base seed, trial t uses seed + t")->required();
    bench->add_option("--budget", bench_budget, "node budget per trial")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (nl->parsed()) return run_nl(in, fl, false);
        if (nearest->parsed()) return run_nl(in, fl, true);
        if (weight->parsed()) return run_weight(in, fl);
        if (walsh->parsed()) return run_walsh(in, fl, w_args);
        if (ldm->parsed()) return run_ldm(ldm_n, ldm_out);
        if (gen->parsed()) return run_gen(gen_n, gen_p, gen_q, gen_seed, gen_masks, gen_json);
        if (verify->parsed())
            return run_verify(in, fl, in.n_override != 0 ? in.n_override : 10, ver_p, ver_q,
                              ver_trials, ver_seed, !in.file.empty() || !in.expr.empty());
        if (bench->parsed())
            return run_bench(bench_n, bench_p, bench_q, bench_trials, bench_seed, bench_budget);
    } catch (const anfnl::BudgetError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBudget;
    } catch (const anfnl::VerificationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMismatch;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitOverflow;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
