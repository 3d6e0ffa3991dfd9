// Command-line driver: sweep a parameter grid and emit a JSON report, or
// explain a single parameter point factor by factor.
//
// Exit codes: 0 all points verified; 1 a mismatch, inconsistency or errored
// point; 2 configuration error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "menon/sweep.hpp"

using namespace menon;

namespace {

std::vector<unsigned> parse_range(const std::string& text) {
    std::vector<unsigned> out;
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        unsigned lo = unsigned(std::stoul(text.substr(0, dots)));
        unsigned hi = unsigned(std::stoul(text.substr(dots + 2)));
        if (hi < lo) throw Error("empty range: " + text);
        for (unsigned v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(unsigned(std::stoul(item)));
    if (out.empty()) throw Error("empty range: " + text);
    return out;
}

std::vector<std::string> parse_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<Evaluator> parse_evaluators(const std::string& text) {
    std::vector<Evaluator> out;
    for (const std::string& name : parse_list(text)) {
        if (name == "naive") out.push_back(Evaluator::naive);
        else if (name == "convolution") out.push_back(Evaluator::convolution);
        else if (name == "dp") out.push_back(Evaluator::dp);
        else throw Error("unknown evaluator: " + name);
    }
    if (out.empty()) throw Error("no evaluator selected");
    return out;
}

struct CliOptions {
    SweepConfig cfg;
    std::string ideal_text;
    std::string k_text = "1";
    std::string s_text = "0";
    std::string f_text = "norm";
    std::string ev_text = "dp";
    std::string naive_budget = "10000000";
    std::string dp_budget = "100000000";
    long max_norm = 0;
    std::string out_path = "report.json";
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--field", opt.cfg.field_path,
                    "field corpus JSON file")->required();
    cmd->add_option("--field-name", opt.cfg.field_name,
                    "restrict to the named field");
    cmd->add_option("--ideal", opt.ideal_text,
                    "explicit modulus literal, e.g. {\"int\": 12}");
    cmd->add_option("--max-norm", opt.max_norm,
                    "sweep every ideal with 1 < N <= bound");
    cmd->add_option("--k", opt.k_text, "k values: a, a..b or a,b,c");
    cmd->add_option("--s", opt.s_text, "s values: a, a..b or a,b,c");
    cmd->add_option("--chars", opt.cfg.chars, "all | trivial | idx:<i>");
    cmd->add_option("--r", opt.cfg.r_sel,
                    "first:<count> or an explicit coordinate array");
    cmd->add_option("--f", opt.f_text,
                    "comma list of arithmetical functions (norm, one, "
                    "moebius, phi, norm^s, sigma_s) or @table.json");
    cmd->add_option("--evaluators", opt.ev_text,
                    "comma list from naive, convolution, dp");
    cmd->add_option("--naive-budget", opt.naive_budget,
                    "iteration budget for naive/convolution enumeration");
    cmd->add_option("--dp-budget", opt.dp_budget,
                    "iteration budget for the dynamic program");
    cmd->add_option("--jobs", opt.cfg.jobs, "worker threads (0 = default)");
    cmd->add_option("--enum-bound", opt.cfg.enum_bound,
                    "residue enumeration bound on N(n)");
    cmd->add_flag("--inject-mismatch", opt.cfg.inject_mismatch,
                  "self-test: perturb the reported right-hand side");
}

void finish_config(CliOptions& opt) {
    if (!opt.ideal_text.empty()) opt.cfg.ideal_literal = opt.ideal_text;
    opt.cfg.max_norm = Int(opt.max_norm);
    opt.cfg.ks = parse_range(opt.k_text);
    opt.cfg.ss = parse_range(opt.s_text);
    opt.cfg.fs = parse_list(opt.f_text);
    opt.cfg.evaluators = parse_evaluators(opt.ev_text);
    opt.cfg.budgets.naive = Int(opt.naive_budget.c_str());
    opt.cfg.budgets.dp = Int(opt.dp_budget.c_str());
    if (!opt.cfg.ideal_literal && opt.cfg.max_norm < 1)
        throw Error("need --ideal or --max-norm");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of gcd-sum identities over rings of "
                 "algebraic integers"};
    app.require_subcommand(1);

    CliOptions sweep_opt, explain_opt;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "verify a parameter grid");
    add_common_flags(sweep_cmd, sweep_opt);
    sweep_cmd->add_option("--out", sweep_opt.out_path, "report file path");

    CLI::App* explain_cmd =
        app.add_subcommand("explain", "break one parameter point down");
    add_common_flags(explain_cmd, explain_opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep_cmd->parsed()) {
            finish_config(sweep_opt);
            SweepResult result = run_sweep(sweep_opt.cfg);
            std::ofstream out(sweep_opt.out_path);
            if (!out) throw Error("cannot write " + sweep_opt.out_path);
            out << report_json(result).dump(2) << "\n";
            std::cout << "total " << result.summary.total << "  passed "
                      << result.summary.passed << "  failed "
                      << result.summary.failed << "  errored "
                      << result.summary.errored << "\n";
            for (const auto& err : result.errors)
                std::cerr << "errored: " << err << "\n";
            if (result.summary.failed > 0 || result.summary.errored > 0)
                return 1;
            return 0;
        }
        finish_config(explain_opt);
        return explain_point(explain_opt.cfg, std::cout) ? 0 : 1;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const InternalInconsistency& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
}
