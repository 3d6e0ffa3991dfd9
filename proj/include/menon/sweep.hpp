#ifndef MENON_SWEEP_HPP
#define MENON_SWEEP_HPP

// Sweep driver: load a field corpus, enumerate moduli up to a norm bound (or
// take one explicit ideal), walk the parameter grid, verify every point, and
// assemble a machine-readable report. Points are grouped by modulus; moduli
// are processed in parallel, each worker owning its context, so parallel and
// serial runs produce identical record sets.

#include <iosfwd>
#include <optional>

#include <json.hpp>

#include "menon/identity.hpp"

namespace menon {

struct FieldEntry {
    std::string name;
    std::string notes;
    std::shared_ptr<const NumberField> field;
};

// corpus file: array of {"name", "min_poly" (constant term first), "notes"}
std::vector<FieldEntry> load_field_corpus(const std::string& path);

// {"int": m} or {"gens": [[coords...], ...]}
Ideal parse_ideal_literal(const NumberField* K, const nlohmann::json& j);
nlohmann::json ideal_literal(const Ideal& a);

nlohmann::json cyc_json(const CycInt& v);
nlohmann::json record_json(const VerificationRecord& rec);

struct SweepConfig {
    std::string field_path;
    std::string field_name;                    // empty = every field in the file
    std::optional<std::string> ideal_literal;  // JSON text; overrides max_norm
    Int max_norm = 0;
    std::vector<unsigned> ks{1};
    std::vector<unsigned> ss{0};
    std::string chars = "all";       // all | trivial | idx:<i>
    std::string r_sel = "first:3";   // first:<n> | JSON coordinate array
    std::vector<std::string> fs{"norm"};  // names, or @path to a table file
    std::vector<Evaluator> evaluators{Evaluator::dp};
    EvalBudgets budgets;
    int jobs = 0;  // 0 = library default
    long enum_bound = ResidueRing::kDefaultEnumBound;
    // harness self-test: perturb the reported right-hand side after
    // evaluation so the mismatch reporting and exit-code paths can be
    // exercised on demand
    bool inject_mismatch = false;
};

struct SweepSummary {
    long total = 0, passed = 0, failed = 0, errored = 0;
};

struct SweepResult {
    std::vector<VerificationRecord> records;
    std::vector<std::string> errors;  // one line per errored point
    SweepSummary summary;
    // records reference their fields; the corpus rides along so the report
    // can be serialized after the sweep returns
    std::vector<FieldEntry> corpus;
};

SweepResult run_sweep(const SweepConfig& cfg);

nlohmann::json report_json(const SweepResult& result);

// Factor-by-factor breakdown of one parameter point (the closed-form pieces,
// the e-sum terms, and both sides). Returns true when the sides agree.
bool explain_point(const SweepConfig& cfg, std::ostream& os);

} // namespace menon

#endif
