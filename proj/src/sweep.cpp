#include "menon/sweep.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace menon {

using nlohmann::json;

// big values arrive as decimal strings, small ones as plain numbers
static Int json_int(const json& v) {
    if (v.is_string()) return Int(v.get<std::string>().c_str());
    return Int(v.get<long>());
}

std::vector<FieldEntry> load_field_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open field file: " + path);
    json doc = json::parse(in);
    if (!doc.is_array()) throw Error("field file must be a JSON array");
    std::vector<FieldEntry> out;
    for (const auto& item : doc) {
        FieldEntry fe;
        fe.name = item.at("name").get<std::string>();
        if (item.contains("notes")) fe.notes = item["notes"].get<std::string>();
        Vec poly;
        for (const auto& c : item.at("min_poly")) poly.push_back(json_int(c));
        fe.field = NumberField::make(std::move(poly), fe.name);
        out.push_back(std::move(fe));
    }
    if (out.empty()) throw Error("field file contains no fields");
    return out;
}

Ideal parse_ideal_literal(const NumberField* K, const json& j) {
    if (j.contains("int")) {
        Int m = json_int(j["int"]);
        if (m == 0) throw ZeroIdeal("the zero ideal is not allowed");
        return Ideal::from_int(K, m);
    }
    if (j.contains("gens")) {
        std::vector<AlgInt> gens;
        for (const auto& g : j["gens"]) {
            Vec c;
            for (const auto& x : g) c.push_back(json_int(x));
            if (int(c.size()) != K->degree())
                throw Error("generator has wrong coordinate count");
            gens.push_back(AlgInt(K, std::move(c)));
        }
        return Ideal::from_generators(K, gens);
    }
    throw Error("ideal literal must contain \"int\" or \"gens\"");
}

json ideal_literal(const Ideal& a) {
    json gens = json::array();
    for (int j = 0; j < a.field()->degree(); ++j) {
        json col = json::array();
        for (int i = 0; i < a.field()->degree(); ++i)
            col.push_back(a.hnf()[i][j].get_str());
        gens.push_back(std::move(col));
    }
    return json{{"gens", std::move(gens)}};
}

json cyc_json(const CycInt& v) {
    CycInt c = v.canonical();
    json coeffs = json::array();
    for (const Int& x : c.coeffs()) coeffs.push_back(x.get_str());
    return json{{"m", c.order()}, {"coeffs", std::move(coeffs)}};
}

json record_json(const VerificationRecord& rec) {
    json r;
    r["field"] = rec.field_name;
    r["n"] = ideal_literal(rec.n);
    r["N_n"] = to_long(rec.n_norm);
    r["k"] = rec.k;
    r["s"] = rec.s;
    json rc = json::array();
    for (const Int& x : rec.r_coords) rc.push_back(x.get_str());
    r["r"] = std::move(rc);
    r["char_index"] = rec.char_index;
    r["conductor_norm"] = to_long(rec.conductor_norm);
    r["f"] = rec.f_name;
    r["lhs"] = cyc_json(rec.lhs);
    r["rhs"] = cyc_json(rec.rhs);
    r["equal"] = rec.equal;
    r["evaluators"] = rec.evaluators;
    r["ms"] = rec.ms;
    return r;
}

namespace {

DivisorTable make_f_table(const Ideal& n, const std::string& selector) {
    if (!selector.empty() && selector[0] == '@') {
        std::string path = selector.substr(1);
        std::ifstream in(path);
        if (!in) throw Error("cannot open f table file: " + path);
        json doc = json::parse(in);
        std::vector<std::pair<Ideal, Int>> entries;
        for (const auto& item : doc)
            entries.push_back({parse_ideal_literal(n.field(), item.at("divisor")),
                               json_int(item.at("value"))});
        return DivisorTable::from_entries(n, entries, selector);
    }
    return DivisorTable::tabulate(n, selector);
}

std::vector<const Character*> select_characters(
    const std::vector<Character>& chars, const std::string& sel) {
    std::vector<const Character*> out;
    if (sel == "all") {
        for (const auto& c : chars) out.push_back(&c);
    } else if (sel == "trivial") {
        out.push_back(&chars.front());
    } else if (sel.rfind("idx:", 0) == 0) {
        long i = std::stol(sel.substr(4));
        if (i < 0 || size_t(i) >= chars.size())
            throw Error("character index out of range");
        out.push_back(&chars[size_t(i)]);
    } else {
        throw Error("bad character selector: " + sel);
    }
    return out;
}

std::vector<AlgInt> select_r(const ResidueRing& ring, const std::string& sel) {
    const NumberField* K = ring.field();
    std::vector<AlgInt> out;
    if (sel.rfind("first:", 0) == 0) {
        long want = std::stol(sel.substr(6));
        if (want < 1) throw Error("r selector must request at least one unit");
        for (long cls : ring.unit_classes()) {
            out.push_back(AlgInt(K, ring.rep_of(cls)));
            if (long(out.size()) == want) break;
        }
    } else {
        json j = json::parse(sel);
        Vec c;
        for (const auto& x : j) c.push_back(json_int(x));
        if (int(c.size()) != K->degree())
            throw Error("r has wrong coordinate count");
        AlgInt r(K, std::move(c));
        if (!ring.is_unit(r)) throw NotCoprime("r must be a unit mod n");
        out.push_back(std::move(r));
    }
    return out;
}

bool budget_allows(Evaluator ev, const Int& N, unsigned k, unsigned s,
                   const EvalBudgets& budgets) {
    switch (ev) {
        case Evaluator::naive: return ipow(N, k + s) <= budgets.naive;
        case Evaluator::convolution: return ipow(N, k) <= budgets.naive;
        case Evaluator::dp: return N * N * k <= budgets.dp;
    }
    return false;
}

struct ModulusTask {
    const FieldEntry* fe;
    Ideal n;
};

std::string point_tag(const ModulusTask& task, unsigned k, unsigned s,
                      long chi_idx, const AlgInt& r, const std::string& fname) {
    std::ostringstream os;
    os << task.fe->name << " n=" << task.n.str() << " k=" << k << " s=" << s
       << " chi=" << chi_idx << " r=" << r.str() << " f=" << fname;
    return os.str();
}

struct TaskOutput {
    std::vector<VerificationRecord> records;
    std::vector<std::string> errors;
};

TaskOutput run_modulus(const ModulusTask& task, const SweepConfig& cfg) {
    TaskOutput out;
    const NumberField* K = task.fe->field.get();
    ResidueRing ring(K, task.n, cfg.enum_bound);
    std::vector<Character> chars = all_characters(ring);
    std::vector<const Character*> chis = select_characters(chars, cfg.chars);
    std::vector<AlgInt> rs = select_r(ring, cfg.r_sel);
    std::vector<DivisorTable> ftabs;
    for (const std::string& fname : cfg.fs)
        ftabs.push_back(make_f_table(task.n, fname));

    IdentityContext ctx(ring);
    const Int& N = task.n.norm();
    for (const Character* chi : chis) {
        for (unsigned k : cfg.ks) {
            for (unsigned s : cfg.ss) {
                for (const AlgInt& r : rs) {
                    for (const DivisorTable& f : ftabs) {
                        std::vector<Evaluator> evs;
                        for (Evaluator ev : cfg.evaluators)
                            if (budget_allows(ev, N, k, s, cfg.budgets))
                                evs.push_back(ev);
                        if (evs.empty()) {
                            out.errors.push_back(
                                point_tag(task, k, s, chi->index(), r,
                                          f.name()) +
                                ": no selected evaluator fits its budget");
                            continue;
                        }
                        IdentityParams p;
                        p.ring = &ring;
                        p.k = k;
                        p.s = s;
                        p.r = r;
                        p.chi = chi;
                        p.f = &f;
                        try {
                            VerificationRecord rec =
                                verify(p, evs, cfg.budgets, &ctx);
                            if (cfg.inject_mismatch) {
                                rec.rhs = (rec.rhs + CycInt::integer(1))
                                              .canonical();
                                rec.equal = cyc_eq(rec.lhs, rec.rhs);
                            }
                            out.records.push_back(std::move(rec));
                        } catch (const Error& e) {
                            out.errors.push_back(
                                point_tag(task, k, s, chi->index(), r,
                                          f.name()) +
                                ": " + e.what());
                        }
                    }
                }
            }
        }
    }
    return out;
}

} // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
    std::vector<FieldEntry> corpus = load_field_corpus(cfg.field_path);
    if (!cfg.field_name.empty()) {
        std::vector<FieldEntry> filtered;
        for (auto& fe : corpus)
            if (fe.name == cfg.field_name) filtered.push_back(fe);
        if (filtered.empty())
            throw Error("field not found in corpus: " + cfg.field_name);
        corpus = std::move(filtered);
    }

    std::vector<ModulusTask> tasks;
    for (const auto& fe : corpus) {
        if (cfg.ideal_literal) {
            json j = json::parse(*cfg.ideal_literal);
            tasks.push_back({&fe, parse_ideal_literal(fe.field.get(), j)});
        } else {
            for (Ideal& n : enumerate_ideals(fe.field.get(), cfg.max_norm))
                tasks.push_back({&fe, std::move(n)});
        }
    }

    std::vector<TaskOutput> outputs(tasks.size());
    std::vector<std::string> task_failures(tasks.size());
#ifdef _OPENMP
    int nthreads = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
#endif
    for (long i = 0; i < long(tasks.size()); ++i) {
        try {
            outputs[size_t(i)] = run_modulus(tasks[size_t(i)], cfg);
        } catch (const std::exception& e) {
            task_failures[size_t(i)] =
                tasks[size_t(i)].fe->name + " n=" + tasks[size_t(i)].n.str() +
                ": " + e.what();
        }
    }

    SweepResult result;
    for (size_t i = 0; i < tasks.size(); ++i) {
        if (!task_failures[i].empty()) {
            result.errors.push_back(task_failures[i]);
            continue;
        }
        for (auto& rec : outputs[i].records)
            result.records.push_back(std::move(rec));
        for (auto& err : outputs[i].errors)
            result.errors.push_back(std::move(err));
    }
    result.summary.total =
        long(result.records.size()) + long(result.errors.size());
    for (const auto& rec : result.records)
        (rec.equal ? result.summary.passed : result.summary.failed) += 1;
    result.summary.errored = long(result.errors.size());
    result.corpus = std::move(corpus);
    return result;
}

json report_json(const SweepResult& result) {
    json records = json::array();
    for (const auto& rec : result.records) records.push_back(record_json(rec));
    json summary{{"total", result.summary.total},
                 {"passed", result.summary.passed},
                 {"failed", result.summary.failed},
                 {"errored", result.summary.errored}};
    return json{{"records", std::move(records)},
                {"errors", result.errors},
                {"summary", std::move(summary)}};
}

bool explain_point(const SweepConfig& cfg, std::ostream& os) {
    if (!cfg.ideal_literal)
        throw Error("explain needs an explicit --ideal");
    if (cfg.ks.size() != 1 || cfg.ss.size() != 1 || cfg.fs.size() != 1)
        throw Error("explain needs exactly one k, one s and one f");
    std::vector<FieldEntry> corpus = load_field_corpus(cfg.field_path);
    const FieldEntry* fe = nullptr;
    if (cfg.field_name.empty()) {
        fe = &corpus.front();
    } else {
        for (const auto& c : corpus)
            if (c.name == cfg.field_name) fe = &c;
        if (!fe) throw Error("field not found in corpus: " + cfg.field_name);
    }
    const NumberField* K = fe->field.get();
    Ideal n = parse_ideal_literal(K, json::parse(*cfg.ideal_literal));
    ResidueRing ring(K, n, cfg.enum_bound);
    std::vector<Character> chars = all_characters(ring);
    std::vector<const Character*> chis = select_characters(chars, cfg.chars);
    if (chis.size() != 1) throw Error("explain needs exactly one character");
    std::vector<AlgInt> rs = select_r(ring, cfg.r_sel);
    DivisorTable f = make_f_table(n, cfg.fs.front());
    IdentityContext ctx(ring);

    IdentityParams p;
    p.ring = &ring;
    p.k = cfg.ks.front();
    p.s = cfg.ss.front();
    p.r = rs.front();
    p.chi = chis.front();
    p.f = &f;
    validate(p);

    const Ideal d = p.chi->conductor();
    const Ideal n0 = n_zero_of(n, d);
    const Ideal tail = ideal_divexact(n, n0);
    const CycInt psi_r = primitive_eval(*p.chi, p.r);
    Int mu_pow = p.k == 1 ? Int(1) : ipow(moebius(d), p.k - 1);
    Int phi_head =
        euler_phi(ideal_divexact(ideal_pow(n0, p.k), ideal_pow(d, p.k - 1)));
    Int phik_tail = phi_k_formula(tail, p.k);

    os << "field        " << fe->name << "\n";
    os << "n            " << n.str() << "\n";
    os << "k, s         " << p.k << ", " << p.s << "\n";
    os << "r            " << p.r.str() << "\n";
    os << "chi index    " << p.chi->index() << "\n";
    os << "f            " << f.name() << "\n";
    os << "conductor d  " << d.str() << "\n";
    os << "n0           " << n0.str() << "\n";
    os << "n/n0         " << tail.str() << "\n";
    os << "psi(r)       " << psi_r.str() << "\n";
    os << "mu(d)^(k-1)  " << mu_pow << "\n";
    os << "phi(n0^k/d^(k-1))  " << phi_head << "\n";
    os << "phi_k(n/n0)  " << phik_tail << "\n";

    const DivisorTable& ms = ctx.mu_star(f);
    const Int& N = n.norm();
    os << "e-sum terms (e | n, d | e): (mu*f)(e)/phi(e) * (N/N(e))^s\n";
    Rat esum(0);
    for (size_t ei = 0; ei < ctx.divisors().size(); ++ei) {
        const Ideal& e = ctx.divisors()[ei];
        if (!ideal_divides(d, e)) continue;
        Rat term(ms.value_by_index(ei) * ipow(N / e.norm(), p.s));
        term /= Rat(euler_phi(e));
        esum += term;
        os << "  e=" << e.str() << "  (mu*f)(e)=" << ms.value_by_index(ei)
           << "  term=" << term << "\n";
    }
    os << "e-sum        " << esum << "\n";

    std::vector<Evaluator> evs;
    for (Evaluator ev : cfg.evaluators)
        if (budget_allows(ev, N, p.k, p.s, cfg.budgets)) evs.push_back(ev);
    if (evs.empty()) throw BudgetExceeded("no selected evaluator fits its budget");
    VerificationRecord rec = verify(p, evs, cfg.budgets, &ctx);
    if (cfg.inject_mismatch) {
        rec.rhs = (rec.rhs + CycInt::integer(1)).canonical();
        rec.equal = cyc_eq(rec.lhs, rec.rhs);
        os << "rhs (perturbed by the mismatch self-test)\n";
    }
    os << "rhs          " << rec.rhs.str() << "\n";
    os << "lhs          " << rec.lhs.str() << "  (";
    for (size_t i = 0; i < rec.evaluators.size(); ++i)
        os << (i ? "," : "") << rec.evaluators[i];
    os << ")\n";
    os << "equal        " << (rec.equal ? "true" : "false") << "\n";
    return rec.equal;
}

} // namespace menon
