#include "instance_config.hpp"

#include "drinfeld/expression.hpp"
#include "drinfeld/heights.hpp"
#include "drinfeld/sampling.hpp"
#include "drinfeld/tate_voloch.hpp"
#include "drinfeld/torsion.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace drinfeld::cli {
namespace {

enum Exit { kPass = 0, kFail = 1, kCapability = 2, kHypothesis = 3, kParse = 4 };

struct Record {
    std::string instance;
    std::string check;
    std::string constant_name;
    std::optional<Rational> value;
    std::string verdict;  // pass | fail | info | capability | hypothesis
    std::string witness;
};

struct Options {
    std::string config;
    std::optional<std::int64_t> precision;
    std::optional<std::size_t> max_iter;
    std::string out;
    std::string format = "table";
};

class Run {
public:
    explicit Run(const Options& opt) : opt_(opt) {}

    void add(Record r) {
        if (r.verdict == "fail") status_ = std::max(status_, 10);
        if (r.verdict == "hypothesis") status_ = std::max(status_, 3);
        if (r.verdict == "capability") status_ = std::max(status_, 2);
        records_.push_back(std::move(r));
    }
    void check(const std::string& inst, const std::string& name, bool ok, const std::string& witness,
               std::optional<Rational> value = std::nullopt, const std::string& constant = "") {
        add({inst, name, constant, value, ok ? "pass" : "fail", witness});
    }
    void info(const std::string& inst, const std::string& name, const std::string& constant, Rational value,
              const std::string& witness = "") {
        add({inst, name, constant, value, "info", witness});
    }

    int exit_code() const {
        if (status_ >= 10) return kFail;
        return status_;
    }

    std::int64_t precision(const InstanceConfig* c) const {
        if (opt_.precision) return *opt_.precision;
        if (c && c->precision) return *c->precision;
        if (const char* env = std::getenv("DRINFELD_PRECISION")) {
            try {
                return std::stoll(env);
            } catch (const std::exception&) {
                throw ParseError(std::string("DRINFELD_PRECISION is not an integer: ") + env);
            }
        }
        return LocalField::kDefaultPrecision;
    }
    std::size_t max_iter(const InstanceConfig& c) const {
        if (opt_.max_iter) return *opt_.max_iter;
        return c.max_iter.value_or(64);
    }

    void write(std::ostream& os) const {
        if (opt_.format == "records") {
            for (const auto& r : records_) {
                nlohmann::ordered_json j;
                j["schema"] = kSchemaVersion;
                j["instance"] = r.instance;
                j["check"] = r.check;
                j["constant_name"] = r.constant_name.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(r.constant_name);
                if (r.value) {
                    j["value_numerator"] = r.value->numerator();
                    j["value_denominator"] = r.value->denominator();
                } else {
                    j["value_numerator"] = nullptr;
                    j["value_denominator"] = nullptr;
                }
                j["verdict"] = r.verdict;
                j["witness"] = r.witness;
                os << j.dump() << "\n";
            }
            return;
        }
        std::size_t wi = 8, wc = 5, wk = 8, wv = 5, wd = 7;
        for (const auto& r : records_) {
            wi = std::max(wi, r.instance.size());
            wc = std::max(wc, r.check.size());
            wk = std::max(wk, r.constant_name.size());
            wv = std::max(wv, r.value ? to_string(*r.value).size() : 1);
            wd = std::max(wd, r.verdict.size());
        }
        auto pad = [&](const std::string& x, std::size_t w) {
            std::size_t n = 0;
            for (unsigned char ch : x) n += (ch & 0xC0) != 0x80;
            os << x << std::string(w > n ? w - n : 0, ' ') << "  ";
        };
        auto row = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& d,
                       const std::string& e, const std::string& f) {
            pad(a, wi);
            pad(b, wc);
            pad(c, wk);
            pad(d, wv);
            pad(e, wd);
            os << f << "\n";
        };
        row("instance", "check", "constant", "value", "verdict", "witness");
        for (const auto& r : records_)
            row(r.instance, r.check, r.constant_name, r.value ? to_string(*r.value) : "-", r.verdict, r.witness);
    }

private:
    const Options& opt_;
    std::vector<Record> records_;
    int status_ = 0;
};

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
    std::ostringstream os;
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? sep : "") << xs[i];
    return os.str();
}

std::shared_ptr<const LocalField> local_field(const Instance& inst, const Run& run) {
    const auto& lc = inst.config->local;
    const Fq unit = parse_constant(lc.unit, *inst.k);
    return LocalField::create(inst.v, *inst.fq, lc.residue_degree, lc.ramification, unit, run.precision(inst.config));
}

void run_heights(const Instance& inst, Run& run) {
    const std::string& id = inst.config->id;
    const Poly a = parse_polynomial(inst.config->height_a, *inst.fq);
    const HeightGapBound gap = height_gap_bound(inst.phi, a);
    std::vector<std::string> bad;
    for (const auto& d : gap.bad_places) bad.push_back(d.w.to_string() + ":" + to_string(d.gap));
    run.info(id, "height_gap_bound", "C_0", gap.C0, "a = " + a.to_string() + "; " + join(bad, ", "));
    const ValuationSet places = inst.tower.extension_places();
    const std::string var = inst.config->tower ? "L" : "T";
    for (const auto& s : inst.config->elements) {
        const RationalFunction x = parse_tower_element(inst, s);
        const Rational h = global_height(x, places);
        run.info(id, "naive_height", "h(" + s + ")", h);
        const CanonicalHeight ch = canonical_global_height(inst.phi, x, inst.tower, a, run.max_iter(*inst.config));
        std::vector<std::string> parts;
        for (const auto& l : ch.local) {
            const char* how = l.decision == LocalCanonicalHeight::Decision::Escape     ? "escape"
                              : l.decision == LocalCanonicalHeight::Decision::Trap     ? "trap"
                              : l.decision == LocalCanonicalHeight::Decision::Periodic ? "periodic"
                                                                                       : "zero";
            parts.push_back(l.w.to_string(var) + ":" + how + "@" + std::to_string(l.step) + "=" + to_string(l.height));
        }
        run.check(id, "canonical_height", ch.cross_check, join(parts, ", "), ch.value, "hhat(" + s + ")");
        const Rational diff = abs(h - ch.value);
        run.check(id, "height_gap", diff <= gap.C0, "|h - hhat| <= C_0", diff, "|h-hhat|(" + s + ")");
    }
}

void run_torsion(const Instance& inst, Run& run) {
    const std::string& id = inst.config->id;
    const auto F = local_field(inst, run);
    std::optional<BallConstant> ball;
    std::optional<Rational> floor;
    try {
        ball = ball_constant(inst.phi, inst.v);
        floor = torsion_valuation_floor(inst.phi, inst.v).M_v;
        run.info(id, "ball_constant", "C_v", Rational(ball->C_v), ball->to_string());
        run.info(id, "torsion_floor", "M_v", *floor);
    } catch (const HypothesisError& e) {
        run.add({id, "ball_constant", "C_v", std::nullopt, "info", std::string("not defined: ") + e.what()});
    }
    for (const auto& s : inst.config->levels) {
        const Poly a = parse_polynomial(s, *inst.fq);
        const TorsionSet ts = locate_torsion(inst.phi, a, F);
        run.check(id, "torsion_count", ts.complete(), "phi[" + s + "] in " + F->to_string(),
                  Rational(static_cast<std::int64_t>(ts.points.size())), "#phi[" + s + "]");
        std::vector<Rational> vals;
        for (const auto& x : ts.points)
            if (!x.indistinguishable_from_zero()) vals.push_back(x.valuation().value());
        std::sort(vals.begin(), vals.end());
        run.check(id, "polygon_agreement", vals == ts.polygon.root_valuation_multiset(), ts.polygon.to_string());
        run.check(id, "vector_space", is_fq_subspace(ts), "closed under + and F_q-scaling");
        if (ball) {
            const bool empty = std::all_of(vals.begin(), vals.end(), [&](const Rational& r) { return r < Rational(ball->C_v); });
            run.check(id, "ball_emptiness", empty, "v(x) < C_v for nonzero x in phi[" + s + "]");
            const bool above = std::all_of(vals.begin(), vals.end(), [&](const Rational& r) { return r >= *floor; });
            run.check(id, "torsion_floor_holds", above, "v(x) >= M_v on phi[" + s + "]");
        }
    }
}

AffineVariety variety(const Instance& inst) {
    AffineVariety X{inst.config->variety->g};
    const GaloisField& kp = inst.tower.extension_constants();
    const std::string var = inst.config->tower ? "L" : "T";
    for (const auto& s : inst.config->variety->generators) {
        try {
            X.generators.push_back(parse_multipoly(substitute_base(inst, s), kp, X.g, var));
        } catch (const ParseError& e) {
            throw ParseError("instance '" + inst.config->id + "', generator '" + s + "': " + e.what(), inst.config->line);
        }
    }
    return X;
}

void run_tv(const Instance& inst, Run& run) {
    const std::string& id = inst.config->id;
    if (!inst.config->variety) {
        run.add({id, "tv", "", std::nullopt, "info", "skipped: instance has no variety"});
        return;
    }
    const AffineVariety X = variety(inst);
    std::vector<std::vector<RationalFunction>> points;
    for (const auto& p : inst.config->points) {
        std::vector<RationalFunction> P;
        for (const auto& s : p) P.push_back(parse_tower_element(inst, s));
        points.push_back(std::move(P));
    }
    std::vector<Poly> ann;
    for (const auto& s : inst.config->annihilators) ann.push_back(parse_polynomial(s, *inst.fq));
    const TheoremReport rep = verify_tv(inst.phi, X, inst.v, points, inst.tower, ann);
    for (const auto& [name, value] : rep.constants) run.info(id, "tv_constant", name, value);
    const std::string var = inst.config->tower ? "L" : "T";
    for (const auto& pv : rep.verdicts) {
        std::string w = pv.on_variety ? "on variety"
                                       : (pv.witness ? "w = " + pv.witness->to_string(var) + ", lambda_w <= " +
                                                           to_string(pv.bound)
                                                     : "no witness");
        if (!pv.pass) w = "Tate-Voloch disjunction violated: " + w + "; " + join(pv.notes, "; ");
        std::optional<Rational> lam;
        if (!pv.lambda.is_infinite()) lam = pv.lambda.value();
        run.check(id, "tv_point " + pv.point, pv.pass, w, lam, "lambda_w");
    }
}

void run_mattuck(const Instance& inst, Run& run) {
    const std::string& id = inst.config->id;
    if (!inst.config->target) {
        run.add({id, "mattuck", "", std::nullopt, "info", "skipped: instance has no target"});
        return;
    }
    const auto F = local_field(inst, run);
    std::vector<LocalElement> ys;
    for (const auto& s : *inst.config->target) ys.push_back(F->embed(parse_rational_function(s, *inst.k)));
    std::vector<Poly> levels;
    for (const auto& s : inst.config->levels) levels.push_back(parse_polynomial(s, *inst.fq));
    const TheoremReport rep = verify_mattuck(inst.phi, inst.v, TargetPoint(ys), levels, F);
    for (const auto& [name, value] : rep.constants) run.info(id, "mattuck_constant", name, value);
    for (const auto& pv : rep.verdicts) {
        std::string w = join(pv.notes, "; ");
        if (!pv.pass) w = "Mattuck disjunction or ball count violated: " + w;
        std::optional<Rational> lam;
        if (!pv.lambda.is_infinite()) lam = pv.lambda.value();
        run.check(id, "mattuck " + pv.point, pv.pass, w, lam, "max lambda_v");
    }
    for (const auto& n : rep.notes) run.add({id, "mattuck_trace", "", std::nullopt, "info", n});
}

void run_infinity(const Instance& inst, Run& run) {
    const std::string& id = inst.config->id;
    const AccumulationReport rep = infinity_accumulation(inst.phi, inst.config->n_max);
    for (const auto& r : rep.rows)
        run.info(id, "max_torsion_valuation", "n=" + std::to_string(r.n), r.max_valuation, r.polygon);
    run.check(id, "strictly_increasing", rep.strictly_increasing,
              "max v_inf over nonzero phi[T^n] for n = 1.." + std::to_string(inst.config->n_max));
}

// Built-in invariant suite.
void run_selftest(Run& run) {
    const std::string id = "selftest";
    Rng rng(20261016);
    const GaloisField& F3 = GaloisField::get(3, 1);
    const GaloisField& F4 = GaloisField::get(2, 2);
    {
        bool ok = true;
        std::size_t n = 0;
        for (const GaloisField* k : {&F3, &F4}) {
            const ValuationSet vs(*k);
            for (int i = 0; i < 100; ++i, ++n) ok &= check_sum_formula(random_nonzero_rational_function(*k, 4, rng), vs).holds();
        }
        const RationalTower tw(F3, parse_polynomial("2*L^2", F3, "L"));
        for (int i = 0; i < 100; ++i, ++n)
            ok &= check_sum_formula(random_nonzero_rational_function(F3, 4, rng), tw.extension_places()).holds();
        run.check(id, "sum_formula_fuzz", ok, std::to_string(n) + " elements");
    }
    {
        bool ok = true;
        const ValuationSet vs(F3);
        for (int i = 0; i < 200; ++i) {
            const auto x = random_rational_function(F3, 3, rng), y = random_rational_function(F3, 3, rng);
            const Rational hx = global_height(x, vs), hy = global_height(y, vs);
            ok &= global_height(x * y, vs) <= hx + hy && global_height(x + y, vs) <= hx + hy;
        }
        run.check(id, "height_inequalities", ok, "200 pairs");
    }
    const DrinfeldModule carlitz = DrinfeldModule::carlitz(F3);
    const ValuationSet vs(F3);
    const Poly T = Poly::variable(F3);
    struct Case {
        Place v;
        unsigned mp, e;
        Poly a;
    };
    const std::vector<Case> cases = {
        {vs.at(T), 2, 2, T},
        {vs.at(parse_polynomial("T+1", F3)), 1, 1, T},
        {vs.at(parse_polynomial("T+1", F3)), 3, 1, T.pow(2)},
        {vs.at(parse_polynomial("T^2+1", F3)), 2, 1, T},
    };
    bool ball_ok = true, oracle_ok = true;
    for (const auto& c : cases) {
        const auto F = LocalField::create(c.v, F3, c.mp, c.e, std::nullopt, run.precision(nullptr));
        const TorsionSet ts = locate_torsion(carlitz, c.a, F);
        const std::int64_t Cv = ball_constant(carlitz, c.v).C_v;
        std::vector<Rational> vals;
        for (const auto& x : ts.points)
            if (!x.indistinguishable_from_zero()) vals.push_back(x.valuation().value());
        for (const auto& r : vals) ball_ok &= r < Rational(Cv);
        std::sort(vals.begin(), vals.end());
        oracle_ok &= vals == ts.polygon.root_valuation_multiset();
    }
    run.check(id, "ball_emptiness", ball_ok, std::to_string(cases.size()) + " torsion levels");
    run.check(id, "polygon_vs_lifting", oracle_ok, std::to_string(cases.size()) + " torsion levels");
    {
        bool ok = true;
        for (int i = 0; i < 5; ++i) {
            const KummerInstance ki = random_kummer_instance(F3, rng);
            for (const auto& x : ki.torsion)
                ok &= canonical_global_height(ki.phi, x, ki.tower, ki.level).value == Rational(0);
        }
        const RationalTower tw(F3, parse_polynomial("2*L^2", F3, "L"));
        ok &= canonical_global_height(carlitz, RationalFunction::variable(F3), tw, T).value == Rational(0);
        run.check(id, "canonical_height_torsion_zero", ok, "Kummer torsion and lambda^2 = -T");
    }
    {
        const TvSuiteResult suite = random_tv_suite(40, rng);
        run.check(id, "tv_random_suite", suite.failures.empty(),
                  std::to_string(suite.instances) + " instances, " + std::to_string(suite.points) + " points, " +
                      std::to_string(suite.failures.size()) + " failures");
    }
}

int dispatch(const std::string& sub, const Options& opt) {
    Run run(opt);
    auto guarded = [&](const std::string& inst, auto&& body) {
        try {
            body();
        } catch (const HypothesisError& e) {
            std::cerr << inst << ": hypothesis violated: " << e.what() << "\n";
            run.add({inst, sub, "", std::nullopt, "hypothesis", e.what()});
        } catch (const IndeterminateError& e) {
            std::cerr << inst << ": " << e.what() << " [" << e.trace() << "]\n";
            run.add({inst, sub, "", std::nullopt, "capability", std::string(e.what()) + " [" + e.trace() + "]"});
        } catch (const CapabilityError& e) {
            std::cerr << inst << ": capability limit: " << e.what() << "\n";
            run.add({inst, sub, "", std::nullopt, "capability", e.what()});
        } catch (const PrecisionError& e) {
            std::cerr << inst << ": precision exhausted: " << e.what() << "\n";
            run.add({inst, sub, "", std::nullopt, "capability", std::string("precision exhausted: ") + e.what()});
        } catch (const InvariantViolation& e) {
            std::cerr << inst << ": assertion failed: " << e.what() << "\n";
            run.add({inst, sub, "", std::nullopt, "fail", e.what()});
        }
    };
    if (sub == "selftest") {
        guarded("selftest", [&] { run_selftest(run); });
    } else {
        if (opt.config.empty()) throw ParseError(sub + " needs --config");
        const Config cfg = load_config(opt.config);
        for (const auto& c : cfg.instances) {
            std::optional<Instance> inst;
            inst.emplace(build_instance(c));
            guarded(c.id, [&] {
                try {
                    if (sub == "heights") run_heights(*inst, run);
                    else if (sub == "torsion") run_torsion(*inst, run);
                    else if (sub == "tv") run_tv(*inst, run);
                    else if (sub == "mattuck") run_mattuck(*inst, run);
                    else if (sub == "infinity") run_infinity(*inst, run);
                } catch (const std::invalid_argument& e) {
                    throw ParseError("instance '" + c.id + "': " + e.what(), c.line);
                }
            });
        }
    }
    if (opt.out.empty()) {
        run.write(std::cout);
    } else {
        std::ofstream out(opt.out);
        if (!out) throw ParseError("cannot write '" + opt.out + "'");
        run.write(out);
    }
    return run.exit_code();
}

}  // namespace
}  // namespace drinfeld::cli

int main(int argc, char** argv) {
    using namespace drinfeld::cli;
    CLI::App app{"Heights, torsion and Tate-Voloch checks for Drinfeld modules"};
    app.require_subcommand(1);
    Options opt;
    std::int64_t precision = 0;
    std::size_t max_iter = 0;
    auto* p_opt = app.add_option("--precision", precision, "Absolute u-adic precision of local computations");
    auto* m_opt = app.add_option("--max-iter", max_iter, "Iteration cap for canonical height decisions");
    app.add_option("--out", opt.out, "Write the report to PATH instead of stdout");
    app.fallthrough();
    app.add_option("--format", opt.format, "table or records")->check(CLI::IsMember({"table", "records"}));
    const std::vector<std::pair<std::string, std::string>> subs = {
        {"heights", "Naive and canonical heights, height gap bound"},
        {"torsion", "Locate torsion levels; ball constant and Newton polygon checks"},
        {"tv", "Tate-Voloch disjunction on certified torsion points"},
        {"mattuck", "Mattuck bound and ball count on enumerated torsion"},
        {"infinity", "Accumulation of torsion at the infinite place"},
        {"selftest", "Built-in invariant suite"},
    };
    for (const auto& [name, desc] : subs) {
        auto* s = app.add_subcommand(name, desc);
        auto* c = s->add_option("--config", opt.config, "Instance file (YAML, schema 1)");
        if (name != "selftest") c->required();
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kParse;
    }
    if (p_opt->count()) opt.precision = precision;
    if (m_opt->count()) opt.max_iter = max_iter;
    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        return dispatch(sub, opt);
    } catch (const drinfeld::ParseError& e) {
        std::cerr << "parse error";
        if (e.line() > 0) std::cerr << " at line " << e.line();
        std::cerr << ": " << e.what() << "\n";
        return kParse;
    }
}
