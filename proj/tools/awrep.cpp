// awrep: construct, verify and classify finite-dimensional representations of
// the Askey-Wilson algebra; exports q-Racah data.
//
// exit codes: 0 ok, 1 symbolic check failed, 2 precondition, 3 internal
// residual, 4 equivalence failure

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "awrep/awsym.hpp"
#include "awrep/io.hpp"
#include "awrep/leonard.hpp"
#include "awrep/repverify.hpp"
#include "awrep/sweep.hpp"

using namespace awrep;
using io::json;
using repbuild::Basis;
using repbuild::Branch;
using repbuild::Variant;

namespace {

// Parameter block shared by construct, dual, racah and the sweep grid entries.
// Everything is kept as text until the field is known.
struct ParamText {
    std::string q12 = "1.5";
    std::string mu, q_mu_pow;
    std::array<std::string, 3> j, jh;
    int N = 1;
    std::string variant = "general", branch = "designated", basis = "V";
    std::string A3 = "0";
    int epsilon = 1, a_branch = 1, root = 0, l = -1;
    double tol = 1e-9;
};

void add_param_flags(CLI::App* c, ParamText& p) {
    c->add_option("--q12", p.q12, "value of q^{1/2}, e.g. 1.2 or 0.9+0.4i");
    auto* mu = c->add_option("--mu", p.mu, "exponent mu (complex)");
    auto* qmu = c->add_option("--q-mu-pow", p.q_mu_pow, "the value q^mu");
    mu->excludes(qmu);
    for (int i = 0; i < 3; ++i) {
        const std::string k = std::to_string(i + 1);
        auto* e = c->add_option("--j" + k, p.j[i], "exponent j" + k);
        auto* h = c->add_option("--q-j" + k + "-half-pow", p.jh[i], "the value q^{j" + k + "/2}");
        e->excludes(h);
    }
    c->add_option("--N", p.N, "dimension minus one")->check(CLI::NonNegativeNumber);
    c->add_option("--variant", p.variant, "general | zero-classical | zero-nonclassical | border")
        ->check(CLI::IsMember({"general", "zero-classical", "zero-nonclassical", "border"}));
    c->add_option("--branch", p.branch, "designated | negated | swapped | swapped-negated")
        ->check(CLI::IsMember({"designated", "negated", "swapped", "swapped-negated"}));
    c->add_option("--basis", p.basis, "V or X (general variant)")->check(CLI::IsMember({"V", "X"}));
    c->add_option("--A3", p.A3, "A3 for the zero-parameter variants");
    c->add_option("--epsilon", p.epsilon, "+1 or -1")->check(CLI::IsMember({-1, 1}));
    c->add_option("--a-branch", p.a_branch, "+1 or -1")->check(CLI::IsMember({-1, 1}));
    c->add_option("--root", p.root, "root of the zero-case equation, 0 or 1")->check(CLI::IsMember({0, 1}));
    c->add_option("--l", p.l, "border index, 2N or 2N+1");
    c->add_option("--tol", p.tol, "tolerance")->check(CLI::PositiveNumber);
}

// q^x at the input boundary. Half-integer real exponents use exact powers
// of q12; otherwise the principal branch when q12 is the principal root of q.
Scalar boundary_pow(Scalar x, const qkernel::FieldCfg& cfg) {
    const double twice = 2 * x.real();
    if (x.imag() == 0 && std::abs(twice - std::round(twice)) < 1e-12)
        return cfg.half_pow(static_cast<int>(std::lround(twice)));
    const Scalar q12 = cfg.q12();
    if (q12.real() > 0 || (q12.real() == 0 && q12.imag() > 0)) return qkernel::qpow(x, cfg);
    return std::exp(2.0 * x * std::log(q12));
}

Branch branch_from(const std::string& s) {
    if (s == "negated") return Branch::Negated;
    if (s == "swapped") return Branch::Swapped;
    if (s == "swapped-negated") return Branch::SwappedNegated;
    return Branch::Designated;
}

Variant variant_from(const std::string& s) {
    if (s == "zero-classical") return Variant::ZeroA12Classical;
    if (s == "zero-nonclassical") return Variant::ZeroA12NonClassical;
    if (s == "border") return Variant::Border;
    return Variant::GeneralClassical;
}

sweep::Job make_job(const ParamText& t) {
    sweep::Job job;
    job.q12 = io::parse_complex(t.q12);
    job.tol = t.tol;
    job.variant = variant_from(t.variant);
    job.branch = branch_from(t.branch);
    job.basis = t.basis == "X" ? Basis::X : Basis::V;
    job.A3 = io::parse_complex(t.A3);
    job.root = t.root;
    auto& p = job.params;
    p.N = t.N;
    p.variant = job.variant;
    p.eps = t.epsilon;
    p.a_branch = t.a_branch;
    p.border_l = t.l;
    if (job.variant == Variant::Border && t.l != 2 * t.N && t.l != 2 * t.N + 1)
        throw InvariantViolation("border index l must be 2N or 2N+1");
    if (job.variant == Variant::GeneralClassical || job.variant == Variant::Border) {
        const auto cfg = job.cfg();
        if (!t.q_mu_pow.empty()) p.qmu = io::parse_complex(t.q_mu_pow);
        else if (!t.mu.empty()) p.qmu = boundary_pow(io::parse_complex(t.mu), cfg);
        else if (job.variant == Variant::Border) p.qmu = Scalar(0.0, 1.0) * cfg.half_pow(t.l);
        else throw InvariantViolation("one of --mu, --q-mu-pow is required");
        for (int i = 0; i < 3; ++i) {
            if (!t.jh[i].empty()) p.jh[i] = io::parse_complex(t.jh[i]);
            else if (!t.j[i].empty()) p.jh[i] = boundary_pow(0.5 * io::parse_complex(t.j[i]), cfg);
            else throw InvariantViolation("j" + std::to_string(i + 1) + " is required");
        }
    }
    return job;
}

// Grid entries use the flag names without dashes; numbers or strings.
ParamText text_from_json(const json& e) {
    ParamText t;
    auto str = [&](const char* key, std::string& out) {
        if (!e.contains(key)) return;
        const auto& v = e.at(key);
        if (v.is_string()) out = v.get<std::string>();
        else if (v.is_array()) out = io::format_complex(io::scalar_from(v));
        else out = io::format_complex(Scalar(v.get<double>()));
    };
    str("q12", t.q12);
    str("mu", t.mu);
    str("q_mu_pow", t.q_mu_pow);
    for (int i = 0; i < 3; ++i) {
        const std::string k = std::to_string(i + 1);
        str(("j" + k).c_str(), t.j[i]);
        str(("q_j" + k + "_half_pow").c_str(), t.jh[i]);
    }
    str("A3", t.A3);
    t.N = e.value("N", t.N);
    t.variant = e.value("variant", t.variant);
    t.branch = e.value("branch", t.branch);
    t.basis = e.value("basis", t.basis);
    t.epsilon = e.value("epsilon", t.epsilon);
    t.a_branch = e.value("a_branch", t.a_branch);
    t.root = e.value("root", t.root);
    t.l = e.value("l", t.l);
    t.tol = e.value("tol", t.tol);
    return t;
}

json params_echo(const sweep::Job& job) {
    const auto& p = job.params;
    json j;
    j["variant"] = repbuild::to_string(job.variant);
    j["N"] = p.N;
    if (job.variant == Variant::GeneralClassical || job.variant == Variant::Border) {
        j["qmu"] = io::scalar_json(p.qmu);
        j["q_j_half"] = json::array({io::scalar_json(p.jh[0]), io::scalar_json(p.jh[1]), io::scalar_json(p.jh[2])});
        j["branch"] = repbuild::to_string(job.branch);
    } else {
        j["A3"] = io::scalar_json(job.A3);
    }
    if (job.variant == Variant::Border) j["l"] = p.border_l;
    if (job.variant == Variant::ZeroA12Classical) j["root"] = job.root;
    if (job.variant == Variant::ZeroA12NonClassical) {
        j["epsilon"] = p.eps;
        j["a_branch"] = p.a_branch;
    }
    j["tol"] = job.tol;
    return j;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << text;
}

void emit(const json& j, const std::string& out) { emit(j.dump(2) + "\n", out); }

int fail(const Error& e, Scalar q12) {
    json j = io::artifact(q12);
    j["error"] = json{{"kind", e.kind()}, {"message", e.what()}, {"exit_code", e.exit_code()}};
    std::cout << j.dump(2) << "\n";
    std::cerr << "awrep: " << e.what() << "\n";
    return e.exit_code();
}

// ---------------------------------------------------------------- symcheck

int cmd_symcheck(const std::vector<std::string>& mutate, const std::string& out) {
    using namespace awsym;
    std::vector<std::string> drop;
    for (std::size_t k = 0; k + 1 < mutate.size(); k += 2) {
        if (mutate[k] != "drop-casimir-term") throw std::invalid_argument("unknown mutation " + mutate[k]);
        drop.push_back(mutate[k + 1]);
    }
    json j;
    j["schema"] = io::kSchema;
    j["q12"] = nullptr;  // no q in the exact checks
    std::optional<std::string> first;
    auto record = [&](const std::string& name, bool ok) {
        j["checks"][name] = ok;
        if (!ok && !first) first = name;
    };
    record("diamond", diamond_check());
    const NCPoly c = casimir(RuleSet::standard(), drop);
    const auto central = centrality_check(c);
    for (int i = 0; i < 3; ++i) record("casimir_commutes_I" + std::to_string(i + 1), central[i]);
    std::vector<Iso> isos = {{IsoKind::Rho}, {IsoKind::Sigma}};
    for (int e : {1, -1})
        for (int e2 : {1, -1}) isos.push_back({IsoKind::Tau, e, e2});
    for (const auto& iso : isos) {
        const auto h = iso_homomorphism_check(iso);
        for (int i = 0; i < 3; ++i) record(iso.name() + "_relation_" + std::to_string(i + 1), h[i]);
    }
    j["mutations"] = drop;
    j["casimir"] = json{{"monomials", c.size()}, {"normal_form", c.str()}};
    j["pass"] = !first;
    j["first_failure"] = first ? json(*first) : json(nullptr);
    emit(j, out);
    if (first) {
        std::cerr << "awrep: symbolic check failed: " << *first << "\n";
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------------- construct

int cmd_construct(const ParamText& t, const std::string& out) {
    const auto job = make_job(t);
    const auto cfg = job.cfg();
    const auto rep = sweep::build_job(job);
    const auto vr = repverify::verify(rep, cfg);
    json j = io::artifact(rep.q12);
    j["command"] = "construct";
    j["params"] = params_echo(job);
    j["rep"] = io::rep_json(rep);
    j["verify"] = io::verify_json(vr);
    emit(j, out);
    const double rel = vr.max_residual() / vr.scale;
    const double cdev = vr.casimir_deviation / (vr.scale * vr.scale);
    if (rel > job.tol || cdev > job.tol || !vr.flags.irreducible) {
        std::cerr << "awrep: verification failed (relative residual " << rel << ", casimir deviation " << cdev
                  << ", commutant dimension " << vr.commutant_dim << ")\n";
        return 3;
    }
    return 0;
}

// ---------------------------------------------------------------- dual

int cmd_dual(const ParamText& t, const std::string& out) {
    const auto job = make_job(t);
    if (job.variant != Variant::GeneralClassical) throw InvariantViolation("dual needs the general variant");
    const auto cfg = job.cfg();
    leonard::check_dual_hypotheses(job.params, cfg);
    const auto repX = repbuild::build_classical_x(job.params, job.branch, cfg);
    const auto repY = leonard::build_dual(job.params, job.branch, cfg);
    const auto res = repverify::relation_residual(repY, repY.ap);
    const double rel = *std::max_element(res.begin(), res.end()) / (1 + repY.max_abs());

    json j = io::artifact(repY.q12);
    j["command"] = "dual";
    j["params"] = params_echo(job);
    j["rep"] = io::rep_json(repY);
    j["relation_residual"] = rel;
    const Matrix T = leonard::dual_equivalence(repX, repY);
    const Scalar tx = repverify::trace_class(repX, cfg), ty = repverify::trace_class(repY, cfg);
    const double sd = repverify::spectrum_distance(repX.meta.spectrum, repY.meta.spectrum);
    j["intertwiner"] = io::matrix_json(T);
    j["equivalence"] = json{{"equivalent", true},
                            {"spectrum_x", json::array()},
                            {"spectrum_y", json::array()},
                            {"spectrum_deviation", sd},
                            {"trace_class_x", io::scalar_json(tx)},
                            {"trace_class_y", io::scalar_json(ty)}};
    for (auto z : repX.meta.spectrum) j["equivalence"]["spectrum_x"].push_back(io::scalar_json(z));
    for (auto z : repY.meta.spectrum) j["equivalence"]["spectrum_y"].push_back(io::scalar_json(z));
    emit(j, out);
    if (rel > job.tol) {
        std::cerr << "awrep: dual relation residual " << rel << "\n";
        return 3;
    }
    return 0;
}

// ---------------------------------------------------------------- racah

int cmd_racah(const ParamText& t, const std::string& out, const std::string& format) {
    const auto job = make_job(t);
    const auto cfg = job.cfg();
    const auto& p = job.params;
    const bool border = job.variant == Variant::Border;
    if (!border && job.variant != Variant::GeneralClassical)
        throw InvariantViolation("racah needs the general or border variant");
    const auto rp = leonard::racah_params(p, cfg);
    const auto cond = leonard::validate_conditions(rp, cfg);
    if (!cond.passes()) throw InvariantViolation("condition fails: " + cond.first_failure().value_or("?"));
    if (!border) leonard::check_dual_hypotheses(p, cfg);
    const Matrix table = leonard::racah_table(rp, cfg);
    if (format == "csv") {
        emit(io::racah_csv(table), out);
        return 0;
    }
    // internal consistency limits: recurrences at 10 tol, transition matrix at 100 tol
    const double rlim = 10 * job.tol, plim = 100 * job.tol;
    json j = io::artifact(job.q12);
    j["command"] = "racah";
    j["params"] = params_echo(job);
    j["racah"] = io::racah_params_json(rp);
    j["conditions"] = io::conditions_json(cond);
    j["table"] = io::matrix_json(table);
    int code = 0;
    if (border) {
        const auto bc = leonard::border_recurrence_check(p, p.border_l, cfg);
        j["border_check"] = json{{"recurrence", bc.recurrence}, {"identity", bc.identity}};
        if (bc.recurrence > rlim || bc.identity > rlim) code = 3;
    } else {
        const auto rr = leonard::recurrence_difference_check(rp, cfg);
        j["residuals"] = json{{"recurrence", rr.recurrence}, {"difference", rr.difference}};
        const auto tr = leonard::transition_matrix(p, job.branch, cfg);
        j["transition"] = io::transition_json(tr);
        if (rr.recurrence > rlim || rr.difference > rlim || tr.residual_A > rlim || tr.residual_B > rlim ||
            tr.intertwiner_deviation.value_or(0) > plim)
            code = 3;
    }
    emit(j, out);
    if (code) std::cerr << "awrep: q-Racah residual above limit\n";
    return code;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
    std::string grid;
    std::size_t random = 0;
    std::uint64_t seed = 1;
    int n_max = 8;
    bool dual_valid = false, serial = false;
    int threads = 0;
};

int cmd_sweep(const SweepArgs& a, const std::string& out) {
    std::vector<sweep::Job> jobs;
    std::vector<std::optional<Error>> bad;  // grid entries rejected before building
    std::vector<std::size_t> slot;          // grid index of each job
    std::size_t total = 0;
    if (!a.grid.empty()) {
        std::ifstream f(a.grid);
        if (!f) throw std::runtime_error("cannot read " + a.grid);
        json g = json::parse(f);
        const json& entries = g.is_array() ? g : g.at("points");
        total = entries.size();
        bad.resize(total);
        for (std::size_t i = 0; i < total; ++i) {
            try {
                jobs.push_back(make_job(text_from_json(entries[i])));
                slot.push_back(i);
            } catch (const Error& e) {
                bad[i] = e;
            }
        }
    } else {
        sweep::RandomOptions opt;
        opt.n_max = a.n_max;
        opt.dual_valid = a.dual_valid;
        jobs = sweep::random_grid(a.random, a.seed, opt);
        total = jobs.size();
        bad.resize(total);
        for (std::size_t i = 0; i < total; ++i) slot.push_back(i);
    }
    auto results = a.serial ? sweep::run_serial(jobs) : sweep::run_parallel(jobs, a.threads);

    std::vector<sweep::PointResult> points(total);
    std::vector<Scalar> q12s(total);
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        results[k].index = slot[k];
        points[slot[k]] = results[k];
        q12s[slot[k]] = jobs[k].q12;
    }
    for (std::size_t i = 0; i < total; ++i)
        if (bad[i]) {
            points[i].index = i;
            points[i].exit_code = bad[i]->exit_code();
            points[i].error = bad[i]->what();
        }
    const auto agg = sweep::aggregate(std::move(points));

    bool same_q = total > 0;
    for (std::size_t i = 1; i < total && same_q; ++i) same_q = q12s[i] == q12s[0];
    json j;
    j["schema"] = io::kSchema;
    j["q12"] = same_q ? io::scalar_json(q12s[0]) : json(nullptr);
    j["command"] = "sweep";
    j["aggregate"] = io::aggregate_json(agg);
    for (std::size_t i = 0; i < total; ++i) j["aggregate"]["results"][i]["q12"] = io::scalar_json(q12s[i]);
    emit(j, out);
    for (const auto& p : agg.points)
        if (p.exit_code == 3) return 3;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Askey-Wilson algebra representations"};
    app.require_subcommand(1);
    std::string out, format = "json";
    ParamText params;
    std::vector<std::string> mutate;
    SweepArgs sw;

    auto* sym = app.add_subcommand("symcheck", "exact PBW, Casimir and isomorphism checks");
    sym->add_option("--mutate", mutate, "drop-casimir-term NAME")->expected(2)->allow_extra_args(false);
    sym->add_option("--out", out);

    auto* con = app.add_subcommand("construct", "build and verify a representation");
    auto* dual = app.add_subcommand("dual", "dual representation and equivalence");
    auto* rac = app.add_subcommand("racah", "q-Racah table, transition matrix and conditions");
    for (auto* c : {con, dual, rac}) {
        add_param_flags(c, params);
        c->add_option("--out", out);
    }
    rac->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    auto* swc = app.add_subcommand("sweep", "construct and verify over a parameter grid");
    auto* grid = swc->add_option("--grid", sw.grid, "JSON file: array of parameter objects");
    auto* rnd = swc->add_option("--random", sw.random, "number of random valid points");
    grid->excludes(rnd);
    swc->add_option("--seed", sw.seed);
    swc->add_option("--n-max", sw.n_max)->check(CLI::Range(1, 16));
    swc->add_flag("--dual-valid", sw.dual_valid, "random points also satisfy the dual hypotheses");
    swc->add_flag("--serial", sw.serial, "use the serial reference loop");
    swc->add_option("--threads", sw.threads);
    swc->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Scalar q12{1.0};
    try {
        q12 = io::parse_complex(params.q12);
        if (sym->parsed()) return cmd_symcheck(mutate, out);
        if (con->parsed()) return cmd_construct(params, out);
        if (dual->parsed()) return cmd_dual(params, out);
        if (rac->parsed()) return cmd_racah(params, out, format);
        return cmd_sweep(sw, out);
    } catch (const Error& e) {
        return fail(e, q12);
    } catch (const std::invalid_argument& e) {
        std::cerr << "awrep: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "awrep: " << e.what() << "\n";
        return 3;
    }
}
