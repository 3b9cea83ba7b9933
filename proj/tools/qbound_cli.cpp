#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbound/bounds.hpp"
#include "qbound/counting.hpp"
#include "qbound/energy.hpp"
#include "qbound/potential.hpp"
#include "qbound/regge.hpp"
#include "qbound/transform.hpp"
#include "qbound/verify.hpp"

using nlohmann::json;
using namespace qbound;

namespace {

constexpr const char* kVersion = "qbound 0.1.0";

// exit-code contract: 0 ok, 1 suite/runtime failure, 2 parse error,
// 3 marginal classifier under --strict, 4 bound soundness violation
enum ExitCode { kOk = 0, kFail = 1, kParse = 2, kMarginal = 3, kUnsound = 4 };

struct PotentialArgs {
    std::string catalog;
    std::vector<std::string> params;
    std::string file;
    double epsilon{0.0};  // overrides delta regularization width if > 0
};

void add_potential_flags(CLI::App* cmd, PotentialArgs& a) {
    cmd->add_option("--catalog", a.catalog, "catalog family name");
    cmd->add_option("--param", a.params, "catalog parameter key=value");
    cmd->add_option("--file", a.file, "potential JSON file");
    cmd->add_option("--epsilon", a.epsilon, "delta regularization width");
}

Potential load_potential(const PotentialArgs& a, json& descriptor) {
    if (!a.file.empty()) {
        std::ifstream in(a.file);
        if (!in) throw std::invalid_argument("cannot open " + a.file);
        std::stringstream ss;
        ss << in.rdbuf();
        descriptor = {{"file", a.file}};
        return potential_from_json(ss.str());
    }
    if (a.catalog.empty())
        throw std::invalid_argument("need --catalog or --file");
    CatalogId id;
    id.name = a.catalog;
    for (const auto& kv : a.params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--param expects key=value: " + kv);
        id.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    if (a.epsilon > 0.0) id.params["eps"] = a.epsilon;
    descriptor = {{"catalog", id.name}, {"params", id.params}};
    return make_catalog(id);
}

void emit(const json& j, const std::string& format, const std::string& out,
          const std::string& csv = "") {
    std::ostream* os = &std::cout;
    std::ofstream f;
    if (!out.empty()) {
        f.open(out);
        os = &f;
    }
    if (format == "csv" && !csv.empty())
        *os << csv;
    else
        *os << j.dump(2) << "\n";
}

json run_meta(const json& descriptor, double epsilon, double window) {
    return {{"version", kVersion},
            {"potential", descriptor},
            {"epsilon", epsilon},
            {"truncation", window}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bound-state counting and closed-form bounds for 1D/2D "
                 "Schrodinger operators"};
    app.require_subcommand(1);

    PotentialArgs pot;
    int dim = 2;
    double m = 0.0;
    bool m_given = false;
    int state_i = 0;
    std::string format = "json", out_path, suite = "all", to;
    bool strict = false;
    unsigned seed = 7;
    int trials = 200;
    double b_param = 1.0, map_R = 1.0;
    CountOptions copt;

    auto* c_count = app.add_subcommand("count", "exact bound-state count");
    auto* c_bounds = app.add_subcommand("bounds", "closed-form bound report");
    auto* c_energy = app.add_subcommand("energy", "channel eigenvalue");
    auto* c_regge = app.add_subcommand("regge", "trajectory intercepts and counts");
    auto* c_verify = app.add_subcommand("verify", "cross-module invariant suites");
    auto* c_transform = app.add_subcommand("transform", "potential transforms");

    for (auto* c : {c_count, c_bounds, c_energy, c_regge, c_transform})
        add_potential_flags(c, pot);
    for (auto* c : {c_count, c_bounds, c_energy, c_transform})
        c->add_option("--dim", dim, "space dimension (1, 2, 3)");
    for (auto* c : {c_count, c_bounds, c_transform})
        c->add_option("--m", m, "angular channel")->each([&](const std::string&) {
            m_given = true;
        });
    c_energy->add_option("--m", m, "angular channel");
    c_energy->add_option("--i", state_i, "state index (number of nodes)");
    for (auto* c : {c_count, c_bounds, c_energy, c_regge, c_verify})
        c->add_option("--format", format, "json or csv");
    for (auto* c : {c_count, c_bounds, c_energy, c_regge, c_verify, c_transform})
        c->add_option("--out", out_path, "write report to file");
    c_count->add_flag("--strict", strict, "exit 3 when the classifier is marginal");
    c_count->add_option("--window", copt.window, "outer truncation radius");
    c_bounds->add_option("--b", b_param, "Laptev parameter b");
    std::string formula;
    c_bounds->add_option("--formula", formula, "print a single formula id");
    c_verify->add_option("--suite", suite,
                         "all|sandwich|bracket|oracle|transform|nodes|"
                         "lieb_thirring|k0");
    c_verify->add_option("--trials", trials, "randomized trials");
    c_verify->add_option("--seed", seed, "RNG seed");
    c_transform->add_option("--to", to,
                            "log|inverse_log|iterated|nd|channel");
    c_transform->add_option("--R", map_R, "log-map scale");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }

    try {
        if (c_verify->parsed()) {
            std::vector<verify::SuiteResult> results;
            if (suite == "all") {
                results = verify::run_all(trials, seed);
            } else {
                if (suite == "sandwich")
                    results.push_back(verify::suite_sandwich(trials, seed));
                else if (suite == "bracket")
                    results.push_back(verify::suite_bracket());
                else if (suite == "oracle")
                    results.push_back(verify::suite_oracle());
                else if (suite == "transform")
                    results.push_back(verify::suite_transform());
                else if (suite == "nodes")
                    results.push_back(verify::suite_node_comparison());
                else if (suite == "lieb_thirring")
                    results.push_back(verify::suite_lieb_thirring());
                else if (suite == "k0")
                    results.push_back(verify::suite_k0());
                else
                    throw std::invalid_argument("unknown suite: " + suite);
            }
            json j;
            j["version"] = kVersion;
            j["seed"] = seed;
            j["trials"] = trials;
            bool all_ok = true;
            for (const auto& s : results) {
                j["suites"][s.name] = {{"passed", s.passed},
                                       {"failed", s.failed},
                                       {"counterexamples", s.failures}};
                all_ok = all_ok && s.ok();
            }
            j["ok"] = all_ok;
            emit(j, format, out_path);
            return all_ok ? kOk : kFail;
        }

        json descriptor;
        const Potential v = load_potential(pot, descriptor);
        const double eps = v.delta_eps.value_or(0.0);

        if (c_count->parsed()) {
            CountResult r;
            if (v.space == Space::Line || dim == 1)
                r = count_bound_states_1d(v, copt);
            else if (m_given)
                r = count_channel(v, dim, m, copt);
            else if (v.space == Space::Radial && dim == 2)
                r = count_total_2d(v, copt);
            else
                r = count_channel(v, dim, m, copt);
            json j = run_meta(descriptor, eps, copt.window);
            j["classifier"] = r.cls == Finiteness::Finite     ? "FINITE"
                              : r.cls == Finiteness::Infinite ? "INFINITE"
                                                              : "MARGINAL";
            j["evidence"] = r.evidence;
            if (r.cls == Finiteness::Finite)
                j["count"] = r.count;
            else if (r.cls == Finiteness::Infinite)
                j["count"] = "infinite";
            else
                j["count"] = {{"lower", r.lower}, {"upper", r.upper}};
            std::ostringstream csv;
            csv << "count,classifier\n"
                << (r.cls == Finiteness::Finite ? std::to_string(r.count)
                                                : std::string("n/a"))
                << ',' << j["classifier"].get<std::string>() << "\n";
            emit(j, format, out_path, csv.str());
            if (strict && r.cls == Finiteness::Marginal) return kMarginal;
            return kOk;
        }

        if (c_bounds->parsed()) {
            bounds::ReportOptions ropt;
            ropt.dim = dim;
            ropt.m = m_given ? m : 1.0;
            ropt.b = b_param;
            auto rep = bounds::full_report(v, ropt);
            json j = run_meta(descriptor, eps, copt.window);
            j["bounds"] = json::parse(rep.to_json());
            // soundness gate against the exact counts
            int rc = kOk;
            if (v.space == Space::Radial) {
                auto tot = count_total_2d(v, copt);
                auto n0 = count_channel(v, 2, 0.0, copt);
                j["exact_total"] = tot.cls == Finiteness::Finite ? json(tot.count)
                                                                 : json("n/a");
                if (tot.cls == Finiteness::Finite && n0.cls == Finiteness::Finite) {
                    for (const char* id : {"TOTAL_2D", "CONJECTURE_RHS"}) {
                        auto it = rep.entries.find(id);
                        if (it != rep.entries.end() && it->second.applicable &&
                            it->second.value < tot.count)
                            rc = kUnsound;
                    }
                    for (const char* id : {"TWO_D_M0_LOG", "TWO_D_M0_PRODUCT",
                                           "NEWTON_SETO"}) {
                        auto it = rep.entries.find(id);
                        if (it != rep.entries.end() && it->second.applicable &&
                            it->second.value < n0.count)
                            rc = kUnsound;
                    }
                }
            } else if (v.space == Space::Line) {
                auto c = count_bound_states_1d(v, copt);
                j["exact_total"] = c.cls == Finiteness::Finite ? json(c.count)
                                                               : json("n/a");
                if (c.cls == Finiteness::Finite) {
                    for (const char* id : {"ONE_D_LINEAR", "ONE_D_PRODUCT"}) {
                        auto it = rep.entries.find(id);
                        if (it != rep.entries.end() && it->second.applicable &&
                            it->second.value < c.count)
                            rc = kUnsound;
                    }
                }
            }
            if (!formula.empty()) {
                auto it = rep.entries.find(formula);
                if (it == rep.entries.end())
                    throw std::invalid_argument("unknown formula id: " + formula);
                json single = run_meta(descriptor, eps, copt.window);
                single["id"] = formula;
                single["value"] = it->second.value;
                single["applicable"] = it->second.applicable;
                emit(single, format, out_path);
                return rc;
            }
            emit(j, format, out_path, rep.to_csv());
            return rc;
        }

        if (c_energy->parsed()) {
            const double e = energy::eigenvalue(v, dim, m, state_i, copt);
            json j = run_meta(descriptor, eps, copt.window);
            j["dim"] = dim;
            j["m"] = m;
            j["i"] = state_i;
            j["energy"] = e;
            j["kappa"] = std::sqrt(-e);
            emit(j, format, out_path);
            return kOk;
        }

        if (c_regge->parsed()) {
            auto ms = regge::intercepts(v, copt);
            auto chain = regge::moment_inequality_check(v, copt);
            json j = run_meta(descriptor, eps, copt.window);
            j["intercepts"] = ms;
            j["count_via_trajectories"] = regge::count_via_trajectories(v, copt);
            j["moment_chain"] = {{"lhs", chain.lhs},
                                 {"mid", chain.mid},
                                 {"rhs", chain.rhs},
                                 {"ok", chain.ok}};
            std::ostringstream csv;
            csv << "i,m_i\n";
            csv.precision(17);
            for (size_t i = 0; i < ms.size(); ++i) csv << i << ',' << ms[i] << "\n";
            emit(j, format, out_path, csv.str());
            return kOk;
        }

        if (c_transform->parsed()) {
            Potential w;
            if (to == "log")
                w = log_map(v, map_R);
            else if (to == "inverse_log")
                w = inverse_log_map(v, map_R);
            else if (to == "iterated")
                w = iterated_log(v);
            else if (to == "nd")
                w = nd_reduction(v, dim);
            else if (to == "channel")
                w = channel_reduction(v, dim, m);
            else
                throw std::invalid_argument("--to must be one of "
                                            "log|inverse_log|iterated|nd|channel");
            std::ostream* os = &std::cout;
            std::ofstream f;
            if (!out_path.empty()) {
                f.open(out_path);
                os = &f;
            }
            *os << potential_to_json(w) << "\n";
            return kOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kParse;
}
