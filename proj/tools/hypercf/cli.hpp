#ifndef HYPERCF_TOOLS_CLI_HPP
#define HYPERCF_TOOLS_CLI_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <hypercf/hypercf.hpp>

namespace hypercf::cli {

enum exit_code : int { ok = 0, mismatch = 1, usage = 2 };

/// Precondition violation detected before any work starts.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::int64_t> parse_ints(const std::string& s, const std::string& what) {
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UsageError(what + " must be a comma-separated list of integers");
        }
    }
    if (out.empty()) throw UsageError(what + " must not be empty");
    return out;
}

inline PrimeField field_of(std::int64_t p) {
    if (p < 3 || p > static_cast<std::int64_t>(PrimeField::max_modulus) || !PrimeField::is_prime(static_cast<std::uint64_t>(p)))
        throw UsageError("p must be an odd prime");
    return PrimeField(static_cast<std::uint64_t>(p));
}

inline Triple triple_of(PrimeField f, const std::vector<std::int64_t>& u) {
    if (u.size() != 3) throw UsageError("--u must list exactly three values u1,u2,u3");
    for (auto x : u)
        if (f.reduce(x) == 0) throw UsageError("u1, u2, u3 must be nonzero mod p");
    return Triple(f, u[0], u[1], u[2]);
}

inline std::vector<std::int64_t> residues(const Triple& t) {
    return {t.u1.value(), t.u2.value(), t.u3.value()};
}

inline void print_expansion_text(std::ostream& out, std::uint64_t p, const PartialQuotients& q, std::size_t show) {
    out << "p= " << p << "\n";
    out << "cfe " << render_quotients(q.prefix(show)) << "\n";
    out << "degrees " << render_list(q.degrees()) << "\n";
    out << "lead.coef. " << render_list(q.leading_coefficients()) << "\n";
}

struct VerifyJob {
    PrimeField field;
    Triple u;
    std::size_t steps;
};

inline Report verify_report(const VerifyJob& job, const PatternVerification& v) {
    Report r;
    r.p = job.field.modulus();
    r.u = residues(job.u);
    fill_quotients(r, v.pattern);
    fill_profile(r, profile(v.pattern, r.p));
    r.nu = nu(r.p);
    r.verified = v.verified();
    // weakest floor when both residuals vanish, else the first nonzero exponent
    std::optional<std::int64_t> order;
    for (const auto& c : {v.tail_relation, v.root_residual}) {
        if (!c) continue;
        const std::int64_t o = c->zero ? c->floor : *c->first_nonzero;
        order = order ? std::max(*order, o) : o;
    }
    r.residual_order = order;
    return r;
}

inline std::string describe(const std::optional<ResidualCheck>& c) {
    if (!c) return "n/a";
    if (c->zero) return "zero to T^" + std::to_string(c->floor);
    return "NONZERO at T^" + std::to_string(*c->first_nonzero);
}

} // namespace detail

/// Runs the hypercf command line; returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hyperquadratic continued fractions over F_p: expansion, pattern, verification"};
    app.require_subcommand(1);

    std::string format = "text";
    auto add_format = [&](CLI::App* sc) {
        sc->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };

    // expand
    auto* expand_cmd = app.add_subcommand("expand", "Extract partial quotients from an equation");
    std::int64_t p = 0;
    std::string u_arg;
    std::size_t steps = 7;
    std::optional<std::size_t> show;
    std::string equation = "pattern";
    std::string equation_file;
    bool listing_r = false;
    expand_cmd->add_option("--p", p, "Odd prime p")->required();
    expand_cmd->add_option("--u", u_arg, "u1,u2,u3 (pattern) or u1 (mills-robbins)");
    expand_cmd->add_option("--steps", steps, "Number of partial quotients")->check(CLI::PositiveNumber);
    expand_cmd->add_option("--show", show, "Quotients printed on the cfe line (default: all)");
    expand_cmd->add_option("--equation", equation, "pattern | mills-robbins | file")
        ->check(CLI::IsMember({"pattern", "mills-robbins", "file"}));
    expand_cmd->add_option("--file", equation_file, "Equation file for --equation file");
    expand_cmd->add_flag("--listing-r", listing_r, "Use R = T^p instead of T^p - T F in the pattern equation");
    add_format(expand_cmd);

    // pattern
    auto* pattern_cmd = app.add_subcommand("pattern", "Generate the block-construction partial quotients");
    pattern_cmd->add_option("--p", p, "Odd prime p")->required();
    pattern_cmd->add_option("--u", u_arg, "u1,u2,u3")->required();
    pattern_cmd->add_option("--steps", steps, "Number of partial quotients")->check(CLI::PositiveNumber);
    pattern_cmd->add_option("--show", show, "Quotients printed on the cfe line (default: all)");
    add_format(pattern_cmd);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Compare pattern and engine and check the series residuals");
    std::string p_list;
    std::vector<std::string> u_list;
    std::optional<std::size_t> verify_steps;
    std::optional<std::int64_t> order;
    std::size_t jobs = 1;
    verify_cmd->add_option("--p", p_list, "Odd prime p, or a comma-separated list")->required();
    verify_cmd->add_option("--u", u_list, "u1,u2,u3; repeat for a sweep")->required();
    verify_cmd->add_option("--steps", verify_steps, "Quotients compared (default: through n_3)")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--order", order, "Series truncation exponent (default: deepest available)");
    verify_cmd->add_option("--jobs", jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);
    add_format(verify_cmd);

    // identities
    auto* identities_cmd = app.add_subcommand("identities", "Check the Fibonacci-polynomial identities");
    std::string id_p_list = "3,5,7,11,13";
    std::size_t bound = 12;
    identities_cmd->add_option("--p", id_p_list, "Comma-separated odd primes");
    identities_cmd->add_option("--bound", bound, "Largest n for the f_n/f_{n-1} expansion check");
    add_format(identities_cmd);

    // measure
    auto* measure_cmd = app.add_subcommand("measure", "Degree positions, partial sums and irrationality measure");
    unsigned k_max = 2;
    std::string measure_u = "1,1,1";
    measure_cmd->add_option("--p", p, "Odd prime p")->required();
    measure_cmd->add_option("--k", k_max, "Largest k to tabulate and observe")->check(CLI::Range(1u, 6u));
    measure_cmd->add_option("--u", measure_u, "u1,u2,u3 of the profiled pattern");
    add_format(measure_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }
    const bool json = format == "json";

    try {
        if (expand_cmd->parsed()) {
            const PrimeField f = detail::field_of(p);
            std::optional<BiPoly> eq;
            Report r;
            r.p = f.modulus();
            if (equation == "pattern") {
                const Triple t = detail::triple_of(f, detail::parse_ints(u_arg.empty() ? "" : u_arg, "--u"));
                const PatternSpec spec = build_spec(f, t);
                eq = listing_r ? pattern_equation(spec, Poly::monomial(f, 1, f.modulus())) : pattern_equation(spec);
                r.u = detail::residues(t);
            } else if (equation == "mills-robbins") {
                if (f.modulus() < 5) throw UsageError("the Mills-Robbins family requires p >= 5");
                const auto u = detail::parse_ints(u_arg, "--u");
                if (u.size() != 1) throw UsageError("--u must be a single value u1 for the Mills-Robbins family");
                const FieldElement u1(f, u[0]);
                const FieldElement one(f, 1), two(f, 2);
                if (u1.is_zero() || (one + two * u1).is_zero())
                    throw UsageError("u1 must satisfy u1 != 0 and u1 != -1/2");
                eq = mills_robbins_equation(f, u1);
                r.u = {u1.value()};
            } else {
                if (equation_file.empty()) throw UsageError("--equation file requires --file");
                std::ifstream in(equation_file);
                if (!in) throw UsageError("cannot open equation file " + equation_file);
                try {
                    eq = parse_equation(in, f);
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
            }
            try {
                const PartialQuotients q = expand(*eq, steps);
                fill_quotients(r, q);
                if (json)
                    out << nlohmann::json(r).dump() << "\n";
                else
                    detail::print_expansion_text(out, f.modulus(), q, show.value_or(q.size()));
                return ok;
            } catch (const ExpansionAborted& e) {
                fill_quotients(r, e.emitted());
                r.verified = false;
                if (json)
                    out << nlohmann::json(r).dump() << "\n";
                else
                    detail::print_expansion_text(out, f.modulus(), e.emitted(), show.value_or(e.emitted_count()));
                err << "expansion aborted after " << e.emitted_count() << " quotients: " << e.what() << "\n";
                return mismatch;
            }
        }

        if (pattern_cmd->parsed()) {
            const PrimeField f = detail::field_of(p);
            const Triple t = detail::triple_of(f, detail::parse_ints(u_arg, "--u"));
            const PartialQuotients q = pattern(build_spec(f, t), steps);
            if (json) {
                Report r;
                r.p = f.modulus();
                r.u = detail::residues(t);
                fill_quotients(r, q);
                fill_profile(r, profile(q, r.p));
                out << nlohmann::json(r).dump() << "\n";
            } else {
                detail::print_expansion_text(out, f.modulus(), q, show.value_or(q.size()));
            }
            return ok;
        }

        if (verify_cmd->parsed()) {
            std::vector<detail::VerifyJob> work;
            for (auto pv : detail::parse_ints(p_list, "--p")) {
                const PrimeField f = detail::field_of(pv);
                const std::size_t m =
                    verify_steps.value_or(static_cast<std::size_t>(closed_forms(f.modulus(), 3).n_k));
                for (const auto& us : u_list) work.push_back({f, detail::triple_of(f, detail::parse_ints(us, "--u")), m});
            }
            for (const auto& job : work) {
                const std::int64_t floor = cf_series_floor(pattern(build_spec(job.field, job.u), job.steps));
                if (order && *order < floor)
                    throw UsageError("--order " + std::to_string(*order) + " is deeper than " +
                                     std::to_string(job.steps) + " quotients determine (floor " +
                                     std::to_string(floor) + ")");
            }

            std::vector<std::optional<PatternVerification>> results(work.size());
            std::atomic<std::size_t> next{0};
            {
                std::vector<std::jthread> pool;
                for (std::size_t w = 0; w < std::min(jobs, work.size()); ++w)
                    pool.emplace_back([&] {
                        for (std::size_t i; (i = next++) < work.size();)
                            results[i] = verify_pattern(build_spec(work[i].field, work[i].u), work[i].steps, order);
                    });
            }

            bool all = true;
            auto reports = nlohmann::json::array();
            for (std::size_t i = 0; i < work.size(); ++i) {
                const auto& v = *results[i];
                all = all && v.verified();
                if (json) {
                    reports.push_back(detail::verify_report(work[i], v));
                    continue;
                }
                const auto u = detail::residues(work[i].u);
                out << "p=" << work[i].field.modulus() << " u=" << u[0] << "," << u[1] << "," << u[2]
                    << " steps=" << work[i].steps << "  pattern/engine: "
                    << (v.first_mismatch ? "MISMATCH at " + std::to_string(*v.first_mismatch) : std::string("match"))
                    << "  tail relation: " << detail::describe(v.tail_relation)
                    << "  root residual: " << detail::describe(v.root_residual) << "  => "
                    << (v.verified() ? "verified" : "FAILED") << "\n";
                if (v.engine_error) out << "  engine: " << *v.engine_error << "\n";
            }
            if (json) out << (reports.size() == 1 ? reports[0] : reports).dump() << "\n";
            return all ? ok : mismatch;
        }

        if (identities_cmd->parsed()) {
            bool all = true;
            auto arr = nlohmann::json::array();
            for (auto pv : detail::parse_ints(id_p_list, "--p")) {
                const auto r = check_identities(detail::field_of(pv), bound);
                all = all && r.all();
                if (json) {
                    arr.push_back({{"p", r.p},
                                   {"F_equals_f_p_minus_1", r.F_is_f_p_minus_1},
                                   {"f_p_plus_f_p_minus_2_equals_T_p", r.f_p_plus_f_p_minus_2},
                                   {"R_equals_2_f_p_minus_2", r.R_is_2_f_p_minus_2},
                                   {"fibonacci_cf_bound", r.cf_bound},
                                   {"fibonacci_cf_all_T", r.fibonacci_quotients_all_T},
                                   {"verified", r.all()}});
                    continue;
                }
                auto mark = [](bool b) { return b ? "ok" : "FAIL"; };
                out << "p=" << r.p << "  F=f_{p-1}: " << mark(r.F_is_f_p_minus_1)
                    << "  f_p+f_{p-2}=T^p: " << mark(r.f_p_plus_f_p_minus_2)
                    << "  R=2f_{p-2}: " << mark(r.R_is_2_f_p_minus_2) << "  cf(f_n/f_{n-1})=[T]*n, n<=" << r.cf_bound
                    << ": " << mark(r.fibonacci_quotients_all_T) << "\n";
            }
            if (json) out << arr.dump() << "\n";
            return all ? ok : mismatch;
        }

        if (measure_cmd->parsed()) {
            const PrimeField f = detail::field_of(p);
            const Triple t = detail::triple_of(f, detail::parse_ints(measure_u, "--u"));
            const auto m = static_cast<std::size_t>(closed_forms(f.modulus(), k_max).n_k);
            const PartialQuotients q = pattern(build_spec(f, t), m);
            const DegreeProfile prof = profile(q, f.modulus());
            const IrrationalityReport ir = irrationality_report(f.modulus(), k_max, &prof);
            if (json) {
                Report r;
                r.p = f.modulus();
                r.u = detail::residues(t);
                r.degrees = prof.degrees;
                fill_profile(r, prof);
                r.nu = ir.nu;
                r.verified = prof.matches_closed_forms;
                out << nlohmann::json(r).dump() << "\n";
            } else {
                auto rat = [](const Rational& x) {
                    return std::to_string(x.numerator()) + (x.denominator() == 1 ? "" : "/" + std::to_string(x.denominator()));
                };
                out << "p= " << f.modulus() << "\n";
                out << "nu " << rat(ir.nu) << "  (2 < nu <= d <= " << ir.liouville_upper << ")\n";
                for (unsigned k = 1; k <= k_max; ++k) {
                    const auto cf = closed_forms(f.modulus(), k);
                    out << "k=" << k << "  n_k=" << cf.n_k << "  d=" << 2 * ipow(f.modulus(), k) - 1
                        << "  s_k=" << cf.s_k << "  ratio=" << rat(ir.ratio_samples[k - 1]);
                    if (k <= prof.big_positions.size()) {
                        const auto& b = prof.big_positions[k - 1];
                        out << "  observed (" << b.n << ", " << b.degree << ", " << b.sum_before << ")";
                    }
                    out << "\n";
                }
                if (ir.empirical_limsup)
                    out << "empirical max ratio " << rat(*ir.empirical_limsup) << " (finite data; limit is "
                        << rat(ir.nu - 2) << ")\n";
                out << (prof.matches_closed_forms ? "closed forms confirmed" : "closed forms MISMATCH") << "\n";
            }
            return prof.matches_closed_forms ? ok : mismatch;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const InsufficientQuotients& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }
    return usage;
}

} // namespace hypercf::cli

#endif
