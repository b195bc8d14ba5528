#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "drflow/calculus.hpp"
#include "drflow/errors.hpp"
#include "drflow/family.hpp"
#include "drflow/genus0.hpp"
#include "drflow/kdv.hpp"
#include "drflow/miura.hpp"
#include "drflow/parser.hpp"
#include "drflow/reciprocal.hpp"
#include "drflow/render.hpp"
#include "drflow/series.hpp"

using namespace drflow;

namespace {

/* Exit codes: 0 all-pass, 1 verification or domain failure, 2 usage/parse. */
constexpr int kFail = 1;
constexpr int kUsage = 2;

void print_poly(const DiffPoly& p, char letter, bool json) {
    if (json)
        std::cout << render_json(p).dump(2) << "\n";
    else
        std::cout << render_text(p, letter) << "\n";
}

void print_system(const EvolutionarySystem& sys, char letter) {
    for (const auto& [label, op] : sys.flows) {
        std::cout << label.str() << ": ";
        for (int a = 0; a < sys.n_vars; ++a) {
            if (a) std::cout << ", ";
            std::cout << render_text(op.component(a), letter);
        }
        std::cout << "\n";
    }
}

FlowLabel parse_flow_label(const std::string& s) {
    int beta = 0, d = 0;
    char tail = 0;
    if (std::sscanf(s.c_str(), "t%d_%d%c", &beta, &d, &tail) != 2 || beta < 1 || d < 0)
        throw ParseError("invalid flow label '" + s + "', expected t<beta>_<d>", 1, 1);
    return FlowLabel{beta, d};
}

const EvolutionaryOp& flow_at(const EvolutionarySystem& sys, const std::string& s) {
    auto it = sys.flows.find(parse_flow_label(s));
    if (it == sys.flows.end()) throw Error("no flow labeled '" + s + "' in the system file");
    return it->second;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computer algebra for KdV-type hierarchies and their transformations"};
    app.require_subcommand(1);
    int exit_code = 0;

    /* kdv */
    int kdv_d = 0, kdv_eps = -1, kdv_deg = -1;
    bool kdv_json = false;
    {
        CLI::App* c = app.add_subcommand("kdv", "print the KdV Hamiltonian density P_d");
        c->add_option("--d", kdv_d, "flow depth")->required()->check(CLI::NonNegativeNumber);
        c->add_option("--eps", kdv_eps, "eps bound (default 2d)");
        c->add_option("--deg", kdv_deg, "degree bound (default d+1)");
        c->add_flag("--json", kdv_json, "JSON output");
        c->callback([&] {
            TruncationContext ctx{kdv_eps >= 0 ? kdv_eps : 2 * kdv_d,
                                  kdv_deg >= 0 ? kdv_deg : kdv_d + 1};
            print_poly(kdv_flow(kdv_d, ctx), 'u', kdv_json);
        });
    }

    /* xikdv */
    int xk_d = 0, xk_eps = -1, xk_deg = -1;
    bool xk_json = false;
    {
        CLI::App* c = app.add_subcommand("xikdv", "print the xi-KdV density P_d");
        c->add_option("--d", xk_d, "flow depth")->required()->check(CLI::NonNegativeNumber);
        c->add_option("--eps", xk_eps, "eps bound (default 2d)");
        c->add_option("--deg", xk_deg, "degree bound (default 3d+1)");
        c->add_flag("--json", xk_json, "JSON output");
        c->callback([&] {
            TruncationContext ctx{xk_eps >= 0 ? xk_eps : 2 * xk_d,
                                  xk_deg >= 0 ? xk_deg : 3 * xk_d + 1};
            print_poly(xi_kdv_flow(xk_d, ctx), 'v', xk_json);
        });
    }

    /* disp */
    int dp_d = 0, dp_deg = -1;
    {
        CLI::App* c = app.add_subcommand(
            "disp", "print the dispersionless flow matrix entries P<a>_<beta> at depth d");
        c->add_option("--d", dp_d, "flow depth")->required()->check(CLI::NonNegativeNumber);
        c->add_option("--deg", dp_deg, "degree bound (default d+3)");
        c->callback([&] {
            TruncationContext ctx{0, dp_deg >= 0 ? dp_deg : dp_d + 3};
            Mat2 P = dispersionless_flow(dp_d, ctx);
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    std::cout << "P" << a + 1 << "_" << b + 1 << ": "
                              << render_text(P[std::size_t(a)][std::size_t(b)], 'u') << "\n";
        });
    }

    /* primary */
    int pr_dmax = 2, pr_eps = 4, pr_deg = 8;
    {
        CLI::App* c = app.add_subcommand("primary",
                                         "print the three-parameter family's flows as a system file");
        c->add_option("--dmax", pr_dmax, "maximal depth (default 2)")->check(CLI::NonNegativeNumber);
        c->add_option("--eps", pr_eps, "eps bound (default 4)");
        c->add_option("--deg", pr_deg, "degree bound (default 8)");
        c->callback([&] {
            EvolutionarySystem sys = primary_flows(pr_dmax, TruncationContext{pr_eps, pr_deg});
            for (const auto& [label, op] : sys.flows) {
                if (label.d >= 1) {
                    /* only the u2-component of the depth >= 1 flows is published */
                    std::cout << "# " << label.str() << ": u1-component not published;"
                              << " u2-component: " << render_text(op.component(1), 'u') << "\n";
                    continue;
                }
                std::cout << label.str() << ": " << render_text(op.component(0), 'u') << ", "
                          << render_text(op.component(1), 'u') << "\n";
            }
        });
    }

    /* verify-theorem */
    FamilyOptions vt;
    int vt_eps = 4, vt_deg = 8;
    bool vt_json = false;
    {
        CLI::App* c = app.add_subcommand(
            "verify-theorem", "check the reduction to two decoupled KdV-type hierarchies");
        c->add_option("--dmax", vt.d_max, "maximal depth (default 2)")->check(CLI::NonNegativeNumber);
        c->add_option("--eps", vt_eps, "eps bound (default 4)");
        c->add_option("--deg", vt_deg, "degree bound (default 8)");
        c->add_flag("--json", vt_json, "emit the full report as JSON");
        c->add_flag("--xi0", vt.xi_zero, "specialize xi to 0");
        c->callback([&] {
            vt.ctx = TruncationContext{vt_eps, vt_deg};
            VerificationReport rep = verify_theorem(vt);
            if (vt_json) {
                std::cout << rep.to_json().dump(2) << "\n";
            } else {
                for (const CheckResult& ck : rep.checks) {
                    std::cout << (ck.pass ? "[ok]  " : "[FAIL]") << " (" << ck.number << ") "
                              << ck.id << ": " << ck.name << "\n";
                    if (!ck.detail.empty()) std::cout << "       " << ck.detail << "\n";
                }
                std::cout << (rep.all_pass() ? "all checks passed" : "verification FAILED")
                          << "\n";
            }
            if (!rep.all_pass()) exit_code = kFail;
        });
    }

    /* commute */
    std::string cm_file, cm_a, cm_b;
    int cm_eps = 4, cm_deg = 8;
    {
        CLI::App* c = app.add_subcommand("commute", "commutator of two flows of a system file");
        c->add_option("--file", cm_file, "system file")->required();
        c->add_option("A", cm_a, "first flow label, e.g. t1_0")->required();
        c->add_option("B", cm_b, "second flow label")->required();
        c->add_option("--eps", cm_eps, "eps bound (default 4)");
        c->add_option("--deg", cm_deg, "degree bound (default 8)");
        c->callback([&] {
            EvolutionarySystem sys =
                parse_system_file(cm_file, TruncationContext{cm_eps, cm_deg});
            EvolutionaryOp c2 =
                EvolutionaryOp::commutator(flow_at(sys, cm_a), flow_at(sys, cm_b));
            if (c2.is_zero()) {
                std::cout << "commutator [" << cm_a << ", " << cm_b << "] = 0\n";
            } else {
                std::cout << "commutator [" << cm_a << ", " << cm_b << "] is nonzero:\n";
                for (int a = 0; a < sys.n_vars; ++a)
                    std::cout << "  component " << a + 1 << ": "
                              << render_text(c2.component(a), 'u') << "\n";
                exit_code = kFail;
            }
        });
    }

    /* conslaw */
    std::string cl_file, cl_expr;
    int cl_eps = 4, cl_deg = 8;
    {
        CLI::App* c = app.add_subcommand(
            "conslaw", "conservation-law witnesses of a density under every flow of a system");
        c->add_option("--file", cl_file, "system file")->required();
        c->add_option("--expr", cl_expr, "density f")->required();
        c->add_option("--eps", cl_eps, "eps bound (default 4)");
        c->add_option("--deg", cl_deg, "degree bound (default 8)");
        c->callback([&] {
            TruncationContext ctx{cl_eps, cl_deg};
            EvolutionarySystem sys = parse_system_file(cl_file, ctx);
            DiffPoly f = parse_expr(cl_expr, sys.n_vars, ctx, "--expr");
            for (const auto& [label, op] : sys.flows) {
                auto w = conservation_law_witness(f, op);
                if (w) {
                    std::cout << label.str() << ": " << render_text(*w, 'u') << "\n";
                } else {
                    std::cerr << "not a conservation-law witness: delta/delta u of the image"
                                 " under "
                              << label.str() << " is nonzero\n";
                    exit_code = kFail;
                }
            }
        });
    }

    /* miura-apply */
    std::string ma_map, ma_file;
    int ma_eps = 4, ma_deg = 8;
    {
        CLI::App* c = app.add_subcommand("miura-apply",
                                         "push a system through a Miura-type transformation");
        c->add_option("--map", ma_map, "map file, one image per line 'u<idx>: <expr>'")
            ->required();
        c->add_option("--file", ma_file, "system file")->required();
        c->add_option("--eps", ma_eps, "eps bound (default 4)");
        c->add_option("--deg", ma_deg, "degree bound (default 8)");
        c->callback([&] {
            TruncationContext ctx{ma_eps, ma_deg};
            EvolutionarySystem sys = parse_system_file(ma_file, ctx);
            MiuraTransform m(parse_map_file(ma_map, ctx));
            print_system(miura_push_system(m, sys), 'u');
        });
    }

    /* recip-apply */
    std::string ra_f, ra_file;
    int ra_eps = 4, ra_deg = 8;
    {
        CLI::App* c = app.add_subcommand("recip-apply",
                                         "push a system through a reciprocal transformation");
        c->add_option("--f", ra_f, "the density f attached to dy = (1+f) dx")->required();
        c->add_option("--file", ra_file, "system file")->required();
        c->add_option("--eps", ra_eps, "eps bound (default 4)");
        c->add_option("--deg", ra_deg, "degree bound (default 8)");
        c->callback([&] {
            TruncationContext ctx{ra_eps, ra_deg};
            EvolutionarySystem sys = parse_system_file(ra_file, ctx);
            ReciprocalTransform rt(parse_expr(ra_f, sys.n_vars, ctx, "--f"));
            print_system(reciprocal_push_system(rt, sys), 'v');
        });
    }

    /* transport-solution */
    std::string ts_f, ts_file, ts_init;
    int ts_deg = 6, ts_eps = 2;
    {
        CLI::App* c = app.add_subcommand(
            "transport-solution",
            "evolve initial data under the flows, then transport the solution reciprocally");
        c->add_option("--f", ts_f, "the density f attached to dy = (1+f) dx")->required();
        c->add_option("--file", ts_file, "system file")->required();
        c->add_option("--init", ts_init, "initial data file, one line per variable")->required();
        c->add_option("--deg", ts_deg, "total (x,t)-degree bound (default 6)");
        c->add_option("--eps", ts_eps, "eps bound (default 2)");
        c->callback([&] {
            TruncationContext ctx{ts_eps, ts_deg};
            EvolutionarySystem sys = parse_system_file(ts_file, ctx);
            SeriesContext sctx{int(sys.flows.size()), ts_deg, ts_eps};
            std::vector<PowerSeries> initial = parse_init_file(ts_init, sctx);
            if (int(initial.size()) != sys.n_vars)
                throw Error("initial data lists " + std::to_string(initial.size()) +
                            " variables, the system has " + std::to_string(sys.n_vars));
            std::vector<EvolutionaryOp> flows;
            for (const auto& [label, op] : sys.flows) flows.push_back(op);
            FormalSolution sol = evolve_formal_solution(flows, initial, sctx);
            ReciprocalTransform rt(parse_expr(ts_f, sys.n_vars, ctx, "--f"));
            TransportResult tr = solution_transport(rt, flows, sol);
            std::cout << "y(x,t) = " << tr.y_of_x.str() << "\n";
            std::cout << "x(y,t) = " << tr.x_of_y.str() << "\n";
            for (std::size_t a = 0; a < tr.v.comps.size(); ++a)
                std::cout << "v" << a + 1 << " = " << tr.v.comps[a].str() << "\n";
            std::cout << "reliable total degree: " << tr.reliable_degree << "\n";
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kFail;
    }
    return exit_code;
}
