#include "waybelow/properties.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

using waybelow::json;

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_negative = 3;
constexpr int exit_domain = 4;

int emit(const std::string& kind, json payload, int code)
{
    std::cout << waybelow::document(kind, std::move(payload)).dump(2) << '\n';
    return code;
}

std::pair<waybelow::Point, waybelow::Point> parse_point_pair(const json& j)
{
    if (j.is_object()) return {waybelow::parse_point(j.at("x")), waybelow::parse_point(j.at("y"))};
    if (j.is_array() && j.size() == 2) return {waybelow::parse_point(j[0]), waybelow::parse_point(j[1])};
    throw waybelow::ParseError("point must be {\"x\": [...], \"y\": [...]} or [[...], [...]]");
}

std::uint64_t seed_from_env(std::uint64_t fallback)
{
    const char* env = std::getenv("WAYBELOW_SEED");
    if (env == nullptr || *env == '\0') return fallback;
    try {
        std::size_t used = 0;
        const auto v = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw waybelow::ParseError(std::string("WAYBELOW_SEED is not an unsigned integer: ") + env);
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Way-below decisions, product interpolation and colimit chains over exact box unions", "waybelow"};
    app.require_subcommand(1);

    std::string space_arg, s_arg, t_arg;
    std::optional<std::size_t> oracle_budget;
    auto* wb = app.add_subcommand("waybelow", "Decide S << T in a space");
    wb->add_option("--space", space_arg, "Space JSON (file or inline)")->required();
    wb->add_option("--s", s_arg, "Set S as a box union")->required();
    wb->add_option("--t", t_arg, "Open set T as a box union")->required();
    wb->add_option("--oracle-budget", oracle_budget, "Also run the cover oracle with this many covers");

    std::string x_space_arg, y_space_arg, w_arg;
    unsigned max_refine = waybelow::default_max_refine;
    auto* ip = app.add_subcommand("interpolate", "Interpolate S x T << W by U_S x V_T");
    ip->add_option("--x-space", x_space_arg, "Left factor space")->required();
    ip->add_option("--y-space", y_space_arg, "Right factor space")->required();
    ip->add_option("--s", s_arg, "Left set S")->required();
    ip->add_option("--t", t_arg, "Right set T")->required();
    ip->add_option("--w", w_arg, "Open W in the product")->required();
    ip->add_option("--max-refine", max_refine, "Refinement levels before giving up")->capture_default_str();

    std::string seq_x_arg, seq_y_arg, point_arg;
    std::size_t depth = 8;
    auto* ch = app.add_subcommand("chain", "Build and verify the ascending chains U_n x V_n << W_n");
    ch->add_option("--seq-x", seq_x_arg, "Left ascending sequence")->required();
    ch->add_option("--seq-y", seq_y_arg, "Right ascending sequence")->required();
    ch->add_option("--w", w_arg, "Stage family W over the product")->required();
    ch->add_option("--point", point_arg, "Point as [[x...], [y...]]")->required();
    ch->add_option("--depth", depth, "Chain depth N")->capture_default_str();

    std::string seq_arg, family_arg;
    std::size_t upto = 8;
    auto* co = app.add_subcommand("check-open", "Check openness and coherence of a stage family");
    co->add_option("--seq", seq_arg, "Ascending sequence")->required();
    co->add_option("--family", family_arg, "Stage family")->required();
    co->add_option("--upto", upto, "Last stage to check")->capture_default_str();

    std::size_t k_max = 16;
    auto* ce = app.add_subcommand("counterexample", "Counter-example witnesses");
    ce->require_subcommand(1);
    auto* hamcke = ce->add_subcommand("hamcke", "Wedge-of-circles set A: stage separations and product limit points");
    hamcke->add_option("--kmax", k_max, "Number of witnesses")->capture_default_str();

    waybelow::RunConfig cfg;
    std::optional<std::uint64_t> seed_flag;
    auto* pr = app.add_subcommand("properties", "Run the randomized law battery");
    pr->add_option("--seed", seed_flag, "Seed (default: WAYBELOW_SEED or 0)");
    pr->add_option("--cases", cfg.case_count, "Cases per law")->capture_default_str();
    pr->add_option("--depth", cfg.depth, "Chain depth")->capture_default_str();
    pr->add_option("--oracle-budget", cfg.oracle_budget, "Oracle cover budget")->capture_default_str();

    if (argc <= 1) {
        std::cerr << app.help();
        return exit_usage;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        using namespace waybelow;
        if (*wb) {
            const Space space = parse_space(load_json(space_arg));
            const BoxUnion s = parse_union(load_json(s_arg));
            const BoxUnion t = parse_union(load_json(t_arg));
            const auto v = way_below(space, s, t);
            json out{{"verdict", v}};
            if (oracle_budget) out["oracle"] = oracle_way_below(space, s, t, *oracle_budget);
            return emit("way_below", out, v.holds ? exit_ok : exit_negative);
        }
        if (*ip) {
            const Space xs = parse_space(load_json(x_space_arg));
            const Space ys = parse_space(load_json(y_space_arg));
            try {
                const auto r = interpolate(xs, ys, parse_union(load_json(s_arg)), parse_union(load_json(t_arg)),
                                           parse_union(load_json(w_arg)), max_refine);
                return emit("interpolation", r, exit_ok);
            } catch (const InterpolationPreconditionFailed& e) {
                std::cerr << e.what() << '\n';
                return emit("interpolation_precondition_failed", json{{"verdict", e.verdict()}}, exit_negative);
            }
        }
        if (*ch) {
            const auto sx = parse_sequence(load_json(seq_x_arg));
            const auto sy = parse_sequence(load_json(seq_y_arg));
            const auto w = parse_family(load_json(w_arg));
            const auto [x, y] = parse_point_pair(load_json(point_arg));
            const auto cw = build_chain(sx, sy, w, x, y, depth);
            const auto problems = verify_chain(sx, sy, w, cw);
            return emit("chain", json{{"witness", cw}, {"problems", problems}, {"verified", problems.empty()}},
                        problems.empty() ? exit_ok : exit_negative);
        }
        if (*co) {
            const auto seq = parse_sequence(load_json(seq_arg));
            const auto fam = parse_family(load_json(family_arg));
            json stages = json::array();
            bool all = true;
            for (std::size_t p = 0; p <= upto; ++p) {
                const auto chk = check_open_at(seq, fam, p);
                all = all && chk.ok;
                stages.push_back(json{{"stage", p}, {"ok", chk.ok}, {"reason", chk.reason}});
            }
            return emit("check_open", json{{"stages", stages}, {"ok", all}}, all ? exit_ok : exit_negative);
        }
        if (*hamcke) {
            const auto demo = not_closed_demo(k_max);
            const bool ok = std::all_of(demo.separations.begin(), demo.separations.end(),
                                        [](const auto& s) { return s.ok(); });
            return emit("not_closed_demo", demo, ok ? exit_ok : exit_negative);
        }
        if (*pr) {
            cfg.seed = seed_flag ? *seed_flag : seed_from_env(0);
            const auto rep = run_properties(cfg);
            return emit("properties", rep, rep.ok() ? exit_ok : exit_negative);
        }
    } catch (const waybelow::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const waybelow::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return emit("error", json{{"error", waybelow::to_string(e.kind())}, {"message", e.what()}}, exit_domain);
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return emit("error", json{{"error", "Overflow"}, {"message", e.what()}}, exit_domain);
    }
    return exit_usage;
}
