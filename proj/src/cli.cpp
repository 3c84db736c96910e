#include "gridlock/cli.hpp"

#include "gridlock/io.hpp"
#include "gridlock/service.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace gridlock {

namespace {

struct Failure {
    int code;
    std::string message;
};

void print(std::ostream &out, const json &j) { out << j.dump(2) << '\n'; }

json outcome_json(const SearchConfig &config, const SearchOutcome &o) {
    json j = to_json(cache_record(config, o));
    j["nodes"] = o.nodes_explored;
    j["witness"] = o.witnesses.empty() ? json(nullptr) : to_json(o.witnesses.front());
    json classes = json::array();
    for (const auto &s : o.classes)
        classes.push_back(to_json(s));
    j["solutions"] = classes;
    return j;
}

json torus_outcome_json(int n, const TorusSearchOutcome &o) {
    json j = {{"kind", "torus"},
              {"n", n},
              {"minimum", o.minimum_size ? json(*o.minimum_size) : json(nullptr)},
              {"distinct", o.distinct_count},
              {"classes", o.symmetry_class_count},
              {"exhausted", o.exhausted},
              {"nodes", o.nodes_explored}};
    json sols = json::array();
    for (const auto &s : o.classes)
        sols.push_back(to_json(s));
    j["solutions"] = sols;
    return j;
}

std::string describe(const TorusSet &s) {
    std::string out;
    for (TorusPoint p : s.points())
        out += "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ") ";
    if (!out.empty())
        out.pop_back();
    return out;
}

// Base set for the apex blow-up: (0, 0), (0, 1) and the column x = 1, so the
// origin sees one point in every direction of T_p.
std::vector<TorusPoint> apex_base(int p) {
    std::vector<TorusPoint> s{{0, 0}, {0, 1}};
    for (int b = 0; b < p; ++b)
        if (TorusPoint q{1, b}; std::find(s.begin(), s.end(), q) == s.end())
            s.push_back(q);
    return s;
}

void report_torus(const TorusSolution &sol, bool as_json, std::ostream &out) {
    if (as_json) {
        json j = to_json(sol);
        j["verified"] = sol.verified;
        print(out, j);
    } else {
        out << "T_" << sol.n << ": " << sol.size() << " points" << (sol.verified ? ", verified" : ", unverified")
            << "\n" << describe(sol.points) << '\n';
    }
}

GameState read_move_line(const GameState &state, const std::string &line, std::ostream &out, bool &ok) {
    std::istringstream in(line);
    int x = 0;
    int y = 0;
    ok = false;
    if (!(in >> x >> y)) {
        out << "expected: x y\n";
        return state;
    }
    const auto reason = state.illegal_reason({x, y});
    if (!reason.empty()) {
        out << "illegal move (" << x << "," << y << "): " << reason << '\n';
        return state;
    }
    ok = true;
    return state.play({x, y});
}

} // namespace

int run_cli(const std::vector<std::string> &args, const CliEnvironment &env) {
    CLI::App app{"Geometric dominating sets on grids and tori", "gridlock"};
    app.require_subcommand(1);
    std::string cache_dir;
    app.add_option("--cache-dir", cache_dir, "Results cache directory (default $GRIDLOCK_CACHE_DIR)");

    // search
    auto *search = app.add_subcommand("search", "Exact minimum dominating sets by exhaustive search");
    int search_n = 0;
    std::string search_mode = "independent";
    int exterior = 0;
    bool search_all = false;
    bool save = false;
    std::optional<int64_t> budget;
    std::optional<int> threads;
    bool as_json = false;
    search->add_option("--n", search_n, "Board side")->required()->check(CLI::Range(1, 64));
    search->add_option("--mode", search_mode, "general or independent")->check(CLI::IsMember({"general", "independent"}));
    search->add_option("--exterior", exterior, "Allow points up to E cells outside the board")->check(CLI::Range(0, 16));
    search->add_flag("--all", search_all, "Enumerate every minimum solution");
    bool heuristic = false;
    search->add_flag("--heuristic", heuristic, "Independent upper bound from symmetric orbits (no optimality claim)");
    search->add_flag("--save", save, "Record the result in the cache");
    search->add_option("--budget", budget, "Node budget");
    search->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 256));
    search->add_flag("--json", as_json);

    // verify
    auto *verify = app.add_subcommand("verify", "Check a solution file");
    std::string verify_file;
    verify->add_option("file", verify_file)->required();
    verify->add_flag("--json", as_json);

    // construct
    auto *construct = app.add_subcommand("construct", "Explicit constructions");
    int construct_n = 0;
    std::optional<int> construct_p;
    bool c_grid = false, c_even = false, c_3q = false, c_2p = false, c_apex = false;
    construct->add_option("--n", construct_n, "Board side")->required()->check(CLI::Range(1, 100000));
    construct->add_option("--p", construct_p, "Prime factor for --torus-2p and --torus-apex");
    construct->add_flag("--grid", c_grid, "Two central columns on the grid");
    construct->add_flag("--torus-even", c_even);
    construct->add_flag("--torus-3q", c_3q);
    construct->add_flag("--torus-2p", c_2p);
    construct->add_flag("--torus-apex", c_apex);
    construct->add_flag("--json", as_json);

    // bounds
    auto *bounds = app.add_subcommand("bounds", "Lower and upper bounds");
    int64_t bounds_n = 0;
    std::optional<int64_t> janson_m;
    bool janson = false;
    bounds->add_option("--n", bounds_n)->required()->check(CLI::Range(int64_t{2}, int64_t{10'000'000}));
    bounds->add_flag("--janson", janson, "Janson failure bound for a random m-set of T_n (n prime)");
    bounds->add_option("--m", janson_m);
    bounds->add_flag("--json", as_json);

    // torus
    auto *torus = app.add_subcommand("torus", "Discrete torus tools");
    torus->require_subcommand(1);
    auto *t_construct = torus->add_subcommand("construct");
    std::string t_kind = "even";
    int t_n = 0;
    t_construct->add_option("--kind", t_kind)->check(CLI::IsMember({"even", "3q", "2p", "apex"}));
    t_construct->add_option("--n", t_n)->required()->check(CLI::Range(1, 100000));
    t_construct->add_option("--p", construct_p);
    t_construct->add_flag("--json", as_json);
    auto *t_verify = torus->add_subcommand("verify");
    t_verify->add_option("file", verify_file)->required();
    t_verify->add_flag("--json", as_json);
    auto *t_mc = torus->add_subcommand("mc", "Monte Carlo domination frequency");
    int mc_m = 0;
    int trials = 200;
    uint64_t seed = 1;
    t_mc->add_option("--n", t_n)->required()->check(CLI::Range(1, 2000));
    t_mc->add_option("--m", mc_m)->required();
    t_mc->add_option("--trials", trials)->check(CLI::Range(1, 1'000'000));
    t_mc->add_option("--seed", seed);
    t_mc->add_flag("--json", as_json);
    auto *t_search = torus->add_subcommand("search", "Exact torus domination number");
    t_search->add_option("--n", t_n)->required()->check(CLI::Range(1, 16));
    t_search->add_option("--budget", budget);
    t_search->add_flag("--all", search_all);
    t_search->add_flag("--json", as_json);

    // game
    auto *game = app.add_subcommand("game", "No-three-in-line placement game");
    game->require_subcommand(1);
    auto *g_solve = game->add_subcommand("solve");
    int g_n = 0;
    g_solve->add_option("--n", g_n)->required()->check(CLI::Range(1, 11));
    g_solve->add_option("--budget", budget);
    g_solve->add_flag("--json", as_json);
    auto *g_play = game->add_subcommand("play", "Play against the engine; moves are read as 'x y' lines");
    std::string human = "first";
    g_play->add_option("--n", g_n)->required()->check(CLI::Range(1, 11));
    g_play->add_option("--human", human)->check(CLI::IsMember({"first", "second"}));
    g_play->add_option("--budget", budget);
    g_play->add_flag("--json", as_json);

    // export
    auto *exporter = app.add_subcommand("export", "Render a grid solution");
    std::string export_file;
    std::string output;
    bool svg = false, ascii = false, mask = false, lines = false;
    int cell_px = 24;
    exporter->add_option("file", export_file)->required();
    exporter->add_flag("--svg", svg);
    exporter->add_flag("--ascii", ascii);
    exporter->add_flag("--mask", mask, "Shade dominated cells");
    exporter->add_flag("--lines", lines, "Draw lines through point pairs");
    exporter->add_option("--cell-px", cell_px)->check(CLI::Range(4, 512));
    exporter->add_option("-o,--output", output);

    // serve
    auto *serve = app.add_subcommand("serve", "HTTP API");
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string static_dir;
    serve->add_option("--host", host);
    serve->add_option("--port", port)->check(CLI::Range(0, 65535));
    serve->add_option("--static", static_dir, "Directory served at /");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, env.out, env.err);
        return code == 0 ? 0 : 2;
    }

    auto cache = [&] {
        return cache_dir.empty() ? ResultsCache::from_environment(env.default_cache_dir) : ResultsCache(cache_dir);
    };

    try {
        if (*search && heuristic) {
            if (search_mode != "independent" || exterior > 0 || search_all || save)
                throw Failure{2, "--heuristic only supports independent mode without --exterior, --all or --save"};
            AugmentBudget b;
            if (budget)
                b.node_budget = *budget;
            const auto s = symmetric_augment(BoardSize(search_n), b);
            if (as_json)
                print(env.out, to_json(s));
            else
                env.out << "n=" << search_n << " heuristic size=" << s.size() << '\n'
                        << render_ascii(s.board(), s.points(), false);
            return 0;
        }
        if (*search) {
            SearchConfig config;
            config.board = BoardSize(search_n);
            config.mode = parse_mode(search_mode);
            config.margin = exterior;
            config.enumerate_all = search_all;
            config.node_budget = budget;
            config.thread_count = threads;
            const auto outcome = exterior > 0 ? min_dominating_exterior(config) : min_dominating(config);
            if (save)
                cache().store(config, outcome);
            if (as_json) {
                print(env.out, outcome_json(config, outcome));
            } else {
                env.out << "n=" << search_n << " mode=" << search_mode << " margin=" << exterior << " minimum="
                        << (outcome.minimum_size ? std::to_string(*outcome.minimum_size) : "unknown");
                if (search_all)
                    env.out << " distinct=" << outcome.distinct_count << " classes=" << outcome.symmetry_class_count;
                env.out << " exhausted=" << (outcome.exhausted ? "true" : "false")
                        << " nodes=" << outcome.nodes_explored << '\n';
                for (const auto &s : outcome.classes)
                    env.out << render_ascii(s.board(), s.points(), false) << '\n';
            }
            return 0;
        }

        if (*verify || *t_verify) {
            json j;
            try {
                j = read_json_file(verify_file);
            } catch (const FormatError &e) {
                throw Failure{2, e.what()};
            }
            try {
                if (solution_kind(j) == "torus") {
                    const auto sol = verify_torus(torus_from_json(j), Provenance::file);
                    if (as_json)
                        print(env.out, {{"valid", true}, {"kind", "torus"}, {"n", sol.n}, {"size", sol.size()},
                                        {"verified", sol.verified}});
                    else
                        env.out << "ok: dominates T_" << sol.n << " with " << sol.size() << " points\n";
                } else {
                    if (*t_verify)
                        throw FormatError("expected a torus solution");
                    auto rec = grid_from_json(j);
                    const auto sol = Solution::verify(std::move(rec.points), rec.mode, Provenance::file);
                    if (as_json)
                        print(env.out, {{"valid", true}, {"kind", "grid"}, {"n", sol.board().n()},
                                        {"mode", to_string(sol.mode())}, {"size", sol.size()}});
                    else
                        env.out << "ok: " << to_string(sol.mode()) << " dominating set of size " << sol.size()
                                << " on the " << sol.board().n() << "x" << sol.board().n() << " board\n";
                }
            } catch (const VerificationError &e) {
                throw Failure{1, e.what()};
            } catch (const FormatError &e) {
                throw Failure{1, e.what()};
            } catch (const std::invalid_argument &e) {
                throw Failure{1, e.what()};
            }
            return 0;
        }

        auto construct_torus = [&](const std::string &kind, int n) {
            if (kind == "even")
                return construct_even(n);
            if (kind == "3q")
                return construct_3q(n);
            if (kind == "2p")
                return construct_2p(n, construct_p);
            const int p = construct_p.value_or(smallest_prime_factor(n));
            const auto base = apex_base(p);
            const auto apex = has_apex(p, base);
            if (!apex)
                throw TorusError("base set has no apex");
            return blow_up_exact(p, n, base, *apex);
        };

        if (*construct) {
            const int chosen = int(c_grid) + int(c_even) + int(c_3q) + int(c_2p) + int(c_apex);
            if (chosen != 1)
                throw Failure{2, "choose exactly one of --grid, --torus-even, --torus-3q, --torus-2p, --torus-apex"};
            if (c_grid) {
                const auto sol = construct_central_columns(BoardSize(construct_n));
                if (as_json)
                    print(env.out, to_json(sol));
                else
                    env.out << sol.size() << " points, verified\n" << render_ascii(sol.board(), sol.points(), false);
                return 0;
            }
            const std::string kind = c_even ? "even" : c_3q ? "3q" : c_2p ? "2p" : "apex";
            report_torus(construct_torus(kind, construct_n), as_json, env.out);
            return 0;
        }

        if (*bounds) {
            if (janson) {
                if (!janson_m)
                    throw Failure{2, "--janson needs --m"};
                const auto e = janson_failure_bound(bounds_n, *janson_m);
                if (as_json)
                    print(env.out, to_json(e));
                else
                    env.out << "n=" << e.n << " m=" << e.m << " mu=" << e.mu << " delta=" << e.delta
                            << " failure_bound=" << e.failure_bound
                            << (e.certifies_existence() ? " (certifies a dominating set)\n" : "\n");
                return 0;
            }
            const auto r = bound_report(bounds_n);
            if (as_json)
                print(env.out, to_json(r));
            else
                env.out << "n=" << r.n << " trivial_lower=" << r.trivial_lower << " phi_lower=" << r.phi_lower
                        << " construction_upper=" << r.construction_upper << "\n" << r.notes << '\n';
            return 0;
        }

        if (*t_construct) {
            report_torus(construct_torus(t_kind, t_n), as_json, env.out);
            return 0;
        }
        if (*t_mc) {
            if (mc_m < 0 || mc_m > t_n * t_n)
                throw Failure{2, "--m must lie in [0, n^2]"};
            const double f = monte_carlo_domination(t_n, mc_m, trials, seed);
            if (as_json)
                print(env.out, {{"n", t_n}, {"m", mc_m}, {"trials", trials}, {"seed", seed}, {"frequency", f}});
            else
                env.out << "n=" << t_n << " m=" << mc_m << " trials=" << trials << " seed=" << seed
                        << " frequency=" << f << '\n';
            return 0;
        }
        if (*t_search) {
            const auto o = torus_min_dominating(t_n, budget, search_all);
            if (as_json) {
                print(env.out, torus_outcome_json(t_n, o));
            } else {
                env.out << "T_" << t_n << " minimum="
                        << (o.minimum_size ? std::to_string(*o.minimum_size) : "unknown");
                if (search_all)
                    env.out << " distinct=" << o.distinct_count << " classes=" << o.symmetry_class_count;
                env.out << " exhausted=" << (o.exhausted ? "true" : "false") << '\n';
                for (const auto &s : o.classes)
                    env.out << describe(s.points) << '\n';
            }
            return 0;
        }

        if (*g_solve) {
            const auto v = solve(g_n, SolveOptions{budget, true});
            if (as_json) {
                print(env.out, {{"n", g_n},
                                {"winner", v.winner ? json(to_string(*v.winner)) : json(nullptr)},
                                {"principalMove", v.principal_move ? to_json(*v.principal_move) : json(nullptr)},
                                {"nodes", v.nodes}});
            } else {
                env.out << "n=" << g_n << " winner=" << (v.winner ? to_string(*v.winner) : "unknown");
                if (v.principal_move)
                    env.out << " move=(" << v.principal_move->x << "," << v.principal_move->y << ")";
                env.out << " nodes=" << v.nodes << '\n';
            }
            return 0;
        }
        if (*g_play) {
            GameState state{BoardSize(g_n)};
            const Player human_side = parse_player(human);
            std::string line;
            while (!legal_moves(state).empty()) {
                if (state.to_move() == human_side) {
                    if (!as_json)
                        env.out << render_ascii(state.board(), state.placed(), true) << "your move: " << std::flush;
                    if (!std::getline(env.in, line))
                        break;
                    bool ok = false;
                    state = read_move_line(state, line, as_json ? env.err : env.out, ok);
                } else {
                    const auto m = engine_move(state, budget);
                    state = state.play(m->move);
                    if (!as_json)
                        env.out << "engine plays " << m->move.x << " " << m->move.y << '\n';
                }
            }
            const bool over = legal_moves(state).empty();
            if (as_json) {
                print(env.out, {{"state", to_json(state)},
                                {"gameOver", over},
                                {"winner", over ? json(to_string(other(state.to_move()))) : json(nullptr)}});
            } else {
                env.out << render_ascii(state.board(), state.placed(), false);
                if (over)
                    env.out << to_string(other(state.to_move())) << " player wins\n";
            }
            return 0;
        }

        if (*exporter) {
            if (svg == ascii)
                throw Failure{2, "choose one of --svg or --ascii"};
            json j;
            try {
                j = read_json_file(export_file);
            } catch (const FormatError &e) {
                throw Failure{2, e.what()};
            }
            auto rec = grid_from_json(j);
            RenderSpec spec;
            spec.target = svg ? RenderSpec::Target::svg : RenderSpec::Target::ascii;
            spec.cell_px = cell_px;
            spec.show_mask = mask;
            spec.show_lines = lines;
            const auto text = render(rec.points.board(), rec.points, spec);
            if (output.empty()) {
                env.out << text;
            } else {
                std::ofstream file(output);
                if (!file)
                    throw Failure{2, "cannot write " + output};
                file << text;
            }
            return 0;
        }

        if (*serve) {
            ServiceConfig config;
            config.cache_dir = cache().dir();
            Api api(config);
            HttpServer server(api, static_dir);
            const int bound = server.bind(host, port);
            if (bound < 0)
                throw Failure{2, "cannot bind " + host + ":" + std::to_string(port)};
            env.err << "listening on http://" << host << ":" << bound << '\n';
            server.listen();
            return 0;
        }
    } catch (const Failure &f) {
        env.err << "error: " << f.message << '\n';
        return f.code;
    } catch (const VerificationError &e) {
        env.err << "verification failed: " << e.what() << '\n';
        return 1;
    } catch (const CacheError &e) {
        env.err << "cache: " << e.what() << '\n';
        return 1;
    } catch (const std::logic_error &e) {
        env.err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::runtime_error &e) {
        env.err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace gridlock
