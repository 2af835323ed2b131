#include "loosetile/cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "loosetile/json_io.hpp"
#include "loosetile/rng.hpp"

namespace loosetile {

namespace {

int log_level() {
    const char* env = std::getenv("LOOSETILE_LOG");
    if (!env) return 0;
    std::string v(env);
    if (v == "debug") return 2;
    if (v == "info") return 1;
    return 0;
}

Hypergraph3 load_h3(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_h3(in);
}

Partition load_part(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_part(in);
}

void emit(std::ostream& out, const Json& j, int indent) {
    out << j.dump(indent < 0 ? -1 : indent) << "\n";
}

struct GenParams {
    std::string family;
    int n = 12;
    int x_size = -1;  // -1: family default
    int clique = 6;
    double noise = 0.0, p = 0.5, rho = 0.0;
    std::uint64_t seed = 0;
};

LabeledInstance generate(const GenParams& g) {
    if (g.family == "space-barrier") return space_barrier(g.n);
    if (g.family == "covered-extremal")
        return covered_extremal(g.n, g.x_size < 0 ? g.n / 3 : g.x_size, g.noise, g.seed);
    if (g.family == "ideal-case") return ideal_case_instance(g.n, g.rho, g.seed);
    if (g.family == "random") return random_3graph(g.n, g.p, g.seed);
    if (g.family == "barrier-clique")
        return barrier_plus_clique(g.n, g.x_size < 0 ? g.n / 3 - 1 : g.x_size, g.clique);
    if (g.family == "complete") {
        LabeledInstance inst;
        inst.h = complete3(g.n);
        inst.params = {{"family", "complete"}, {"n", std::to_string(g.n)}};
        return inst;
    }
    throw std::invalid_argument("unknown family '" + g.family + "'");
}

std::string params_string(const GenParams& g) {
    std::ostringstream s;
    if (g.family == "covered-extremal")
        s << "x_size=" << (g.x_size < 0 ? g.n / 3 : g.x_size) << ";noise=" << g.noise;
    else if (g.family == "random")
        s << "p=" << g.p;
    else if (g.family == "ideal-case")
        s << "rho=" << g.rho;
    else if (g.family == "barrier-clique")
        s << "x_size=" << (g.x_size < 0 ? g.n / 3 - 1 : g.x_size) << ";clique=" << g.clique;
    return s.str();
}

std::vector<int> parse_range(const std::string& text) {
    // "24" or "24..96" or "24..96:12"
    std::vector<int> out;
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        out.push_back(std::stoi(text));
        return out;
    }
    int lo = std::stoi(text.substr(0, dots));
    std::string rest = text.substr(dots + 2);
    int step = 6;
    auto colon = rest.find(':');
    if (colon != std::string::npos) {
        step = std::stoi(rest.substr(colon + 1));
        rest = rest.substr(0, colon);
    }
    int hi = std::stoi(rest);
    if (step <= 0 || hi < lo) throw std::invalid_argument("bad --n range '" + text + "'");
    for (int n = lo; n <= hi; n += step) out.push_back(n);
    return out;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"loose-cycle tiling toolkit"};
    app.require_subcommand(1);

    std::int64_t budget_ms = -1;
    std::uint64_t seed = 0;
    int threads = 1;
    int json_indent = 2;
    app.add_option("--budget-ms", budget_ms, "time budget for searches, <=0 unlimited");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--threads", threads, "worker threads (experiment trials)");
    app.add_option("--json-indent", json_indent, "JSON indent, <0 compact");

    // gen
    GenParams gen;
    std::string gen_out;
    auto* cgen = app.add_subcommand("gen", "generate an instance (.h3 + .json sidecar)");
    cgen->add_option("family", gen.family,
                     "space-barrier | covered-extremal | ideal-case | random | barrier-clique | complete")
        ->required();
    cgen->add_option("--n", gen.n, "vertex count")->required();
    cgen->add_option("--x-size", gen.x_size, "designated X size");
    cgen->add_option("--clique", gen.clique, "clique block size (barrier-clique)");
    cgen->add_option("--noise", gen.noise, "Y-internal edge probability");
    cgen->add_option("--p", gen.p, "edge probability (random)");
    cgen->add_option("--rho", gen.rho, "deletion parameter (ideal-case)");
    cgen->add_option("-o,--out", gen_out, "output path; stdout if omitted");

    // stats
    std::string stats_file;
    auto* cstats = app.add_subcommand("stats", "degree and codegree statistics");
    cstats->add_option("file", stats_file, ".h3 input")->required();

    // find-factor
    std::string ff_file;
    auto* cff = app.add_subcommand("find-factor", "search for a perfect tiling");
    cff->add_option("file", ff_file, ".h3 input")->required();

    // max-tiling
    std::string mt_file;
    auto* cmt = app.add_subcommand("max-tiling", "largest vertex-disjoint copy collection");
    cmt->add_option("file", mt_file, ".h3 input")->required();

    // extremal-solve
    std::string es_file, es_part;
    double es_eps = 1e-3;
    int es_attempts = 64;
    auto* ces = app.add_subcommand("extremal-solve", "run the extremal-case pipeline");
    ces->add_option("file", es_file, ".h3 input")->required();
    ces->add_option("--part", es_part, ".part file carrying B (the part of size 2n/3)");
    ces->add_option("--eps", es_eps, "extremality parameter");
    ces->add_option("--max-attempts", es_attempts, "ideal-factor resampling attempts");

    // lattice
    std::string lat_file, lat_part;
    int lat_arity = 3;
    long long lat_threshold = -1;
    std::uint64_t lat_copies = 4'000'000, lat_samples = 200'000;
    auto* clat = app.add_subcommand("lattice", "robust index-vector report and transferral scan");
    clat->add_option("file", lat_file, ".h3 input")->required();
    clat->add_option("--part", lat_part, ".part file; trivial partition if omitted");
    clat->add_option("--arity", lat_arity, "3 (edges) or 6 (copies)")->check(CLI::IsMember({3, 6}));
    clat->add_option("--threshold", lat_threshold,
                     "robustness floor; default ceil(0.001 n^3) / ceil(0.0001 n^6)");
    clat->add_option("--max-copies", lat_copies, "exhaustive enumeration cap (arity 6)");
    clat->add_option("--samples", lat_samples, "sample count when the cap trips");

    // reach
    std::string reach_file;
    int reach_x = -1, reach_y = -1;
    std::uint64_t reach_cap = 1'000'000;
    bool reach_closed = false;
    long long pair_threshold = 1;
    auto* creach = app.add_subcommand("reach", "reachable 5-sets / closedness partition");
    creach->add_option("file", reach_file, ".h3 input")->required();
    creach->add_option("--x", reach_x, "first vertex");
    creach->add_option("--y", reach_y, "second vertex");
    creach->add_option("--cap", reach_cap, "stop counting at this many 5-sets");
    creach->add_flag("--closed", reach_closed, "compute the reachability partition");
    creach->add_option("--pair-threshold", pair_threshold, "witnesses required per pair");

    // absorb-sim
    std::string ab_file, ab_part;
    int ab_t = 1, ab_usize = 0, ab_retries = 8;
    double ab_p = 0.0, ab_gamma1 = 0.1;
    std::uint64_t ab_candidates = 64;
    auto* cab = app.add_subcommand("absorb-sim", "build an absorbing family and absorb a set");
    cab->add_option("file", ab_file, ".h3 input")->required();
    cab->add_option("--part", ab_part, ".part file; trivial partition if omitted");
    cab->add_option("--t", ab_t, "reachability depth (m = 36t)");
    cab->add_option("--p", ab_p, "selection probability; <=0 draws --candidates sets");
    cab->add_option("--gamma1", ab_gamma1, "family density parameter");
    cab->add_option("--candidates", ab_candidates, "candidate cap");
    cab->add_option("--retries", ab_retries, "fresh-seed retries");
    cab->add_option("--u-size", ab_usize, "absorb a random disjoint U of this size");

    // almost-match
    std::string am_file;
    double am_gamma = 0.1, am_alpha = 0.2;
    auto* cam = app.add_subcommand("almost-match", "almost-perfect matching or extremal certificate");
    cam->add_option("file", am_file, ".h3 input")->required();
    cam->add_option("--gamma", am_gamma, "degree slack / certificate bound parameter");
    cam->add_option("--alpha", am_alpha, "allowed uncovered fraction");

    // experiment
    std::string ex_family = "covered-extremal", ex_range = "12..48", ex_check = "factor";
    int ex_trials = 10, ex_t = -1, ex_xsize = -1, ex_clique = 6;
    double ex_noise = 0.0, ex_p = 0.5, ex_rho = 0.0, ex_gamma = 0.1, ex_alpha = 0.2;
    auto* cex = app.add_subcommand("experiment", "sweep a family, CSV to stdout");
    cex->add_option("--family", ex_family, "generator family");
    cex->add_option("--n", ex_range, "n or n0..n1[:step] (step default 6)");
    cex->add_option("--trials", ex_trials, "trials per point")->check(CLI::PositiveNumber);
    cex->add_option("--check", ex_check, "factor | t-disjoint | certificate");
    cex->add_option("--t", ex_t, "copies wanted for t-disjoint (default n/6)");
    cex->add_option("--x-size", ex_xsize, "family X size");
    cex->add_option("--clique", ex_clique, "clique block size");
    cex->add_option("--noise", ex_noise, "covered-extremal noise");
    cex->add_option("--p", ex_p, "random family edge probability");
    cex->add_option("--rho", ex_rho, "ideal-case deletion parameter");
    cex->add_option("--gamma", ex_gamma, "certificate check gamma");
    cex->add_option("--alpha", ex_alpha, "certificate check alpha");

    // verify
    std::string vf_h3, vf_tiling;
    bool vf_perfect = false;
    auto* cvf = app.add_subcommand("verify", "check a tiling JSON against a host");
    cvf->add_option("host", vf_h3, ".h3 input")->required();
    cvf->add_option("tiling", vf_tiling, "tiling JSON file")->required();
    cvf->add_flag("--perfect", vf_perfect, "require full cover");

    // global flags are accepted after the subcommand name too
    for (CLI::App* sub : {cgen, cstats, cff, cmt, ces, clat, creach, cab, cam, cex, cvf})
        sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    int verbosity = log_level();
    auto info = [&](const std::string& msg) {
        if (verbosity >= 1) err << "[info] " << msg << "\n";
    };

    try {
        if (*cgen) {
            GenParams g = gen;
            g.seed = seed;
            LabeledInstance inst = generate(g);
            std::string text = serialize_h3(inst.h);
            if (gen_out.empty()) {
                out << text;
                info("no -o given, sidecar suppressed");
            } else {
                std::ofstream f(gen_out);
                if (!f) throw std::runtime_error("cannot write " + gen_out);
                f << text;
                std::string side = gen_out;
                if (side.size() > 3 && side.substr(side.size() - 3) == ".h3")
                    side = side.substr(0, side.size() - 3) + ".json";
                else
                    side += ".json";
                std::ofstream sf(side);
                sf << instance_sidecar(inst).dump(json_indent) << "\n";
                out << "wrote " << gen_out << " and " << side << "\n";
            }
            return 0;
        }

        if (*cstats) {
            Hypergraph3 h = load_h3(stats_file);
            auto cod = min_codegree(h);
            long long total = binom3(h.vertex_count());
            emit(out,
                 Json{{"n", h.vertex_count()},
                      {"edges", h.edge_count()},
                      {"density", total ? static_cast<double>(h.edge_count()) / total : 0.0},
                      {"min_codegree", Json{{"value", cod.value}, {"witness", cod.witness}}}},
                 json_indent);
            return 0;
        }

        if (*cff) {
            Hypergraph3 h = load_h3(ff_file);
            auto r = find_factor(h, budget_ms);
            if (r.status == SearchStatus::Found) {
                emit(out, Json{{"result", "some"}, {"nodes", r.nodes},
                               {"tiling", tiling_to_json(r.tiling, h.vertex_count())}},
                     json_indent);
                return 0;
            }
            if (r.status == SearchStatus::None) {
                Json j{{"result", "none"}, {"exhaustive", r.exhaustive}, {"nodes", r.nodes}};
                if (!r.reason.empty()) j["reason"] = r.reason;
                emit(out, j, json_indent);
                return 1;
            }
            emit(out, Json{{"result", "indeterminate"}, {"nodes", r.nodes}}, json_indent);
            return 3;
        }

        if (*cmt) {
            Hypergraph3 h = load_h3(mt_file);
            auto r = max_tiling(h, budget_ms);
            emit(out, Json{{"result", "tiling"}, {"size", r.tiling.copies.size()},
                           {"optimal", r.optimal}, {"nodes", r.nodes},
                           {"tiling", tiling_to_json(r.tiling, h.vertex_count())}},
                 json_indent);
            return r.optimal ? 0 : 3;
        }

        if (*ces) {
            Hypergraph3 h = load_h3(es_file);
            ExtremalOptions opts;
            opts.seed = seed;
            opts.max_attempts = es_attempts;
            if (!es_part.empty()) {
                Partition p = load_part(es_part);
                if (p.vertex_count() != h.vertex_count())
                    throw std::runtime_error("partition size mismatch");
                int want = 2 * h.vertex_count() / 3;
                for (const auto& part : p.parts())
                    if (static_cast<int>(part.size()) == want) opts.b0 = part;
                if (!opts.b0) throw std::runtime_error("no part of size 2n/3 in " + es_part);
            }
            auto r = extremal_solve(h, es_eps, opts);
            Json j{{"result", r.ok ? "some" : "none"},
                   {"trace", trace_to_json(r.trace, h.vertex_count())}};
            if (r.ok) j["tiling"] = tiling_to_json(r.tiling, h.vertex_count());
            emit(out, j, json_indent);
            return r.ok ? 0 : 1;
        }

        if (*clat) {
            Hypergraph3 h = load_h3(lat_file);
            Partition p = lat_part.empty() ? Partition::trivial(h.vertex_count()) : load_part(lat_part);
            double n = h.vertex_count();
            long long thr = lat_threshold;
            if (thr < 1)
                thr = lat_arity == 3
                          ? std::max<long long>(1, static_cast<long long>(std::ceil(0.001 * n * n * n)))
                          : std::max<long long>(1, static_cast<long long>(std::ceil(
                                                       0.0001 * n * n * n * n * n * n)));
            RobustBudget rb;
            rb.max_copies = lat_copies;
            rb.samples = lat_samples;
            rb.seed = seed;
            auto rep = robust_vectors(h, p, lat_arity, thr, rb);
            Json j{{"report", report_to_json(rep)}};
            if (lat_arity == 6) {
                auto tr = find_transferral(rep);
                j["transferral"] = tr ? Json{{"vec", tr->base.coords}, {"i", tr->i}, {"j", tr->j}}
                                      : Json(nullptr);
            }
            emit(out, j, json_indent);
            return 0;
        }

        if (*creach) {
            Hypergraph3 h = load_h3(reach_file);
            if (reach_closed) {
                ReachParams rp;
                rp.threshold = pair_threshold;
                auto r = closed_partition(h, rp);
                Json parts = Json::array();
                for (const auto& part : r.partition.parts()) parts.push_back(part);
                emit(out, Json{{"parts", std::move(parts)}, {"min_witness", r.min_witness},
                               {"degenerate", r.degenerate}},
                     json_indent);
                return 0;
            }
            if (reach_x < 0 || reach_y < 0)
                throw std::invalid_argument("reach needs --x and --y (or --closed)");
            auto r = reachable_5sets(h, reach_x, reach_y, reach_cap);
            Json wit = Json::array();
            for (const auto& w : r.witnesses) wit.push_back(w);
            emit(out, Json{{"count", r.count}, {"complete", r.complete}, {"witnesses", wit}},
                 json_indent);
            return r.count > 0 ? 0 : 1;
        }

        if (*cab) {
            Hypergraph3 h = load_h3(ab_file);
            Partition p = ab_part.empty() ? Partition::trivial(h.vertex_count()) : load_part(ab_part);
            AbsorbConfig cfg;
            cfg.t = ab_t;
            cfg.p = ab_p;
            cfg.gamma1 = ab_gamma1;
            cfg.seed = seed;
            cfg.max_candidates = ab_candidates;
            cfg.max_retries = ab_retries;
            auto built = build_absorbing_family(h, p, cfg);
            if (!built.ok) {
                emit(out, Json{{"result", "none"}, {"error", built.error}}, json_indent);
                return 1;
            }
            Json j{{"result", "family"},
                   {"family", family_to_json(built.family, built.stats, h.vertex_count())}};
            if (ab_usize > 0) {
                Bitset wmask(h.vertex_count());
                for (Vertex v : built.family.w) wmask.set(v);
                std::vector<Vertex> free;
                for (Vertex v = 0; v < h.vertex_count(); ++v)
                    if (!wmask.test(v)) free.push_back(v);
                if (ab_usize > static_cast<int>(free.size()))
                    throw std::runtime_error("u-size exceeds free vertices");
                Rng rng = Rng(seed).fork(99);
                std::vector<int> pick = rng.sample(static_cast<int>(free.size()), ab_usize);
                std::vector<Vertex> u;
                for (int i : pick) u.push_back(free[i]);
                std::sort(u.begin(), u.end());
                auto ar = absorb(h, built.family, u);
                j["absorb"] = ar.ok ? Json{{"ok", true}, {"u", u},
                                          {"msets_consumed", ar.msets_consumed},
                                          {"tiling", tiling_to_json(ar.tiling, h.vertex_count())}}
                                    : Json{{"ok", false}, {"u", u}, {"error", ar.error}};
                emit(out, j, json_indent);
                return ar.ok ? 0 : 1;
            }
            emit(out, j, json_indent);
            return 0;
        }

        if (*cam) {
            Hypergraph3 h = load_h3(am_file);
            auto r = almost_perfect_matching(h, am_gamma, am_alpha, budget_ms);
            emit(out, almost_to_json(r), json_indent);
            return r.status == AlmostStatus::Budget ? 3 : 0;
        }

        if (*cex) {
            auto ns = parse_range(ex_range);
            out << "family,n,params,trials,successes,mean_runtime_ms,seed\n";
            for (int n : ns) {
                GenParams g;
                g.family = ex_family;
                g.n = n;
                g.x_size = ex_xsize;
                g.clique = ex_clique;
                g.noise = ex_noise;
                g.p = ex_p;
                g.rho = ex_rho;
                std::vector<char> success(ex_trials, 0);
                std::vector<double> runtime(ex_trials, 0.0);
                std::atomic<int> next{0};
                auto work = [&] {
                    for (int trial; (trial = next.fetch_add(1)) < ex_trials;) {
                        GenParams gt = g;
                        gt.seed = Rng(seed).fork(n).fork(trial).next();
                        auto t0 = std::chrono::steady_clock::now();
                        bool ok = false;
                        try {
                            LabeledInstance inst = generate(gt);
                            if (ex_check == "factor") {
                                ok = find_factor(inst.h, budget_ms).status == SearchStatus::Found;
                            } else if (ex_check == "t-disjoint") {
                                int t = ex_t > 0 ? ex_t : n / 6;
                                ok = find_t_disjoint(inst.h, t, budget_ms).status ==
                                     SearchStatus::Found;
                            } else if (ex_check == "certificate") {
                                ok = almost_perfect_matching(inst.h, ex_gamma, ex_alpha, budget_ms)
                                         .status == AlmostStatus::Certificate;
                            } else {
                                throw std::runtime_error("unknown check " + ex_check);
                            }
                        } catch (const std::exception&) {
                            ok = false;
                        }
                        success[trial] = ok;
                        runtime[trial] = std::chrono::duration<double, std::milli>(
                                             std::chrono::steady_clock::now() - t0)
                                             .count();
                    }
                };
                int nthreads = std::max(1, threads);
                if (nthreads == 1) {
                    work();
                } else {
                    std::vector<std::thread> pool;
                    for (int i = 0; i < nthreads; ++i) pool.emplace_back(work);
                    for (auto& th : pool) th.join();
                }
                int successes = 0;
                double mean = 0;
                for (int i = 0; i < ex_trials; ++i) {
                    successes += success[i];
                    mean += runtime[i];
                }
                mean /= std::max(1, ex_trials);
                out << ex_family << "," << n << "," << params_string(g) << "," << ex_trials << ","
                    << successes << "," << mean << "," << seed << "\n";
                info("experiment point n=" + std::to_string(n) + " done");
            }
            return 0;
        }

        if (*cvf) {
            Hypergraph3 h = load_h3(vf_h3);
            std::ifstream tf(vf_tiling);
            if (!tf) throw std::runtime_error("cannot open " + vf_tiling);
            Json j = Json::parse(tf);
            Tiling t = tiling_from_json(j);
            auto r = verify_tiling(h, t, vf_perfect);
            emit(out, Json{{"valid", r.ok}, {"diagnostic", r.diagnostic}}, json_indent);
            return r.ok ? 0 : 1;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace loosetile
