#include "oscillab/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include "oscillab/config.hpp"
#include "oscillab/io.hpp"

namespace oscillab::cli {

namespace {

using nlohmann::json;

int exit_code(ErrorCode c) {
    switch (c) {
        case ErrorCode::ParseError:
        case ErrorCode::MissingInput: return 2;
        case ErrorCode::EmptyCorpus:
        case ErrorCode::AllDegenerate: return 4;
        default: return 3;
    }
}

unsigned worker_count() {
    if (const char* env = std::getenv("OSCILLAB_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs job(i) for i in [0, n) on a bounded pool. Jobs write only their own slot.
template <class Job>
void parallel_for(int n, const Job& job) {
    const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(std::max(n, 1)));
    std::atomic<int> next{0};
    auto loop = [&] {
        for (int i = next++; i < n; i = next++) job(i);
    };
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < workers; ++k) pool.emplace_back(loop);
    loop();
    for (auto& t : pool) t.join();
}

struct Common {
    std::string config_path;
    RunConfig cfg;
    void load() {
        if (!config_path.empty()) cfg = load_config(config_path);
    }
};

json stamp(const Common& c) {
    return {{"version", kVersion}, {"config_digest", c.cfg.digest()}};
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ',');) {
        double x = 0.0;
        const auto a = tok.find_first_not_of(' ');
        const auto b = tok.find_last_not_of(' ');
        if (a == std::string::npos) throw Error(ErrorCode::ParseError, "empty grid entry");
        const std::string t = tok.substr(a, b - a + 1);
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
        if (ec != std::errc() || ptr != t.data() + t.size())
            throw Error(ErrorCode::ParseError, "bad grid entry '" + t + "'");
        out.push_back(x);
    }
    if (out.empty()) throw Error(ErrorCode::ParseError, "parameter grid is empty");
    return out;
}

// ---------------------------------------------------------------- constant

struct ConstantOpts {
    std::string weight, kind = "ap";
    double p = 2.0, delta = 2.0;
};

int cmd_constant(const Common& c, const ConstantOpts& o, std::ostream& out) {
    const auto wf = io::read_weight(o.weight);
    const auto sp = space_from_config(c.cfg, wf.domain);
    ConstantResult r;
    json j;
    if (o.kind == "ap") {
        r = muckenhoupt_constant(wf.weight, o.p, sp->base, sp->measure);
        j["exponent"] = o.p;
    } else if (o.kind == "rh") {
        r = reverse_holder_constant(wf.weight, o.delta, sp->base, sp->measure);
        j["exponent"] = o.delta;
    } else if (o.kind == "a1") {
        r = a1_constant(wf.weight, sp->base, sp->measure, sp->maximal);
        j["exponent"] = 1.0;
        j["argmax_cell"] = r.argmax_cell;
    } else {
        throw Error(ErrorCode::ParseError, "kind must be ap, a1 or rh");
    }
    j["kind"] = o.kind;
    j["constant"] = r.value;
    j["argmax_set"] = io::to_json(r.argmax, wf.domain.dims);
    j["base"] = io::to_json(sp->base);
    j["digest"] = wf.weight.id();
    j.update(stamp(c));
    out << j.dump(2) << '\n';
    return 0;
}

// ---------------------------------------------------------------- norm

struct NormOpts {
    std::string f, weight, v, sequence, spec = "centered", survival;
    double p = 1.0, alpha = 0.0, tl_q = 2.0, eta = 0.0, N = 0.0;
    bool jn = false, per_set = false;
};

int cmd_norm(const Common& c, const NormOpts& o, std::ostream& out) {
    json j = stamp(c);
    if (o.spec == "tl") {
        if (o.sequence.empty()) throw Error(ErrorCode::MissingInput, "--sequence is required");
        const TLSequence s = io::read_sequence(json::parse(io::read_text(o.sequence)));
        const auto sp = space_from_config(c.cfg, s.domain);
        const Weight w = o.weight.empty() ? Weight::unit(s.domain) : io::read_weight(o.weight).weight;
        const auto r = oscillation_norm(s, TLSeq{o.alpha, o.tl_q}, w, o.p, sp->base, sp->measure,
                                        o.per_set);
        j["norm"] = io::to_json(r, s.domain.dims);
        j["spec"] = "tl";
        out << j.dump(2) << '\n';
        return 0;
    }
    if (o.f.empty()) throw Error(ErrorCode::MissingInput, "--f is required");
    const auto g = io::read_grid(o.f);
    const Weight w = o.weight.empty() ? Weight::unit(g.domain) : io::read_weight(o.weight).weight;
    std::shared_ptr<const GridSpace> sp;
    OscillationSpec spec = CenteredDiff{};
    if (o.spec == "dual-hardy") {
        if (o.weight.empty()) throw Error(ErrorCode::MissingInput, "dual-hardy needs --weight");
        RunConfig cfg = c.cfg;
        auto base_sp = space_from_config(cfg, g.domain);
        sp = make_space(base_sp->domain, density_measure(base_sp->domain, w.values()), cfg.base,
                        cfg.min_scale, base_sp->maximal, base_sp->self_improvement);
        spec = DualHardy{w};
    } else if (o.spec == "centered") {
        sp = space_from_config(c.cfg, g.domain);
        if (!o.v.empty()) spec = CenteredDiff{io::read_weight(o.v).weight};
    } else {
        throw Error(ErrorCode::ParseError, "spec must be centered, dual-hardy or tl");
    }
    if (o.jn) {
        const auto r = jn_exp_moment(g.values, sp->base, sp->measure, w, o.eta, o.N);
        j["jn"] = io::to_json(r, g.domain.dims);
        if (!o.survival.empty()) {
            std::ostringstream os;
            io::write_survival_csv(os, r);
            io::write_text(o.survival, os.str());
        }
    } else {
        const Weight& nw = o.spec == "dual-hardy" ? Weight::unit(g.domain) : w;
        const auto r = oscillation_norm(g.values, spec, nw, o.p, sp->base, sp->measure, o.per_set);
        j["norm"] = io::to_json(r, g.domain.dims);
    }
    j["spec"] = o.spec;
    j["base"] = io::to_json(sp->base);
    out << j.dump(2) << '\n';
    return 0;
}

// ---------------------------------------------------------------- verify

struct VerifyOpts {
    std::string suite = "all", out_dir;
    int trials = -1;
    long long seed = -1;
};

int cmd_verify(const Common& c, const VerifyOpts& o, std::ostream& out) {
    std::vector<TheoremId> ids;
    if (o.suite == "all") {
        ids.assign(kAllTheorems.begin(), kAllTheorems.end());
    } else {
        ids.push_back(parse_theorem(o.suite));
    }
    const int trials = o.trials >= 0 ? o.trials : c.cfg.trials;
    const std::uint64_t seed = o.seed >= 0 ? static_cast<std::uint64_t>(o.seed) : c.cfg.seed;
    const std::filesystem::path dir = o.out_dir.empty() ? c.cfg.out_dir : o.out_dir;

    struct Job {
        TheoremId id;
        int trial;
        std::string text;
        int failures = 0;
        double worst = 0.0;
    };
    std::vector<Job> jobs;
    for (auto id : ids)
        for (int t = 0; t < trials; ++t) jobs.push_back({id, t, {}, 0, 0.0});

    const json st = stamp(c);
    parallel_for(static_cast<int>(jobs.size()), [&](int k) {
        Job& job = jobs[static_cast<std::size_t>(k)];
        const std::uint64_t s =
            mix_seed(seed, static_cast<std::uint64_t>(job.id) + 1, static_cast<std::uint64_t>(job.trial));
        json j;
        try {
            CertificateInputs in = random_inputs(job.id, s);
            in.rdf_tol = c.cfg.rdf_tol;
            const auto rep = certify(job.id, in);
            j = to_json(rep);
            job.failures = rep.failures();
            job.worst = rep.max_negative_slack();
        } catch (const Error& e) {
            j = {{"theorem", to_string(job.id)}, {"pass", false}, {"error", to_string(e.code())},
                 {"message", e.what()}};
            job.failures = 1;
        }
        j["trial"] = job.trial;
        j["seed"] = s;
        j.update(st);
        job.text = j.dump(2) + "\n";
    });

    std::ostringstream summary;
    summary << "theorem,trials,failures,max_negative_slack\n";
    int total = 0;
    std::size_t k = 0;
    for (auto id : ids) {
        int fails = 0;
        double worst = 0.0;
        for (int t = 0; t < trials; ++t, ++k) {
            const Job& job = jobs[k];
            io::write_text(dir / (std::string(to_string(id)) + "_" + std::to_string(t) + ".json"),
                           job.text);
            fails += job.failures;
            worst = std::max(worst, job.worst);
        }
        summary << to_string(id) << ',' << trials << ',' << fails << ',' << io::num(worst) << '\n';
        out << to_string(id) << ": " << trials << " trials, " << fails << " failed checks\n";
        total += fails;
    }
    io::write_text(dir / "summary.csv", summary.str());
    return total == 0 ? 0 : 1;
}

// ---------------------------------------------------------------- sweep

struct SweepOpts {
    std::string quantity, grid, corpus = "standard", out_file;
    double p = 2.0;
    int size = -1;
};

int cmd_sweep(const Common& c, const SweepOpts& o, std::ostream& out) {
    const auto grid = parse_grid(o.grid);
    const int size = o.size > 0 ? o.size : c.cfg.corpus_size;
    const auto corpus = o.corpus == "trivial"    ? trivial_corpus(size)
                        : o.corpus == "standard" ? standard_corpus(c.cfg.seed, size)
                                                 : throw Error(ErrorCode::ParseError,
                                                               "corpus must be standard or trivial");
    std::ostringstream csv;
    if (o.quantity == "c1p") {
        csv << "p,estimate,corpus_digest,upper_bound,t,delta,K\n";
        for (double p : grid) {
            if (!(p > 1.0)) throw Error(ErrorCode::ParseError, "c1p grid needs p > 1");
            ConstantArgs a;
            a.p = 1.0;
            a.q = p;
            const auto est = estimate_constant(ConstantKind::Cpq, corpus, a);
            const auto up = c1p_upper_column(corpus, p);
            csv << io::num(p) << ',' << io::num(est.value) << ',' << est.corpus_digest << ','
                << io::num(up.value) << ',' << io::num(up.t) << ',' << io::num(up.delta) << ','
                << io::num(up.K) << '\n';
        }
    } else if (o.quantity == "psi") {
        if (!(o.p > 1.0)) throw Error(ErrorCode::ExponentOutOfRange, "psi needs p > 1");
        csv << "t,estimate,used,corpus_digest,upper_bound\n";
        int ok = 0;
        const auto& sp = *corpus.front().space;
        for (double t : grid) {
            if (!(t >= 1.0)) throw Error(ErrorCode::ParseError, "psi grid needs t >= 1");
            ConstantArgs a;
            a.p = o.p;
            a.t = t;
            const auto [delta, K] = self_improvement(sp.self_improvement, o.p, t);
            ConstantArgs ca;
            ca.p = 1.0;
            ca.q = conjugate_exponent(delta);
            const double upper = K * estimate_constant(ConstantKind::Cpq, corpus, ca).value;
            try {
                const auto est = estimate_constant(ConstantKind::Psi, corpus, a);
                csv << io::num(t) << ',' << io::num(est.value) << ',' << est.used << ','
                    << est.corpus_digest << ',' << io::num(upper) << '\n';
                ++ok;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::AllDegenerate) throw;
                csv << io::num(t) << ",nan,0," << corpus_digest(corpus) << ',' << io::num(upper)
                    << '\n';
            }
        }
        if (ok == 0) throw Error(ErrorCode::AllDegenerate, "no admissible weight at any t");
    } else if (o.quantity == "jn-decay") {
        csv << "N,max_T_N,instances,corpus_digest,upper_bound\n";
        struct Prepared {
            std::size_t index;
            GridFunction g;
            double eta;
        };
        std::vector<Prepared> prep;
        for (std::size_t k = 0; k < corpus.size(); ++k) {
            const auto& sp = *corpus[k].space;
            const Weight& w = *corpus[k].w;
            const GridFunction& f = *corpus[k].f;
            const double bmo = oscillation_norm(f, CenteredDiff{w}, w, 1.0, sp.base, sp.measure).value;
            if (!(bmo > 0.0)) continue;
            const double D = doubling_constant(w, sp.base, sp.measure);
            if (D * D > 700.0) continue;
            prep.push_back({k, f / bmo, 2.0 * std::exp(D * D)});
        }
        if (prep.empty()) throw Error(ErrorCode::AllDegenerate, "no nonconstant function in corpus");
        for (double N : grid) {
            if (!(N > 0.0)) throw Error(ErrorCode::ParseError, "jn-decay grid needs N > 0");
            double worst = 0.0;
            for (const auto& pr : prep) {
                const auto& sp = *corpus[pr.index].space;
                const auto r = jn_exp_moment(pr.g, sp.base, sp.measure, *corpus[pr.index].w, pr.eta, N);
                worst = std::max(worst, r.T_N);
            }
            csv << io::num(N) << ',' << io::num(worst) << ',' << prep.size() << ','
                << corpus_digest(corpus) << ',' << io::num(2.0 * std::exp(1.0)) << '\n';
        }
    } else if (o.quantity == "tl-ratio") {
        csv << "p,min_ratio,max_ratio,sequences,digest\n";
        for (double p : grid) {
            if (!(p > 0.0)) throw Error(ErrorCode::ParseError, "tl-ratio grid needs p > 0");
            double lo = INFINITY, hi = 0.0;
            Digest d;
            for (int k = 0; k < size; ++k) {
                const std::uint64_t s = mix_seed(c.cfg.seed, 0x71, static_cast<std::uint64_t>(k));
                const GridDomain dom = make_domain(1, 32);
                const auto sp = make_space(dom, uniform_measure(dom), BaseKind::DyadicCubes, 0,
                                           make_maximal(MaximalMode::Dyadic, 1), {});
                const auto seq = random_sequence(dom, s, 1 + static_cast<int>(s % 6));
                GeneratorParams gp;
                const Weight w = generate_weight(WeightKind::RandomLogBounded, gp, s,
                                                 {dom, &sp->measure, &sp->base, &sp->maximal});
                const auto r = tl_equivalence_probe(seq, 0.0, 2.0, p, w, sp->base, sp->measure);
                lo = std::min(lo, r.ratio);
                hi = std::max(hi, r.ratio);
                d.update(r.ratio);
            }
            csv << io::num(p) << ',' << io::num(lo) << ',' << io::num(hi) << ',' << size << ','
                << d.hex() << '\n';
        }
    } else {
        throw Error(ErrorCode::ParseError, "quantity must be c1p, psi, jn-decay or tl-ratio");
    }
    if (o.out_file.empty()) {
        out << csv.str();
    } else {
        io::write_text(o.out_file, csv.str());
    }
    return 0;
}

// ---------------------------------------------------------------- gen

struct GenOpts {
    std::string kind = "random-log-bounded", out_dir;
    int count = 4, dims = 1, side = 16;
    GeneratorParams params;
};

int cmd_gen(const Common& c, const GenOpts& o, std::ostream& out) {
    const WeightKind kind = parse_weight_kind(o.kind);
    if (o.count < 1) throw Error(ErrorCode::ParseError, "count must be positive");
    const GridDomain dom = o.dims == 1 ? make_domain(1, o.side) : make_domain(2, o.side, o.side);
    const auto sp = space_from_config(c.cfg, dom);
    const std::filesystem::path dir = o.out_dir.empty() ? c.cfg.out_dir : o.out_dir;
    json manifest = json::array();
    for (int k = 0; k < o.count; ++k) {
        const std::uint64_t s = mix_seed(c.cfg.seed, 0x6e, static_cast<std::uint64_t>(k));
        const Weight w = generate_weight(kind, o.params, s,
                                         {sp->domain, &sp->measure, &sp->base, &sp->maximal});
        muckenhoupt_constant(w, 2.0, sp->base, sp->measure);
        const std::string name = std::string(to_string(kind)) + "_" + std::to_string(k) + ".csv";
        io::write_weight(dir / name, sp->domain, w);
        manifest.push_back({{"file", name}, {"seed", s}});
    }
    json j = stamp(c);
    j["entries"] = manifest;
    io::write_text(dir / "manifest.json", j.dump(2) + "\n");
    out << "wrote " << o.count << " weights to " << dir.string() << '\n';
    return 0;
}

// ---------------------------------------------------------------- info

int cmd_info(const Common& c, std::ostream& out) {
    json j = stamp(c);
    json th = json::object();
    for (auto id : kAllTheorems) th[std::string(to_string(id))] = check_labels(id);
    j["theorems"] = th;
    j["config"] = c.cfg.to_text();
    j["threads"] = worker_count();
    out << j.dump(2) << '\n';
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"oscillab: oscillation norms, weight constants and certificates on grids"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--config", common.config_path, "key=value run configuration");

    ConstantOpts co;
    auto* constant = app.add_subcommand("constant", "A_p, A_1 or RH_delta constant of a weight");
    constant->add_option("--weight", co.weight, "weight CSV")->required();
    constant->add_option("--kind", co.kind, "ap | a1 | rh");
    constant->add_option("--p", co.p, "A_p exponent");
    constant->add_option("--delta", co.delta, "reverse Holder exponent");

    NormOpts no;
    auto* norm = app.add_subcommand("norm", "oscillation norm or exponential moment");
    norm->add_option("--f", no.f, "function CSV");
    norm->add_option("--weight", no.weight, "weight CSV (default unit)");
    norm->add_option("--v", no.v, "centering weight for the centered spec");
    norm->add_option("--sequence", no.sequence, "TL sequence JSON");
    norm->add_option("--spec", no.spec, "centered | dual-hardy | tl");
    norm->add_option("--p", no.p, "norm exponent");
    norm->add_option("--alpha", no.alpha, "TL smoothness");
    norm->add_option("--tl-q", no.tl_q, "TL inner exponent");
    norm->add_flag("--per-set", no.per_set, "include per-set averages");
    norm->add_flag("--jn", no.jn, "John-Nirenberg moment instead of the norm");
    norm->add_option("--eta", no.eta, "moment scale");
    norm->add_option("--N", no.N, "truncation level");
    norm->add_option("--survival", no.survival, "write the survival curve CSV here");

    VerifyOpts vo;
    auto* verify = app.add_subcommand("verify", "run certificate suites");
    verify->add_option("--suite", vo.suite, "theorem id or all");
    verify->add_option("--trials", vo.trials, "trials per theorem");
    verify->add_option("--seed", vo.seed, "base seed");
    verify->add_option("--out", vo.out_dir, "report directory");

    SweepOpts so;
    auto* sweep = app.add_subcommand("sweep", "corpus-level estimates over a parameter grid");
    sweep->add_option("--quantity", so.quantity, "c1p | psi | jn-decay | tl-ratio")->required();
    sweep->add_option("--grid", so.grid, "comma separated values")->required();
    sweep->add_option("--corpus", so.corpus, "standard | trivial");
    sweep->add_option("--size", so.size, "corpus size");
    sweep->add_option("--p", so.p, "psi exponent");
    sweep->add_option("--out", so.out_file, "CSV path (default stdout)");

    GenOpts go;
    auto* gen = app.add_subcommand("gen", "generate a weight corpus");
    gen->add_option("--kind", go.kind, "power | random-log-bounded | rubio-a1 | checkerboard");
    gen->add_option("--count", go.count, "number of weights");
    gen->add_option("--dims", go.dims, "1 or 2");
    gen->add_option("--side", go.side, "side length");
    gen->add_option("--exponent", go.params.exponent, "power exponent");
    gen->add_option("--bound", go.params.bound, "log bound");
    gen->add_option("--contrast", go.params.contrast, "checkerboard contrast");
    gen->add_option("--p", go.params.p, "rubio-a1 exponent");
    gen->add_option("--spikes", go.params.spikes, "rubio-a1 spikes");
    gen->add_option("--out", go.out_dir, "output directory");

    auto* info = app.add_subcommand("info", "version, theorem labels and configuration");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        common.load();
        if (*constant) return cmd_constant(common, co, out);
        if (*norm) return cmd_norm(common, no, out);
        if (*verify) return cmd_verify(common, vo, out);
        if (*sweep) return cmd_sweep(common, so, out);
        if (*gen) return cmd_gen(common, go, out);
        if (*info) return cmd_info(common, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e.code());
    } catch (const json::exception& e) {
        err << "error: ParseError: " << e.what() << '\n';
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace oscillab::cli
