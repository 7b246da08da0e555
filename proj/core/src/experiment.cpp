#include "entchaos/experiment.hpp"

#include "entchaos/dicke_ed.hpp"
#include "entchaos/fits.hpp"
#include "entchaos/kicked_top_ed.hpp"
#include "entchaos/lyapunov.hpp"
#include "entchaos/quantifiers.hpp"
#include "entchaos/series_io.hpp"
#include "entchaos/tangent.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace entchaos {

namespace {

const std::map<std::string, OutputKind> kOutputNames = {
    {"trajectory", OutputKind::trajectory}, {"poincare", OutputKind::poincare},
    {"lyapunov", OutputKind::lyapunov},     {"entropy", OutputKind::entropy},
    {"qfi", OutputKind::qfi},               {"squeezing", OutputKind::squeezing},
    {"otoc", OutputKind::otoc},             {"ed_compare", OutputKind::ed_compare},
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& field, const std::string& value) {
    if (value.size() < 2 || value.front() != '[' || value.back() != ']')
        throw ConfigError(field, field + ": expected a [a, b, ...] list");
    std::vector<std::string> items;
    std::string body = value.substr(1, value.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

double parse_double(const std::string& field, const std::string& value) {
    try {
        size_t pos = 0;
        const double x = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw ConfigError(field, field + ": not a number: '" + value + "'");
    }
}

long parse_int(const std::string& field, const std::string& value) {
    try {
        size_t pos = 0;
        const long x = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw ConfigError(field, field + ": not an integer: '" + value + "'");
    }
}

}  // namespace

std::string to_string(OutputKind k) {
    for (const auto& [name, kind] : kOutputNames)
        if (kind == k) return name;
    return "?";
}

std::map<std::string, std::string> parse_flat_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("", "line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("", "line " + std::to_string(lineno) + ": empty key");
        if (kv.count(key)) throw ConfigError(key, key + ": duplicate key");
        kv[key] = value;
    }
    return kv;
}

ExperimentConfig config_from_text(const std::string& text) {
    auto kv = parse_flat_config(text);
    ExperimentConfig cfg;
    cfg.canonical_text = text;

    auto take = [&kv](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    if (auto v = take("name")) cfg.name = *v;
    {
        auto v = take("model");
        if (!v) throw ConfigError("model", "model is required (kicked_top | dicke)");
        if (*v == "kicked_top")
            cfg.model = ExperimentConfig::Model::kicked_top;
        else if (*v == "dicke")
            cfg.model = ExperimentConfig::Model::dicke;
        else
            throw ConfigError("model", "model: unknown value '" + *v + "'");
    }

    if (auto v = take("kicked_top.alpha")) cfg.kt.alpha = parse_double("kicked_top.alpha", *v);
    if (auto v = take("kicked_top.beta")) cfg.kt.beta = parse_double("kicked_top.beta", *v);
    if (auto v = take("dicke.omega")) cfg.dicke.omega = parse_double("dicke.omega", *v);
    if (auto v = take("dicke.omega0")) cfg.dicke.omega0 = parse_double("dicke.omega0", *v);
    if (auto v = take("dicke.gamma")) cfg.dicke.gamma = parse_double("dicke.gamma", *v);
    if (auto v = take("dicke.energy")) cfg.dicke_energy = parse_double("dicke.energy", *v);
    if (auto v = take("dicke.delta")) cfg.dicke_delta = static_cast<int>(parse_int("dicke.delta", *v));

    if (auto v = take("initial.theta0")) cfg.initial.theta = parse_double("initial.theta0", *v);
    if (auto v = take("initial.cos_theta0"))
        cfg.initial.theta = std::acos(parse_double("initial.cos_theta0", *v));
    if (auto v = take("initial.phi0")) cfg.initial.phi = parse_double("initial.phi0", *v);
    if (auto v = take("initial.Q0")) cfg.Q0 = parse_double("initial.Q0", *v);
    if (auto v = take("initial.P0")) cfg.P0 = parse_double("initial.P0", *v);

    if (auto v = take("N_list"))
        for (const auto& item : split_list("N_list", *v))
            cfg.N_list.push_back(static_cast<int>(parse_int("N_list", item)));

    if (auto v = take("t_final")) cfg.t_final = parse_double("t_final", *v);
    if (auto v = take("sample_dt")) cfg.sample_dt = parse_double("sample_dt", *v);
    if (auto v = take("ode_tol")) cfg.ode_tol = parse_double("ode_tol", *v);
    if (auto v = take("ed.sample_dt")) cfg.ed_sample_dt = parse_double("ed.sample_dt", *v);
    if (auto v = take("bipartition.f_A")) cfg.f_A = parse_double("bipartition.f_A", *v);

    if (auto v = take("precision.mode")) {
        cfg.precision_auto = false;
        if (*v == "machine")
            cfg.precision.mode = PrecisionConfig::Mode::machine;
        else if (*v == "extended")
            cfg.precision.mode = PrecisionConfig::Mode::extended;
        else if (*v == "auto")
            cfg.precision_auto = true;
        else
            throw ConfigError("precision.mode", "precision.mode: machine | extended | auto");
    }
    if (auto v = take("precision.digits"))
        cfg.precision.digits = static_cast<int>(parse_int("precision.digits", *v));
    else if (cfg.precision.mode == PrecisionConfig::Mode::extended || cfg.precision_auto)
        cfg.precision.digits = 400;

    if (auto v = take("lyapunov.K")) cfg.lyapunov.K = static_cast<int>(parse_int("lyapunov.K", *v));
    if (auto v = take("lyapunov.s")) {
        cfg.lyapunov.s = parse_double("lyapunov.s", *v);
    } else {
        cfg.lyapunov.s = cfg.model == ExperimentConfig::Model::kicked_top
                             ? (std::abs(cfg.kt.beta) >= 3.0 ? 10.0 : 2.0)
                             : 0.5;
    }
    if (auto v = take("lyapunov.n_steps"))
        cfg.lyapunov.n_steps = static_cast<int>(parse_int("lyapunov.n_steps", *v));
    if (auto v = take("lyapunov.rng_seed")) {
        cfg.lyapunov.rng_seed = static_cast<std::uint64_t>(parse_int("lyapunov.rng_seed", *v));
        cfg.lyapunov.seed_set = true;
    }

    if (auto v = take("poincare.t_final")) cfg.poincare.t_final = parse_double("poincare.t_final", *v);
    if (auto v = take("poincare.n_orbits"))
        cfg.poincare.n_orbits = static_cast<int>(parse_int("poincare.n_orbits", *v));
    if (auto v = take("poincare.seed"))
        cfg.poincare.seed = static_cast<std::uint64_t>(parse_int("poincare.seed", *v));

    {
        auto v = take("outputs");
        if (!v) throw ConfigError("outputs", "outputs list is required");
        for (const auto& item : split_list("outputs", *v)) {
            auto it = kOutputNames.find(item);
            if (it == kOutputNames.end())
                throw ConfigError("outputs", "outputs: unknown output '" + item + "'");
            cfg.outputs.push_back(it->second);
        }
    }
    if (auto v = take("output_dir")) cfg.output_dir = *v;
    if (auto v = take("format")) {
        if (*v != "csv" && *v != "jsonl") throw ConfigError("format", "format: csv | jsonl");
        cfg.format = *v;
    }

    if (!kv.empty()) throw ConfigError(kv.begin()->first, "unknown key: " + kv.begin()->first);
    validate(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_text(ss.str());
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.outputs.empty()) throw ConfigError("outputs", "outputs: at least one output is required");
    const bool is_dicke = cfg.model == ExperimentConfig::Model::dicke;

    for (OutputKind k : cfg.outputs) {
        if (k == OutputKind::otoc && is_dicke)
            throw ConfigError("outputs", "otoc is defined for the kicked top only");
        if (k == OutputKind::ed_compare && cfg.N_list.empty())
            throw ConfigError("N_list", "ed_compare requires a non-empty N_list");
        if (k == OutputKind::lyapunov && !cfg.lyapunov.seed_set)
            throw ConfigError("lyapunov.rng_seed", "lyapunov.rng_seed is required for lyapunov output");
    }
    for (int N : cfg.N_list)
        if (N < 2) throw ConfigError("N_list", "N_list entries must be >= 2");
    if (cfg.t_final <= 0) throw ConfigError("t_final", "t_final must be positive");
    if (cfg.sample_dt <= 0) throw ConfigError("sample_dt", "sample_dt must be positive");
    if (cfg.ode_tol <= 0) throw ConfigError("ode_tol", "ode_tol must be positive");
    if (!(cfg.f_A > 0.0 && cfg.f_A < 1.0))
        throw ConfigError("bipartition.f_A", "bipartition.f_A must lie in (0,1)");
    if (!cfg.precision_auto) cfg.precision.validate();
    if (is_dicke && !cfg.Q0 && !cfg.dicke_energy)
        throw ConfigError("dicke.energy", "dicke runs need dicke.energy or an explicit initial.Q0");
    if (is_dicke) {
        const double ct = std::cos(cfg.initial.theta);
        if (!(ct > -1.0 && ct < 1.0))
            throw ConfigError("initial.theta0", "spin direction must avoid the poles");
    }
}

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

SeriesFormat format_of(const ExperimentConfig& cfg) {
    return cfg.format == "csv" ? SeriesFormat::csv : SeriesFormat::jsonl;
}

std::string extension(const ExperimentConfig& cfg) { return cfg.format == "csv" ? ".csv" : ".jsonl"; }

bool wants(const ExperimentConfig& cfg, OutputKind k) {
    for (OutputKind o : cfg.outputs)
        if (o == k) return true;
    return false;
}

double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

PrecisionConfig resolve_precision(const ExperimentConfig& cfg, int kicks) {
    if (!cfg.precision_auto) return cfg.precision;
    if (cfg.model == ExperimentConfig::Model::kicked_top && std::abs(cfg.kt.beta) >= 3.0 &&
        kicks > 30)
        return PrecisionConfig::extended(cfg.precision.digits);
    return PrecisionConfig::machine();
}

struct RunContext {
    const ExperimentConfig& cfg;
    std::filesystem::path dir;
    RunManifest manifest;
    RunResult result;

    std::string path_for(const std::string& output, int N = -1) const {
        std::string stem = cfg.name + "_" + output;
        if (N >= 0) stem += "_N" + std::to_string(N);
        return (dir / (stem + (cfg.format == "csv" ? ".csv" : ".jsonl"))).string();
    }

    void emitted(const std::string& path) {
        manifest.files.push_back(path);
        result.files.push_back(path);
    }
};

void emit_lyapunov(RunContext& ctx, LyapunovSeries series) {
    const auto& cfg = ctx.cfg;
    SeriesTable table;
    table.columns = {"r"};
    for (int k = 1; k <= series.K; ++k) table.columns.push_back("lambda_" + std::to_string(k));
    for (size_t i = 0; i < series.r.size(); ++i) {
        std::vector<double> row{series.r[i]};
        row.insert(row.end(), series.exponents[i].begin(), series.exponents[i].end());
        table.add_row(row);
    }
    const std::string path = ctx.path_for("lyapunov");
    emit_series(path, table, format_of(cfg));
    ctx.emitted(path);

    try {
        const auto est = lyapunov_estimate(series);
        const double ks = ks_rate(est.lambda, est.sigma);
        SeriesTable et;
        et.columns = {"k", "lambda", "sigma", "ks_rate"};
        for (int k = 0; k < series.K; ++k)
            et.add_row(std::vector<double>{static_cast<double>(k + 1), est.lambda[k], est.sigma[k], ks});
        const std::string epath = ctx.path_for("lyapunov_estimate");
        emit_series(epath, et, format_of(cfg));
        ctx.emitted(epath);
    } catch (const std::exception& e) {
        ctx.manifest.aborts.push_back(std::string("lyapunov_estimate: ") + e.what());
    }
    for (const auto& ev : series.events) ctx.manifest.aborts.push_back("lyapunov: " + ev);
}

void run_kicked_top_outputs(RunContext& ctx) {
    const auto& cfg = ctx.cfg;
    const int kicks = static_cast<int>(std::lround(cfg.t_final));
    const PrecisionConfig prec = resolve_precision(cfg, kicks);
    ctx.manifest.precision = prec.to_string();

    const bool need_fluc = wants(cfg, OutputKind::entropy) || wants(cfg, OutputKind::qfi) ||
                           wants(cfg, OutputKind::squeezing) || wants(cfg, OutputKind::otoc) ||
                           wants(cfg, OutputKind::ed_compare) || wants(cfg, OutputKind::trajectory) ||
                           wants(cfg, OutputKind::poincare);

    KickedTopFlucRun run;
    QuantifierSeries sc;
    if (need_fluc) {
        Timer timer;
        if (prec.is_extended()) {
            set_working_precision(prec);
            run = run_kicked_top_fluctuations<MpReal>(cfg.initial, cfg.kt, kicks);
        } else {
            run = run_kicked_top_fluctuations<double>(cfg.initial, cfg.kt, kicks);
        }
        sc = kicked_top_quantifiers(run, cfg.f_A);
        ctx.manifest.timings_s["semiclassical"] = timer.seconds();
    }

    if (wants(cfg, OutputKind::trajectory)) {
        SeriesTable t;
        t.columns = {"t", "theta", "phi"};
        for (size_t i = 0; i < run.t.size(); ++i)
            t.add_row({run.t[i], run.orbit[i].theta, run.orbit[i].phi});
        const std::string path = ctx.path_for("trajectory");
        emit_series(path, t, format_of(cfg));
        ctx.emitted(path);
    }

    if (wants(cfg, OutputKind::poincare)) {
        SeriesTable t;
        t.columns = {"orbit", "phi", "cos_theta"};
        for (size_t i = 0; i < run.t.size(); ++i)
            t.add_row({0.0, run.orbit[i].phi, std::cos(run.orbit[i].theta)});
        std::mt19937_64 rng(cfg.poincare.seed);
        const int extra_kicks =
            cfg.poincare.t_final > 0 ? static_cast<int>(cfg.poincare.t_final) : kicks;
        for (int orbit = 1; orbit < cfg.poincare.n_orbits; ++orbit) {
            BlochAngles x{std::acos(1.8 * uniform01(rng) - 0.9), 2.0 * M_PI * uniform01(rng)};
            try {
                for (int k = 0; k < extra_kicks; ++k) {
                    t.add_row({static_cast<double>(orbit), x.phi, std::cos(x.theta)});
                    const auto s = kicked_top_step(BlochAnglesT<double>{x.theta, x.phi}, cfg.kt);
                    x = BlochAngles{s.final.theta, s.final.phi};
                }
            } catch (const PoleProximityError& e) {
                ctx.manifest.aborts.push_back("poincare orbit " + std::to_string(orbit) + ": " +
                                              e.what());
            }
        }
        const std::string path = ctx.path_for("poincare");
        emit_series(path, t, format_of(cfg));
        ctx.emitted(path);
    }

    if (wants(cfg, OutputKind::entropy)) {
        SeriesTable t;
        t.columns = {"t", "S_vn", "S_renyi2", "det2G_err"};
        for (size_t i = 0; i < sc.times.size(); ++i) {
            std::vector<std::string> row{format_double(sc.times[i]), format_double(sc.S_vn[i]),
                                         format_double(sc.S_renyi2[i]),
                                         run.extended ? run.det2G_err_str[i]
                                                      : format_double(run.det2G_err[i])};
            t.add_row(std::move(row));
        }
        const std::string path = ctx.path_for("entropy_semiclassical");
        emit_series(path, t, format_of(cfg));
        ctx.emitted(path);
    }
    if (wants(cfg, OutputKind::qfi)) {
        SeriesTable t;
        t.columns = {"t", "f_Q"};
        for (size_t i = 0; i < sc.times.size(); ++i) t.add_row({sc.times[i], sc.f_Q[i]});
        const std::string path = ctx.path_for("qfi_semiclassical");
        emit_series(path, t, format_of(cfg));
        ctx.emitted(path);
    }
    if (wants(cfg, OutputKind::squeezing)) {
        SeriesTable t;
        t.columns = {"t", "xi2"};
        for (size_t i = 0; i < sc.times.size(); ++i) t.add_row({sc.times[i], sc.xi2[i]});
        const std::string path = ctx.path_for("squeezing_semiclassical");
        emit_series(path, t, format_of(cfg));
        ctx.emitted(path);
    }
    if (wants(cfg, OutputKind::otoc)) {
        SeriesTable t;
        t.columns = {"t", "c_zz"};
        for (size_t i = 0; i < sc.times.size(); ++i) t.add_row({sc.times[i], sc.c_zz[i]});
        const std::string path = ctx.path_for("otoc_semiclassical");
        emit_series(path, t, format_of(cfg));
        ctx.emitted(path);
    }

    if (wants(cfg, OutputKind::lyapunov)) {
        Timer timer;
        KickedTopTangentSystem sys(cfg.initial, cfg.kt);
        const int K = cfg.lyapunov.K > 0 ? cfg.lyapunov.K : 2;
        emit_lyapunov(ctx, benettin_spectrum(sys, K, cfg.lyapunov.s, cfg.lyapunov.n_steps,
                                             cfg.lyapunov.rng_seed));
        ctx.manifest.timings_s["lyapunov"] = timer.seconds();
    }

    const bool need_ed = !cfg.N_list.empty() &&
                         (wants(cfg, OutputKind::ed_compare) || wants(cfg, OutputKind::entropy) ||
                          wants(cfg, OutputKind::qfi) || wants(cfg, OutputKind::otoc));
    if (!need_ed) return;

    for (int N : cfg.N_list) {
        Timer timer;
        const int N_A = std::max(1, static_cast<int>(std::lround(cfg.f_A * N)));
        KickedTopEdSeries ed;
        try {
            ed = run_kicked_top_ed(N, cfg.kt, cfg.initial.theta, cfg.initial.phi, kicks, N_A,
                                   wants(cfg, OutputKind::otoc) || wants(cfg, OutputKind::ed_compare));
        } catch (const std::exception& e) {
            ctx.manifest.aborts.push_back("ed N=" + std::to_string(N) + ": " + e.what());
            continue;
        }
        ctx.manifest.timings_s["ed_N" + std::to_string(N)] = timer.seconds();

        if (wants(cfg, OutputKind::entropy)) {
            SeriesTable t;
            t.columns = {"t", "S_A"};
            for (size_t i = 0; i < ed.t.size(); ++i) t.add_row({ed.t[i], ed.S_A[i]});
            const std::string path = ctx.path_for("entropy", N);
            emit_series(path, t, format_of(cfg));
            ctx.emitted(path);
        }
        if (wants(cfg, OutputKind::qfi)) {
            SeriesTable t;
            t.columns = {"t", "f_Q"};
            for (size_t i = 0; i < ed.t.size(); ++i) t.add_row({ed.t[i], ed.f_Q[i]});
            const std::string path = ctx.path_for("qfi", N);
            emit_series(path, t, format_of(cfg));
            ctx.emitted(path);
        }
        if (wants(cfg, OutputKind::otoc) && !ed.c_zz.empty()) {
            SeriesTable t;
            t.columns = {"t", "c_zz"};
            for (size_t i = 0; i < ed.t.size(); ++i) t.add_row({ed.t[i], ed.c_zz[i]});
            const std::string path = ctx.path_for("otoc", N);
            emit_series(path, t, format_of(cfg));
            ctx.emitted(path);
        }
        if (wants(cfg, OutputKind::ed_compare)) {
            SeriesTable t;
            t.columns = {"t", "S_A_ed", "S_A_sc", "f_Q_ed", "f_Q_sc", "c_zz_ed", "c_zz_sc"};
            for (size_t i = 0; i < ed.t.size(); ++i)
                t.add_row({ed.t[i], ed.S_A[i], sc.S_vn[i], ed.f_Q[i], sc.f_Q[i],
                           ed.c_zz.empty() ? 0.0 : ed.c_zz[i], sc.c_zz[i]});
            const std::string path = ctx.path_for("ed_compare", N);
            emit_series(path, t, format_of(cfg));
            ctx.emitted(path);
        }
    }
}

DickeState resolve_dicke_initial(const ExperimentConfig& cfg) {
    if (cfg.Q0)
        return DickeState{*cfg.Q0, cfg.P0.value_or(0.0), cfg.initial};
    return dicke_point_from_energy(*cfg.dicke_energy, cfg.initial, cfg.dicke).state;
}

void run_dicke_outputs(RunContext& ctx) {
    const auto& cfg = ctx.cfg;
    ctx.manifest.precision = PrecisionConfig::machine().to_string();
    const DickeState x0 = resolve_dicke_initial(cfg);

    const bool need_fluc = wants(cfg, OutputKind::entropy) || wants(cfg, OutputKind::qfi) ||
                           wants(cfg, OutputKind::squeezing) || wants(cfg, OutputKind::ed_compare) ||
                           wants(cfg, OutputKind::trajectory);

    DickeTangentRun run;
    QuantifierSeries sc;
    if (need_fluc) {
        Timer timer;
        try {
            run = propagate_dicke_tangent(x0, cfg.dicke, cfg.t_final, cfg.ode_tol, cfg.sample_dt);
        } catch (const PoleProximityError& e) {
            ctx.manifest.aborts.push_back(std::string("semiclassical: ") + e.what());
        }
        sc = dicke_quantifiers(run);
        ctx.manifest.timings_s["semiclassical"] = timer.seconds();
    }

    if (wants(cfg, OutputKind::trajectory) && !run.traj.times.empty()) {
        SeriesTable t;
        t.columns = {"t", "Q", "P", "phi", "theta", "energy"};
        for (size_t i = 0; i < run.traj.times.size(); ++i) {
            const auto& s = run.traj.states[i];
            t.add_row({run.traj.times[i], s.Q, s.P, s.angles.phi, s.angles.theta,
                       run.traj.energy[i]});
        }
        const std::string path = ctx.path_for("trajectory");
        emit_series(path, t, format_of(cfg));
        ctx.emitted(path);
    }

    if (wants(cfg, OutputKind::poincare)) {
        Timer timer;
        SeriesTable t;
        t.columns = {"orbit", "phi", "cos_theta"};
        const double T = cfg.poincare.t_final > 0 ? cfg.poincare.t_final : cfg.t_final;
        const double E = cfg.dicke_energy ? *cfg.dicke_energy : dicke_energy(x0, cfg.dicke);
        std::mt19937_64 rng(cfg.poincare.seed);
        for (int orbit = 0; orbit < cfg.poincare.n_orbits; ++orbit) {
            DickeState start = x0;
            if (orbit > 0) {
                bool found = false;
                for (int trial = 0; trial < 64 && !found; ++trial) {
                    const BlochAngles a{std::acos(1.8 * uniform01(rng) - 0.9),
                                        2.0 * M_PI * uniform01(rng)};
                    try {
                        start = dicke_point_from_energy(E, a, cfg.dicke).state;
                        found = true;
                    } catch (const std::domain_error&) {
                    }
                }
                if (!found) continue;
            }
            try {
                const auto traj = integrate_dicke(start, cfg.dicke, T, cfg.ode_tol, cfg.sample_dt);
                for (const auto& [phi, ct] : poincare_section(traj, cfg.dicke))
                    t.add_row({static_cast<double>(orbit), reduce_angle(phi), ct});
            } catch (const std::exception& e) {
                ctx.manifest.aborts.push_back("poincare orbit " + std::to_string(orbit) + ": " +
                                              e.what());
            }
        }
        const std::string path = ctx.path_for("poincare");
        emit_series(path, t, format_of(cfg));
        ctx.emitted(path);
        ctx.manifest.timings_s["poincare"] = timer.seconds();
    }

    if (wants(cfg, OutputKind::entropy) && !sc.times.empty()) {
        SeriesTable t;
        t.columns = {"t", "S_vn", "S_renyi2"};
        for (size_t i = 0; i < sc.times.size(); ++i)
            t.add_row({sc.times[i], sc.S_vn[i], sc.S_renyi2[i]});
        const std::string path = ctx.path_for("entropy_semiclassical");
        emit_series(path, t, format_of(cfg));
        ctx.emitted(path);
    }
    if (wants(cfg, OutputKind::qfi) && !sc.times.empty()) {
        SeriesTable t;
        t.columns = {"t", "f_Q_spin", "f_Q_all"};
        for (size_t i = 0; i < sc.times.size(); ++i)
            t.add_row({sc.times[i], sc.f_Q[i], sc.f_Q_all[i]});
        const std::string path = ctx.path_for("qfi_semiclassical");
        emit_series(path, t, format_of(cfg));
        ctx.emitted(path);
    }
    if (wants(cfg, OutputKind::squeezing) && !sc.times.empty()) {
        SeriesTable t;
        t.columns = {"t", "xi2_spin"};
        for (size_t i = 0; i < sc.times.size(); ++i) t.add_row({sc.times[i], sc.xi2[i]});
        const std::string path = ctx.path_for("squeezing_semiclassical");
        emit_series(path, t, format_of(cfg));
        ctx.emitted(path);
    }

    if (wants(cfg, OutputKind::lyapunov)) {
        Timer timer;
        DickeTangentSystem sys(x0, cfg.dicke, cfg.ode_tol);
        const int K = cfg.lyapunov.K > 0 ? cfg.lyapunov.K : 4;
        emit_lyapunov(ctx, benettin_spectrum(sys, K, cfg.lyapunov.s, cfg.lyapunov.n_steps,
                                             cfg.lyapunov.rng_seed));
        ctx.manifest.timings_s["lyapunov"] = timer.seconds();
    }

    if (wants(cfg, OutputKind::ed_compare) && !sc.times.empty()) {
        double dt = cfg.ed_sample_dt > 0 ? cfg.ed_sample_dt : cfg.sample_dt;
        const int stride = std::max(1, static_cast<int>(std::lround(dt / cfg.sample_dt)));
        std::vector<double> times;
        std::vector<size_t> sc_index;
        for (size_t i = 0; i < sc.times.size(); i += stride) {
            times.push_back(sc.times[i]);
            sc_index.push_back(i);
        }

        int delta = cfg.dicke_delta;
        if (delta <= 0) delta = estimate_cutoff_factor(run.traj);

        for (int N : cfg.N_list) {
            Timer timer;
            try {
                const int N_cut = delta * N;
                const auto H = dicke_hamiltonian(N, N_cut, cfg.dicke);
                const auto psi0 = dicke_initial_state(cfg.initial.theta, cfg.initial.phi, x0.Q,
                                                      x0.P, N, N_cut);
                const auto ed = evolve_and_entropy_dicke(psi0, H, N, N_cut, times);
                for (const auto& w : ed.warnings)
                    ctx.manifest.aborts.push_back("ed N=" + std::to_string(N) + ": " + w);

                SeriesTable t;
                t.columns = {"t", "S_A_ed", "S_A_sc", "mean_boson"};
                for (size_t i = 0; i < ed.t.size(); ++i)
                    t.add_row({ed.t[i], ed.S_A[i], sc.S_vn[sc_index[i]], ed.mean_boson[i]});
                const std::string path = ctx.path_for("ed_compare", N);
                emit_series(path, t, format_of(cfg));
                ctx.emitted(path);
            } catch (const std::exception& e) {
                ctx.manifest.aborts.push_back("ed N=" + std::to_string(N) + ": " + e.what());
            }
            ctx.manifest.timings_s["ed_N" + std::to_string(N)] = timer.seconds();
        }
    }
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);

    std::filesystem::path root = cfg.output_dir;
    if (const char* env = std::getenv("ENTCHAOS_OUTPUT_ROOT"))
        root = std::filesystem::path(env) / cfg.output_dir;
    std::filesystem::create_directories(root);

    RunContext ctx{cfg, root, {}, {}};
    char hash[20];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(cfg.canonical_text)));
    ctx.manifest.config_hash = hash;
    ctx.manifest.seed = cfg.lyapunov.rng_seed;
    ctx.manifest.library_version = ENTCHAOS_VERSION;
    ctx.manifest.precision = cfg.precision.to_string();

    Timer total;
    if (cfg.model == ExperimentConfig::Model::kicked_top)
        run_kicked_top_outputs(ctx);
    else
        run_dicke_outputs(ctx);
    ctx.manifest.timings_s["total"] = total.seconds();

    ctx.result.manifest_path = (ctx.dir / (cfg.name + "_manifest.json")).string();
    write_manifest(ctx.result.manifest_path, ctx.manifest);
    ctx.result.exit_code = ctx.result.files.empty() ? 1 : 0;
    return ctx.result;
}

}  // namespace entchaos
