#pragma once

#include "entchaos/dicke.hpp"
#include "entchaos/kicked_top.hpp"
#include "entchaos/precision.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace entchaos {

struct ConfigError : std::runtime_error {
    std::string field;
    ConfigError(std::string field_, const std::string& what)
        : std::runtime_error(what), field(std::move(field_)) {}
};

enum class OutputKind { trajectory, poincare, lyapunov, entropy, qfi, squeezing, otoc, ed_compare };

std::string to_string(OutputKind k);

/// One experiment = one flat-key config file. Unknown keys are rejected so a
/// config diff always tells the whole story.
struct ExperimentConfig {
    enum class Model { kicked_top, dicke };

    std::string name = "run";
    Model model = Model::kicked_top;

    KickedTopParams kt;
    DickeParams dicke;
    std::optional<double> dicke_energy;  // selects Q0 on the P = 0 section
    int dicke_delta = 0;                 // boson cutoff factor; 0 = from the classical orbit

    BlochAngles initial{M_PI / 4, 0.0};
    std::optional<double> Q0, P0;  // explicit boson start overrides dicke_energy

    std::vector<int> N_list;
    double t_final = 30.0;
    double sample_dt = 0.1;   // flow sampling (Dicke)
    double ode_tol = 1e-14;
    double ed_sample_dt = 0.0;  // 0 = same as sample_dt
    double f_A = 0.5;

    PrecisionConfig precision;
    bool precision_auto = true;  // pick extended automatically for long chaotic kicked-top runs

    struct Lyapunov {
        int K = 0;  // 0 = full tangent dimension
        double s = 1.0;
        int n_steps = 1000;
        std::uint64_t rng_seed = 0;
        bool seed_set = false;
    } lyapunov;

    struct Poincare {
        double t_final = 0.0;  // 0 = run t_final
        int n_orbits = 1;
        std::uint64_t seed = 1;
    } poincare;

    std::vector<OutputKind> outputs;
    std::string output_dir = "out";
    std::string format = "csv";

    /// Raw canonical text, retained for hashing.
    std::string canonical_text;
};

/// Parses "key = value" lines ('#' comments, blank lines allowed).
/// Lists use [a, b, c].
std::map<std::string, std::string> parse_flat_config(const std::string& text);

ExperimentConfig config_from_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Throws ConfigError when a requested output cannot be produced for the
/// chosen model or a required field is missing.
void validate(const ExperimentConfig& cfg);

struct RunResult {
    int exit_code = 0;
    std::vector<std::string> files;
    std::string manifest_path;
};

/// Executes the experiment, writing one file per (output, N) pair plus a
/// manifest. Identical config and seed produce identical files. The
/// ENTCHAOS_OUTPUT_ROOT environment variable overrides the output root.
RunResult run_experiment(const ExperimentConfig& cfg);

}  // namespace entchaos
