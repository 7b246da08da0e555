#include "entchaos/precision.hpp"

#include <cmath>

namespace entchaos {

void set_working_precision(const PrecisionConfig& cfg) {
    cfg.validate();
    if (cfg.mode == PrecisionConfig::Mode::extended)
        MpReal::default_precision(static_cast<unsigned>(cfg.digits));
}

double fd_epsilon(const PrecisionConfig& cfg) {
    if (cfg.mode == PrecisionConfig::Mode::machine) return 1e-6;
    return std::pow(10.0, -cfg.digits / 3.0);
}

}  // namespace entchaos
