// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "d2dmimo/analytic.hpp"
#include "d2dmimo/errors.hpp"
#include "d2dmimo/moments.hpp"
#include "d2dmimo/montecarlo.hpp"
#include "d2dmimo/report.hpp"
#include "d2dmimo/validation.hpp"

namespace fs = std::filesystem;
using namespace d2dmimo;

namespace {

enum ExitCode : int { ok = 0, other = 1, config_error = 2, numerical_error = 3, validation_failed = 4, io_error = 5 };

struct Common {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    int threads = 0;
};

ScenarioConfig resolve_config(const Common &c) {
    ScenarioConfig cfg;
    if (!c.config_path.empty())
        cfg = load_config(c.config_path);
    if (c.seed)
        cfg.master_seed = *c.seed;
    cfg.validate();
    return cfg;
}

fs::path prepare_out(const Common &c) {
    const fs::path dir(c.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    return dir;
}

void write_manifest(const fs::path &dir, RunManifest m) {
    m.finished_utc = utc_timestamp();
    const fs::path path = dir / "manifest.json";
    m.outputs.push_back(path.string());
    write_text_file(path, to_json(m).dump(2) + "\n");
}

RunManifest start_manifest(const ScenarioConfig &cfg, const std::string &command) {
    RunManifest m;
    m.config = cfg;
    m.version = version_string();
    m.command = command;
    m.started_utc = utc_timestamp();
    m.master_seed = cfg.master_seed;
    return m;
}

int sweep_distance(const Common &c) {
    const ScenarioConfig cfg = resolve_config(c);
    const fs::path dir = prepare_out(c);
    RunManifest m = start_manifest(cfg, "sweep-distance");
    std::clog << "sweep-distance: " << cfg.n_drops << " drops x " << cfg.n_fading_per_drop
              << " fading, P_b " << cfg.pb_dbm << " dBm, P_d " << cfg.pd_dbm << " dBm\n";
    const TrialBatch batch = run_batch(cfg, c.threads);
    const MomentModel model(cfg);
    Comparison cmp = compare(batch, model);
    if (!batch.excluded.empty())
        cmp.diagnostics.push_back(std::to_string(batch.excluded.size()) + " realizations excluded as singular");
    const fs::path csv = dir / "distance.csv";
    write_text_file(csv, distance_csv(cmp));
    m.outputs.push_back(csv.string());
    m.diagnostics = cmp.diagnostics;
    for (const auto &d : cmp.diagnostics)
        std::clog << "note: " << d << "\n";
    write_manifest(dir, m);
    std::cout << csv.string() << "\n";
    return ok;
}

int sweep_d2d(const Common &c, const std::vector<int> &d_values, bool with_empirical) {
    const ScenarioConfig cfg = resolve_config(c);
    const fs::path dir = prepare_out(c);
    RunManifest m = start_manifest(cfg, "sweep-d2d");
    auto rows = analytic_d2d_sweep(cfg, d_values);
    if (with_empirical) {
        const auto emp = empirical_d2d_sweep(cfg, d_values, c.threads);
        rows.insert(rows.end(), emp.begin(), emp.end());
    }
    const fs::path csv = dir / "d2d_sweep.csv";
    write_text_file(csv, d2d_csv(rows));
    m.outputs.push_back(csv.string());
    write_manifest(dir, m);
    std::cout << csv.string() << "\n";
    return ok;
}

int validate(const Common &c, const ValidationOptions &opts) {
    const ScenarioConfig cfg = resolve_config(c);
    const fs::path dir = prepare_out(c);
    RunManifest m = start_manifest(cfg, "validate");
    const auto results = run_validation(cfg, opts);
    const fs::path csv = dir / "validation.csv";
    write_text_file(csv, validation_csv(results));
    m.outputs.push_back(csv.string());
    bool all = true;
    for (const auto &r : results) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " statistic=" << r.statistic
                  << " threshold=" << r.threshold << " (" << r.detail << ")\n";
        all = all && r.pass;
    }
    write_manifest(dir, m);
    return all ? ok : validation_failed;
}

int moments(const Common &c, double x, double y, bool annulus) {
    const ScenarioConfig cfg = resolve_config(c);
    nlohmann::json j;
    if (annulus) {
        const auto a = annulus_moments(cfg, cfg.zeta);
        j["zeta"] = cfg.zeta;
        j["mean"] = a.mean;
        j["variance"] = a.variance;
        j["literal_mean"] = a.literal_mean;
        j["literal_variance"] = a.literal_variance;
    } else {
        const MomentSet ms = MomentModel(cfg).moments(Point(x, y));
        j["target"] = {x, y};
        j["mu_B"] = ms.mu_B;
        j["var_B"] = ms.var_B;
        j["mu_D"] = ms.mu_D;
        j["var_D"] = ms.var_D;
        j["mu_B_prime"] = ms.mu_B_prime;
        j["mu_G"] = ms.mu_G;
        j["var_G"] = ms.var_G;
        j["mu_C"] = ms.mu_C;
        j["sigma_C"] = ms.sigma_C;
        if (ms.mu_D2D_value)
            j["mu_D2D"] = *ms.mu_D2D_value;
    }
    std::cout << j.dump(2) << "\n";
    return ok;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Massive MIMO downlink with underlaid D2D links: closed-form goodput and Monte Carlo"};
    app.set_version_flag("--version", std::string(version_string()));
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", common.config_path, "JSON scenario file")->check(CLI::ExistingFile);
        sub->add_option("--out", common.out_dir, "output directory");
        sub->add_option("--seed", common.seed, "override master_seed");
        sub->add_option("--threads", common.threads, "worker threads, 0 = hardware concurrency");
    };

    auto *dist = app.add_subcommand("sweep-distance", "goodput per distance bin, analytic and empirical");
    add_common(dist);

    std::vector<int> d_values{2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
    bool with_empirical = false;
    auto *d2d = app.add_subcommand("sweep-d2d", "cell goodput over the number of D2D links per cell");
    add_common(d2d);
    d2d->add_option("--d-values", d_values, "D2D counts")->delimiter(',');
    d2d->add_flag("--with-empirical", with_empirical, "also run a Monte Carlo batch per D");

    ValidationOptions vopts;
    auto *val = app.add_subcommand("validate", "ZF residual, CLT and exponential fits, large-M convergence");
    add_common(val);
    val->add_option("--ks-samples", vopts.ks_samples, "draws per KS test");
    val->add_option("--realizations", vopts.convergence_realizations, "fading draws per antenna count");

    double x = 0.0;
    double y = 0.0;
    bool annulus = false;
    auto *mom = app.add_subcommand("moments", "moment set at a receiver position in cell 0, as JSON");
    add_common(mom);
    mom->add_option("--x", x, "receiver x (m)");
    mom->add_option("--y", y, "receiver y (m)");
    mom->add_flag("--annulus", annulus, "plane approximation at the cell center instead");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : config_error;
    }

    try {
        vopts.threads = common.threads;
        if (dist->parsed())
            return sweep_distance(common);
        if (d2d->parsed())
            return sweep_d2d(common, d_values, with_empirical);
        if (val->parsed())
            return validate(common, vopts);
        if (mom->parsed())
            return moments(common, x, y, annulus);
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const IoError &e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return io_error;
    } catch (const StatisticalError &e) {
        std::cerr << "statistical error: " << e.what() << "\n";
        return numerical_error;
    } catch (const NumericalError &e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return numerical_error;
    } catch (const SingularityError &e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return numerical_error;
    } catch (const DomainError &e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return config_error;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return other;
    }
    return other;
}
