#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "geopursuit/runio.hpp"

namespace {

struct FlagSet {
    std::string config_path;
    std::vector<std::pair<CLI::Option*, std::string*>> tracked;
    // storage for flag values; node-stable so tracked pointers survive
    std::vector<std::unique_ptr<std::pair<std::string, std::string>>> slots;

    void add(CLI::App* cmd, const std::string& flag, const std::string& key,
             const std::string& help) {
        slots.push_back(std::make_unique<std::pair<std::string, std::string>>(key, ""));
        CLI::Option* opt = cmd->add_option(flag, slots.back()->second, help);
        tracked.emplace_back(opt, &slots.back()->second);
    }

    std::vector<std::pair<std::string, std::string>> passed() const {
        std::vector<std::pair<std::string, std::string>> out;
        for (size_t i = 0; i < tracked.size(); ++i)
            if (tracked[i].first->count() > 0) out.emplace_back(slots[i]->first, *tracked[i].second);
        return out;
    }
};

void add_game_flags(CLI::App* cmd, FlagSet& flags) {
    flags.add(cmd, "--space", "space", "space name (euclidean|poincare|sphere-cap|river|star)");
    flags.add(cmd, "--domain", "domain", "\"whole\" or \"ball c=<c1>,<c2> r=<r>\"");
    flags.add(cmd, "--D", "D", "jump bound per round");
    flags.add(cmd, "--L0", "L0", "lion start, c1,c2");
    flags.add(cmd, "--M0", "M0", "man start, c1,c2");
    flags.add(cmd, "--strategy", "strategy",
              "stationary|spiral|spiral-ccw|reverse@<k>|ray:<dir>|flee|scripted:<path>|random");
    flags.add(cmd, "--horizon", "horizon", "max rounds");
    flags.add(cmd, "--eps", "eps", "classification tolerance");
    flags.add(cmd, "--seed", "seed", "seed for seeded strategies (else GEOPURSUIT_SEED, else 0)");
}

void add_output_flags(CLI::App* cmd, FlagSet& flags) {
    flags.add(cmd, "--csv", "csv", "write per-round CSV here");
    flags.add(cmd, "--json", "json", "write the JSON report here");
}

int dispatch(const std::string& mode, const FlagSet& flags) {
    std::optional<std::string> config_text;
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path, std::ios::binary);
        if (!in) {
            std::cerr << "i/o error: cannot read config " << flags.config_path << "\n";
            return 3;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        config_text = buf.str();
    }
    try {
        geopursuit::RunSpec spec = geopursuit::parse_run_spec(flags.passed(), config_text, mode);
        return geopursuit::run(spec, std::cout, std::cerr);
    } catch (const geopursuit::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lion-and-man pursuit games on geodesic spaces"};
    app.require_subcommand(1);

    FlagSet play_flags, sweep_flags, verify_flags;

    CLI::App* play = app.add_subcommand("play", "run one game and classify the outcome");
    play->add_option("--config", play_flags.config_path, "key = value config file");
    add_game_flags(play, play_flags);
    add_output_flags(play, play_flags);
    play_flags.add(play, "--svg", "svg", "write a trajectory plot here (planar spaces)");

    CLI::App* sweep = app.add_subcommand("sweep", "replay a game over a grid of initial gaps");
    sweep->add_option("--config", sweep_flags.config_path, "key = value config file");
    add_game_flags(sweep, sweep_flags);
    add_output_flags(sweep, sweep_flags);
    sweep_flags.add(sweep, "--D0", "sweep.D0", "comma-separated initial gaps");
    sweep_flags.add(sweep, "--sweep-horizon", "sweep.horizon", "comma-separated horizons");

    CLI::App* verify = app.add_subcommand("verify", "run the geometric verification battery");
    verify->add_option("--config", verify_flags.config_path, "key = value config file");
    verify_flags.add(verify, "--space", "space", "restrict to one space");
    verify_flags.add(verify, "--seed", "seed", "sampling seed");
    verify_flags.add(verify, "--json", "json", "write the check report here");

    CLI::App* spaces = app.add_subcommand("spaces", "list spaces, domains, and strategies");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (play->parsed()) return dispatch("play", play_flags);
    if (sweep->parsed()) return dispatch("sweep", sweep_flags);
    if (verify->parsed()) return dispatch("verify", verify_flags);
    if (spaces->parsed()) return dispatch("spaces", FlagSet{});
    return 2;
}
