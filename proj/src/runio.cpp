#include "geopursuit/runio.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "textutil.hpp"

namespace geopursuit {

using nlohmann::json;

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

// ---------------------------------------------------------------------------
// Spec assembly

namespace {

[[noreturn]] void bad_key(const std::string& key, int line, const std::string& why) {
    throw ParseError(key, line, "config key \"" + key + "\"" +
                                    (line > 0 ? " (line " + std::to_string(line) + ")" : "") +
                                    ": " + why);
}

std::pair<double, double> parse_coords(const std::string& key, int line, std::string_view value) {
    auto parts = text::split(value, ',');
    double c1, c2;
    if (parts.size() != 2 || !text::parse_double(parts[0], c1) || !text::parse_double(parts[1], c2))
        bad_key(key, line, "expected two comma-separated numbers");
    return {c1, c2};
}

void apply_entry(RunSpec& spec, const std::string& key, const std::string& value, int line) {
    if (key == "space") {
        spec.space = std::string(text::trim(value));
    } else if (key == "domain") {
        spec.domain = std::string(text::trim(value));
    } else if (key == "D") {
        double d;
        if (!text::parse_double(value, d)) bad_key(key, line, "expected a number");
        if (d <= 0.0) bad_key(key, line, "must be positive");
        spec.jump_bound = d;
    } else if (key == "L0") {
        spec.lion_start = parse_coords(key, line, value);
    } else if (key == "M0") {
        spec.man_start = parse_coords(key, line, value);
    } else if (key == "strategy") {
        spec.strategy = std::string(text::trim(value));
    } else if (key == "horizon") {
        int h;
        if (!text::parse_int(value, h) || h < 1) bad_key(key, line, "expected a positive integer");
        spec.horizon = h;
    } else if (key == "eps") {
        double e;
        if (!text::parse_double(value, e) || e <= 0.0) bad_key(key, line, "must be positive");
        spec.eps = e;
    } else if (key == "csv") {
        spec.csv_path = std::string(text::trim(value));
    } else if (key == "json") {
        spec.json_path = std::string(text::trim(value));
    } else if (key == "svg") {
        spec.svg_path = std::string(text::trim(value));
    } else if (key == "seed") {
        std::uint64_t s;
        if (!text::parse_u64(value, s)) bad_key(key, line, "expected a nonnegative integer");
        spec.seed = s;
    } else if (key == "sweep.D0") {
        spec.sweep.d0_values.clear();
        for (std::string_view part : text::split(value, ',')) {
            double d;
            if (!text::parse_double(part, d) || d <= 0.0)
                bad_key(key, line, "expected comma-separated positive numbers");
            spec.sweep.d0_values.push_back(d);
        }
    } else if (key == "sweep.horizon") {
        spec.sweep.horizons.clear();
        for (std::string_view part : text::split(value, ',')) {
            int h;
            if (!text::parse_int(part, h) || h < 1)
                bad_key(key, line, "expected comma-separated positive integers");
            spec.sweep.horizons.push_back(h);
        }
    } else {
        bad_key(key, line, "unknown key");
    }
}

void apply_config_text(RunSpec& spec, const std::string& text_in) {
    std::istringstream in(text_in);
    std::string line;
    int line_no = 0;
    std::string section;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view s = text::trim(line);
        if (s.empty() || s.front() == '#') continue;
        if (s.front() == '[' && s.back() == ']') {
            section = std::string(text::trim(s.substr(1, s.size() - 2)));
            if (section != "sweep")
                throw ParseError(section, line_no,
                                 "unknown config section [" + section + "] (line " +
                                     std::to_string(line_no) + ")");
            continue;
        }
        size_t eq = s.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(std::string(s), line_no,
                             "expected key = value (line " + std::to_string(line_no) + ")");
        std::string key(text::trim(s.substr(0, eq)));
        std::string value(text::trim(s.substr(eq + 1)));
        if (!section.empty()) key = section + "." + key;
        apply_entry(spec, key, value, line_no);
    }
}

} // namespace

RunSpec parse_run_spec(const std::vector<std::pair<std::string, std::string>>& flags,
                       const std::optional<std::string>& config_text, const std::string& mode) {
    if (mode != "play" && mode != "sweep" && mode != "verify" && mode != "spaces")
        throw ParseError("mode", 0, "unknown mode \"" + mode + "\"");
    RunSpec spec;
    spec.mode = mode;
    if (config_text) apply_config_text(spec, *config_text);
    for (const auto& [key, value] : flags) apply_entry(spec, key, value, 0);

    if (mode == "play" || mode == "sweep") {
        if (!spec.space) bad_key("space", 0, "missing mandatory key");
        if (!spec.jump_bound) bad_key("D", 0, "missing mandatory key");
        if (!spec.lion_start) bad_key("L0", 0, "missing mandatory key");
        if (!spec.man_start) bad_key("M0", 0, "missing mandatory key");
    }
    if (mode == "sweep" && spec.sweep.d0_values.empty())
        bad_key("sweep.D0", 0, "sweep mode needs a D0 grid");
    return spec;
}

namespace {

DomainDescriptor parse_domain(const std::string& text_in, const SpaceHandle& space) {
    std::string_view s = text::trim(text_in);
    if (s == "whole") return DomainDescriptor::whole();
    if (s.rfind("ball", 0) == 0) {
        std::optional<std::pair<double, double>> center;
        std::optional<double> radius;
        std::istringstream in{std::string(s.substr(4))};
        std::string tok;
        while (in >> tok) {
            if (tok.rfind("c=", 0) == 0)
                center = parse_coords("domain", 0, std::string_view(tok).substr(2));
            else if (tok.rfind("r=", 0) == 0) {
                double r;
                if (!text::parse_double(std::string_view(tok).substr(2), r))
                    bad_key("domain", 0, "bad ball radius");
                radius = r;
            } else
                bad_key("domain", 0, "unexpected token \"" + tok + "\"");
        }
        if (!center || !radius) bad_key("domain", 0, "ball needs c=<c1>,<c2> and r=<radius>");
        return DomainDescriptor::ball(
            space, PointValue::from_coords(space.kind, center->first, center->second), *radius);
    }
    bad_key("domain", 0, "expected \"whole\" or \"ball c=<c1>,<c2> r=<r>\"");
}

} // namespace

std::uint64_t resolve_seed(const RunSpec& spec) {
    if (spec.seed) return *spec.seed;
    if (const char* env = std::getenv("GEOPURSUIT_SEED")) {
        std::uint64_t s;
        if (text::parse_u64(env, s)) return s;
        throw ParseError("GEOPURSUIT_SEED", 0, "environment seed is not a nonnegative integer");
    }
    return 0;
}

ResolvedGame resolve_game(const RunSpec& spec) {
    SpaceHandle space = make_space(space_kind_from_name(*spec.space));
    DomainDescriptor domain = parse_domain(spec.domain, space);
    PointValue l0 =
        PointValue::from_coords(space.kind, spec.lion_start->first, spec.lion_start->second);
    PointValue m0 =
        PointValue::from_coords(space.kind, spec.man_start->first, spec.man_start->second);
    GameConfig config =
        make_game_config(space, domain, *spec.jump_bound, l0, m0, spec.horizon, spec.eps);
    ManStrategy strategy = make_strategy(spec.strategy, space, domain, l0, resolve_seed(spec));
    return ResolvedGame{space, domain, std::move(config), std::move(strategy)};
}

// ---------------------------------------------------------------------------
// Serialization

std::string transcript_csv(const GameTranscript& transcript) {
    std::string out = "i,Lc1,Lc2,Mc1,Mc2,D_i,post_gap\n";
    for (size_t i = 0; i < transcript.steps.size(); ++i) {
        const StepRecord& s = transcript.steps[i];
        auto [lc1, lc2] = s.lion.coords();
        auto [mc1, mc2] = s.man.coords();
        out += std::to_string(s.index);
        out += ',';
        out += format_number(lc1);
        out += ',';
        out += format_number(lc2);
        out += ',';
        out += format_number(mc1);
        out += ',';
        out += format_number(mc2);
        out += ',';
        out += format_number(s.gap);
        out += ',';
        out += format_number(transcript.post_gaps[i]);
        out += '\n';
    }
    return out;
}

namespace {

json point_json(const PointValue& p) {
    auto [c1, c2] = p.coords();
    return json::array({c1, c2});
}

json outcome_to_json(const Outcome& outcome) {
    json j;
    j["variant"] = std::string(outcome_name(outcome));
    if (const auto* cap = std::get_if<LionCapture>(&outcome)) {
        j["i0"] = cap->i0;
    } else if (const auto* lim = std::get_if<LionLimit>(&outcome)) {
        j["final_gap"] = lim->final_gap;
        j["monotone_certified"] = lim->monotone_certified;
    } else if (const auto* esc = std::get_if<ManEscapeCertified>(&outcome)) {
        j["liminf_gap"] = esc->liminf_gap;
        j["certificate"] = "geodesic-ray";
    } else if (const auto* und = std::get_if<Undecided>(&outcome)) {
        j["final_gap"] = und->final_gap;
        j["trend"] = und->trend;
    }
    return j;
}

} // namespace

std::string outcome_json(const RunSpec& spec, const GameTranscript& transcript,
                         const Outcome& outcome) {
    const GameConfig& cfg = transcript.config;
    json j;
    j["mode"] = "play";
    j["space"] = std::string(space_name(cfg.space.kind));
    j["domain"] = spec.domain;
    j["D"] = cfg.jump_bound;
    j["L0"] = point_json(cfg.lion_start);
    j["M0"] = point_json(cfg.man_start);
    j["strategy"] = transcript.strategy_name;
    j["horizon"] = cfg.horizon;
    j["eps"] = spec.eps;
    j["seed"] = resolve_seed(spec);
    j["rounds"] = transcript.steps.size();
    j["outcome"] = outcome_to_json(outcome);
    j["final"] = {{"lion", point_json(transcript.final_lion)},
                  {"man", point_json(transcript.final_man)},
                  {"gap", transcript.final_gap}};
    return j.dump(2) + "\n";
}

namespace {

bool svg_capable(SpaceKind kind) {
    return kind == SpaceKind::euclidean || kind == SpaceKind::poincare ||
           kind == SpaceKind::river;
}

} // namespace

std::string trajectory_svg(const GameTranscript& transcript) {
    SpaceKind kind = transcript.config.space.kind;
    if (!svg_capable(kind))
        throw UnsupportedOperation("no planar embedding for this space; SVG skipped");

    std::vector<std::pair<double, double>> lion, man;
    for (const StepRecord& s : transcript.steps) {
        lion.push_back(s.lion.coords());
        man.push_back(s.man.coords());
    }
    lion.push_back(transcript.final_lion.coords());
    man.push_back(transcript.final_man.coords());

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& pts : {lion, man})
        for (auto [x, y] : pts) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (kind == SpaceKind::poincare) {
        xmin = std::min(xmin, -1.0);
        xmax = std::max(xmax, 1.0);
        ymin = std::min(ymin, -1.0);
        ymax = std::max(ymax, 1.0);
    }
    double span = std::max({xmax - xmin, ymax - ymin, 1e-6});
    double pad = 0.05 * span;

    auto polyline = [](const std::vector<std::pair<double, double>>& pts, const char* color) {
        std::string s = "  <polyline fill=\"none\" stroke=\"";
        s += color;
        s += "\" stroke-width=\"0.5%\" points=\"";
        for (size_t i = 0; i < pts.size(); ++i) {
            if (i) s += ' ';
            // SVG's y axis points down; flip to keep the math orientation
            s += format_number(pts[i].first) + "," + format_number(-pts[i].second);
        }
        s += "\"/>\n";
        return s;
    };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
    svg += format_number(xmin - pad) + " " + format_number(-ymax - pad) + " " +
           format_number(span + 2 * pad) + " " + format_number(span + 2 * pad) + "\">\n";
    if (kind == SpaceKind::poincare)
        svg += "  <circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#888888\" "
               "stroke-width=\"0.25%\"/>\n";
    if (kind == SpaceKind::river)
        svg += "  <line x1=\"" + format_number(xmin - pad) + "\" y1=\"0\" x2=\"" +
               format_number(xmax + pad) + "\" y2=\"0\" stroke=\"#888888\" "
               "stroke-width=\"0.25%\"/>\n";
    svg += polyline(lion, "#c0392b");
    svg += polyline(man, "#2980b9");
    svg += "  <circle cx=\"" + format_number(lion.front().first) + "\" cy=\"" +
           format_number(-lion.front().second) + "\" r=\"1%\" fill=\"#c0392b\"/>\n";
    svg += "  <circle cx=\"" + format_number(man.front().first) + "\" cy=\"" +
           format_number(-man.front().second) + "\" r=\"1%\" fill=\"#2980b9\"/>\n";
    svg += "</svg>\n";
    return svg;
}

// ---------------------------------------------------------------------------
// Sweep

namespace {

PointValue man_start_at_gap(const SpaceHandle& space, const DomainDescriptor& domain,
                            const PointValue& l0, const PointValue& m0, double d0) {
    double d = distance(space, l0, m0);
    if (d <= 0.0) throw ContractViolation("sweep needs distinct L0 and M0 to aim the gap");
    PointValue placed = d0 <= d ? geodesic_point(space, l0, m0, d0 / d)
                                : extend_beyond(space, l0, m0, d0 - d);
    if (!domain_contains(space, domain, placed, kPointEqTol))
        throw ContractViolation("sweep gap " + format_number(d0) + " leaves the domain");
    if (std::abs(distance(space, l0, placed) - d0) > 1e-6)
        throw ContractViolation("sweep gap " + format_number(d0) +
                                " is unreachable along [L0, M0) in this domain");
    return placed;
}

} // namespace

std::vector<SweepRow> run_sweep(const RunSpec& spec) {
    ResolvedGame base = resolve_game(spec);
    std::vector<int> horizons = spec.sweep.horizons;
    if (horizons.empty()) horizons.push_back(spec.horizon);
    std::uint64_t base_seed = resolve_seed(spec);

    struct Cell {
        double d0;
        int horizon;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (double d0 : spec.sweep.d0_values)
        for (int h : horizons) cells.push_back({d0, h, base_seed + cells.size()});

    auto run_cell = [&](const Cell& cell) -> SweepRow {
        PointValue m0 = man_start_at_gap(base.space, base.domain, base.config.lion_start,
                                         base.config.man_start, cell.d0);
        GameConfig cfg = make_game_config(base.space, base.domain, base.config.jump_bound,
                                          base.config.lion_start, m0, cell.horizon, spec.eps);
        ManStrategy strategy =
            make_strategy(spec.strategy, base.space, base.domain, cfg.lion_start, cell.seed);
        GameTranscript tr = play(cfg, strategy);
        Outcome outcome = classify_outcome(tr, spec.eps);

        double min_gap = tr.final_gap;
        for (const StepRecord& s : tr.steps) min_gap = std::min(min_gap, s.gap);
        int capture = -1;
        if (const auto* cap = std::get_if<LionCapture>(&outcome)) capture = cap->i0;
        return SweepRow{cell.d0,     cell.horizon,          std::string(outcome_name(outcome)),
                        capture,     tr.final_gap,          min_gap,
                        static_cast<int>(tr.steps.size())};
    };

    // cells are independent games; fan out and collect in grid order
    std::vector<std::future<SweepRow>> futures;
    futures.reserve(cells.size());
    for (const Cell& cell : cells)
        futures.push_back(std::async(std::launch::async, run_cell, cell));
    std::vector<SweepRow> rows;
    rows.reserve(cells.size());
    for (auto& f : futures) rows.push_back(f.get());
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "D0,horizon,outcome,capture_index,final_gap,min_gap,rounds\n";
    for (const SweepRow& r : rows) {
        out += format_number(r.d0) + "," + std::to_string(r.horizon) + "," + r.outcome + "," +
               std::to_string(r.capture_index) + "," + format_number(r.final_gap) + "," +
               format_number(r.min_gap) + "," + std::to_string(r.rounds) + "\n";
    }
    return out;
}

std::string sweep_json(const RunSpec& spec, const std::vector<SweepRow>& rows) {
    json j;
    j["mode"] = "sweep";
    j["space"] = *spec.space;
    j["domain"] = spec.domain;
    j["strategy"] = spec.strategy;
    j["D"] = *spec.jump_bound;
    j["seed"] = resolve_seed(spec);
    json arr = json::array();
    for (const SweepRow& r : rows) {
        json row;
        row["D0"] = r.d0;
        row["horizon"] = r.horizon;
        row["outcome"] = r.outcome;
        row["capture_index"] = r.capture_index;
        row["final_gap"] = r.final_gap;
        row["min_gap"] = r.min_gap;
        row["rounds"] = r.rounds;
        arr.push_back(row);
    }
    j["rows"] = arr;
    return j.dump(2) + "\n";
}

std::string battery_json(const RunSpec& spec, const std::vector<CheckResult>& checks) {
    json j;
    j["mode"] = "verify";
    j["space"] = spec.space ? *spec.space : "all";
    j["seed"] = resolve_seed(spec);
    bool all = true;
    json arr = json::array();
    for (const CheckResult& c : checks) {
        all = all && c.passed;
        json row;
        row["name"] = c.name;
        row["passed"] = c.passed;
        row["value"] = c.value;
        row["bound"] = c.bound;
        row["relation"] = c.relation;
        arr.push_back(row);
    }
    j["checks"] = arr;
    j["all_passed"] = all;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Driver

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw IoError("failed while writing " + path);
}

int run_impl(const RunSpec& spec, std::ostream& out) {
    if (spec.mode == "spaces") {
        out << "spaces:\n";
        for (SpaceKind kind : {SpaceKind::euclidean, SpaceKind::poincare, SpaceKind::sphere_cap,
                               SpaceKind::river, SpaceKind::star})
            out << "  " << space_name(kind) << "\n";
        out << "domains: whole | ball c=<c1>,<c2> r=<r>\n";
        out << "strategies: stationary | spiral | spiral-ccw | reverse@<k> | ray:<direction> | "
               "flee | scripted:<path> | random\n";
        return 0;
    }

    if (spec.mode == "verify") {
        std::optional<SpaceKind> only;
        if (spec.space) only = space_kind_from_name(*spec.space);
        std::vector<CheckResult> checks = run_verification_battery(only, resolve_seed(spec));
        bool all = true;
        for (const CheckResult& c : checks) {
            all = all && c.passed;
            out << (c.passed ? "pass" : "FAIL") << "  " << c.name << "  (" << format_number(c.value)
                << " " << c.relation << " " << format_number(c.bound) << ")\n";
        }
        if (spec.json_path) write_file(*spec.json_path, battery_json(spec, checks));
        out << (all ? "all checks passed" : "some checks failed") << "\n";
        return all ? 0 : 1;
    }

    if (spec.mode == "sweep") {
        std::vector<SweepRow> rows = run_sweep(spec);
        std::string csv = sweep_csv(rows);
        if (spec.csv_path)
            write_file(*spec.csv_path, csv);
        else
            out << csv;
        if (spec.json_path) write_file(*spec.json_path, sweep_json(spec, rows));
        return 0;
    }

    // play
    ResolvedGame game = resolve_game(spec);
    GameTranscript tr = play(game.config, game.strategy);
    Outcome outcome = classify_outcome(tr, spec.eps);
    if (spec.csv_path) write_file(*spec.csv_path, transcript_csv(tr));
    if (spec.json_path) write_file(*spec.json_path, outcome_json(spec, tr, outcome));
    if (spec.svg_path) {
        if (svg_capable(game.space.kind))
            write_file(*spec.svg_path, trajectory_svg(tr));
        else
            out << "note: SVG skipped, no planar embedding for " << space_name(game.space.kind)
                << "\n";
    }
    out << "outcome: " << outcome_name(outcome) << ", rounds: " << tr.steps.size()
        << ", final gap: " << format_number(tr.final_gap) << "\n";
    return 0;
}

} // namespace

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    try {
        return run_impl(spec, out);
    } catch (const IllegalMoveError& e) {
        err << "invariant failure: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ContractViolation& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedOperation& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace geopursuit
