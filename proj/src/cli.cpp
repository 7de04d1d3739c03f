#include "percolab/cli.hpp"

#include "percolab/analytics.hpp"
#include "percolab/birthday.hpp"
#include "percolab/config_io.hpp"
#include "percolab/errors.hpp"
#include "percolab/montecarlo.hpp"
#include "percolab/predicates.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>

namespace percolab {

namespace {

using json = nlohmann::ordered_json;

struct Options {
    // shape
    int d1 = 1;
    int d2 = 2;
    std::optional<int> m;
    std::optional<int> n;
    std::optional<int> theta;
    // sampling
    std::optional<double> p;
    std::optional<double> a;
    std::string form = "direct";
    std::uint64_t trials = 100;
    std::uint64_t seed = 1;
    double confidence = kDefaultConfidence;
    // output
    std::string output;
    std::string format;
    // sweep / pc
    std::string grid;
    double alpha = 0.5;
    double resolution = kDefaultPcResolution;
    int bootstrap = 1000;
    std::string regime = "none";
    std::optional<double> lambda;
    // plane / check
    std::string config_path;
    std::optional<int> plane;
    std::size_t max_intervals = 1000;
    // theory
    std::string model;
    std::optional<int> d;
    std::optional<double> gamma;
    std::optional<double> theory_m;
    std::optional<double> theory_n;
    std::string event;
    // birthday
    std::uint64_t days = 0;
    std::uint64_t people = 0;
    int k = 2;
    std::string mode = "both";
    int digits = 16;
    bool rational = false;
    double budget = kBirthdayDefaultBudget;
};

template <class T>
T need(const std::optional<T>& v, const char* flag)
{
    if (!v) throw ParameterError(fmt::format("{} is required", flag));
    return *v;
}

GraphShape shape_from(const Options& o)
{
    return GraphShape(o.d1, o.d2, need(o.m, "--m"), need(o.n, "--n"), need(o.theta, "--theta"));
}

PForm form_from(const std::string& s)
{
    if (s == "direct") return PForm::direct;
    if (s == "sharp") return PForm::sharp;
    if (s == "gradual") return PForm::gradual;
    throw ParameterError(fmt::format("unknown p-form '{}' (expected direct, sharp or gradual)", s));
}

double probability_from(const Options& o, const GraphShape& shape)
{
    if (o.p && o.a) throw ParameterError("give either --p or --a, not both");
    if (o.p) {
        if (!(*o.p >= 0.0 && *o.p <= 1.0)) throw ParameterError("p must lie in [0,1]");
        return *o.p;
    }
    if (o.a) return p_of(form_from(o.form), *o.a, shape);
    throw ParameterError("--p or --a is required");
}

json shape_json(const GraphShape& s)
{
    return json{{"d1", s.d1()}, {"d2", s.d2()}, {"m", s.m()}, {"n", s.n()}, {"theta", s.theta()}};
}

json envelope(const char* command)
{
    return json{{"schema", 1}, {"command", command}};
}

void emit(const Options& o, std::ostream& out, const std::string& text)
{
    if (o.output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.output, std::ios::binary | std::ios::trunc);
    if (!f) throw ParameterError(fmt::format("cannot open output file '{}'", o.output));
    f << text;
    if (!f) throw std::runtime_error(fmt::format("failed writing '{}'", o.output));
}

std::string csv_text(const CsvTable& t)
{
    std::ostringstream s;
    write_csv(s, t);
    return s.str();
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

const std::string& tabular_format(const Options& o)
{
    static const std::string csv = "csv";
    if (o.format.empty()) return csv;
    if (o.format != "csv" && o.format != "json") throw ParameterError("--format must be csv or json");
    return o.format;
}

const std::string& text_format(const Options& o)
{
    static const std::string text = "text";
    if (o.format.empty()) return text;
    if (o.format != "text" && o.format != "json") throw ParameterError("--format must be text or json");
    return o.format;
}

std::string num(double x) { return format_number(x); }
std::string num(std::uint64_t x) { return std::to_string(x); }

json estimate_json(const EstimateResult& r)
{
    return json{{"p", r.p},
                {"trials", r.trials},
                {"successes", r.successes},
                {"estimate", r.estimate},
                {"ci_low", r.ci_low},
                {"ci_high", r.ci_high},
                {"mean_density", r.mean_final_density}};
}

std::vector<std::string> estimate_row(const EstimateResult& r)
{
    return {num(r.p), num(r.trials), num(r.successes), num(r.estimate), num(r.ci_low), num(r.ci_high),
            num(r.mean_final_density)};
}

const std::vector<std::string> kSimulateHeader = {"p", "trials", "successes", "estimate", "ci_low", "ci_high",
                                                  "mean_density"};

// ---------------------------------------------------------------- simulate

void cmd_simulate(const Options& o, std::ostream& out)
{
    const GraphShape shape = shape_from(o);
    const double p = probability_from(o, shape);
    const EstimateResult r = estimate_span({shape, p, o.trials, o.seed}, o.confidence);
    if (tabular_format(o) == "csv") {
        emit(o, out, csv_text({kSimulateHeader, {estimate_row(r)}}));
        return;
    }
    json j = envelope("simulate");
    j["shape"] = shape_json(shape);
    j["seed"] = o.seed;
    j["generator"] = r.generator;
    j["confidence"] = r.confidence;
    j["result"] = estimate_json(r);
    emit(o, out, json_text(j));
}

// ---------------------------------------------------------------- sweep

std::vector<double> parse_grid(const std::string& text)
{
    std::vector<double> grid;
    std::stringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        const auto b = tok.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        tok = tok.substr(b, tok.find_last_not_of(" \t") - b + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) throw ParameterError(fmt::format("grid value '{}' is not a number", tok));
        grid.push_back(v);
    }
    if (grid.empty()) throw ParameterError("the a grid is empty");
    return grid;
}

void cmd_sweep(const Options& o, std::ostream& out)
{
    const GraphShape shape = shape_from(o);
    const auto grid = parse_grid(o.grid);
    const auto rows = sweep_transition(shape, form_from(o.form), grid, o.trials, o.seed, o.confidence);
    if (tabular_format(o) == "csv") {
        CsvTable t;
        t.header = {"a"};
        t.header.insert(t.header.end(), kSimulateHeader.begin(), kSimulateHeader.end());
        for (const auto& r : rows) {
            std::vector<std::string> row{num(r.a)};
            const auto rest = estimate_row(r.result);
            row.insert(row.end(), rest.begin(), rest.end());
            t.rows.push_back(std::move(row));
        }
        emit(o, out, csv_text(t));
        return;
    }
    json j = envelope("sweep");
    j["shape"] = shape_json(shape);
    j["form"] = o.form;
    j["seed"] = o.seed;
    j["generator"] = kGeneratorName;
    j["confidence"] = o.confidence;
    j["rows"] = json::array();
    for (const auto& r : rows) {
        json row = estimate_json(r.result);
        row["a"] = r.a;
        j["rows"].push_back(row);
    }
    emit(o, out, json_text(j));
}

// ---------------------------------------------------------------- pc

std::optional<Prediction> pc_prediction(const Options& o, const GraphShape& shape)
{
    if (o.regime == "none") return std::nullopt;
    if (o.regime == "cycle") {
        if (shape.d2() != 1) throw ParameterError("--regime cycle needs d2 = 1");
        return pc_cycle_complete(shape.d1(), shape.theta(), shape.m(), shape.n(), o.lambda);
    }
    if (o.regime == "zk2") {
        if (shape.d1() != 1 || shape.d2() != 2) throw ParameterError("--regime zk2 needs d1 = 1 and d2 = 2");
        const double gamma = std::log(static_cast<double>(shape.m())) / std::log(static_cast<double>(shape.n()));
        return pc_zk2(shape.theta(), gamma, shape.n(), shape.m());
    }
    throw ParameterError(fmt::format("unknown regime '{}' (expected none, cycle or zk2)", o.regime));
}

void cmd_pc(const Options& o, std::ostream& out)
{
    const GraphShape shape = shape_from(o);
    const auto prediction = pc_prediction(o, shape);
    const PcEstimate e = estimate_pc(shape, o.alpha, o.trials, o.seed, o.resolution, o.confidence, o.bootstrap);
    if (tabular_format(o) == "csv") {
        CsvTable t;
        t.header = {"alpha", "trials", "quantile", "ci_low", "ci_high"};
        std::vector<std::string> row{num(e.alpha), num(e.trials), num(e.quantile), num(e.ci_low), num(e.ci_high)};
        if (prediction) {
            t.header.insert(t.header.end(), {"prediction", "regime"});
            row.insert(row.end(), {num(prediction->value), regime_label(prediction->regime)});
        }
        t.rows.push_back(std::move(row));
        emit(o, out, csv_text(t));
        return;
    }
    json j = envelope("pc");
    j["shape"] = shape_json(shape);
    j["seed"] = o.seed;
    j["generator"] = kGeneratorName;
    j["alpha"] = e.alpha;
    j["trials"] = e.trials;
    j["quantile"] = e.quantile;
    j["ci_low"] = e.ci_low;
    j["ci_high"] = e.ci_high;
    j["confidence"] = e.confidence;
    j["resolution"] = o.resolution;
    if (prediction) {
        j["prediction"] = prediction->value;
        j["regime"] = regime_label(prediction->regime);
        j["note"] = prediction->note;
    }
    j["samples"] = e.samples;
    emit(o, out, json_text(j));
}

// ---------------------------------------------------------------- density

void cmd_density(const Options& o, std::ostream& out)
{
    const GraphShape shape = shape_from(o);
    const double p = probability_from(o, shape);
    const DensitySummary s = estimate_density(shape, p, o.trials, o.seed);
    if (tabular_format(o) == "csv") {
        emit(o, out,
             csv_text({{"p", "trials", "mean", "stddev", "min", "median", "max", "span_fraction"},
                       {{num(s.p), num(s.trials), num(s.mean), num(s.stddev), num(s.min), num(s.median), num(s.max),
                         num(s.span_fraction)}}}));
        return;
    }
    json j = envelope("density");
    j["shape"] = shape_json(shape);
    j["seed"] = o.seed;
    j["generator"] = kGeneratorName;
    j["p"] = s.p;
    j["trials"] = s.trials;
    j["mean"] = s.mean;
    j["stddev"] = s.stddev;
    j["min"] = s.min;
    j["median"] = s.median;
    j["max"] = s.max;
    j["span_fraction"] = s.span_fraction;
    j["samples"] = s.samples;
    emit(o, out, json_text(j));
}

// ---------------------------------------------------------------- plane / check

Configuration input_configuration(const Options& o)
{
    if (!o.config_path.empty()) {
        if (o.p || o.a) throw ParameterError("give either --config or a sampled configuration, not both");
        Configuration c = read_configuration_file(o.config_path);
        if (o.theta && *o.theta != c.shape().theta())
            return [&] {
                Configuration r(c.shape().with_theta(*o.theta));
                r.assign(c.bits());
                return r;
            }();
        return c;
    }
    const GraphShape shape = shape_from(o);
    return sample_config(shape, probability_from(o, shape), o.seed);
}

json flags_json(const PlaneFlags& f)
{
    json j{{"k", f.k},
           {"viable", f.viable},
           {"internally_spanned", f.internally_spanned},
           {"internally_inert", f.internally_inert},
           {"inert", f.inert}};
    j["proper"] = f.proper ? json(*f.proper) : json(nullptr);
    return j;
}

json class_json(const PlaneClass& c)
{
    json j{{"plane", c.plane}, {"exceptional", c.exceptional}, {"flags", json::array()}};
    for (const auto& f : c.flags) j["flags"].push_back(flags_json(f));
    return j;
}

std::vector<PlaneClass> selected_planes(const Options& o, const Configuration& c)
{
    auto all = classify_planes(c, c.shape().theta());
    if (!o.plane) return all;
    if (*o.plane < 0 || static_cast<std::size_t>(*o.plane) >= all.size())
        throw ParameterError(fmt::format("plane {} is out of range [0, {})", *o.plane, all.size()));
    return {all[static_cast<std::size_t>(*o.plane)]};
}

void cmd_plane(const Options& o, std::ostream& out)
{
    const Configuration c = input_configuration(o);
    const auto planes = selected_planes(o, c);
    if (tabular_format(o) == "csv") {
        CsvTable t;
        t.header = {"plane", "k", "viable", "internally_spanned", "internally_inert", "inert", "proper", "exceptional"};
        auto b = [](bool v) { return std::string(v ? "1" : "0"); };
        for (const auto& pc : planes)
            for (const auto& f : pc.flags)
                t.rows.push_back({std::to_string(pc.plane), std::to_string(f.k), b(f.viable), b(f.internally_spanned),
                                  b(f.internally_inert), b(f.inert), f.proper ? b(*f.proper) : "na",
                                  b(pc.exceptional)});
        emit(o, out, csv_text(t));
        return;
    }
    json j = envelope("plane");
    j["shape"] = shape_json(c.shape());
    j["planes"] = json::array();
    for (const auto& pc : planes) j["planes"].push_back(class_json(pc));
    emit(o, out, json_text(j));
}

void cmd_check(const Options& o, std::ostream& out)
{
    if (!o.format.empty() && o.format != "json") throw ParameterError("check reports are JSON only");
    const Configuration c = input_configuration(o);
    const GraphShape& shape = c.shape();
    const int theta = shape.theta();
    const RunResult run = run_fast(c, theta);

    json j = envelope("check");
    j["shape"] = shape_json(shape);
    j["occupied"] = c.occupied_count();
    j["spans"] = run.stats.spanned;
    j["final_density"] = static_cast<double>(run.final.occupied_count()) / static_cast<double>(shape.volume());

    json implications = json::object();
    const bool zk2 = shape.d1() == 1 && shape.d2() == 2 && shape.m() >= 3;
    if (shape.d2() == 2 && shape.d1() <= 1) {
        j["planes"] = json::array();
        for (const auto& pc : selected_planes(o, c)) j["planes"].push_back(class_json(pc));
    } else {
        j["planes"] = nullptr;
    }
    if (zk2) {
        const auto intervals = find_blocking_intervals(c, theta, o.max_intervals);
        j["blocking_intervals"] = json::array();
        for (const auto& b : intervals) j["blocking_intervals"].push_back(json::array({b.i1, b.i2}));
        j["blocking_intervals_truncated"] = o.max_intervals != 0 && intervals.size() >= o.max_intervals;
        const bool sufficient = sufficient_condition(c, theta);
        const bool necessary = necessary_condition(c, theta);
        j["sufficient"] = sufficient;
        j["necessary"] = necessary;
        implications["sufficient_implies_spans"] = !sufficient || run.stats.spanned;
        implications["spans_implies_necessary"] = !run.stats.spanned || necessary;
        implications["blocking_implies_no_span"] = intervals.empty() || !run.stats.spanned;
    } else {
        j["blocking_intervals"] = nullptr;
        j["sufficient"] = nullptr;
        j["necessary"] = nullptr;
    }
    if (shape.d2() == 1 && shape.m() >= 3 && theta >= shape.d1() + 1 && theta <= 2 * shape.d1() + 1) {
        const auto box = find_empty_safe_box(c, theta);
        if (box) {
            json b{{"lower", box->lower}, {"doubled", json::array()}};
            for (bool d : box->doubled) b["doubled"].push_back(d);
            j["safe_box"] = b;
        } else {
            j["safe_box"] = nullptr;
        }
        implications["safe_box_implies_no_span"] = !box || !run.stats.spanned;
    } else {
        j["safe_box"] = nullptr;
    }
    j["implications"] = implications;
    for (const auto& [name, ok] : implications.items())
        if (!ok.get<bool>()) throw std::logic_error(fmt::format("implication violated: {}", name));
    emit(o, out, json_text(j));
}

// ---------------------------------------------------------------- theory

const std::map<std::string, PlaneEvent>& event_names()
{
    static const std::map<std::string, PlaneEvent> names = [] {
        std::map<std::string, PlaneEvent> m;
        for (PlaneEvent e : {PlaneEvent::not_viable, PlaneEvent::not_odd_is, PlaneEvent::not_even_is,
                             PlaneEvent::above_is, PlaneEvent::gradual_is, PlaneEvent::theta2_not_is,
                             PlaneEvent::theta3_is})
            m.emplace(plane_event_label(e), e);
        return m;
    }();
    return names;
}

void cmd_theory(const Options& o, std::ostream& out)
{
    json j = envelope("theory");
    j["model"] = o.model;
    std::vector<std::pair<std::string, std::string>> lines{{"model", o.model}};
    auto put_prediction = [&](const Prediction& p) {
        j["value"] = p.value;
        j["regime"] = regime_label(p.regime);
        lines.emplace_back("value", num(p.value));
        lines.emplace_back("regime", regime_label(p.regime));
        if (p.constant) {
            j["constant"] = *p.constant;
            lines.emplace_back("constant", num(*p.constant));
        }
        j["note"] = p.note;
        lines.emplace_back("note", p.note);
    };

    if (o.model == "cycle") {
        put_prediction(pc_cycle_complete(need(o.d, "--d"), need(o.theta, "--theta"), need(o.theory_m, "--m"),
                                         need(o.theory_n, "--n"), o.lambda));
    } else if (o.model == "zk2") {
        put_prediction(pc_zk2(need(o.theta, "--theta"), need(o.gamma, "--gamma"), need(o.theory_n, "--n"), o.theory_m));
    } else if (o.model == "mixed") {
        const int theta = need(o.theta, "--theta");
        if (theta < 3 || theta % 2 == 0) throw ParameterError("the mixed model needs odd theta >= 3");
        const int ell = ell_of(theta);
        const double a = need(o.a, "--a");
        const double value = mixed_limit(a, ell);
        const double threshold = abundance_threshold(ell);
        j["value"] = value;
        j["regime"] = regime_label(Regime::boundary);
        j["abundance_threshold"] = threshold;
        lines.emplace_back("value", num(value));
        lines.emplace_back("regime", regime_label(Regime::boundary));
        lines.emplace_back("abundance_threshold", num(threshold));
        if (o.theory_n) {
            const long long bm = boundary_m(*o.theory_n, ell);
            j["boundary_m"] = bm;
            lines.emplace_back("boundary_m", std::to_string(bm));
        }
        const std::string note = "odd theta, m ~ n^{1/ell}/(log n)^{1+1/ell}, p ~ a (log n)^{1/ell}/n^{1+1/ell}: "
                                 "limit of P(Span), 0 below the abundance threshold";
        j["note"] = note;
        lines.emplace_back("note", note);
    } else if (o.model == "plane") {
        const auto it = event_names().find(o.event);
        if (it == event_names().end()) {
            std::string known;
            for (const auto& [name, e] : event_names()) known += (known.empty() ? "" : ", ") + name;
            throw ParameterError(fmt::format("unknown plane event '{}' (expected one of {})", o.event, known));
        }
        j["event"] = o.event;
        lines.emplace_back("event", o.event);
        put_prediction(plane_probability(it->second, need(o.theta, "--theta"), need(o.a, "--a"),
                                         need(o.theory_n, "--n"), o.theory_m));
    } else if (o.model == "abundance") {
        const int theta = need(o.theta, "--theta");
        const int ell = ell_of(theta);
        const double threshold = abundance_threshold(ell);
        j["abundance_threshold"] = threshold;
        lines.emplace_back("abundance_threshold", num(threshold));
        if (o.a) {
            const std::string verdict = *o.a < threshold ? "scarce" : *o.a > threshold ? "abundant" : "boundary";
            j["verdict"] = verdict;
            lines.emplace_back("verdict", verdict);
        }
        const std::string note = "odd theta with gamma > 1/ell and p ~ a (log n)^{1/ell}/n^{1+1/ell}: final set "
                                 "scarce below the threshold, abundant above";
        j["note"] = note;
        lines.emplace_back("note", note);
    } else {
        throw ParameterError(
            fmt::format("unknown model '{}' (expected cycle, zk2, mixed, plane or abundance)", o.model));
    }

    if (text_format(o) == "json") {
        emit(o, out, json_text(j));
        return;
    }
    std::string text;
    for (const auto& [k, v] : lines) text += k + ": " + v + "\n";
    emit(o, out, text);
}

// ---------------------------------------------------------------- birthday

std::string rational_decimal(const mpq_class& q, int digits)
{
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class num = q.get_num() * scale * 2 + q.get_den();
    mpz_class den = q.get_den() * 2;
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    std::string s = r.get_str();
    if (digits == 0) return s;
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    return s;
}

void cmd_birthday(const Options& o, std::ostream& out)
{
    if (o.mode != "exact" && o.mode != "asymptotic" && o.mode != "both")
        throw ParameterError("--mode must be exact, asymptotic or both");
    if (o.digits < 0 || o.digits > 1000) throw ParameterError("--digits must lie in [0, 1000]");
    json j = envelope("birthday");
    j["n"] = o.days;
    j["m"] = o.people;
    j["k"] = o.k;
    std::string text;
    if (o.mode != "asymptotic") {
        const mpq_class q = birthday_exact(o.days, o.people, o.k, o.budget);
        const std::string dec = rational_decimal(q, o.digits);
        j["exact"] = dec;
        text += "exact: " + dec + "\n";
        if (o.rational) {
            j["exact_rational"] = q.get_str();
            text += "exact_rational: " + q.get_str() + "\n";
        }
    }
    if (o.mode != "exact") {
        const BirthdayAsymptotic b =
            birthday_asymptotic(static_cast<double>(o.days), static_cast<double>(o.people), o.k);
        j["asymptotic"] = b.value;
        j["regime_ratio"] = b.regime_ratio;
        j["regime_warning"] = b.regime_warning;
        text += "asymptotic: " + num(b.value) + "\n";
        text += "regime_ratio: " + num(b.regime_ratio) + "\n";
        if (b.regime_warning) text += "warning: m^{k+1}/n^k is not small; the asymptotic formula may be inaccurate\n";
    }
    if (text_format(o) == "json") emit(o, out, json_text(j));
    else emit(o, out, text);
}

// ---------------------------------------------------------------- sample

void cmd_sample(const Options& o, std::ostream& out)
{
    const GraphShape shape = shape_from(o);
    const Configuration c = sample_config(shape, probability_from(o, shape), o.seed);
    std::ostringstream s;
    s << "# sampled p=" << num(probability_from(o, shape)) << " seed=" << o.seed << '\n';
    write_configuration(s, c);
    emit(o, out, s.str());
}

// ---------------------------------------------------------------- wiring

void add_shape(CLI::App* app, Options& o)
{
    app->add_option("--d1", o.d1, "Number of cycle factors Z_m")->capture_default_str();
    app->add_option("--d2", o.d2, "Number of complete-graph factors K_n")->capture_default_str();
    app->add_option("--m", o.m, "Cycle length");
    app->add_option("--n", o.n, "Complete-graph size");
    app->add_option("--theta", o.theta, "Threshold");
}

void add_sampling(CLI::App* app, Options& o, bool with_trials)
{
    app->add_option("--p", o.p, "Occupation probability");
    app->add_option("--a", o.a, "Scaling constant, converted to p by --form");
    app->add_option("--form", o.form, "p-form for --a: direct, sharp or gradual")->capture_default_str();
    app->add_option("--seed", o.seed, "Master seed")->capture_default_str();
    if (with_trials) app->add_option("--trials", o.trials, "Number of trials")->capture_default_str();
}

void add_output(CLI::App* app, Options& o, const char* formats)
{
    app->add_option("-o,--output", o.output, "Write the result to this file instead of stdout");
    app->add_option("--format", o.format, formats);
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Bootstrap percolation on Z_m^d1 x K_n^d2: simulation, structural checks and asymptotics"};
    app.name("percolab");
    app.require_subcommand(1);
    app.footer("Exit codes: 0 success, 2 invalid input, 3 resource budget exceeded, 1 internal error.\n"
               "PERCOLAB_THREADS caps the worker threads (0 or unset: all cores); results do not depend on it.");

    auto* simulate = app.add_subcommand("simulate", "Estimate P(span) at one p");
    add_shape(simulate, o);
    add_sampling(simulate, o, true);
    simulate->add_option("--confidence", o.confidence, "Wilson interval level")->capture_default_str();
    add_output(simulate, o, "csv (default) or json");
    simulate->footer("CSV columns: p,trials,successes,estimate,ci_low,ci_high,mean_density");

    auto* sweep = app.add_subcommand("sweep", "Estimate P(span) over a grid of a values (coupled trials)");
    add_shape(sweep, o);
    add_sampling(sweep, o, true);
    sweep->add_option("--grid", o.grid, "Comma-separated a values")->required();
    sweep->add_option("--confidence", o.confidence, "Wilson interval level")->capture_default_str();
    add_output(sweep, o, "csv (default) or json");
    sweep->footer("CSV columns: a,p,trials,successes,estimate,ci_low,ci_high,mean_density (one row per grid value)");

    auto* pc = app.add_subcommand("pc", "Quantile of the pathwise critical probability");
    add_shape(pc, o);
    pc->add_option("--alpha", o.alpha, "Quantile level in (0,1)")->capture_default_str();
    pc->add_option("--trials", o.trials, "Number of trials")->capture_default_str();
    pc->add_option("--seed", o.seed, "Master seed")->capture_default_str();
    pc->add_option("--resolution", o.resolution, "Bisection resolution in p")->capture_default_str();
    pc->add_option("--confidence", o.confidence, "Bootstrap interval level")->capture_default_str();
    pc->add_option("--bootstrap", o.bootstrap, "Bootstrap resamples")->capture_default_str();
    pc->add_option("--regime", o.regime, "Theory column: none, cycle (d2 = 1) or zk2 (d1 = 1, d2 = 2)")
        ->capture_default_str();
    pc->add_option("--lambda", o.lambda, "Lattice constant for --regime cycle when theta <= d1");
    add_output(pc, o, "csv (default) or json");
    pc->footer("CSV columns: alpha,trials,quantile,ci_low,ci_high[,prediction,regime]");

    auto* density = app.add_subcommand("density", "Distribution of the final density at one p");
    add_shape(density, o);
    add_sampling(density, o, true);
    add_output(density, o, "csv (default) or json");
    density->footer("CSV columns: p,trials,mean,stddev,min,median,max,span_fraction");

    auto* plane = app.add_subcommand("plane", "Classify the Hamming planes of a configuration (d1 <= 1, d2 = 2)");
    add_shape(plane, o);
    add_sampling(plane, o, false);
    plane->add_option("--config", o.config_path, "Configuration file (otherwise sample with --p/--a and --seed)");
    plane->add_option("--plane", o.plane, "Report only this plane");
    add_output(plane, o, "json (default) or csv");
    plane->footer("CSV columns: plane,k,viable,internally_spanned,internally_inert,inert,proper,exceptional");

    auto* check = app.add_subcommand("check", "Structural report and spanning verdict for one configuration");
    add_shape(check, o);
    add_sampling(check, o, false);
    check->add_option("--config", o.config_path, "Configuration file (otherwise sample with --p/--a and --seed)");
    check->add_option("--plane", o.plane, "Report only this plane");
    check->add_option("--max-intervals", o.max_intervals, "Cap on listed blocking intervals (0 = all)")
        ->capture_default_str();
    add_output(check, o, "json");

    auto* theory = app.add_subcommand("theory", "Evaluate an asymptotic formula");
    theory->add_option("--model", o.model, "cycle, zk2, mixed, plane or abundance")->required();
    theory->add_option("--d", o.d, "Cycle dimension (model cycle)");
    theory->add_option("--theta", o.theta, "Threshold");
    theory->add_option("--m", o.theory_m, "Cycle length");
    theory->add_option("--n", o.theory_n, "Complete-graph size");
    theory->add_option("--gamma", o.gamma, "log m / log n (model zk2)");
    theory->add_option("--lambda", o.lambda, "Lattice constant (model cycle, theta <= d)");
    theory->add_option("--a", o.a, "Scaling constant (models mixed, plane, abundance)");
    theory->add_option("--event", o.event,
                       "Plane event: not-viable, not-odd-is, not-even-is, above-is, gradual-is, theta2-not-is, "
                       "theta3-is");
    add_output(theory, o, "text (default) or json");

    auto* birthday = app.add_subcommand("birthday", "Probability that no day gets k of m people among n days");
    birthday->add_option("--n", o.days, "Days")->required();
    birthday->add_option("--m", o.people, "People")->required();
    birthday->add_option("--k", o.k, "Coincidence size")->capture_default_str();
    birthday->add_option("--mode", o.mode, "exact, asymptotic or both")->capture_default_str();
    birthday->add_option("--digits", o.digits, "Decimal digits of the exact value")->capture_default_str();
    birthday->add_flag("--rational", o.rational, "Also print the exact fraction");
    birthday->add_option("--budget", o.budget, "Work budget for the exact computation")->capture_default_str();
    add_output(birthday, o, "text (default) or json");

    auto* sample = app.add_subcommand("sample", "Write a sampled configuration file");
    add_shape(sample, o);
    add_sampling(sample, o, false);
    sample->add_option("-o,--output", o.output, "Output file (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_validation;
    }

    try {
        if (simulate->parsed()) cmd_simulate(o, out);
        else if (sweep->parsed()) cmd_sweep(o, out);
        else if (pc->parsed()) cmd_pc(o, out);
        else if (density->parsed()) cmd_density(o, out);
        else if (plane->parsed()) {
            if (o.format.empty()) o.format = "json";
            cmd_plane(o, out);
        } else if (check->parsed()) cmd_check(o, out);
        else if (theory->parsed()) cmd_theory(o, out);
        else if (birthday->parsed()) cmd_birthday(o, out);
        else if (sample->parsed()) cmd_sample(o, out);
        return exit_ok;
    } catch (const BudgetError& e) {
        err << "error: " << e.what() << '\n';
        return exit_budget;
    } catch (const std::invalid_argument& e) { // ParameterError, UnsupportedError
        err << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::domain_error& e) { // DomainError, BoundaryError
        err << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
}

} // namespace percolab
