#include "percolab/montecarlo.hpp"

#include "percolab/analytics.hpp"
#include "percolab/errors.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fmt/format.h>
#include <mutex>
#include <random>
#include <thread>

namespace percolab {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Sites whose 53-bit draw is below this value are occupied at level p.
std::uint64_t draw_threshold(double p) { return static_cast<std::uint64_t>(std::ceil(std::ldexp(p, 53))); }

void check_probability(double p)
{
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("p must lie in [0,1]");
}

void check_trials(std::uint64_t trials)
{
    if (trials < 1) throw ParameterError("trials must be at least 1");
}

// Runs f(i) for i in [0, count) on the worker pool. Each index is handled by
// exactly one call, so callers store results by index and reduce in order.
template <class F>
void parallel_for(std::uint64_t count, F&& f)
{
    const auto workers = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), count));
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::uint64_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next = count;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

struct TrialOutcome {
    bool spanned = false;
    SiteIndex final_count = 0;
};

TrialOutcome run_trial(const GraphShape& shape, double p, std::uint64_t seed, std::uint64_t trial)
{
    const RunResult r = run_fast(CouplingField(seed, trial).config(shape, p), shape.theta());
    return {r.stats.spanned, r.final.occupied_count()};
}

} // namespace

unsigned worker_count()
{
    const char* env = std::getenv("PERCOLAB_THREADS");
    unsigned requested = 0;
    if (env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 0) throw ParameterError(fmt::format("PERCOLAB_THREADS must be a nonnegative integer, got '{}'", env));
        requested = static_cast<unsigned>(v);
    }
    if (requested == 0) requested = std::max(1U, std::thread::hardware_concurrency());
    return requested;
}

CouplingField::CouplingField(std::uint64_t master_seed, std::uint64_t trial) noexcept
    : key_(mix64(mix64(master_seed) + trial))
{
}

double CouplingField::uniform(SiteIndex site) const noexcept
{
    return static_cast<double>(mix64(key_ + (site + 1) * kGolden) >> 11) * 0x1.0p-53;
}

Configuration CouplingField::config(const GraphShape& shape, double p) const
{
    check_probability(p);
    if (p == 0.0) return Configuration::empty(shape);
    if (p == 1.0) return Configuration::full(shape);
    const std::uint64_t threshold = draw_threshold(p);
    const SiteIndex volume = shape.volume();
    BitSet bits(volume);
    auto& words = bits.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::uint64_t word = 0;
        const SiteIndex base = static_cast<SiteIndex>(w) * 64;
        const SiteIndex end = std::min<SiteIndex>(64, volume - base);
        for (SiteIndex b = 0; b < end; ++b)
            if ((mix64(key_ + (base + b + 1) * kGolden) >> 11) < threshold) word |= std::uint64_t{1} << b;
        words[w] = word;
    }
    Configuration c(shape);
    c.assign(std::move(bits));
    return c;
}

Configuration sample_config(const GraphShape& shape, double p, std::uint64_t seed)
{
    return CouplingField(seed, 0).config(shape, p);
}

std::string pform_label(PForm f)
{
    switch (f) {
    case PForm::direct: return "direct";
    case PForm::sharp: return "sharp";
    case PForm::gradual: return "gradual";
    }
    return "unknown";
}

double p_of(PForm form, double a, const GraphShape& shape)
{
    if (!(a >= 0.0)) throw ParameterError("a must be nonnegative");
    double p = a;
    switch (form) {
    case PForm::direct: break;
    case PForm::sharp: p = p_sharp_form(a, shape.theta(), shape.n()); break;
    case PForm::gradual: p = p_gradual_form(a, shape.theta(), shape.n(), shape.m()); break;
    }
    if (!(p >= 0.0 && p <= 1.0))
        throw ParameterError(fmt::format("p must lie in [0,1]; the {} form gives p = {} at a = {}", pform_label(form), p, a));
    return p;
}

double z_for_confidence(double confidence)
{
    if (!(confidence > 0.0 && confidence < 1.0)) throw ParameterError("confidence must lie in (0,1)");
    if (confidence == kDefaultConfidence) return kWilsonZ95;
    return boost::math::quantile(boost::math::normal(), 0.5 + confidence / 2.0);
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence)
{
    check_trials(trials);
    if (successes > trials) throw ParameterError("successes cannot exceed trials");
    const double z = z_for_confidence(confidence);
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    return {std::clamp(std::min(center - half, phat), 0.0, 1.0), std::clamp(std::max(center + half, phat), 0.0, 1.0)};
}

EstimateResult estimate_span(const TrialBatch& batch, double confidence)
{
    check_probability(batch.p);
    check_trials(batch.trials);
    std::vector<TrialOutcome> outcomes(batch.trials);
    parallel_for(batch.trials,
                 [&](std::uint64_t t) { outcomes[t] = run_trial(batch.shape, batch.p, batch.master_seed, t); });

    EstimateResult r;
    r.p = batch.p;
    r.trials = batch.trials;
    r.master_seed = batch.master_seed;
    r.confidence = confidence;
    double density_sum = 0.0;
    const double volume = static_cast<double>(batch.shape.volume());
    for (const auto& o : outcomes) {
        r.successes += o.spanned ? 1 : 0;
        density_sum += static_cast<double>(o.final_count) / volume;
    }
    r.estimate = static_cast<double>(r.successes) / static_cast<double>(r.trials);
    const Interval ci = wilson_interval(r.successes, r.trials, confidence);
    r.ci_low = ci.low;
    r.ci_high = ci.high;
    r.mean_final_density = density_sum / static_cast<double>(r.trials);
    return r;
}

double pathwise_pc(const GraphShape& shape, std::uint64_t master_seed, std::uint64_t trial, double resolution)
{
    if (!(resolution >= 0.0 && resolution < 1.0)) throw ParameterError("resolution must lie in [0,1)");
    const CouplingField field(master_seed, trial);
    const int theta = shape.theta();

    double lo = 1.0, hi = 0.0;
    for (SiteIndex v = 0; v < shape.volume(); ++v) {
        const double u = field.uniform(v);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    // config(lo) is empty; config(hi) misses only the last site to arrive.
    if (!spans(field.config(shape, hi), theta)) return 1.0;
    if (spans(field.config(shape, lo), theta)) return lo;
    while (hi - lo > resolution) {
        const double mid = lo + (hi - lo) / 2.0;
        if (mid <= lo || mid >= hi) break;
        if (spans(field.config(shape, mid), theta)) hi = mid;
        else lo = mid;
    }
    return hi;
}

double empirical_quantile(std::vector<double> sample, double alpha)
{
    if (sample.empty()) throw ParameterError("quantile of an empty sample");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0,1)");
    std::sort(sample.begin(), sample.end());
    const auto n = static_cast<double>(sample.size());
    const auto idx = static_cast<std::size_t>(std::max(std::ceil(alpha * n) - 1.0, 0.0));
    return sample[std::min(idx, sample.size() - 1)];
}

PcEstimate estimate_pc(const GraphShape& shape, double alpha, std::uint64_t trials, std::uint64_t master_seed,
                       double resolution, double confidence, int bootstrap_resamples)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0,1)");
    if (!(confidence > 0.0 && confidence < 1.0)) throw ParameterError("confidence must lie in (0,1)");
    if (bootstrap_resamples < 1) throw ParameterError("bootstrap resamples must be at least 1");
    check_trials(trials);

    PcEstimate out;
    out.alpha = alpha;
    out.confidence = confidence;
    out.trials = trials;
    out.master_seed = master_seed;
    out.samples.resize(trials);
    parallel_for(trials, [&](std::uint64_t t) { out.samples[t] = pathwise_pc(shape, master_seed, t, resolution); });
    out.quantile = empirical_quantile(out.samples, alpha);

    std::mt19937_64 rng(mix64(master_seed ^ 0xB007'5742'0000'0001ULL));
    std::vector<double> boot(static_cast<std::size_t>(bootstrap_resamples));
    std::vector<double> resample(out.samples.size());
    for (auto& b : boot) {
        for (auto& x : resample) x = out.samples[rng() % out.samples.size()];
        b = empirical_quantile(resample, alpha);
    }
    const double tail = (1.0 - confidence) / 2.0;
    out.ci_low = empirical_quantile(boot, std::max(tail, 1e-12));
    out.ci_high = empirical_quantile(boot, std::min(1.0 - tail, 1.0 - 1e-12));
    return out;
}

std::vector<SweepRow> sweep_transition(const GraphShape& shape, PForm form, const std::vector<double>& a_grid,
                                       std::uint64_t trials, std::uint64_t master_seed, double confidence)
{
    if (a_grid.empty()) throw ParameterError("the a grid is empty");
    std::vector<SweepRow> rows;
    rows.reserve(a_grid.size());
    for (double a : a_grid) rows.push_back({a, {}});
    for (auto& row : rows) row.result = estimate_span({shape, p_of(form, row.a, shape), trials, master_seed}, confidence);
    return rows;
}

DensitySummary estimate_density(const GraphShape& shape, double p, std::uint64_t trials, std::uint64_t master_seed)
{
    check_probability(p);
    check_trials(trials);
    std::vector<TrialOutcome> outcomes(trials);
    parallel_for(trials, [&](std::uint64_t t) { outcomes[t] = run_trial(shape, p, master_seed, t); });

    DensitySummary s;
    s.p = p;
    s.trials = trials;
    s.master_seed = master_seed;
    const double volume = static_cast<double>(shape.volume());
    std::uint64_t spanned = 0;
    for (const auto& o : outcomes) {
        s.samples.push_back(static_cast<double>(o.final_count) / volume);
        spanned += o.spanned ? 1 : 0;
    }
    double sum = 0.0;
    for (double x : s.samples) sum += x;
    s.mean = sum / static_cast<double>(trials);
    double ss = 0.0;
    for (double x : s.samples) ss += (x - s.mean) * (x - s.mean);
    s.stddev = trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1)) : 0.0;
    std::vector<double> sorted = s.samples;
    std::sort(sorted.begin(), sorted.end());
    s.min = sorted.front();
    s.max = sorted.back();
    s.median = empirical_quantile(sorted, 0.5);
    s.span_fraction = static_cast<double>(spanned) / static_cast<double>(trials);
    return s;
}

} // namespace percolab
