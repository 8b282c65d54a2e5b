#include "cli.hpp"

#include "pgm/matrix_lab.hpp"
#include "pgm/measures.hpp"
#include "pgm/moments.hpp"
#include "pgm/samplers.hpp"
#include "pgm/serialize.hpp"
#include "pgm/validation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pgm::cli {

namespace {

using nlohmann::json;

/// Malformed or out-of-range input; reported with exit status 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A check that ran and did not hold; reported with exit status 1.
struct CheckFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr unsigned kReportBits = 80;

struct Options {
    std::string measure;
    std::string partition;
    std::string mu;
    std::string ensemble;
    std::string compare;
    std::string format;
    std::string out;
    std::string mode;
    std::string preset = "quick";
    std::string epsilon;
    std::string support_mass = "999/1000";
    std::string max_tv;
    std::optional<unsigned> parts;
    std::optional<unsigned> size;
    std::optional<std::uint64_t> seed;
    unsigned ell = 1;
    std::uint64_t trials = 0;
    std::uint64_t count = 1;
    std::uint64_t p = 0;
    unsigned k = 8;
    unsigned w = 1;
    unsigned max_size = 20;
    unsigned jobs = 1;
    bool aggregate = false;
    bool decimal = false;
};

template <typename F>
auto as_usage(F&& parse) -> decltype(parse())
{
    try {
        return parse();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
}

MeasureSpec parse_measure(const std::string& text)
{
    if (text.empty())
        throw UsageError("--measure is required");
    return as_usage([&] { return MeasureSpec::parse(text); });
}

Partition parse_partition(const std::string& text, const char* flag)
{
    if (text.empty())
        throw UsageError(std::string(flag) + " is required");
    return as_usage([&] { return Partition::parse(text); });
}

Rational parse_rational(const std::string& text, const char* flag)
{
    return as_usage([&] {
        try {
            return Rational::parse(text);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument(std::string(flag) + " expects a rational such as 1/100, got '" + text + "'");
        }
    });
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed)
{
    for (const char* f : allowed)
        if (format == f)
            return;
    throw UsageError("unsupported --format '" + format + "' for this command");
}

class Renderer {
public:
    explicit Renderer(bool decimal) : decimal_(decimal) {}

    std::string text(const Rational& x) const { return decimal_ ? x.to_decimal(12) : x.to_string(); }

    std::string text(const IntervalRational& x) const
    {
        if (x.is_exact())
            return text(x.lower);
        if (decimal_)
            return "[" + x.lower.to_decimal(12) + ", " + x.upper.to_decimal(12) + "]";
        return to_string(round_outward(x, kReportBits));
    }

    json value(const Rational& x) const { return text(x); }

    json value(const IntervalRational& x) const
    {
        if (x.is_exact())
            return value(x.lower);
        if (decimal_)
            return {{"lower", x.lower.to_decimal(12)}, {"upper", x.upper.to_decimal(12)}};
        return to_json(round_outward(x, kReportBits));
    }

private:
    bool decimal_;
};

std::string csv_quote(const std::string& s)
{
    return "\"" + s + "\"";
}

void emit_scalar(std::ostream& out, const Options& o, const Renderer& r, json fields, const std::string& key,
                 const IntervalRational& value)
{
    if (o.format == "text") {
        out << r.text(value) << "\n";
    } else if (o.format == "json") {
        fields[key] = r.value(value);
        out << fields.dump(2) << "\n";
    } else {
        std::string header, row;
        for (auto it = fields.begin(); it != fields.end(); ++it) {
            header += it.key() + ",";
            row += csv_quote(it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) + ",";
        }
        out << header << key << "\n" << row << csv_quote(r.text(value)) << "\n";
    }
}

int cmd_pmf(const Options& o, std::ostream& out)
{
    MeasureSpec spec = parse_measure(o.measure);
    Partition lambda = parse_partition(o.partition, "--partition");
    require_format(o.format, {"text", "json", "csv"});
    Renderer r(o.decimal);
    emit_scalar(out, o, r, {{"measure", spec.to_string()}, {"partition", lambda.to_string()}}, "pmf", pmf(spec, lambda));
    return kExitOk;
}

int cmd_marginal(const Options& o, std::ostream& out)
{
    MeasureSpec spec = parse_measure(o.measure);
    require_format(o.format, {"text", "json", "csv"});
    Renderer r(o.decimal);
    json fields = {{"measure", spec.to_string()}};
    IntervalRational value;
    if (o.parts && o.size) {
        fields["size"] = *o.size;
        fields["parts"] = *o.parts;
        value = as_usage([&] { return prob_size_and_parts(spec, *o.size, *o.parts); });
    } else if (o.parts) {
        fields["parts"] = *o.parts;
        value = as_usage([&] { return prob_num_parts(spec, *o.parts); });
    } else if (o.size) {
        fields["size"] = *o.size;
        value = as_usage([&] { return prob_size(spec, *o.size); });
    } else {
        throw UsageError("marginal needs --parts, --size, or both");
    }
    emit_scalar(out, o, r, fields, "probability", value);
    return kExitOk;
}

int cmd_sample(const Options& o, std::ostream& out)
{
    MeasureSpec spec = parse_measure(o.measure);
    if (o.aggregate) {
        require_format(o.format, {"text", "csv", "json"});
        EmpiricalDistribution dist = as_usage([&] { return sample_many(spec, o.count, *o.seed, o.jobs); });
        if (o.format == "json")
            out << to_json(dist).dump(2) << "\n";
        else
            out << to_csv(dist);
        return kExitOk;
    }
    require_format(o.format, {"text", "json"});
    PartitionSampler sampler = as_usage([&] { return PartitionSampler(spec); });
    RandomStream stream(*o.seed);
    json samples = json::array();
    for (std::uint64_t i = 0; i < o.count; ++i) {
        Partition lambda = sampler(stream);
        if (o.format == "json")
            samples.push_back(lambda.to_string());
        else
            out << lambda.to_string() << "\n";
    }
    if (o.format == "json")
        out << samples.dump(2) << "\n";
    return kExitOk;
}

unsigned truncation_size(const Options& o, const MeasureSpec& spec)
{
    if (o.epsilon.empty())
        return o.max_size;
    Rational eps = parse_rational(o.epsilon, "--epsilon");
    return as_usage([&] { return size_cutoff(spec, eps); });
}

MeasureSpec parse_general(const std::string& text)
{
    MeasureSpec spec = parse_measure(text);
    if (spec.family != Family::GeneralDU && spec.family != Family::GeneralInfU)
        throw UsageError("moments are available for general measures only");
    return spec;
}

void emit_truncated(std::ostream& out, const Options& o, const Renderer& r, json fields, unsigned max_size,
                    const TruncatedSum& sum)
{
    const Rational tail = round_outward({sum.tail, sum.tail}, kReportBits).upper;
    if (o.format == "json") {
        fields["max_size"] = max_size;
        fields["partial"] = r.value(sum.partial);
        fields["tail_bound"] = r.value(tail);
        fields["enclosure"] = r.value(sum.enclosure());
        out << fields.dump(2) << "\n";
    } else {
        out << "partial " << r.text(sum.partial) << "\n";
        out << "tail_bound " << r.text(tail) << "\n";
        out << "enclosure " << r.text(sum.enclosure()) << "\n";
    }
}

int cmd_moment(const Options& o, std::ostream& out)
{
    MeasureSpec spec = parse_general(o.measure);
    Partition mu = parse_partition(o.mu, "--mu");
    require_format(o.format, {"text", "json", "csv"});
    Renderer r(o.decimal);
    json fields = {{"measure", spec.to_string()}, {"mu", mu.to_string()}};
    const std::string mode = o.mode.empty() ? "closed" : o.mode;
    if (mode == "closed") {
        Rational value = moment_closed_form(mu, spec.dimension(), spec.u, spec.p);
        emit_scalar(out, o, r, fields, "moment", IntervalRational::exact(value));
    } else if (mode == "truncated") {
        require_format(o.format, {"text", "json"});
        unsigned n = truncation_size(o, spec);
        emit_truncated(out, o, r, fields, n, moment_truncated(mu, spec, n));
    } else {
        throw UsageError("moment --mode must be closed or truncated");
    }
    return kExitOk;
}

int cmd_torsion(const Options& o, std::ostream& out)
{
    MeasureSpec spec = parse_general(o.measure);
    if (o.ell == 0)
        throw UsageError("--ell must be at least 1");
    require_format(o.format, {"text", "json", "csv"});
    Renderer r(o.decimal);
    json fields = {{"measure", spec.to_string()}, {"ell", o.ell}};
    const std::string mode = o.mode.empty() ? "closed" : o.mode;
    if (mode == "closed") {
        emit_scalar(out, o, r, fields, "expectation",
                    IntervalRational::exact(torsion_expectation(o.ell, spec.dimension(), spec.u, spec.p)));
    } else if (mode == "exact-order") {
        emit_scalar(out, o, r, fields, "expectation",
                    IntervalRational::exact(torsion_expectation_exact_order(o.ell, spec.dimension(), spec.u, spec.p)));
    } else if (mode == "truncated") {
        require_format(o.format, {"text", "json"});
        unsigned n = truncation_size(o, spec);
        emit_truncated(out, o, r, fields, n, torsion_truncated(o.ell, spec, n));
    } else {
        throw UsageError("torsion --mode must be closed, exact-order or truncated");
    }
    return kExitOk;
}

/// The measure each ensemble is compared with when --compare is absent.
std::string default_comparison(const Ensemble& e, std::uint64_t p)
{
    const std::string ps = std::to_string(p);
    switch (e.kind) {
    case Ensemble::Kind::Square:
        return "general:p=" + ps + ",u=1,d=" + std::to_string(e.rows);
    case Ensemble::Kind::Rect: {
        unsigned w = e.rows > e.cols ? e.rows - e.cols : e.cols - e.rows;
        return "general:p=" + ps + ",u=" + Rational(p).pow(-static_cast<long>(w)).to_string() + ",d=inf";
    }
    case Ensemble::Kind::Alternating:
        return "alt:p=" + ps + ",n=" + std::to_string(e.rows);
    case Ensemble::Kind::Symmetric:
        return "sym:p=" + ps + ",n=" + std::to_string(e.rows);
    }
    return {};
}

int emit_comparison(std::ostream& out, const Options& o, json header, const EmpiricalDistribution& dist,
                    const MeasureSpec& compare)
{
    require_format(o.format, {"json", "csv", "text"});
    Rational mass = parse_rational(o.support_mass, "--support-mass");
    if (mass.sign() <= 0 || mass >= Rational(1))
        throw UsageError("--support-mass must lie strictly between 0 and 1");
    std::vector<Partition> support = support_with_mass(compare, mass);
    Rational tv = tv_distance(dist, compare, support);
    bool within = true;
    if (!o.max_tv.empty())
        within = tv <= parse_rational(o.max_tv, "--max-tv");

    if (o.format == "csv") {
        out << to_csv(dist);
    } else {
        Renderer r(o.decimal);
        std::set<Partition> rows(support.begin(), support.end());
        for (const auto& [lambda, count] : dist.counts)
            rows.insert(lambda);
        json table = json::array();
        for (const Partition& lambda : rows)
            table.push_back({{"partition", lambda.to_string()},
                             {"count", dist.count(lambda)},
                             {"frequency", r.value(dist.frequency(lambda))},
                             {"exact", r.value(pmf(compare, lambda))}});
        header["compare"] = compare.to_string();
        header["trials"] = dist.total;
        header["ambiguous"] = dist.ambiguous;
        header["support_mass"] = mass.to_string();
        header["support_size"] = support.size();
        header["tv_distance"] = tv.to_decimal(12);
        if (!o.max_tv.empty())
            header["within_max_tv"] = within;
        header["table"] = table;
        if (o.format == "json") {
            out << header.dump(2) << "\n";
        } else {
            out << "compare " << compare.to_string() << "\n";
            out << "trials " << dist.total << "\n";
            out << "ambiguous " << dist.ambiguous << "\n";
            out << "tv_distance " << tv.to_decimal(12) << "\n";
        }
    }
    if (!within)
        throw CheckFailed("total-variation distance " + tv.to_decimal(6) + " exceeds --max-tv " + o.max_tv);
    return kExitOk;
}

void require_trials(const Options& o)
{
    if (o.trials == 0)
        throw UsageError("--trials must be positive");
    if (o.jobs == 0)
        throw UsageError("--jobs must be positive");
}

int cmd_montecarlo(const Options& o, std::ostream& out)
{
    Ensemble ensemble = as_usage([&] { return Ensemble::parse(o.ensemble); });
    require_trials(o);
    as_usage([&] { return ModPKMatrix(1, 1, o.p, o.k); });
    MeasureSpec compare = parse_measure(o.compare.empty() ? default_comparison(ensemble, o.p) : o.compare);
    EmpiricalDistribution dist = monte_carlo_cokernel(ensemble, o.p, o.k, o.trials, *o.seed, o.jobs);
    json header = {{"ensemble", ensemble.to_string()}, {"p", o.p}, {"k", o.k}, {"seed", *o.seed}};
    return emit_comparison(out, o, header, dist, compare);
}

int cmd_quotient(const Options& o, std::ostream& out)
{
    require_trials(o);
    if (o.w == 0)
        throw UsageError("--w must be at least 1");
    as_usage([&] { return ModPKMatrix(1, 1, o.p, 1); });
    std::string fallback = "general:p=" + std::to_string(o.p) + ",u=" +
                           Rational(o.p).pow(-static_cast<long>(o.w)).to_string() + ",d=inf";
    MeasureSpec compare = parse_measure(o.compare.empty() ? fallback : o.compare);
    EmpiricalDistribution dist = monte_carlo_quotient(o.w, o.p, o.trials, *o.seed, o.jobs);
    json header = {{"process", "quotient"}, {"w", o.w}, {"p", o.p}, {"seed", *o.seed}};
    return emit_comparison(out, o, header, dist, compare);
}

int cmd_validate(const Options& o, std::ostream& out)
{
    require_format(o.format, {"text", "json"});
    ValidationReport report = as_usage([&] { return run_validation(o.preset); });
    if (o.format == "json") {
        json identities = json::array();
        for (const auto& r : report.results)
            identities.push_back({{"name", r.name},
                                  {"parameters", r.parameters},
                                  {"cases", r.cases},
                                  {"passed", r.passed()},
                                  {"failure_count", r.failure_count},
                                  {"failures", r.failures},
                                  {"notes", r.notes}});
        out << json{{"preset", report.preset}, {"passed", report.passed()}, {"identities", identities}}.dump(2) << "\n";
    } else {
        std::size_t passed = 0;
        for (const auto& r : report.results) {
            passed += r.passed();
            out << (r.passed() ? "PASS " : "FAIL ") << r.name << "  cases=" << r.cases << "  " << r.parameters << "\n";
            for (const auto& f : r.failures)
                out << "    " << f << "\n";
            if (r.failure_count > r.failures.size())
                out << "    ... " << r.failure_count - r.failures.size() << " more\n";
            for (const auto& note : r.notes)
                out << "    note: " << note << "\n";
        }
        out << passed << "/" << report.results.size() << " identities hold (preset " << report.preset << ")\n";
    }
    return report.passed() ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Exact measures on partitions and random p-adic matrix cokernels", "pgm"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every command");

    std::function<int(const Options&, std::ostream&)> action;
    auto command = [&](const char* name, const char* about, int (*fn)(const Options&, std::ostream&)) {
        CLI::App* sub = app.add_subcommand(name, about);
        sub->callback([&action, fn] { action = fn; });
        sub->add_option("--format", o.format, "text, json or csv");
        sub->add_option("--out", o.out, "Write output to this file");
        sub->add_flag("--decimal", o.decimal, "Render rationals as 12-digit decimals");
        return sub;
    };

    auto* pmf_cmd = command("pmf", "Probability of one partition", cmd_pmf);
    pmf_cmd->add_option("--measure", o.measure, "Measure, e.g. general:p=2,u=1,d=3")->required();
    pmf_cmd->add_option("--partition", o.partition, "Partition, e.g. [2,1]")->required();

    auto* marginal_cmd = command("marginal", "Law of the number of parts and/or the size", cmd_marginal);
    marginal_cmd->add_option("--measure", o.measure, "Measure")->required();
    marginal_cmd->add_option("--parts", o.parts, "Number of parts r");
    marginal_cmd->add_option("--size", o.size, "Size n");

    auto* sample_cmd = command("sample", "Draw partitions with the Markov-chain sampler", cmd_sample);
    sample_cmd->add_option("--measure", o.measure, "Measure")->required();
    sample_cmd->add_option("--count", o.count, "Number of draws")->capture_default_str();
    sample_cmd->add_option("--seed", o.seed, "64-bit seed")->required();
    sample_cmd->add_flag("--aggregate", o.aggregate, "Emit counts instead of individual draws");
    sample_cmd->add_option("--jobs", o.jobs, "Worker threads for --aggregate")->capture_default_str();

    auto* moment_cmd = command("moment", "Surjection moment E|Sur(lambda, mu)|", cmd_moment);
    moment_cmd->add_option("--measure", o.measure, "General measure")->required();
    moment_cmd->add_option("--mu", o.mu, "Target group type")->required();
    moment_cmd->add_option("--mode", o.mode, "closed or truncated");
    moment_cmd->add_option("--max-size", o.max_size, "Truncation |lambda| <= N")->capture_default_str();
    moment_cmd->add_option("--epsilon", o.epsilon, "Choose N so that P(|lambda| > N) <= epsilon");

    auto* torsion_cmd = command("torsion", "Expected number of p^ell-torsion points", cmd_torsion);
    torsion_cmd->add_option("--measure", o.measure, "General measure")->required();
    torsion_cmd->add_option("--ell", o.ell, "Torsion level")->capture_default_str();
    torsion_cmd->add_option("--mode", o.mode, "closed, exact-order or truncated");
    torsion_cmd->add_option("--max-size", o.max_size, "Truncation |lambda| <= N")->capture_default_str();
    torsion_cmd->add_option("--epsilon", o.epsilon, "Choose N so that P(|lambda| > N) <= epsilon");

    auto add_simulation_flags = [&](CLI::App* sub) {
        sub->add_option("--p", o.p, "Prime")->required();
        sub->add_option("--trials", o.trials, "Number of trials")->required();
        sub->add_option("--seed", o.seed, "64-bit seed")->required();
        sub->add_option("--jobs", o.jobs, "Worker threads")->capture_default_str();
        sub->add_option("--compare", o.compare, "Measure to compare against");
        sub->add_option("--support-mass", o.support_mass, "Exact mass of the comparison support")->capture_default_str();
        sub->add_option("--max-tv", o.max_tv, "Fail (exit 1) when the distance exceeds this");
    };

    auto* mc_cmd = command("montecarlo", "Cokernels of random matrices over Z/p^k", cmd_montecarlo);
    mc_cmd->add_option("--ensemble", o.ensemble, "square:D, rect:RxC, alt:N or sym:N")->required();
    mc_cmd->add_option("--precision-k", o.k, "Work modulo p^k")->capture_default_str();
    add_simulation_flags(mc_cmd);

    auto* quotient_cmd = command("quotient-sim", "Quotients of random groups by w random elements", cmd_quotient);
    quotient_cmd->add_option("--w", o.w, "Number of random elements")->capture_default_str();
    add_simulation_flags(quotient_cmd);

    auto* validate_cmd = command("validate", "Run the exact identity suite", cmd_validate);
    validate_cmd->add_option("--preset", o.preset, "quick or full")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (o.format.empty()) {
        const auto* sub = app.get_subcommands().front();
        bool report = sub->get_name() == "montecarlo" || sub->get_name() == "quotient-sim";
        o.format = report ? "json" : "text";
    }

    std::ostringstream buffer;
    int status = kExitOk;
    try {
        status = action(o, buffer);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CheckFailed& e) {
        err << "check failed: " << e.what() << "\n";
        status = kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }

    if (o.out.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(o.out);
        if (!(file << buffer.str())) {
            err << "error: cannot write " << o.out << "\n";
            return kExitFailure;
        }
    }
    return status;
}

}  // namespace pgm::cli
