#include "pgm/serialize.hpp"

#include <sstream>
#include <stdexcept>

namespace pgm {

namespace {

std::uint64_t parse_count(const std::string& text)
{
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("malformed count '" + text + "'");
    return std::stoull(text);
}

void check_totals(const EmpiricalDistribution& dist)
{
    std::uint64_t sum = dist.ambiguous;
    for (const auto& [lambda, count] : dist.counts)
        sum += count;
    if (sum != dist.total)
        throw std::invalid_argument("counts and ambiguous samples do not add up to the total");
}

}  // namespace

nlohmann::json to_json(const Rational& x)
{
    return x.to_string();
}

nlohmann::json to_json(const IntervalRational& x)
{
    if (x.is_exact())
        return to_json(x.lower);
    return {{"lower", x.lower.to_string()}, {"upper", x.upper.to_string()}};
}

nlohmann::json to_json(const EmpiricalDistribution& dist)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [lambda, count] : dist.counts)
        rows.push_back({{"partition", lambda.to_string()},
                        {"count", count},
                        {"frequency", dist.frequency(lambda).to_string()}});
    return {{"total", dist.total}, {"ambiguous", dist.ambiguous}, {"counts", rows}};
}

Rational rational_from_json(const nlohmann::json& j)
{
    if (!j.is_string())
        throw std::invalid_argument("expected a rational string");
    return Rational::parse(j.get<std::string>());
}

IntervalRational interval_from_json(const nlohmann::json& j)
{
    if (j.is_string())
        return IntervalRational::exact(rational_from_json(j));
    return {rational_from_json(j.at("lower")), rational_from_json(j.at("upper"))};
}

EmpiricalDistribution distribution_from_json(const nlohmann::json& j)
{
    EmpiricalDistribution dist;
    dist.total = j.at("total").get<std::uint64_t>();
    dist.ambiguous = j.at("ambiguous").get<std::uint64_t>();
    for (const auto& row : j.at("counts"))
        dist.counts[Partition::parse(row.at("partition").get<std::string>())] += row.at("count").get<std::uint64_t>();
    check_totals(dist);
    return dist;
}

std::string to_csv(const EmpiricalDistribution& dist)
{
    std::ostringstream out;
    out << "# total," << dist.total << "\n";
    out << "# ambiguous," << dist.ambiguous << "\n";
    out << "partition,count,frequency\n";
    for (const auto& [lambda, count] : dist.counts)
        out << '"' << lambda.to_string() << "\"," << count << ',' << dist.frequency(lambda).to_string() << "\n";
    return out.str();
}

EmpiricalDistribution distribution_from_csv(std::string_view text)
{
    EmpiricalDistribution dist;
    std::istringstream in{std::string(text)};
    std::string line;
    bool have_total = false, have_ambiguous = false, have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line.rfind("# total,", 0) == 0) {
            dist.total = parse_count(line.substr(8));
            have_total = true;
        } else if (line.rfind("# ambiguous,", 0) == 0) {
            dist.ambiguous = parse_count(line.substr(12));
            have_ambiguous = true;
        } else if (line == "partition,count,frequency") {
            have_header = true;
        } else {
            if (!have_header || line.front() != '"')
                throw std::invalid_argument("malformed CSV row '" + line + "'");
            auto close = line.find('"', 1);
            if (close == std::string::npos || close + 1 >= line.size() || line[close + 1] != ',')
                throw std::invalid_argument("malformed CSV row '" + line + "'");
            Partition lambda = Partition::parse(line.substr(1, close - 1));
            std::string rest = line.substr(close + 2);
            auto comma = rest.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("malformed CSV row '" + line + "'");
            dist.counts[lambda] += parse_count(rest.substr(0, comma));
        }
    }
    if (!have_total || !have_ambiguous || !have_header)
        throw std::invalid_argument("CSV is missing its header rows");
    check_totals(dist);
    return dist;
}

}  // namespace pgm
