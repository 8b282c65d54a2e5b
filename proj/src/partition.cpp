#include "pgm/partition.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace pgm {

Partition::Partition(std::vector<unsigned> parts) : parts_(std::move(parts))
{
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] == 0)
            throw std::invalid_argument("partition parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw std::invalid_argument("partition parts must be weakly decreasing");
    }
}

Partition Partition::parse(std::string_view text)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.remove_suffix(1);
        return s;
    };
    std::string_view body = trim(text);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
        throw std::invalid_argument("partition must look like [3,1,1], got '" + std::string(text) + "'");
    body = trim(body.substr(1, body.size() - 2));
    std::vector<unsigned> parts;
    while (!body.empty()) {
        auto comma = body.find(',');
        std::string_view item = trim(body.substr(0, comma));
        if (item.empty() || item.size() > 9 ||
            !std::all_of(item.begin(), item.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw std::invalid_argument("malformed partition '" + std::string(text) + "'");
        parts.push_back(static_cast<unsigned>(std::stoul(std::string(item))));
        if (comma == std::string_view::npos)
            break;
        body = body.substr(comma + 1);
        if (trim(body).empty())
            throw std::invalid_argument("malformed partition '" + std::string(text) + "'");
    }
    return Partition(std::move(parts));
}

Partition Partition::from_columns(std::span<const unsigned> columns)
{
    std::vector<unsigned> cols(columns.begin(), columns.end());
    while (!cols.empty() && cols.back() == 0)
        cols.pop_back();
    return Partition(std::move(cols)).conjugate();
}

std::string Partition::to_string() const
{
    std::string out = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(parts_[i]);
    }
    return out + "]";
}

unsigned Partition::size() const
{
    return std::accumulate(parts_.begin(), parts_.end(), 0u);
}

unsigned Partition::column(unsigned i) const
{
    if (i == 0)
        throw std::invalid_argument("columns are indexed from 1");
    // parts are decreasing, so the count of parts >= i is a prefix length
    auto it = std::partition_point(parts_.begin(), parts_.end(), [i](unsigned part) { return part >= i; });
    return static_cast<unsigned>(it - parts_.begin());
}

unsigned Partition::multiplicity(unsigned i) const
{
    return static_cast<unsigned>(std::count(parts_.begin(), parts_.end(), i));
}

Partition Partition::conjugate() const
{
    std::vector<unsigned> cols;
    for (unsigned i = 1; i <= largest(); ++i)
        cols.push_back(column(i));
    Partition result;
    result.parts_ = std::move(cols);
    return result;
}

std::uint64_t Partition::n_lambda() const
{
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < parts_.size(); ++i)
        total += static_cast<std::uint64_t>(i) * parts_[i];
    return total;
}

std::uint64_t Partition::conjugate_square_sum() const
{
    std::uint64_t total = 0;
    for (unsigned i = 1; i <= largest(); ++i) {
        std::uint64_t c = column(i);
        total += c * c;
    }
    return total;
}

bool Partition::contains(const Partition& mu) const
{
    if (mu.length() > length())
        return false;
    for (std::size_t i = 0; i < mu.parts_.size(); ++i)
        if (mu.parts_[i] > parts_[i])
            return false;
    return true;
}

namespace {

void extend(unsigned remaining, unsigned max_part, unsigned parts_left, std::vector<unsigned>& prefix,
            std::vector<Partition>& out)
{
    if (remaining == 0) {
        out.emplace_back(prefix);
        return;
    }
    if (parts_left == 0)
        return;
    for (unsigned first = std::min(remaining, max_part); first >= 1; --first) {
        // the rest must fit in parts_left - 1 parts of size <= first
        if (static_cast<std::uint64_t>(first) * parts_left < remaining)
            break;
        prefix.push_back(first);
        extend(remaining - first, first, parts_left - 1, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<Partition> enumerate_partitions(unsigned size, std::optional<unsigned> max_parts,
                                            std::optional<unsigned> max_part)
{
    std::vector<Partition> out;
    std::vector<unsigned> prefix;
    extend(size, max_part.value_or(size), max_parts.value_or(size), prefix, out);
    return out;
}

std::vector<Partition> partitions_up_to(unsigned max_size, std::optional<unsigned> max_parts,
                                        std::optional<unsigned> max_part)
{
    std::vector<Partition> out;
    for (unsigned n = 0; n <= max_size; ++n) {
        auto level = enumerate_partitions(n, max_parts, max_part);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

}  // namespace pgm
