#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pgm {

/// Integer partition: weakly decreasing list of positive parts. The empty list
/// is the partition of 0. Statistics such as the conjugate and multiplicities
/// are computed on demand from the part list.
class Partition {
public:
    Partition() = default;
    /// Throws std::invalid_argument if `parts` is not weakly decreasing and positive.
    explicit Partition(std::vector<unsigned> parts);
    Partition(std::initializer_list<unsigned> parts) : Partition(std::vector<unsigned>(parts)) {}

    /// Parses "[3,1,1]"; "[]" is the empty partition.
    static Partition parse(std::string_view text);
    /// Builds a partition from column lengths lambda'_1 >= lambda'_2 >= ... .
    static Partition from_columns(std::span<const unsigned> columns);

    std::string to_string() const;

    std::span<const unsigned> parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    /// r(lambda), the number of parts.
    unsigned length() const { return static_cast<unsigned>(parts_.size()); }
    /// |lambda|
    unsigned size() const;
    /// Largest part, 0 for the empty partition.
    unsigned largest() const { return parts_.empty() ? 0 : parts_.front(); }

    /// lambda'_i for i >= 1 (0 beyond the first row).
    unsigned column(unsigned i) const;
    /// m_i(lambda), the number of parts equal to i (i >= 1).
    unsigned multiplicity(unsigned i) const;
    Partition conjugate() const;
    /// n(lambda) = sum_i C(lambda'_i, 2)
    std::uint64_t n_lambda() const;
    /// sum_i (lambda'_i)^2
    std::uint64_t conjugate_square_sum() const;

    /// Young-diagram containment: mu'_i <= lambda'_i for all i.
    bool contains(const Partition& mu) const;

    friend bool operator==(const Partition&, const Partition&) = default;
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b)
    {
        return a.parts_ <=> b.parts_;
    }

private:
    std::vector<unsigned> parts_;
};

/// All partitions of `size` with at most `max_parts` parts and parts at most
/// `max_part`, in reverse lexicographic order: (4), (3,1), (2,2), (2,1,1), (1,1,1,1).
std::vector<Partition> enumerate_partitions(unsigned size,
                                            std::optional<unsigned> max_parts = std::nullopt,
                                            std::optional<unsigned> max_part = std::nullopt);

/// All partitions with |lambda| <= max_size, grouped by size in increasing order.
std::vector<Partition> partitions_up_to(unsigned max_size,
                                        std::optional<unsigned> max_parts = std::nullopt,
                                        std::optional<unsigned> max_part = std::nullopt);

}  // namespace pgm
