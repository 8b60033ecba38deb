#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hsiao/planner.hpp"

namespace hsiao {

using Bits = std::vector<std::uint8_t>;

enum class DecodeKind { no_error, corrected, double_error, multi_error };
std::string to_string(DecodeKind);

struct DecodeOutcome {
    DecodeKind kind = DecodeKind::no_error;
    std::optional<std::int64_t> position; // flipped column, set iff corrected
    std::optional<Bits> data;             // payload, set iff no_error/corrected

    bool operator==(const DecodeOutcome&) const = default;
};

// Reference route: plain GF(2) row products and a linear column scan. Kept
// deliberately independent of the table-driven Codec below.
Bits encode(const Bits& data, const CheckMatrix& H);
Bits syndrome(const Bits& word, const CheckMatrix& H);
DecodeOutcome decode(const Bits& word, const CheckMatrix& H);

// Hot path: columns packed into 64-bit words and an exact syndrome -> column
// hash map built once per matrix. Immutable after construction, shareable
// across threads.
class Codec {
public:
    explicit Codec(CheckMatrix H); // requires R <= 64

    const CheckMatrix& check_matrix() const { return H_; }
    std::int64_t data_bits() const { return H_.data_bits(); }
    std::int64_t word_bits() const { return H_.word_bits(); }

    Bits encode(const Bits& data) const;
    std::uint64_t packed_syndrome(const Bits& word) const;
    DecodeOutcome decode(const Bits& word) const;
    std::optional<std::int64_t> find_column(std::uint64_t syndrome) const;

private:
    CheckMatrix H_;
    std::vector<std::uint64_t> packed_cols_;
    std::unordered_map<std::uint64_t, std::int64_t> column_of_;
};

} // namespace hsiao
