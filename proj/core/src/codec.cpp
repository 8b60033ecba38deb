#include "hsiao/codec.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace hsiao {

namespace {

void require_bits(const Bits& bits, std::int64_t expected, const char* what) {
    if (static_cast<std::int64_t>(bits.size()) != expected)
        throw std::invalid_argument(std::string(what) + ": length mismatch");
    for (const auto b : bits)
        if (b > 1) throw std::invalid_argument(std::string(what) + ": bits must be 0 or 1");
}

Bits extract_payload(const Bits& word, const CheckMatrix& H) {
    Bits data;
    data.reserve(H.data_positions.size());
    for (const auto pos : H.data_positions)
        data.push_back(word[static_cast<std::size_t>(pos)]);
    return data;
}

} // namespace

std::string to_string(DecodeKind kind) {
    switch (kind) {
        case DecodeKind::no_error: return "no_error";
        case DecodeKind::corrected: return "corrected";
        case DecodeKind::double_error: return "double_error";
        case DecodeKind::multi_error: return "multi_error";
    }
    return "unknown";
}

Bits encode(const Bits& data, const CheckMatrix& H) {
    require_bits(data, H.data_bits(), "encode");
    Bits word(static_cast<std::size_t>(H.word_bits()), 0);
    for (std::size_t i = 0; i < H.data_positions.size(); ++i)
        word[static_cast<std::size_t>(H.data_positions[i])] = data[i];
    // The parity columns form an identity, so row r of H*word = 0 solves
    // directly for the parity bit at parity_positions[r].
    for (int r = 0; r < H.matrix.rows(); ++r) {
        std::uint8_t parity = 0;
        for (const auto pos : H.data_positions)
            parity ^= static_cast<std::uint8_t>(H.matrix.get(r, pos) &
                                                word[static_cast<std::size_t>(pos)]);
        word[static_cast<std::size_t>(H.parity_positions[static_cast<std::size_t>(r)])] =
            parity;
    }
    return word;
}

Bits syndrome(const Bits& word, const CheckMatrix& H) {
    require_bits(word, H.word_bits(), "syndrome");
    Bits s(static_cast<std::size_t>(H.matrix.rows()), 0);
    for (int r = 0; r < H.matrix.rows(); ++r) {
        std::uint8_t acc = 0;
        const auto row = H.matrix.row(r);
        for (std::int64_t c = 0; c < H.word_bits(); ++c)
            acc ^= static_cast<std::uint8_t>(row[static_cast<std::size_t>(c)] &
                                             word[static_cast<std::size_t>(c)]);
        s[static_cast<std::size_t>(r)] = acc;
    }
    return s;
}

DecodeOutcome decode(const Bits& word, const CheckMatrix& H) {
    const Bits s = syndrome(word, H);
    const auto weight = std::count(s.begin(), s.end(), std::uint8_t{1});

    DecodeOutcome outcome;
    if (weight == 0) {
        outcome.kind = DecodeKind::no_error;
        outcome.data = extract_payload(word, H);
        return outcome;
    }
    if (weight % 2 == 0) {
        outcome.kind = DecodeKind::double_error;
        return outcome;
    }
    // Odd-weight syndrome: a single flipped column reproduces it exactly.
    for (std::int64_t c = 0; c < H.word_bits(); ++c) {
        bool match = true;
        for (int r = 0; match && r < H.matrix.rows(); ++r)
            match = H.matrix.get(r, c) == (s[static_cast<std::size_t>(r)] != 0);
        if (match) {
            Bits fixed = word;
            fixed[static_cast<std::size_t>(c)] ^= 1;
            outcome.kind = DecodeKind::corrected;
            outcome.position = c;
            outcome.data = extract_payload(fixed, H);
            return outcome;
        }
    }
    outcome.kind = DecodeKind::multi_error;
    return outcome;
}

Codec::Codec(CheckMatrix H) : H_(std::move(H)) {
    if (H_.matrix.rows() > 64)
        throw std::invalid_argument("Codec: more than 64 check bits unsupported");
    packed_cols_.reserve(static_cast<std::size_t>(H_.word_bits()));
    for (std::int64_t c = 0; c < H_.word_bits(); ++c) {
        std::uint64_t packed = 0;
        for (int r = 0; r < H_.matrix.rows(); ++r)
            if (H_.matrix.get(r, c)) packed |= std::uint64_t{1} << r;
        packed_cols_.push_back(packed);
    }
    column_of_.reserve(packed_cols_.size());
    for (std::size_t c = 0; c < packed_cols_.size(); ++c)
        column_of_.emplace(packed_cols_[c], static_cast<std::int64_t>(c));
}

Bits Codec::encode(const Bits& data) const {
    require_bits(data, data_bits(), "encode");
    Bits word(static_cast<std::size_t>(word_bits()), 0);
    std::uint64_t parity = 0;
    for (std::size_t i = 0; i < H_.data_positions.size(); ++i) {
        const auto pos = static_cast<std::size_t>(H_.data_positions[i]);
        word[pos] = data[i];
        if (data[i]) parity ^= packed_cols_[pos];
    }
    for (int r = 0; r < H_.matrix.rows(); ++r)
        word[static_cast<std::size_t>(H_.parity_positions[static_cast<std::size_t>(r)])] =
            static_cast<std::uint8_t>((parity >> r) & 1);
    return word;
}

std::uint64_t Codec::packed_syndrome(const Bits& word) const {
    require_bits(word, word_bits(), "syndrome");
    std::uint64_t s = 0;
    for (std::size_t c = 0; c < packed_cols_.size(); ++c)
        if (word[c]) s ^= packed_cols_[c];
    return s;
}

std::optional<std::int64_t> Codec::find_column(std::uint64_t syndrome) const {
    const auto it = column_of_.find(syndrome);
    if (it == column_of_.end()) return std::nullopt;
    return it->second;
}

DecodeOutcome Codec::decode(const Bits& word) const {
    const std::uint64_t s = packed_syndrome(word);

    DecodeOutcome outcome;
    if (s == 0) {
        outcome.kind = DecodeKind::no_error;
        outcome.data = extract_payload(word, H_);
        return outcome;
    }
    if (std::popcount(s) % 2 == 0) {
        outcome.kind = DecodeKind::double_error;
        return outcome;
    }
    if (const auto column = find_column(s)) {
        Bits fixed = word;
        fixed[static_cast<std::size_t>(*column)] ^= 1;
        outcome.kind = DecodeKind::corrected;
        outcome.position = *column;
        outcome.data = extract_payload(fixed, H_);
        return outcome;
    }
    outcome.kind = DecodeKind::multi_error;
    return outcome;
}

} // namespace hsiao
