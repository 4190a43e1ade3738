#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace pmj {

/// The five link functions. Vertices are 0-based: i, j in {0, ..., n-1}.
///
///   Wigner               L(i,j) = (min(i,j), max(i,j))
///   Toeplitz             L(i,j) = |i - j|
///   Hankel               L(i,j) = i + j
///   ReverseCirculant     L(i,j) = (i + j) mod n
///   SymmetricCirculant   L(i,j) = min(d, n - d),  d = |i - j|
enum class LinkKind : std::uint8_t {
    Wigner,
    Toeplitz,
    Hankel,
    ReverseCirculant,
    SymmetricCirculant,
};

inline constexpr std::array<LinkKind, 5> kAllKinds = {
    LinkKind::Wigner, LinkKind::Toeplitz, LinkKind::Hankel,
    LinkKind::ReverseCirculant, LinkKind::SymmetricCirculant,
};

/// Serialized form: W, T, H, R, S.
char kind_char(LinkKind kind) noexcept;
std::optional<LinkKind> kind_from_char(char c) noexcept;
std::string_view kind_name(LinkKind kind) noexcept;

/// Property B bound: the most solutions x of L(p, x) = t for any p, t, n.
int property_b_bound(LinkKind kind) noexcept;

using Vertex = std::int64_t;

/// An L-value tagged with its kind; values of different kinds never compare
/// equal. `second` is only meaningful for Wigner, where first <= second.
struct LValue {
    LinkKind kind{LinkKind::Toeplitz};
    std::int64_t first{0};
    std::int64_t second{0};

    friend bool operator==(const LValue&, const LValue&) = default;
};

/// Unchecked evaluation for hot loops; i, j must lie in [0, n).
inline LValue link_eval_unchecked(LinkKind kind, std::int64_t n, Vertex i, Vertex j) noexcept {
    switch (kind) {
        case LinkKind::Wigner:
            return {kind, i < j ? i : j, i < j ? j : i};
        case LinkKind::Toeplitz:
            return {kind, i > j ? i - j : j - i, 0};
        case LinkKind::Hankel:
            return {kind, i + j, 0};
        case LinkKind::ReverseCirculant:
            return {kind, (i + j) % n, 0};
        case LinkKind::SymmetricCirculant: {
            const std::int64_t d = i > j ? i - j : j - i;
            return {kind, d < n - d ? d : n - d, 0};
        }
    }
    return {kind, 0, 0};
}

/// L(i, j) for a matrix of size n. Throws InputError when a vertex is out of
/// range or n < 1.
LValue link_eval(LinkKind kind, std::int64_t n, Vertex i, Vertex j);

/// Small fixed-capacity solution set; Property B keeps it at two entries.
struct SolveSet {
    std::array<Vertex, 2> items{};
    int size{0};

    const Vertex* begin() const noexcept { return items.data(); }
    const Vertex* end() const noexcept { return items.data() + size; }
};

/// All x in [0, n) with L(prev, x) == target, without range checks on prev.
SolveSet link_solve_unchecked(LinkKind kind, std::int64_t n, Vertex prev, const LValue& target) noexcept;

/// Sorted {x in [0, n) : link_eval(kind, n, prev, x) == target}.
std::vector<Vertex> link_solve(LinkKind kind, std::int64_t n, Vertex prev, const LValue& target);

/// max over i != j of #{k : L(k, i) == L(k, j)}. Requires n >= 2.
int property_p_count(LinkKind kind, std::int64_t n);

/// Number of distinct L-values taken over [0, n)^2.
std::int64_t distinct_lvalue_count(LinkKind kind, std::int64_t n);

/// Dense id in [0, distinct_lvalue_count) for an L-value of a size-n matrix.
std::int64_t lvalue_id(const LValue& value, std::int64_t n) noexcept;

}  // namespace pmj
