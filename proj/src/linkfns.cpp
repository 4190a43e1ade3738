#include "pmj/linkfns.hpp"

#include <algorithm>
#include <string>

#include "pmj/errors.hpp"

namespace pmj {

char kind_char(LinkKind kind) noexcept {
    switch (kind) {
        case LinkKind::Wigner: return 'W';
        case LinkKind::Toeplitz: return 'T';
        case LinkKind::Hankel: return 'H';
        case LinkKind::ReverseCirculant: return 'R';
        case LinkKind::SymmetricCirculant: return 'S';
    }
    return '?';
}

std::optional<LinkKind> kind_from_char(char c) noexcept {
    switch (c) {
        case 'W': return LinkKind::Wigner;
        case 'T': return LinkKind::Toeplitz;
        case 'H': return LinkKind::Hankel;
        case 'R': return LinkKind::ReverseCirculant;
        case 'S': return LinkKind::SymmetricCirculant;
        default: return std::nullopt;
    }
}

std::string_view kind_name(LinkKind kind) noexcept {
    switch (kind) {
        case LinkKind::Wigner: return "Wigner";
        case LinkKind::Toeplitz: return "Toeplitz";
        case LinkKind::Hankel: return "Hankel";
        case LinkKind::ReverseCirculant: return "ReverseCirculant";
        case LinkKind::SymmetricCirculant: return "SymmetricCirculant";
    }
    return "?";
}

int property_b_bound(LinkKind kind) noexcept {
    switch (kind) {
        case LinkKind::Toeplitz:
        case LinkKind::SymmetricCirculant:
            return 2;
        default:
            return 1;
    }
}

namespace {

void check_vertex(std::int64_t n, Vertex v, const char* what) {
    if (v < 0 || v >= n) {
        throw InputError(std::string(what) + " vertex " + std::to_string(v) +
                         " outside [0, " + std::to_string(n) + ")");
    }
}

void check_size(std::int64_t n) {
    if (n < 1) throw InputError("matrix size must be at least 1, got " + std::to_string(n));
}

}  // namespace

LValue link_eval(LinkKind kind, std::int64_t n, Vertex i, Vertex j) {
    check_size(n);
    check_vertex(n, i, "row");
    check_vertex(n, j, "column");
    return link_eval_unchecked(kind, n, i, j);
}

SolveSet link_solve_unchecked(LinkKind kind, std::int64_t n, Vertex prev, const LValue& target) noexcept {
    SolveSet out;
    if (target.kind != kind) return out;

    auto push = [&](Vertex x) {
        if (x < 0 || x >= n) return;
        for (int i = 0; i < out.size; ++i) {
            if (out.items[i] == x) return;
        }
        if (link_eval_unchecked(kind, n, prev, x) == target) out.items[out.size++] = x;
    };

    switch (kind) {
        case LinkKind::Wigner:
            if (target.first == prev) push(target.second);
            if (target.second == prev) push(target.first);
            break;
        case LinkKind::Toeplitz:
            push(prev - target.first);
            push(prev + target.first);
            break;
        case LinkKind::Hankel:
            push(target.first - prev);
            break;
        case LinkKind::ReverseCirculant:
            if (target.first >= 0 && target.first < n) push(((target.first - prev) % n + n) % n);
            break;
        case LinkKind::SymmetricCirculant:
            if (target.first >= 0 && target.first <= n) {
                push(((prev - target.first) % n + n) % n);
                push(((prev + target.first) % n + n) % n);
            }
            break;
    }
    if (out.size == 2 && out.items[0] > out.items[1]) std::swap(out.items[0], out.items[1]);
    return out;
}

std::vector<Vertex> link_solve(LinkKind kind, std::int64_t n, Vertex prev, const LValue& target) {
    check_size(n);
    check_vertex(n, prev, "previous");
    const SolveSet set = link_solve_unchecked(kind, n, prev, target);
    return {set.begin(), set.end()};
}

int property_p_count(LinkKind kind, std::int64_t n) {
    if (n < 2) throw InputError("property_p_count needs n >= 2");
    int best = 0;
    for (Vertex i = 0; i < n; ++i) {
        for (Vertex j = i + 1; j < n; ++j) {
            int matches = 0;
            for (Vertex k = 0; k < n; ++k) {
                if (link_eval_unchecked(kind, n, k, i) == link_eval_unchecked(kind, n, k, j)) ++matches;
            }
            best = std::max(best, matches);
        }
    }
    return best;
}

std::int64_t distinct_lvalue_count(LinkKind kind, std::int64_t n) {
    check_size(n);
    switch (kind) {
        case LinkKind::Wigner: return n * (n + 1) / 2;
        case LinkKind::Toeplitz: return n;
        case LinkKind::Hankel: return 2 * n - 1;
        case LinkKind::ReverseCirculant: return n;
        case LinkKind::SymmetricCirculant: return n / 2 + 1;
    }
    return 0;
}

std::int64_t lvalue_id(const LValue& value, std::int64_t n) noexcept {
    if (value.kind == LinkKind::Wigner) {
        // Row-major position of (a, b), a <= b, in the upper triangle.
        const std::int64_t a = value.first;
        const std::int64_t b = value.second;
        return a * n - a * (a - 1) / 2 + (b - a);
    }
    return value.first;
}

}  // namespace pmj
