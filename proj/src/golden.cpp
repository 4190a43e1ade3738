#include "pmj/golden.hpp"

namespace pmj {

const std::vector<GoldenRow>& golden_rows() {
    static const std::vector<GoldenRow> rows = {
        // Toeplitz / Hankel
        {"TTHH", "aabb", 1, 1},
        {"THTH", "abab", 2, 3},
        {"TTTTHH", "aabbcc", 1, 1},
        {"TTTTHH", "abbacc", 1, 1},
        {"TTTTHH", "ababcc", 2, 3},
        {"HHHHTT", "aabbcc", 1, 1},
        {"HHHHTT", "abbacc", 1, 1},
        {"HHHHTT", "ababcc", 0, 1},
        {"TTHTTH", "aabccb", 1, 1},
        {"TTHTTH", "abcbac", 1, 2},
        {"TTHTTH", "abcabc", 1, 2},
        {"HHTHHT", "aabccb", 1, 1},
        {"HHTHHT", "abcbac", 1, 2},
        {"HHTHHT", "abcabc", 0, 1},
        // Reverse Circulant / Hankel
        {"RRHH", "aabb", 1, 1},
        {"RHRH", "abab", 0, 1},
        {"RRRRHH", "aabbcc", 1, 1},
        {"RRRRHH", "abbacc", 1, 1},
        {"RRRRHH", "ababcc", 0, 1},
        {"HHHHRR", "aabbcc", 1, 1},
        {"HHHHRR", "abbacc", 1, 1},
        {"HHHHRR", "ababcc", 0, 1},
        {"RRHRRH", "aabccb", 1, 1},
        {"RRHRRH", "abcbac", 0, 1},
        {"RRHRRH", "abcabc", 2, 3},
        {"HHRHHR", "aabccb", 1, 1},
        {"HHRHHR", "abcbac", 0, 1},
        {"HHRHHR", "abcabc", 1, 2},
        // Symmetric Circulant / Hankel
        {"SSHH", "aabb", 1, 1},
        {"SHSH", "abab", 2, 3},
        {"SSSSHH", "aabbcc", 1, 1},
        {"SSSSHH", "abbacc", 1, 1},
        {"SSSSHH", "ababcc", 1, 1},
        {"HHHHSS", "aabbcc", 1, 1},
        {"HHHHSS", "abbacc", 1, 1},
        {"HHHHSS", "ababcc", 0, 1},
        {"HHHSHS", "aabcbc", 1, 2},
        {"HHHSHS", "abbcac", 1, 2},
        {"HHHSHS", "abacbc", 0, 1},
        {"HHSHHS", "aabccb", 1, 1},
        {"HHSHHS", "abcbac", 1, 2},
        {"HHSHHS", "abcabc", 0, 1},
    };
    return rows;
}

}  // namespace pmj
