#pragma once

#include <string_view>
#include <vector>

namespace pmj {

/// One published (monomial, word, p) value for two-color words.
struct GoldenRow {
    std::string_view monomial;
    std::string_view word;
    int numerator;
    int denominator;

    double value() const noexcept { return static_cast<double>(numerator) / denominator; }
};

/// Rows of the two published tables, T/H first, then H/R and H/S.
const std::vector<GoldenRow>& golden_rows();

}  // namespace pmj
