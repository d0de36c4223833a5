/**
 * @file
 * @brief Reference experimentally-optimal α values for the convection-diffusion family.
 *
 * Covers p ∈ {0, 0.5}, q ∈ {0, 1, 10, 100}, m ∈ {10, 20, 40, 80}. The same
 * numbers ship as data/alpha_table.json, which `--alpha-table` can replace.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace ave {

enum class Method { Picard, PicardHss, HssLike, HssLikeResidual };

[[nodiscard]] inline std::string to_string(Method m) {
    switch (m) {
        case Method::Picard:
            return "Picard";
        case Method::PicardHss:
            return "PicardHss";
        case Method::HssLike:
            return "HssLike";
        case Method::HssLikeResidual:
            return "HssLikeResidual";
    }
    return "Unknown";
}

[[nodiscard]] inline std::optional<Method> parse_method(std::string_view s) {
    if (s == "Picard" || s == "picard") {
        return Method::Picard;
    }
    if (s == "PicardHss" || s == "picard-hss" || s == "picard_hss") {
        return Method::PicardHss;
    }
    if (s == "HssLike" || s == "hss-like" || s == "hss_like") {
        return Method::HssLike;
    }
    if (s == "HssLikeResidual" || s == "hss-like-residual" || s == "hss_like_residual") {
        return Method::HssLikeResidual;
    }
    return std::nullopt;
}

struct AlphaEntry {
    double p;
    double q;
    std::size_t m;
    double hss_like;
    double picard_hss;
};

// clang-format off
inline constexpr std::array<AlphaEntry, 32> reference_alphas{ {
    // p = 0
    { 0.0,   0.0, 10, 1.3, 1.1 }, { 0.0,   0.0, 20, 1.0, 0.5 }, { 0.0,   0.0, 40, 1.0, 0.2 }, { 0.0,   0.0, 80, 1.0, 0.1 },
    { 0.0,   1.0, 10, 1.4, 1.1 }, { 0.0,   1.0, 20, 1.0, 0.6 }, { 0.0,   1.0, 40, 1.0, 0.3 }, { 0.0,   1.0, 80, 1.0, 0.2 },
    { 0.0,  10.0, 10, 1.7, 1.6 }, { 0.0,  10.0, 20, 1.1, 0.8 }, { 0.0,  10.0, 40, 1.0, 0.4 }, { 0.0,  10.0, 80, 1.0, 0.2 },
    { 0.0, 100.0, 10, 2.5, 2.4 }, { 0.0, 100.0, 20, 2.7, 2.7 }, { 0.0, 100.0, 40, 1.7, 1.8 }, { 0.0, 100.0, 80, 1.2, 0.9 },
    // p = 0.5
    { 0.5,   0.0, 10, 2.4, 2.2 }, { 0.5,   0.0, 20, 2.2, 2.0 }, { 0.5,   0.0, 40, 2.1, 1.8 }, { 0.5,   0.0, 80, 2.0, 1.8 },
    { 0.5,   1.0, 10, 2.4, 2.3 }, { 0.5,   1.0, 20, 2.2, 2.0 }, { 0.5,   1.0, 40, 2.1, 1.8 }, { 0.5,   1.0, 80, 2.0, 1.8 },
    { 0.5,  10.0, 10, 2.6, 2.4 }, { 0.5,  10.0, 20, 2.3, 2.3 }, { 0.5,  10.0, 40, 2.2, 2.0 }, { 0.5,  10.0, 80, 2.1, 1.9 },
    { 0.5, 100.0, 10, 3.4, 3.5 }, { 0.5, 100.0, 20, 2.9, 3.0 }, { 0.5, 100.0, 40, 2.3, 2.3 }, { 0.5, 100.0, 80, 2.3, 2.1 },
} };
// clang-format on

/// Looks up α for an HSS-type method; Picard has no parameter and yields nullopt.
template <typename Range = decltype(reference_alphas)>
[[nodiscard]] std::optional<double> table_alpha(Method method, double p, double q, std::size_t m, const Range &table = reference_alphas) {
    for (const AlphaEntry &e : table) {
        if (e.m == m && std::abs(e.p - p) < 1e-12 && std::abs(e.q - q) < 1e-12) {
            switch (method) {
                case Method::HssLike:
                case Method::HssLikeResidual:
                    return e.hss_like;
                case Method::PicardHss:
                    return e.picard_hss;
                case Method::Picard:
                    return std::nullopt;
            }
        }
    }
    return std::nullopt;
}

}  // namespace ave
