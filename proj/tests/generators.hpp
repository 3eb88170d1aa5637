#pragma once

#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "twistfuse/twistfuse.hpp"

namespace gen {

using twistfuse::Int;
using twistfuse::Labels;

/// Small seeded generator for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    Int integer(Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng_); }

    Labels labels(int l, Int lo, Int hi) {
        Labels w(l);
        for (auto& x : w) x = integer(lo, hi);
        return w;
    }

    Labels dominant(int l, Int max) { return labels(l, 0, max); }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(integer(0, static_cast<Int>(v.size()) - 1))];
    }

private:
    std::mt19937_64 rng_;
};

inline std::string show(const Labels& w) {
    std::ostringstream o;
    o << "(";
    for (std::size_t i = 0; i < w.size(); ++i) o << (i ? "," : "") << w[i];
    o << ")";
    return o.str();
}

/// Runs body(gen) for `cases` draws; each draw gets its own seed so failures are reproducible.
template <class F>
void for_all(int cases, F&& body, std::uint64_t base_seed = 0x7f4a7c15) {
    for (int i = 0; i < cases; ++i) {
        const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(i);
        SCOPED_TRACE("seed " + std::to_string(seed));
        Gen g(seed);
        body(g);
        if (::testing::Test::HasFatalFailure()) return;
    }
}

} // namespace gen
