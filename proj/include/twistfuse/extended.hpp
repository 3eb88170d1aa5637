#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>

namespace twistfuse {

/// Variable-precision real for stress runs; needs libmpfr and libgmp at link time.
using Extended = boost::multiprecision::mpfr_float;

/// Sets the working precision of Extended for the lifetime of the scope.
class PrecisionScope {
public:
    explicit PrecisionScope(int bits) : saved_(Extended::default_precision()) {
        Extended::default_precision(digits10(bits));
    }
    ~PrecisionScope() { Extended::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

    static unsigned digits10(int bits) { return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1; }

private:
    unsigned saved_;
};

} // namespace twistfuse
