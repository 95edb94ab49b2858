#pragma once

#include <cstddef>

#include "attnkern/matrix.hpp"

namespace attnkern {

// Learned feature locations z_1..z_M with importance weights alpha_1..alpha_M
// for one layer/head. Weights are stored as log(alpha_m), which keeps alpha
// strictly positive for any parameter value.
struct FeatureMap {
    std::size_t dim = 0;  // input dimension d
    Matrix locations;     // M x d, row m = z_m
    Vector log_weights;   // length M, entry m = log(alpha_m)

    std::size_t count() const { return locations.rows(); }

    void validate() const {
        if (count() < 1) throw argument_error("FeatureMap: need at least one feature");
        if (locations.cols() != dim)
            throw argument_error("FeatureMap: locations shape does not match dim");
        if (log_weights.size() != count())
            throw argument_error("FeatureMap: log_weights length does not match count");
        if (!locations.all_finite())
            throw argument_error("FeatureMap: non-finite feature location");
        for (double w : log_weights)
            if (!std::isfinite(w)) throw argument_error("FeatureMap: non-finite log weight");
    }
};

} // namespace attnkern
