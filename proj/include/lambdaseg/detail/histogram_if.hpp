#pragma once

#include "lambdaseg/errors.hpp"

namespace lambdaseg {

template <class Predicate>
Histogram histogram_if(const ImageGrid& image, Predicate keep) {
    Histogram hist;
    hist.counts.assign(static_cast<std::size_t>(image.maxval()) + 1, 0);
    for (std::size_t i = 0; i < image.size(); ++i) {
        if (keep(i)) {
            ++hist.counts[image[i]];
            ++hist.total;
        }
    }
    if (hist.total == 0) {
        throw EmptySelectionError("histogram: no pixels selected");
    }
    return hist;
}

}  // namespace lambdaseg
