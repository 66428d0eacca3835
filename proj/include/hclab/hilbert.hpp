#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hclab {

// Degreewise dimension record of a graded space, defined for every degree up
// to the stated bound; missing entries mean dimension zero.
struct HilbertSeries {
    int bound = 0;
    std::map<int, size_t> dims;

    size_t at(int d) const {
        auto it = dims.find(d);
        return it == dims.end() ? 0 : it->second;
    }
    void set(int d, size_t v) {
        if (v) dims[d] = v; else dims.erase(d);
    }
    bool operator==(const HilbertSeries& o) const { return bound == o.bound && dims == o.dims; }
};

// Per-degree ordered basis labels; dimension at d is the label count.
struct GradedSpace {
    int d_min = 0, d_max = -1;
    std::map<int, std::vector<std::string>> labels;

    size_t dim(int d) const {
        auto it = labels.find(d);
        return it == labels.end() ? 0 : it->second.size();
    }
    HilbertSeries hilbert() const {
        HilbertSeries h;
        h.bound = d_max;
        for (auto& [d, l] : labels) h.set(d, l.size());
        return h;
    }
};

} // namespace hclab
