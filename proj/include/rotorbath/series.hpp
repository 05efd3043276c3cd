#pragma once

#include <string>
#include <vector>

namespace rotorbath {

// Per-kick entropy (nats) and mean energy of one run.
struct EntropySeries {
    std::vector<int> kicks;
    std::vector<double> entropy;
    std::vector<double> energy;
    std::string label;

    std::size_t size() const noexcept { return kicks.size(); }
    // Equal lengths and strictly increasing kicks.
    bool consistent() const;
};

} // namespace rotorbath
