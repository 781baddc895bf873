#ifndef LEMICA_LEX_HPP
#define LEMICA_LEX_HPP

#include <vector>

namespace lemica {

// Descending-sorted vector of cache-edge weights. The empty signature is
// the cache-free path and compares smaller than everything.
struct LexSignature {
    std::vector<double> weights;

    bool sorted_descending() const {
        for (size_t k = 0; k + 1 < weights.size(); ++k) {
            if (weights[k] < weights[k + 1]) return false;
        }
        return true;
    }
};

// -1 / 0 / +1 lexicographic comparison; on an equal prefix the shorter
// signature is smaller. Exact floating comparison, no epsilon.
int compare_lex(const LexSignature& a, const LexSignature& b);

}  // namespace lemica

#endif
