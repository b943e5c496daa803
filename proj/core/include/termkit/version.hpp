#ifndef TERMKIT_VERSION_HPP
#define TERMKIT_VERSION_HPP

namespace termkit {

inline constexpr const char* kVersion = "0.1.0";

// Stamped into evaluation reports: scores are only comparable across runs
// that agree on these metric definitions.
inline constexpr const char* kMetricStamp =
    "accuracy=subsequence;window=multiset-overlap;ter=greedy-shift;"
    "bleu=corpus-4";

}  // namespace termkit

#endif
