#pragma once

#include "egs/dataset.hpp"
#include "egs/graph.hpp"

#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <unordered_map>

namespace egs {

struct CiDecision {
    bool independent;
    double p_value;
    double statistic;
};

/// Data cannot support the requested test (zero variance, singular
/// correlation submatrix, or zero degrees of freedom).
struct DegenerateData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fisher z on the sample partial correlation. Throws DegenerateData.
CiDecision fisher_z_test(const Dataset& data, NodeId x, NodeId y, std::span<const NodeId> given,
                         double alpha);

/// G^2 likelihood-ratio test on the (x, y) contingency tables stratified by
/// `given`; df = (|x|-1)(|y|-1) * prod |s|. Throws DegenerateData.
CiDecision gsquare_test(const Dataset& data, NodeId x, NodeId y, std::span<const NodeId> given,
                        double alpha);

bool d_separated(const Dag& truth, NodeId x, NodeId y, std::span<const NodeId> given);

/// Independent iff d-separated; p is 1 or 0.
CiDecision dsep_oracle(const Dag& truth, NodeId x, NodeId y, std::span<const NodeId> given);

/// I(x, y | S) as consumed by PC. Implementations must be safe to call
/// concurrently.
class IndependenceTest {
public:
    virtual ~IndependenceTest() = default;
    virtual CiDecision test(NodeId x, NodeId y, std::span<const NodeId> given,
                            double alpha) const = 0;
    virtual int num_variables() const = 0;
};

namespace detail {

// p-values memoised by (pair, conditioning set); alpha only enters when the
// decision is taken. Only used for graphs with at most 64 nodes.
class PValueMemo {
public:
    struct Entry {
        double p_value;
        double statistic;
    };
    bool enabled() const { return enabled_; }
    void enable(int num_variables) { enabled_ = num_variables <= 64; }
    bool find(NodeId x, NodeId y, std::span<const NodeId> given, Entry& out) const;
    void store(NodeId x, NodeId y, std::span<const NodeId> given, Entry e) const;

private:
    struct Key {
        std::uint64_t pair;
        std::uint64_t mask;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            return std::hash<std::uint64_t>{}(k.pair * 0x9E3779B97F4A7C15ULL ^ k.mask);
        }
    };
    static Key key(NodeId x, NodeId y, std::span<const NodeId> given);

    bool enabled_ = false;
    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<Key, Entry, KeyHash> table_;
};

}  // namespace detail

/// Degenerate cases are decided "dependent".
class FisherZTest final : public IndependenceTest {
public:
    explicit FisherZTest(const Dataset& data, bool memoize = true);
    CiDecision test(NodeId x, NodeId y, std::span<const NodeId> given,
                    double alpha) const override;
    int num_variables() const override { return data_.num_variables(); }

private:
    const Dataset& data_;
    detail::PValueMemo memo_;
};

/// Degenerate cases are decided "independent" unless configured otherwise.
class GSquareTest final : public IndependenceTest {
public:
    explicit GSquareTest(const Dataset& data, bool degenerate_is_independent = true,
                         bool memoize = true);
    CiDecision test(NodeId x, NodeId y, std::span<const NodeId> given,
                    double alpha) const override;
    int num_variables() const override { return data_.num_variables(); }

private:
    const Dataset& data_;
    bool degenerate_is_independent_;
    detail::PValueMemo memo_;
};

class DSeparationTest final : public IndependenceTest {
public:
    explicit DSeparationTest(Dag truth) : truth_(std::move(truth)) {}
    CiDecision test(NodeId x, NodeId y, std::span<const NodeId> given,
                    double alpha) const override;
    int num_variables() const override { return truth_.num_nodes(); }

private:
    Dag truth_;
};

}  // namespace egs
