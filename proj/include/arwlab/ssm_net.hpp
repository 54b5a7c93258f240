#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "arwlab/df_engine.hpp"
#include "arwlab/lattice.hpp"
#include "arwlab/rng.hpp"

namespace arwlab {

// Site processor state: q ordinary and r activation messages received.
struct ProcessorState {
    long long q = 0;
    long long r = 0;
    auto operator<=>(const ProcessorState&) const = default;
};

enum class MsgKind { Ordinary, Activation };

struct Message {
    Site target;
    MsgKind kind = MsgKind::Ordinary;
};

// Toppling function f(q, r) = min{q, max{q - (q mod kappa), r}}.
// Non-decreasing in q and in r; f(q, q) = q; f(q, 0) = q - (q mod kappa).
long long toppling_f(long long q, long long r, long long kappa);

// Per-site sequences of uniform directions y^x_j, revealed lazily from seeded
// streams; explicit prefixes can be installed for deterministic fixtures.
class DirectionTapes {
public:
    DirectionTapes(int d, std::uint64_t seed);

    int dim() const { return d_; }
    void set_prefix(const Site& x, std::vector<int> dirs);
    // 0-based tape index; direction in [0, 2d), axis = dir/2, + for even
    int at(const Site& x, std::size_t j);
    Site neighbor(const Site& x, std::size_t j);

private:
    int d_;
    std::uint64_t seed_;
    std::map<Site, std::vector<int>> tape_;
    std::map<Site, Rng> stream_;
};

// Processes one message at x: increments the matching counter and emits
// Delta = f(new) - f(old) ordinary messages to x + y^x_j for the fresh tape
// indices j in (f(old), f(new)].
std::pair<ProcessorState, std::vector<Message>> receive(
    const Site& x, ProcessorState state, MsgKind kind, DirectionTapes& tapes,
    long long kappa);

struct SsmWorld {
    int d = 1;
    long long kappa = 2;
    std::map<Site, ProcessorState> state;
    std::optional<Box> domain;
    long long dissipated = 0;
    std::map<Site, long long> odometer;  // messages processed per site
    long long steps = 0;

    long long retained_at(const Site& x) const;
    std::map<Site, long long> retained() const;
};

struct SsmStabilizeOptions {
    OrderPolicy policy = OrderPolicy::Fifo;
    std::uint64_t policy_seed = 1;
    long long max_steps = 50'000'000;
};

struct SsmResult {
    StabilizeStatus status = StabilizeStatus::Stabilized;
    long long steps = 0;
};

// Drains the message queue; final retained counts and message-odometer are
// invariant under the order policy for fixed tapes. Messages routed outside
// the domain are counted as dissipated and dropped before processing.
SsmResult stabilize_ssm(SsmWorld& w, std::vector<Message> initial,
                        DirectionTapes& tapes,
                        const SsmStabilizeOptions& opts = {});

// Stop rule for the diagonal walk: called with (hops taken, current site);
// returning true halts the message.
using SsmStopRule = std::function<bool(long long, const Site&)>;

struct OffSleepSsmResult {
    std::vector<Site> positions;
    bool timed_out = false;
};

// Diagonal off-sleep procedure: every delivered ordinary message is paired
// with an activation message, so f(q, q) = q forces exactly one forwarded
// message per delivery and each walker performs an independent simple random
// walk until its stopping rule fires. All site states stay on the diagonal.
// Rejects worlds holding a site with q != r.
OffSleepSsmResult off_sleep_ssm(SsmWorld& w, const std::vector<Site>& walkers,
                                const SsmStopRule& stop, DirectionTapes& tapes,
                                long long max_hops_per_walker = 1'000'000);

}  // namespace arwlab
