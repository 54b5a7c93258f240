#include "arwlab/ssm_net.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace arwlab {

namespace {

std::uint64_t site_key(const Site& x) {
    std::uint64_t h = 0x9e6c63d0876a9a47ULL;
    for (Coord c : x.c) h = splitmix64(h ^ static_cast<std::uint64_t>(c));
    return h;
}

}  // namespace

long long toppling_f(long long q, long long r, long long kappa) {
    if (kappa < 1) throw std::invalid_argument("toppling_f: kappa must be >= 1");
    if (q < 0 || r < 0) throw std::invalid_argument("toppling_f: negative counter");
    return std::min(q, std::max(q - (q % kappa), r));
}

DirectionTapes::DirectionTapes(int d, std::uint64_t seed) : d_(d), seed_(seed) {
    if (d < 1) throw std::invalid_argument("DirectionTapes: d must be >= 1");
}

void DirectionTapes::set_prefix(const Site& x, std::vector<int> dirs) {
    for (int v : dirs)
        if (v < 0 || v >= 2 * d_)
            throw std::invalid_argument("DirectionTapes: direction out of range");
    if (tape_.count(x) && tape_[x].size() > dirs.size())
        throw std::logic_error("DirectionTapes: cannot install a prefix after reveal");
    tape_[x] = std::move(dirs);
}

int DirectionTapes::at(const Site& x, std::size_t j) {
    auto& t = tape_[x];
    if (t.size() <= j) {
        auto it = stream_.find(x);
        if (it == stream_.end())
            it = stream_.emplace(x, Rng(mix_seed(seed_, site_key(x)))).first;
        while (t.size() <= j)
            t.push_back(static_cast<int>(it->second.uniform_below(2 * d_)));
    }
    return t[j];
}

Site DirectionTapes::neighbor(const Site& x, std::size_t j) {
    const int dir = at(x, j);
    return x.shifted(dir / 2, dir % 2 == 0 ? +1 : -1);
}

std::pair<ProcessorState, std::vector<Message>> receive(
    const Site& x, ProcessorState state, MsgKind kind, DirectionTapes& tapes,
    long long kappa) {
    const long long f_old = toppling_f(state.q, state.r, kappa);
    if (kind == MsgKind::Ordinary)
        ++state.q;
    else
        ++state.r;
    const long long f_new = toppling_f(state.q, state.r, kappa);
    std::vector<Message> out;
    for (long long j = f_old; j < f_new; ++j)
        out.push_back(Message{tapes.neighbor(x, static_cast<std::size_t>(j)),
                              MsgKind::Ordinary});
    return {state, std::move(out)};
}

long long SsmWorld::retained_at(const Site& x) const {
    auto it = state.find(x);
    if (it == state.end()) return 0;
    return it->second.q - toppling_f(it->second.q, it->second.r, kappa);
}

std::map<Site, long long> SsmWorld::retained() const {
    std::map<Site, long long> out;
    for (auto& [x, s] : state) {
        const long long n = retained_at(x);
        if (n != 0) out[x] = n;
    }
    return out;
}

namespace {

// queued messages with policy-driven selection; sizes stay small enough that
// linear scans are fine
struct Pending {
    std::deque<Message> q;

    std::size_t pick(OrderPolicy policy, Rng& rng) const {
        switch (policy) {
            case OrderPolicy::Fifo:
                return 0;
            case OrderPolicy::RandomParticle:
                return static_cast<std::size_t>(rng.uniform_below(q.size()));
            case OrderPolicy::SiteSweep: {
                std::size_t best = 0;
                for (std::size_t i = 1; i < q.size(); ++i)
                    if (q[i].target < q[best].target) best = i;
                return best;
            }
            case OrderPolicy::MaxOccupancy: {
                std::map<Site, long long> load;
                for (auto& m : q) ++load[m.target];
                std::size_t best = 0;
                for (std::size_t i = 1; i < q.size(); ++i) {
                    if (load[q[i].target] > load[q[best].target] ||
                        (load[q[i].target] == load[q[best].target] &&
                         q[i].target < q[best].target))
                        best = i;
                }
                return best;
            }
        }
        return 0;
    }
};

}  // namespace

SsmResult stabilize_ssm(SsmWorld& w, std::vector<Message> initial,
                        DirectionTapes& tapes, const SsmStabilizeOptions& opts) {
    SsmResult res;
    Pending pending;
    auto route = [&](Message m) {
        if (w.domain && !w.domain->contains(m.target)) {
            ++w.dissipated;
            return;
        }
        pending.q.push_back(std::move(m));
    };
    for (Message& m : initial) route(std::move(m));

    Rng rng(mix_seed(opts.policy_seed, 0x55aULL));
    while (!pending.q.empty()) {
        if (res.steps >= opts.max_steps) {
            res.status = StabilizeStatus::BudgetExhausted;
            return res;
        }
        const std::size_t i = pending.pick(opts.policy, rng);
        const Message m = pending.q[i];
        pending.q.erase(pending.q.begin() + static_cast<std::ptrdiff_t>(i));
        auto [next, out] = receive(m.target, w.state[m.target], m.kind, tapes, w.kappa);
        w.state[m.target] = next;
        ++w.odometer[m.target];
        ++w.steps;
        ++res.steps;
        for (Message& o : out) route(std::move(o));
    }
    res.status = StabilizeStatus::Stabilized;
    return res;
}

OffSleepSsmResult off_sleep_ssm(SsmWorld& w, const std::vector<Site>& walkers,
                                const SsmStopRule& stop, DirectionTapes& tapes,
                                long long max_hops_per_walker) {
    for (auto& [x, s] : w.state)
        if (s.q != s.r)
            throw std::invalid_argument("off_sleep_ssm: state off the diagonal");
    OffSleepSsmResult res;
    for (Site pos : walkers) {
        long long hops = 0;
        while (!stop(hops, pos)) {
            if (hops >= max_hops_per_walker) {
                res.timed_out = true;
                break;
            }
            // deliver the ordinary message together with its paired
            // activation: (q, q) -> (q+1, q+1), so f increases by exactly 1
            // and one message leaves through tape slot q
            auto& s = w.state[pos];
            const Site next = tapes.neighbor(pos, static_cast<std::size_t>(s.q));
            ++s.q;
            ++s.r;
            w.odometer[pos] += 2;
            pos = next;
            ++hops;
        }
        res.positions.push_back(pos);
    }
    return res;
}

}  // namespace arwlab
