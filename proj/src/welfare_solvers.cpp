#include "eqalloc/welfare_solvers.hpp"

#include "eqalloc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <tuple>

namespace eqalloc {

namespace {

void require_single_type(const Scenario& s, const char* op)
{
    if (s.types() != 1)
        throw PreconditionError(std::string(op) + " requires a single item type");
}

void require_concave(const Scenario& s)
{
    for (std::size_t i = 0; i < s.agents(); ++i)
        for (std::size_t j = 0; j < s.types(); ++j)
            if (!check_concave(s.utility(i, j), s.counts[j]))
                throw NonConcaveUtility("utility of agent " + s.agent_names[i] + " for type " + s.type_names[j]
                                        + " is not concave");
}

// Max-heap entry: larger delta first, then lower agent, then lower type.
struct Candidate {
    Value delta;
    std::size_t agent;
    std::size_t type;
};

struct CandidateOrder {
    bool operator()(const Candidate& a, const Candidate& b) const
    {
        if (order_before(a.delta, b.delta))
            return true;
        if (order_before(b.delta, a.delta))
            return false;
        return std::tie(a.agent, a.type) > std::tie(b.agent, b.type);
    }
};

using CandidateHeap = std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder>;

} // namespace

WelfareReport solve_utilitarian(const Scenario& s)
{
    s.validate();
    require_concave(s);
    const std::size_t n = s.agents();
    const std::size_t k = s.types();
    Allocation x(n, k);
    std::vector<std::size_t> remaining = s.counts;
    std::size_t left = s.total_items();

    CandidateHeap heap;
    const auto delta = [&](std::size_t i, std::size_t j) {
        return Value(s.weight(i, j)) * s.utility(i, j).gain(x(i, j));
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (remaining[j] > 0)
                heap.push({delta(i, j), i, j});

    std::vector<Value> trace;
    trace.reserve(left);
    while (left > 0) {
        Candidate top = heap.top();
        heap.pop();
        if (remaining[top.type] == 0)
            continue;
        ++x(top.agent, top.type);
        --remaining[top.type];
        --left;
        trace.push_back(std::move(top.delta));
        if (remaining[top.type] > 0)
            heap.push({delta(top.agent, top.type), top.agent, top.type});
    }

    WelfareReport report = welfare_report(s, x);
    report.gain_trace = std::move(trace);
    return report;
}

RestrictedResult solve_restricted_utilitarian(const Scenario& s, const RestrictionVector& bounds, std::size_t items,
                                              const RestrictedOptions& options)
{
    require_single_type(s, "solve_restricted_utilitarian");
    const std::size_t n = s.agents();
    if (bounds.size() != n)
        throw PreconditionError("restriction vector must have one bound per agent");
    if (items > s.counts[0])
        throw PreconditionError("cannot allocate more items than the scenario holds");
    if (options.check_concavity)
        require_concave(s);

    Allocation x(n, 1);
    const auto weight = [&](std::size_t i) { return options.unit_objective ? Value::of(1) : Value(s.weight(i)); };
    const auto extendible = [&](std::size_t i) {
        const auto top = s.utility(i).max_count();
        if (top && x(i) + 1 > *top)
            return false;
        return !less(bounds[i], s.utility(i)(x(i) + 1), s.epsilon);
    };

    CandidateHeap heap;
    for (std::size_t i = 0; i < n; ++i)
        if (i != options.excluded && extendible(i))
            heap.push({weight(i) * s.utility(i).gain(0), i, 0});

    RestrictedResult result;
    for (std::size_t step = 0; step < items; ++step) {
        if (heap.empty())
            return result;
        const std::size_t i = heap.top().agent;
        result.welfare += heap.top().delta;
        heap.pop();
        ++x(i);
        if (extendible(i))
            heap.push({weight(i) * s.utility(i).gain(x(i)), i, 0});
    }
    result.feasible = true;
    x.partial = items != s.counts[0];
    result.allocation = std::move(x);
    return result;
}

WelfareReport solve_nash(const Scenario& s)
{
    s.validate();
    require_single_type(s, "solve_nash");
    const std::size_t n = s.agents();
    const std::size_t m = s.counts[0];
    Allocation x(n, 1);

    if (m < n) {
        for (std::size_t i = 0; i < m; ++i)
            x(i) = 1;
        WelfareReport report = welfare_report(s, x);
        report.insufficient_items = true;
        report.log_nash = -std::numeric_limits<double>::infinity();
        return report;
    }

    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = s.weight(i).get_d();
        x(i) = 1;
    }
    for (std::size_t step = n; step < m; ++step) {
        std::size_t best = 0;
        double best_gain = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double g = w[i] * std::log1p(1.0 / static_cast<double>(x(i)));
            if (best_gain < 0.0 || compare(Value(g), Value(best_gain), s.epsilon) > 0) {
                best = i;
                best_gain = g;
            }
        }
        ++x(best);
    }

    WelfareReport report = welfare_report(s, x);
    double log_welfare = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        log_welfare += w[i] * std::log(static_cast<double>(x(i)));
    report.log_nash = log_welfare;
    return report;
}

CounterSweep counter_sweep(std::size_t agents, std::size_t items,
                           const std::function<Value(std::size_t agent, std::size_t j)>& value, double eps)
{
    struct Head {
        Value v;
        std::size_t agent;
    };
    const auto later = [](const Head& a, const Head& b) {
        if (order_before(b.v, a.v))
            return true;
        if (order_before(a.v, b.v))
            return false;
        return a.agent > b.agent;
    };
    std::priority_queue<Head, std::vector<Head>, decltype(later)> heap(later);

    CounterSweep out;
    out.counts.assign(agents, 0);
    if (items == 0)
        return out;
    for (std::size_t i = 0; i < agents; ++i)
        heap.push({value(i, 0), i});

    std::size_t count = 0;
    std::vector<std::size_t> group;
    while (count < items && !heap.empty()) {
        const Value first = heap.top().v;
        group.clear();
        while (!heap.empty() && compare(heap.top().v, first, eps) == 0) {
            group.push_back(heap.top().agent);
            heap.pop();
        }
        if (count + group.size() > items) {
            std::sort(group.begin(), group.end());
            out.frontier = group;
            break;
        }
        for (const std::size_t i : group) {
            ++out.counts[i];
            ++count;
            if (out.counts[i] < items)
                heap.push({value(i, out.counts[i]), i});
        }
    }
    out.attained = count;
    return out;
}

WelfareReport solve_maximin(const Scenario& s, std::size_t t_items)
{
    s.validate();
    require_single_type(s, "solve_maximin");
    const std::size_t n = s.agents();
    if (t_items > s.counts[0])
        throw PreconditionError("t_items exceeds the number of items");

    const auto ratio = [&](std::size_t i, std::size_t j) { return s.utility(i)(j) / Value(s.weight(i)); };
    CounterSweep sweep = counter_sweep(n, t_items, ratio, s.epsilon);

    const std::size_t extra = t_items - sweep.attained;
    if (extra > 0) {
        std::vector<std::pair<Value, std::size_t>> next;
        for (const std::size_t i : sweep.frontier)
            next.emplace_back(ratio(i, sweep.counts[i] + 1), i);
        std::stable_sort(next.begin(), next.end(), [&](const auto& a, const auto& b) {
            return compare(a.first, b.first, s.epsilon) > 0;
        });
        for (std::size_t r = 0; r < extra; ++r)
            ++sweep.counts[next[r].second];
    }

    WelfareReport report = welfare_report(s, Allocation::from_counts(sweep.counts), true);
    report.counter_items = sweep.attained;
    return report;
}

WelfareReport solve_leximin(const Scenario& s)
{
    require_single_type(s, "solve_leximin");
    return solve_maximin(s, s.counts[0]);
}

} // namespace eqalloc
