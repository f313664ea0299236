#include "hirzebruch/search.hpp"

#include "hirzebruch/error.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

namespace hirz::search {

TProfile CombinatorialType::t_profile() const
{
    TProfile t;
    for (const auto& p : points)
        ++t[static_cast<int>(p.size())];
    return t;
}

// ---------------------------------------------------------------------------
// Canonical forms

namespace {

using Seq = std::vector<int>;

Seq min_cyclic(const Seq& s)
{
    const int m = static_cast<int>(s.size());
    Seq best = s, cur(s.size());
    for (int dir : {1, -1}) {
        for (int r = 0; r < m; ++r) {
            for (int i = 0; i < m; ++i)
                cur[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(((r + dir * i) % m + m) % m)];
            if (cur < best)
                best = cur;
        }
    }
    return best;
}

std::vector<int> ranks(const std::vector<Seq>& sigs)
{
    std::vector<Seq> u = sigs;
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    std::vector<int> out(sigs.size());
    for (std::size_t i = 0; i < sigs.size(); ++i)
        out[i] = static_cast<int>(std::lower_bound(u.begin(), u.end(), sigs[i]) - u.begin());
    return out;
}

int distinct(const std::vector<int>& v)
{
    std::vector<int> u = v;
    std::sort(u.begin(), u.end());
    return static_cast<int>(std::unique(u.begin(), u.end()) - u.begin());
}

class Canonizer {
public:
    Canonizer(const CombinatorialType& t, bool orders) : t_(t), orders_(orders)
    {
        line_points_.resize(static_cast<std::size_t>(t.line_count));
        for (std::size_t p = 0; p < t.points.size(); ++p)
            for (int l : t.points[p])
                line_points_[static_cast<std::size_t>(l)].push_back(static_cast<int>(p));
    }

    Seq run()
    {
        search(std::vector<int>(static_cast<std::size_t>(t_.line_count), 0));
        return best_;
    }

private:
    std::vector<int> refine(std::vector<int> color) const
    {
        int classes = distinct(color);
        const std::size_t P = t_.points.size();
        for (;;) {
            std::vector<Seq> psig(P);
            for (std::size_t p = 0; p < P; ++p) {
                Seq s;
                for (int l : t_.points[p])
                    s.push_back(color[static_cast<std::size_t>(l)]);
                std::sort(s.begin(), s.end());
                s.insert(s.begin(), static_cast<int>(s.size()));
                psig[p] = std::move(s);
            }
            auto prank = ranks(psig);
            std::vector<Seq> lsig(color.size());
            for (std::size_t l = 0; l < color.size(); ++l) {
                Seq s;
                if (orders_) {
                    for (int p : t_.line_orders[l])
                        s.push_back(prank[static_cast<std::size_t>(p)]);
                    s = min_cyclic(s);
                } else {
                    for (int p : line_points_[l])
                        s.push_back(prank[static_cast<std::size_t>(p)]);
                    std::sort(s.begin(), s.end());
                }
                s.insert(s.begin(), color[l]);
                lsig[l] = std::move(s);
            }
            color = ranks(lsig);
            int now = distinct(color);
            if (now == classes)
                return color;
            classes = now;
        }
    }

    void search(std::vector<int> color)
    {
        color = refine(std::move(color));
        std::vector<int> count(color.size(), 0);
        for (int c : color)
            ++count[static_cast<std::size_t>(c)];
        int target = -1;
        for (std::size_t c = 0; c < count.size(); ++c) {
            if (count[c] >= 2) {
                target = static_cast<int>(c);
                break;
            }
        }
        if (target < 0) {
            leaf(color);
            return;
        }
        for (std::size_t x = 0; x < color.size(); ++x) {
            if (color[x] != target)
                continue;
            std::vector<int> next(color.size());
            for (std::size_t l = 0; l < color.size(); ++l)
                next[l] = 2 * color[l] + (color[l] == target && l != x ? 1 : 0);
            search(std::move(next));
        }
    }

    void leaf(const std::vector<int>& label)
    {
        const std::size_t P = t_.points.size();
        std::vector<Seq> pl(P);
        for (std::size_t p = 0; p < P; ++p) {
            for (int l : t_.points[p])
                pl[p].push_back(label[static_cast<std::size_t>(l)]);
            std::sort(pl[p].begin(), pl[p].end());
        }
        std::vector<int> idx(P);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            return pl[static_cast<std::size_t>(a)] < pl[static_cast<std::size_t>(b)];
        });
        std::vector<int> renum(P);
        for (std::size_t i = 0; i < P; ++i)
            renum[static_cast<std::size_t>(idx[i])] = static_cast<int>(i);

        Seq enc{t_.line_count, static_cast<int>(P)};
        for (int p : idx) {
            for (int l : pl[static_cast<std::size_t>(p)])
                enc.push_back(l);
            enc.push_back(-1);
        }
        if (orders_) {
            std::vector<int> inv(label.size());
            for (std::size_t l = 0; l < label.size(); ++l)
                inv[static_cast<std::size_t>(label[l])] = static_cast<int>(l);
            for (int l : inv) {
                Seq s;
                for (int p : t_.line_orders[static_cast<std::size_t>(l)])
                    s.push_back(renum[static_cast<std::size_t>(p)]);
                for (int v : min_cyclic(s))
                    enc.push_back(v);
                enc.push_back(-1);
            }
        }
        if (best_.empty() || enc < best_)
            best_ = std::move(enc);
    }

    const CombinatorialType& t_;
    bool orders_;
    std::vector<std::vector<int>> line_points_;
    Seq best_;
};

} // namespace

std::vector<int> canonical_form(const CombinatorialType& type, bool with_orders)
{
    if (with_orders && !type.has_orders())
        throw InputError("canonical_form: type has no line orders");
    return Canonizer(type, with_orders).run();
}

CombinatorialType type_of(const Arrangement& arr)
{
    auto lattice = intersection_lattice(arr);
    CombinatorialType t;
    t.line_count = arr.size();
    for (const auto& p : lattice.points)
        t.points.push_back(p.lines);
    if (arr.is_real()) {
        try {
            t.line_orders = cell_complex(arr, lattice).line_order;
        } catch (const InputError&) {
            t.line_orders.clear();
        }
    }
    return t;
}

bool iso_match(const CombinatorialType& type, const Arrangement& arr)
{
    if (type.line_count != arr.size())
        return false;
    CombinatorialType other = type_of(arr);
    if (type.points.size() != other.points.size() || type.t_profile() != other.t_profile())
        return false;
    return canonical_form(type, false) == canonical_form(other, false);
}

// ---------------------------------------------------------------------------
// Profiles

std::vector<TProfile> t_profile_solver(int n, int k_max)
{
    if (n < 1)
        throw InputError("t_profile_solver: n must be positive");
    k_max = std::min(k_max, 3 * n);
    if (k_max < 2)
        throw InputError("t_profile_solver: k_max must be at least 2");
    const long slots = 3L * n * (n + 1);
    const long pairs = 3L * n * (3L * n - 1) / 2;
    std::vector<TProfile> out;
    TProfile cur;
    auto rec = [&](auto&& self, int k, long s, long q) -> void {
        if (k == 1) {
            if (s == 0 && q == 0)
                out.push_back(cur);
            return;
        }
        const long c2 = static_cast<long>(k) * (k - 1) / 2;
        for (long t = std::min(s / k, q / c2); t >= 0; --t) {
            if (t > 0)
                cur[k] = static_cast<int>(t);
            else
                cur.erase(k);
            self(self, k - 1, s - t * k, q - t * c2);
        }
        cur.erase(k);
    };
    rec(rec, k_max, slots, pairs);
    std::sort(out.begin(), out.end());
    return out;
}

std::string to_string(Mode m)
{
    return m == Mode::counting_only ? "counting_only" : "paper_pruned";
}

Mode parse_mode(const std::string& s)
{
    if (s == "counting_only")
        return Mode::counting_only;
    if (s == "paper_pruned")
        return Mode::paper_pruned;
    throw InputError("unknown search mode '" + s + "'");
}

// ---------------------------------------------------------------------------
// Wiring diagram enumeration

namespace {

constexpr int max_lines = 16;
constexpr int max_mult = 16;
using Mask = std::uint32_t;

Mask bit(int w) { return Mask{1} << w; }

struct Move {
    std::int8_t start = 0;
    std::int8_t size = 0;
    Mask wires = 0;
};

struct FaceAcc {
    std::array<std::int16_t, 4> v{};
    std::int8_t size = 0;
};

struct State {
    std::array<std::int8_t, max_lines> perm{};
    std::array<Mask, max_lines> crossed{};
    std::array<std::int8_t, max_lines> used{};
    std::array<std::int8_t, max_lines> first_mult{};
    std::array<std::int8_t, max_lines> last_mult{};
    std::array<std::int8_t, max_mult> count{};
    int moves = 0;
    int pairs = 0;
    int prev_start = -1;
    // per gap between positions g and g+1
    std::array<FaceAcc, max_lines> open{};
    std::array<FaceAcc, max_lines> left{};
    std::array<bool, max_lines> gap_crossed{};
    FaceAcc top_bottom{};
};

struct Task {
    State state;
    std::vector<Move> prefix;
};

struct Shared {
    std::atomic<std::uint64_t> nodes{0};
    std::optional<std::uint64_t> budget;
    std::atomic<bool> exhausted{false};
};

constexpr std::array<std::array<int, 3>, 3> allowed_faces{{{2, 3, 3}, {2, 3, 4}, {2, 3, 5}}};

bool partial_face_ok(std::vector<int> mults)
{
    std::sort(mults.begin(), mults.end());
    for (const auto& f : allowed_faces) {
        std::array<bool, 3> taken{};
        bool ok = true;
        for (int m : mults) {
            bool hit = false;
            for (std::size_t i = 0; i < 3 && !hit; ++i) {
                if (!taken[i] && f[i] == m) {
                    taken[i] = true;
                    hit = true;
                }
            }
            if (!hit) {
                ok = false;
                break;
            }
        }
        if (ok)
            return true;
    }
    return false;
}

bool adjacent_ok(int a, int b)
{
    return !(a == 2 && b == 2) && !(a >= 4 && b >= 4);
}

class Engine {
public:
    Engine(int n, Mode mode, int k_max, const std::vector<TProfile>& profiles, Shared& shared)
        : n_(n), N_(3 * n), K_(k_max), paper_(mode == Mode::paper_pruned && n >= 2), shared_(shared)
    {
        total_pairs_ = N_ * (N_ - 1) / 2;
        all_ = (Mask{1} << N_) - 1;
        for (const auto& p : profiles) {
            std::array<std::int8_t, max_mult> a{};
            for (auto [k, t] : p)
                a[static_cast<std::size_t>(k)] = static_cast<std::int8_t>(t);
            profiles_.push_back(a);
        }
        path_.resize(static_cast<std::size_t>(total_pairs_ + 1));
    }

    State root() const
    {
        State s;
        for (int i = 0; i < N_; ++i)
            s.perm[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(i);
        return s;
    }

    /// Expands `depth` levels below `s`, appending the frontier to `out`.
    void expand(const State& s, int depth, std::vector<Task>& out)
    {
        if (depth == 0 || s.pairs == total_pairs_) {
            out.push_back({s, std::vector<Move>(path_.begin(), path_.begin() + s.moves)});
            return;
        }
        count_node();
        for_each_child(s, [&](const State& t) { expand(t, depth - 1, out); });
    }

    void run(const Task& task)
    {
        std::copy(task.prefix.begin(), task.prefix.end(), path_.begin());
        dfs(task.state);
    }

    std::uint64_t nodes = 0;
    std::uint64_t completions = 0;
    std::map<std::vector<int>, CombinatorialType> found;

private:
    void count_node()
    {
        ++nodes;
        if ((nodes & 1023) == 0) {
            std::uint64_t total = shared_.nodes.fetch_add(1024) + 1024;
            if (shared_.budget && total >= *shared_.budget)
                shared_.exhausted = true;
        }
    }

    template <class F>
    void for_each_child(const State& s, F&& f)
    {
        for (int i = 0; i + 1 < N_; ++i) {
            int w0 = s.perm[static_cast<std::size_t>(i)];
            if (s.used[static_cast<std::size_t>(w0)] == n_ + 1)
                continue;
            Mask block = bit(w0);
            for (int j = i + 1; j < N_ && j - i + 1 <= K_; ++j) {
                int w = s.perm[static_cast<std::size_t>(j)];
                if (s.used[static_cast<std::size_t>(w)] == n_ + 1 || (s.crossed[static_cast<std::size_t>(w)] & block))
                    break;
                block |= bit(w);
                // disjoint consecutive moves commute; keep them in increasing position
                if (j < s.prev_start)
                    continue;
                State t;
                if (apply(s, i, j, block, t))
                    f(t);
                if (shared_.exhausted)
                    return;
            }
        }
    }

    void dfs(const State& s)
    {
        if (shared_.exhausted)
            return;
        count_node();
        if (s.pairs == total_pairs_) {
            ++completions;
            if (!paper_ || final_faces_ok(s))
                record(s);
            return;
        }
        for_each_child(s, [&](const State& t) { dfs(t); });
    }

    int mult(int id) const { return path_[static_cast<std::size_t>(id)].size; }

    bool face_partial_ok(const FaceAcc& f) const
    {
        std::vector<int> m;
        for (int i = 0; i < f.size; ++i)
            m.push_back(mult(f.v[static_cast<std::size_t>(i)]));
        return partial_face_ok(m);
    }

    bool face_complete_ok(const FaceAcc& f) const { return f.size == 3 && face_partial_ok(f); }

    static bool push(FaceAcc& f, int id, int cap)
    {
        for (int i = 0; i < f.size; ++i)
            if (f.v[static_cast<std::size_t>(i)] == id)
                return true;
        if (f.size >= cap)
            return false;
        f.v[static_cast<std::size_t>(f.size++)] = static_cast<std::int16_t>(id);
        return true;
    }

    bool apply(const State& s, int i, int j, Mask block, State& t)
    {
        const int m = j - i + 1;
        const int id = s.moves;
        path_[static_cast<std::size_t>(id)] = Move{static_cast<std::int8_t>(i), static_cast<std::int8_t>(m), block};
        t = s;

        ++t.count[static_cast<std::size_t>(m)];
        bool profile_ok = false;
        for (const auto& p : profiles_) {
            bool fits = true;
            for (int k = 2; k <= K_ && fits; ++k)
                fits = t.count[static_cast<std::size_t>(k)] <= p[static_cast<std::size_t>(k)];
            if (fits) {
                profile_ok = true;
                break;
            }
        }
        if (!profile_ok)
            return false;

        for (int p = i; p <= j; ++p) {
            const auto w = static_cast<std::size_t>(s.perm[static_cast<std::size_t>(p)]);
            t.crossed[w] |= block & ~bit(static_cast<int>(w));
            if (paper_) {
                if (t.used[w] == 0)
                    t.first_mult[w] = static_cast<std::int8_t>(m);
                else if (!adjacent_ok(t.last_mult[w], m))
                    return false;
                if (t.used[w] + 1 == n_ + 1 && !adjacent_ok(m, t.first_mult[w]))
                    return false;
                t.last_mult[w] = static_cast<std::int8_t>(m);
            }
            ++t.used[w];
        }
        std::reverse(t.perm.begin() + i, t.perm.begin() + j + 1);
        t.pairs += m * (m - 1) / 2;
        t.moves = id + 1;
        t.prev_start = i;

        if (!wires_feasible(t))
            return false;

        if (paper_) {
            for (int g = i; g < j; ++g) {
                auto& open = t.open[static_cast<std::size_t>(g)];
                if (t.gap_crossed[static_cast<std::size_t>(g)]) {
                    if (open.size != 2 || !push(open, id, 3) || !face_complete_ok(open))
                        return false;
                } else {
                    auto& left = t.left[static_cast<std::size_t>(g)];
                    left = open;
                    if (!push(left, id, 3) || !face_partial_ok(left))
                        return false;
                    t.gap_crossed[static_cast<std::size_t>(g)] = true;
                }
                open = FaceAcc{};
                push(open, id, 3);
            }
            auto touch = [&](int g) {
                auto& open = t.open[static_cast<std::size_t>(g)];
                int cap = t.gap_crossed[static_cast<std::size_t>(g)] ? 2 : 3;
                return push(open, id, cap) && face_partial_ok(open);
            };
            if (i >= 1 && !touch(i - 1))
                return false;
            if (j <= N_ - 2 && !touch(j))
                return false;
            if ((i == 0 || j == N_ - 1) && (!push(t.top_bottom, id, 3) || !face_partial_ok(t.top_bottom)))
                return false;
        }
        return true;
    }

    bool wires_feasible(const State& t) const
    {
        for (int w = 0; w < N_; ++w) {
            const int s = n_ + 1 - t.used[static_cast<std::size_t>(w)];
            const Mask R = all_ & ~t.crossed[static_cast<std::size_t>(w)] & ~bit(w);
            const int r = std::popcount(R);
            if (r < s || r > s * (K_ - 1))
                return false;
            if (s == 1) {
                for (Mask rest = R; rest; rest &= rest - 1)
                    if (t.crossed[static_cast<std::size_t>(std::countr_zero(rest))] & R)
                        return false;
            } else if (s == 2 && !two_colorable(t, R)) {
                return false;
            }
        }
        return true;
    }

    // the crossed-pair graph on the remaining partners must split into two
    // independent sets, one per remaining point
    bool two_colorable(const State& t, Mask R) const
    {
        Mask side_a = 0, side_b = 0;
        Mask todo = R;
        while (todo) {
            Mask frontier = todo & (~todo + 1);
            side_a |= frontier;
            todo &= ~frontier;
            bool a = true;
            while (frontier) {
                Mask next = 0;
                for (Mask f = frontier; f; f &= f - 1) {
                    Mask nb = t.crossed[static_cast<std::size_t>(std::countr_zero(f))] & R;
                    if (nb & (a ? side_a : side_b))
                        return false;
                    next |= nb & todo;
                }
                a = !a;
                (a ? side_a : side_b) |= next;
                todo &= ~next;
                frontier = next;
            }
        }
        return true;
    }

    bool final_faces_ok(const State& s) const
    {
        for (int g = 0; g + 1 < N_; ++g) {
            FaceAcc f = s.left[static_cast<std::size_t>(g)];
            const auto& right = s.open[static_cast<std::size_t>(N_ - 2 - g)];
            for (int i = 0; i < right.size; ++i)
                if (!push(f, right.v[static_cast<std::size_t>(i)], 3))
                    return false;
            if (!face_complete_ok(f))
                return false;
        }
        return face_complete_ok(s.top_bottom);
    }

    void record(const State& s)
    {
        CombinatorialType t;
        t.line_count = N_;
        t.line_orders.resize(static_cast<std::size_t>(N_));
        for (int id = 0; id < s.moves; ++id) {
            std::vector<int> lines;
            for (Mask m = path_[static_cast<std::size_t>(id)].wires; m; m &= m - 1) {
                int w = std::countr_zero(m);
                lines.push_back(w);
                t.line_orders[static_cast<std::size_t>(w)].push_back(id);
            }
            t.points.push_back(std::move(lines));
        }
        auto key = canonical_form(t, true);
        found.emplace(std::move(key), std::move(t));
    }

    int n_, N_, K_;
    bool paper_;
    Shared& shared_;
    int total_pairs_ = 0;
    Mask all_ = 0;
    std::vector<std::array<std::int8_t, max_mult>> profiles_;
    std::vector<Move> path_;
};

} // namespace

SearchResult enumerate_types(int n, Mode mode, const SearchOptions& options)
{
    if (n < 1 || 3 * n > max_lines)
        throw InputError("enumerate_types: n must be between 1 and 5");
    if (options.jobs < 1)
        throw InputError("enumerate_types: jobs must be positive");

    SearchResult res;
    res.n = n;
    res.mode = mode;
    res.k_max = mode == Mode::paper_pruned ? std::min(5, 2 * n) : 2 * n;
    auto profiles = t_profile_solver(n, res.k_max);

    Shared shared;
    shared.budget = options.node_budget;

    std::vector<Task> tasks;
    Engine seeder(n, mode, res.k_max, profiles, shared);
    seeder.expand(seeder.root(), 2, tasks);

    std::vector<Engine> engines;
    engines.reserve(static_cast<std::size_t>(options.jobs));
    const int workers = std::max(1, std::min<int>(options.jobs, static_cast<int>(tasks.size())));
    for (int w = 0; w < workers; ++w)
        engines.emplace_back(n, mode, res.k_max, profiles, shared);
    std::atomic<std::size_t> next{0};
    auto work = [&](Engine& e) {
        for (std::size_t k = next++; k < tasks.size(); k = next++)
            e.run(tasks[k]);
    };
    if (workers == 1) {
        work(engines[0]);
    } else {
        std::vector<std::thread> threads;
        for (auto& e : engines)
            threads.emplace_back(work, std::ref(e));
        for (auto& th : threads)
            th.join();
    }

    std::map<std::vector<int>, CombinatorialType> found;
    res.nodes = seeder.nodes;
    res.completions = seeder.completions;
    for (auto& e : engines) {
        res.nodes += e.nodes;
        res.completions += e.completions;
        found.merge(e.found);
    }
    res.budget_exhausted = shared.exhausted;

    for (auto& [key, type] : found)
        res.types.push_back({type, key, canonical_form(type, false)});

    for (const auto& p : profiles) {
        ProfileStatus st{p, 0, {}};
        for (const auto& ft : res.types)
            if (ft.type.t_profile() == p)
                ++st.types_found;
        if (st.types_found > 0)
            st.status = "found";
        else if (res.budget_exhausted)
            st.status = "unknown, budget exhausted";
        else
            st.status = mode == Mode::paper_pruned && n >= 2 ? "pruned" : "no wiring diagram found";
        res.profiles.push_back(std::move(st));
    }
    return res;
}

} // namespace hirz::search
