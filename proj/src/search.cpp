#include "plexforge/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "plexforge/analyze.hpp"
#include "plexforge/construct.hpp"
#include "plexforge/error.hpp"

namespace plexforge {

std::string to_string(SearchStatus status)
{
    switch (status) {
    case SearchStatus::Found:
        return "Found";
    case SearchStatus::ExhaustedNone:
        return "ExhaustedNone";
    case SearchStatus::BudgetExceeded:
        return "BudgetExceeded";
    }
    return "?";
}

int default_jobs()
{
    if (const char* env = std::getenv("PLEXFORGE_JOBS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<int>(std::min<long>(v, 256));
    }
    return 1;
}

namespace {

using Mask = std::uint64_t;
using Path = std::vector<std::pair<int, int>>; // (row, col) cells

constexpr Mask bit(int i) noexcept { return Mask{1} << i; }

Mask low_bits(int n) noexcept { return n >= 64 ? ~Mask{0} : bit(n) - 1; }

enum class Mode { Find, Count, Visit };

// State shared by all workers of one search.
struct Control {
    Mode mode = Mode::Count;
    std::optional<std::uint64_t> node_limit;
    std::optional<std::uint64_t> solution_limit;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<std::uint64_t> solutions{0};
    std::atomic<bool> stop{false};
    std::atomic<bool> limit_hit{false};
    std::atomic<std::size_t> first_found{std::numeric_limits<std::size_t>::max()};
    int order = 0;
};

struct TaskResult {
    std::uint64_t count = 0;
    Path witness;
    bool found = false;
};

// One worker's view while running a single task (or the splitting pass).
class Worker {
public:
    Worker(Control& ctl, std::size_t task) : ctl_(ctl), task_(task) {}

    // Called once per node; false aborts the task.
    bool tick()
    {
        ++local_nodes_;
        if (ctl_.node_limit) {
            if (ctl_.nodes.fetch_add(1, std::memory_order_relaxed) + 1 > *ctl_.node_limit) {
                // The refused node is not explored, so it is not counted.
                ctl_.nodes.fetch_sub(1, std::memory_order_relaxed);
                --local_nodes_;
                ctl_.limit_hit = true;
                ctl_.stop = true;
                return false;
            }
        } else if ((local_nodes_ & 1023) == 0) {
            ctl_.nodes.fetch_add(1024, std::memory_order_relaxed);
        }
        if ((local_nodes_ & 255) == 0) {
            if (ctl_.stop.load(std::memory_order_relaxed))
                return false;
            if (ctl_.mode == Mode::Find && ctl_.first_found.load(std::memory_order_relaxed) < task_)
                return false;
        }
        return true;
    }

    // Called at a complete plex; false stops the task.
    bool leaf(const Path& path)
    {
        if (!result.found) {
            result.found = true;
            result.witness = path;
        }
        ++result.count;
        switch (ctl_.mode) {
        case Mode::Find: {
            std::size_t cur = ctl_.first_found.load();
            while (task_ < cur && !ctl_.first_found.compare_exchange_weak(cur, task_)) {
            }
            return false;
        }
        case Mode::Count:
            if (ctl_.solution_limit
                && ctl_.solutions.fetch_add(1, std::memory_order_relaxed) + 1 >= *ctl_.solution_limit) {
                ctl_.limit_hit = true;
                ctl_.stop = true;
                return false;
            }
            return true;
        case Mode::Visit:
            // Visiting runs through on_leaf instead.
            return true;
        }
        return true;
    }

    void flush()
    {
        if (!ctl_.node_limit)
            ctl_.nodes.fetch_add(local_nodes_ & 1023, std::memory_order_relaxed);
    }

    TaskResult result;
    std::vector<Path>* split_out = nullptr;
    int split_depth = -1;
    std::function<bool(const Path&)> on_leaf; // Visit mode only

private:
    Control& ctl_;
    std::size_t task_;
    std::uint64_t local_nodes_ = 0;
};

// Delta sums tracked for pruning, one slot per odd divisor.
struct DeltaTrack {
    std::vector<int> value;   // n x n delta for this divisor
    ResidueClass required;
    long long current = 0;
};

std::vector<DeltaTrack> delta_tracks(const LatinSquare& square, int k, bool enabled)
{
    std::vector<DeltaTrack> out;
    const int n = square.order();
    if (!enabled || n % 2 != 0 || k % 2 == 0)
        return out;
    for (int m = 1; m <= n; m += 2) {
        if (n % m != 0)
            continue;
        DeltaTrack t;
        t.required = required_plex_residue(n, m);
        t.value.resize(static_cast<std::size_t>(n) * n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                t.value[static_cast<std::size_t>(r) * n + c] = delta({r, c, square.at(r, c)}, n, m);
        out.push_back(std::move(t));
    }
    return out;
}

// Transversals: rows are filled most-constrained first. row_ok_[r] holds
// the columns of row r whose symbol is still unused.
class TransversalEngine {
public:
    TransversalEngine(const LatinSquare& square, bool pruning)
        : n_(square.order()), sym_(static_cast<std::size_t>(n_) * n_), col_(sym_.size()),
          row_ok_(n_), tracks_(delta_tracks(square, 1, pruning))
    {
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c) {
                sym_[idx(r, c)] = square.at(r, c);
                col_[idx(r, square.at(r, c))] = c;
            }
        for (auto& t : tracks_) {
            std::vector<long long> lo(n_), hi(n_);
            for (int r = 0; r < n_; ++r) {
                auto first = t.value.begin() + static_cast<std::ptrdiff_t>(idx(r, 0));
                auto [mn, mx] = std::minmax_element(first, first + n_);
                lo[r] = *mn;
                hi[r] = *mx;
            }
            row_lo_.push_back(lo);
            row_hi_.push_back(hi);
            rem_lo_.push_back(std::accumulate(lo.begin(), lo.end(), 0LL));
            rem_hi_.push_back(std::accumulate(hi.begin(), hi.end(), 0LL));
        }
        free_rows_ = low_bits(n_);
        free_cols_ = low_bits(n_);
        std::fill(row_ok_.begin(), row_ok_.end(), low_bits(n_));
    }

    int split_depth() const { return 2; }

    void replay(const Path& path)
    {
        for (auto [r, c] : path)
            place(r, c);
    }

    bool dfs(Worker& w)
    {
        if (!w.tick())
            return false;
        if (free_rows_ == 0)
            return w.on_leaf ? w.on_leaf(path_) : w.leaf(path_);
        if (static_cast<int>(path_.size()) == w.split_depth) {
            w.split_out->push_back(path_);
            return true;
        }
        if (!delta_feasible())
            return true;
        int best_row = -1;
        int best_count = n_ + 1;
        for (Mask rows = free_rows_; rows; rows &= rows - 1) {
            int r = std::countr_zero(rows);
            int cnt = std::popcount(row_ok_[r] & free_cols_);
            if (cnt < best_count) {
                best_count = cnt;
                best_row = r;
                if (cnt == 0)
                    return true;
            }
        }
        for (Mask cols = row_ok_[best_row] & free_cols_; cols; cols &= cols - 1) {
            int c = std::countr_zero(cols);
            place(best_row, c);
            bool go = dfs(w);
            unplace(best_row, c);
            if (!go)
                return false;
        }
        return true;
    }

private:
    std::size_t idx(int r, int c) const { return static_cast<std::size_t>(r) * n_ + c; }

    void place(int r, int c)
    {
        const int s = sym_[idx(r, c)];
        free_rows_ &= ~bit(r);
        free_cols_ &= ~bit(c);
        for (Mask rows = free_rows_; rows; rows &= rows - 1) {
            int r2 = std::countr_zero(rows);
            row_ok_[r2] &= ~bit(col_[idx(r2, s)]);
        }
        for (std::size_t i = 0; i < tracks_.size(); ++i) {
            tracks_[i].current += tracks_[i].value[idx(r, c)];
            rem_lo_[i] -= row_lo_[i][r];
            rem_hi_[i] -= row_hi_[i][r];
        }
        path_.push_back({r, c});
    }

    void unplace(int r, int c)
    {
        const int s = sym_[idx(r, c)];
        path_.pop_back();
        for (std::size_t i = 0; i < tracks_.size(); ++i) {
            tracks_[i].current -= tracks_[i].value[idx(r, c)];
            rem_lo_[i] += row_lo_[i][r];
            rem_hi_[i] += row_hi_[i][r];
        }
        for (Mask rows = free_rows_; rows; rows &= rows - 1) {
            int r2 = std::countr_zero(rows);
            row_ok_[r2] |= bit(col_[idx(r2, s)]);
        }
        free_rows_ |= bit(r);
        free_cols_ |= bit(c);
    }

    bool delta_feasible() const
    {
        for (std::size_t i = 0; i < tracks_.size(); ++i)
            if (!interval_hits_residue(tracks_[i].current + rem_lo_[i], tracks_[i].current + rem_hi_[i],
                                       tracks_[i].required))
                return false;
        return true;
    }

    int n_;
    std::vector<int> sym_;
    std::vector<int> col_;
    std::vector<Mask> row_ok_;
    Mask free_rows_ = 0;
    Mask free_cols_ = 0;
    Path path_;
    std::vector<DeltaTrack> tracks_;
    std::vector<std::vector<long long>> row_lo_, row_hi_;
    std::vector<long long> rem_lo_, rem_hi_;
};

// k-plexes: k cells are chosen per column under row and symbol quotas,
// taking the column with the fewest completions first. A row (or symbol)
// that needs as many more cells as it has open columns left must take
// every one of them.
class PlexEngine {
public:
    PlexEngine(const LatinSquare& square, int k, bool pruning)
        : n_(square.order()), k_(k), sym_(static_cast<std::size_t>(n_) * n_), row_of_(sym_.size()),
          row_cnt_(n_, 0), sym_cnt_(n_, 0), tracks_(delta_tracks(square, k, pruning))
    {
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c) {
                sym_[idx(r, c)] = square.at(r, c);
                row_of_[idx(c, square.at(r, c))] = r;
            }
        // Sums of the k smallest / largest deltas per column.
        for (auto& t : tracks_) {
            std::vector<long long> lo(n_), hi(n_);
            for (int c = 0; c < n_; ++c) {
                std::vector<int> col(n_);
                for (int r = 0; r < n_; ++r)
                    col[r] = t.value[idx(r, c)];
                std::sort(col.begin(), col.end());
                lo[c] = std::accumulate(col.begin(), col.begin() + k_, 0LL);
                hi[c] = std::accumulate(col.end() - k_, col.end(), 0LL);
            }
            rem_lo_.push_back(std::accumulate(lo.begin(), lo.end(), 0LL));
            rem_hi_.push_back(std::accumulate(hi.begin(), hi.end(), 0LL));
            col_lo_.push_back(std::move(lo));
            col_hi_.push_back(std::move(hi));
        }
        open_cols_ = low_bits(n_);
    }

    int split_depth() const
    {
        // Two columns of k-subsets unless that would make too many tasks.
        double subsets = 1;
        for (int i = 0; i < k_; ++i)
            subsets = subsets * (n_ - i) / (i + 1);
        return subsets > 2000 ? k_ : 2 * k_;
    }

    void replay(const Path& path)
    {
        for (std::size_t i = 0; i < path.size(); i += static_cast<std::size_t>(k_)) {
            Mask rows = 0;
            for (std::size_t j = i; j < i + static_cast<std::size_t>(k_); ++j)
                rows |= bit(path[j].first);
            commit(path[i].second, rows);
        }
    }

    bool dfs(Worker& w)
    {
        if (!w.tick())
            return false;
        if (open_cols_ == 0)
            return w.on_leaf ? w.on_leaf(path_) : w.leaf(path_);
        if (static_cast<int>(path_.size()) == w.split_depth) {
            w.split_out->push_back(path_);
            return true;
        }
        for (std::size_t i = 0; i < tracks_.size(); ++i)
            if (!interval_hits_residue(tracks_[i].current + rem_lo_[i], tracks_[i].current + rem_hi_[i],
                                       tracks_[i].required))
                return true;

        // Rows with quota left whose symbol in column c also has quota left.
        Mask open_rows = 0;
        for (int r = 0; r < n_; ++r)
            if (row_cnt_[r] < k_)
                open_rows |= bit(r);
        std::vector<Mask> cand(n_, 0);
        std::vector<int> row_avail(n_, 0);
        std::vector<int> sym_avail(n_, 0);
        for (Mask cols = open_cols_; cols; cols &= cols - 1) {
            const int c = std::countr_zero(cols);
            Mask m = 0;
            for (Mask rows = open_rows; rows; rows &= rows - 1) {
                const int r = std::countr_zero(rows);
                const int s = sym_[idx(r, c)];
                if (sym_cnt_[s] < k_) {
                    m |= bit(r);
                    ++row_avail[r];
                    ++sym_avail[s];
                }
            }
            if (std::popcount(m) < k_)
                return true;
            cand[c] = m;
        }
        Mask tight_rows = 0;
        std::vector<char> tight_sym(n_, 0);
        for (int r = 0; r < n_; ++r) {
            const int need = k_ - row_cnt_[r];
            if (need > row_avail[r])
                return true;
            if (need > 0 && need == row_avail[r])
                tight_rows |= bit(r);
        }
        for (int s = 0; s < n_; ++s) {
            const int need = k_ - sym_cnt_[s];
            if (need > sym_avail[s])
                return true;
            tight_sym[s] = need > 0 && need == sym_avail[s];
        }

        int best_col = -1;
        Mask best_forced = 0;
        double best_options = 0;
        for (Mask cols = open_cols_; cols; cols &= cols - 1) {
            const int c = std::countr_zero(cols);
            Mask forced = cand[c] & tight_rows;
            for (Mask rows = cand[c]; rows; rows &= rows - 1) {
                const int r = std::countr_zero(rows);
                if (tight_sym[sym_[idx(r, c)]])
                    forced |= bit(r);
            }
            const int nforced = std::popcount(forced);
            if (nforced > k_)
                return true;
            const double options = choose_count(std::popcount(cand[c] & ~forced), k_ - nforced);
            if (best_col < 0 || options < best_options) {
                best_col = c;
                best_forced = forced;
                best_options = options;
                if (options <= 1)
                    break;
            }
        }
        col_ = best_col;
        return choose(w, cand[best_col] & ~best_forced, k_ - std::popcount(best_forced), best_forced);
    }

private:
    std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * n_ + b; }

    static double choose_count(int a, int b)
    {
        double out = 1;
        for (int i = 0; i < b; ++i)
            out = out * (a - i) / (i + 1);
        return out;
    }

    bool choose(Worker& w, Mask pool, int need, Mask picked)
    {
        if (need == 0) {
            const int col = col_;
            commit(col, picked);
            bool go = dfs(w);
            uncommit(col, picked);
            col_ = col;
            return go;
        }
        while (std::popcount(pool) >= need) {
            int r = std::countr_zero(pool);
            pool &= pool - 1;
            if (!choose(w, pool, need - 1, picked | bit(r)))
                return false;
        }
        return true;
    }

    void commit(int col, Mask rows)
    {
        for (Mask m = rows; m; m &= m - 1) {
            int r = std::countr_zero(m);
            ++row_cnt_[r];
            ++sym_cnt_[sym_[idx(r, col)]];
            for (auto& t : tracks_)
                t.current += t.value[idx(r, col)];
            path_.push_back({r, col});
        }
        for (std::size_t i = 0; i < tracks_.size(); ++i) {
            rem_lo_[i] -= col_lo_[i][col];
            rem_hi_[i] -= col_hi_[i][col];
        }
        open_cols_ &= ~bit(col);
    }

    void uncommit(int col, Mask rows)
    {
        open_cols_ |= bit(col);
        for (std::size_t i = 0; i < tracks_.size(); ++i) {
            rem_lo_[i] += col_lo_[i][col];
            rem_hi_[i] += col_hi_[i][col];
        }
        for (Mask m = rows; m; m &= m - 1) {
            int r = std::countr_zero(m);
            --row_cnt_[r];
            --sym_cnt_[sym_[idx(r, col)]];
            for (auto& t : tracks_)
                t.current -= t.value[idx(r, col)];
            path_.pop_back();
        }
    }

    int n_;
    int k_;
    int col_ = 0; // column being filled by choose()
    Mask open_cols_ = 0;
    std::vector<int> sym_;
    std::vector<int> row_of_; // [col][sym] -> row
    std::vector<int> row_cnt_;
    std::vector<int> sym_cnt_;
    Path path_;
    std::vector<DeltaTrack> tracks_;
    std::vector<std::vector<long long>> col_lo_, col_hi_;
    std::vector<long long> rem_lo_, rem_hi_;
};

struct Relabeling {
    std::vector<int> row; // new -> old
    std::vector<int> col;
};

Relabeling seeded_relabeling(int n, std::uint64_t seed)
{
    Relabeling out;
    out.row.resize(n);
    out.col.resize(n);
    std::iota(out.row.begin(), out.row.end(), 0);
    std::iota(out.col.begin(), out.col.end(), 0);
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        std::shuffle(out.row.begin(), out.row.end(), rng);
        std::shuffle(out.col.begin(), out.col.end(), rng);
    }
    return out;
}

EntrySet to_entries(const LatinSquare& original, const Relabeling& lab, const Path& path)
{
    std::vector<Entry> cells;
    cells.reserve(path.size());
    for (auto [r, c] : path) {
        int orow = lab.row[r];
        int ocol = lab.col[c];
        cells.push_back({orow, ocol, original.at(orow, ocol)});
    }
    return EntrySet(original.order(), std::move(cells));
}

void check_search_args(const LatinSquare& square, int k)
{
    if (k < 1 || k > square.order())
        throw Error(ErrorCode::BadParams, "need 1 <= k <= n");
    if (square.order() > kMaxSearchOrder)
        throw Error(ErrorCode::OrderTooLarge, "exact search supports n <= " + std::to_string(kMaxSearchOrder));
}

template <class Engine>
SearchOutcome drive(const LatinSquare& square, int k, Mode mode, const SearchBudget& budget,
                    const SearchOptions& options)
{
    const int n = square.order();
    const Relabeling lab = seeded_relabeling(n, budget.deterministic_seed);
    std::vector<std::vector<int>> rows(n, std::vector<int>(n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            rows[r][c] = square.at(lab.row[r], lab.col[c]);
    const LatinSquare work = LatinSquare::from_grid(n, rows);

    Control ctl;
    ctl.mode = mode;
    ctl.node_limit = budget.node_limit;
    ctl.solution_limit = budget.solution_limit;
    ctl.order = n;

    auto make_engine = [&] {
        if constexpr (std::is_same_v<Engine, TransversalEngine>)
            return TransversalEngine(work, options.delta_pruning);
        else
            return PlexEngine(work, k, options.delta_pruning);
    };

    // Deterministic split: the subtrees below the first decision levels,
    // in search order, independent of the worker count.
    std::vector<Path> tasks;
    {
        Engine root = make_engine();
        Worker w(ctl, 0);
        w.split_out = &tasks;
        w.split_depth = root.split_depth();
        // Leaves reached above the split depth become (complete) tasks.
        w.on_leaf = [&](const Path& p) {
            tasks.push_back(p);
            return true;
        };
        root.dfs(w);
        w.flush();
    }

    std::vector<TaskResult> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        Engine engine = make_engine();
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size() || ctl.stop.load())
                break;
            if (mode == Mode::Find && ctl.first_found.load() < i)
                continue;
            Engine local = engine;
            local.replay(tasks[i]);
            Worker w(ctl, i);
            w.split_depth = -1;
            local.dfs(w);
            w.flush();
            results[i] = std::move(w.result);
        }
    };
    int jobs = options.jobs > 0 ? options.jobs : default_jobs();
    jobs = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(jobs), std::max<std::size_t>(1, tasks.size())));
    if (jobs <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back(run);
        for (auto& t : pool)
            t.join();
    }

    SearchOutcome out;
    out.nodes = ctl.nodes.load();
    std::uint64_t total = 0;
    const TaskResult* first = nullptr;
    for (const auto& r : results) {
        total += r.count;
        if (r.found && !first)
            first = &r;
    }
    if (first) {
        out.witness = to_entries(square, lab, first->witness);
        if (!is_plex(square, *out.witness, k))
            throw Error(ErrorCode::PlexAssertionFailed, "search produced an invalid plex");
    }
    out.complete = !ctl.limit_hit.load();
    if (mode == Mode::Count && out.complete)
        out.count = total;
    else if (mode == Mode::Count && ctl.solution_limit && total >= *ctl.solution_limit)
        out.count = total;
    if (first)
        out.status = SearchStatus::Found;
    else if (!out.complete)
        out.status = SearchStatus::BudgetExceeded;
    else
        out.status = SearchStatus::ExhaustedNone;
    return out;
}

SearchOutcome dispatch(const LatinSquare& square, int k, Mode mode, const SearchBudget& budget,
                       const SearchOptions& options)
{
    check_search_args(square, k);
    if (budget.node_limit && *budget.node_limit == 0)
        throw Error(ErrorCode::BadParams, "node limit must be positive");
    if (budget.solution_limit && *budget.solution_limit == 0)
        throw Error(ErrorCode::BadParams, "solution limit must be positive");
    if (k == 1)
        return drive<TransversalEngine>(square, k, mode, budget, options);
    return drive<PlexEngine>(square, k, mode, budget, options);
}

} // namespace

SearchOutcome find_plex(const LatinSquare& square, int k, const SearchBudget& budget, const SearchOptions& options)
{
    return dispatch(square, k, Mode::Find, budget, options);
}

SearchOutcome count_plexes(const LatinSquare& square, int k, const SearchBudget& budget,
                           const SearchOptions& options)
{
    return dispatch(square, k, Mode::Count, budget, options);
}

SearchOutcome count_transversals(const LatinSquare& square, const SearchBudget& budget,
                                 const SearchOptions& options)
{
    return dispatch(square, 1, Mode::Count, budget, options);
}

void for_each_plex(const LatinSquare& square, int k, const std::function<bool(const EntrySet&)>& visit)
{
    check_search_args(square, k);
    Control ctl;
    ctl.mode = Mode::Visit;
    ctl.order = square.order();
    const Relabeling lab = seeded_relabeling(square.order(), 0);
    Worker w(ctl, 0);
    w.on_leaf = [&](const Path& p) { return visit(to_entries(square, lab, p)); };
    if (k == 1) {
        TransversalEngine engine(square, false);
        engine.dfs(w);
    } else {
        PlexEngine engine(square, k, false);
        engine.dfs(w);
    }
}

namespace {

// Dancing links over the 3n constraints (row, column, symbol), one option
// per cell.
class Dlx {
public:
    explicit Dlx(const LatinSquare& square) : n_(square.order())
    {
        const int items = 3 * n_;
        left_.resize(items + 1);
        right_.resize(items + 1);
        up_.resize(items + 1);
        down_.resize(items + 1);
        top_.resize(items + 1);
        size_.assign(items + 1, 0);
        for (int i = 0; i <= items; ++i) {
            left_[i] = i == 0 ? items : i - 1;
            right_[i] = i == items ? 0 : i + 1;
            up_[i] = down_[i] = i;
            top_[i] = i;
        }
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c) {
                const int cols[3] = {1 + r, 1 + n_ + c, 1 + 2 * n_ + square.at(r, c)};
                int first = -1;
                for (int item : cols) {
                    int node = static_cast<int>(top_.size());
                    top_.push_back(item);
                    up_.push_back(up_[item]);
                    down_.push_back(item);
                    down_[up_[item]] = node;
                    up_[item] = node;
                    ++size_[item];
                    if (first < 0) {
                        first = node;
                        left_.push_back(node);
                        right_.push_back(node);
                    } else {
                        left_.push_back(left_[first]);
                        right_.push_back(first);
                        right_[left_[first]] = node;
                        left_[first] = node;
                    }
                }
            }
    }

    std::uint64_t count()
    {
        if (right_[0] == 0)
            return 1;
        int best = right_[0];
        for (int i = right_[best]; i != 0; i = right_[i])
            if (size_[i] < size_[best])
                best = i;
        if (size_[best] == 0)
            return 0;
        std::uint64_t total = 0;
        cover(best);
        for (int row = down_[best]; row != best; row = down_[row]) {
            for (int j = right_[row]; j != row; j = right_[j])
                cover(top_[j]);
            total += count();
            for (int j = left_[row]; j != row; j = left_[j])
                uncover(top_[j]);
        }
        uncover(best);
        return total;
    }

private:
    void cover(int c)
    {
        right_[left_[c]] = right_[c];
        left_[right_[c]] = left_[c];
        for (int i = down_[c]; i != c; i = down_[i])
            for (int j = right_[i]; j != i; j = right_[j]) {
                down_[up_[j]] = down_[j];
                up_[down_[j]] = up_[j];
                --size_[top_[j]];
            }
    }

    void uncover(int c)
    {
        for (int i = up_[c]; i != c; i = up_[i])
            for (int j = left_[i]; j != i; j = left_[j]) {
                ++size_[top_[j]];
                down_[up_[j]] = j;
                up_[down_[j]] = j;
            }
        right_[left_[c]] = c;
        left_[right_[c]] = c;
    }

    int n_;
    std::vector<int> left_, right_, up_, down_, top_, size_;
};

// Row-major filling with ascending (or shuffled) symbols per cell.
class Completer {
public:
    explicit Completer(const LatinRectangle& rect, std::mt19937_64* rng = nullptr)
        : n_(rect.order()), start_(rect.row_count()), grid_(n_, std::vector<int>(n_, 0)), row_used_(n_, 0),
          col_used_(n_, 0), rng_(rng)
    {
        if (n_ > kMaxSearchOrder)
            throw Error(ErrorCode::OrderTooLarge, "completion supports n <= " + std::to_string(kMaxSearchOrder));
        for (int r = 0; r < start_; ++r)
            for (int c = 0; c < n_; ++c) {
                const int s = rect.rows()[r][c];
                grid_[r][c] = s;
                row_used_[r] |= bit(s);
                col_used_[c] |= bit(s);
            }
    }

    bool run(const std::function<bool(const LatinSquare&)>& visit) { return fill(start_ * n_, visit); }

private:
    bool fill(int pos, const std::function<bool(const LatinSquare&)>& visit)
    {
        if (pos == n_ * n_)
            return visit(LatinSquare::from_grid(n_, grid_));
        const int r = pos / n_;
        const int c = pos % n_;
        Mask avail = ~(row_used_[r] | col_used_[c]) & low_bits(n_);
        std::vector<int> order;
        for (; avail; avail &= avail - 1)
            order.push_back(std::countr_zero(avail));
        if (rng_)
            std::shuffle(order.begin(), order.end(), *rng_);
        for (int s : order) {
            grid_[r][c] = s;
            row_used_[r] |= bit(s);
            col_used_[c] |= bit(s);
            bool go = fill(pos + 1, visit);
            row_used_[r] &= ~bit(s);
            col_used_[c] &= ~bit(s);
            if (!go)
                return false;
        }
        return true;
    }

    int n_;
    int start_;
    std::vector<std::vector<int>> grid_;
    std::vector<Mask> row_used_;
    std::vector<Mask> col_used_;
    std::mt19937_64* rng_;
};

} // namespace

std::uint64_t count_transversals_dlx(const LatinSquare& square)
{
    return Dlx(square).count();
}

void for_each_completion(const LatinRectangle& rect, const std::function<bool(const LatinSquare&)>& visit)
{
    Completer(rect).run(visit);
}

std::vector<LatinSquare> enumerate_completions(const LatinRectangle& rect)
{
    std::vector<LatinSquare> out;
    for_each_completion(rect, [&](const LatinSquare& sq) {
        out.push_back(sq);
        return true;
    });
    return out;
}

void for_each_step_type(int b, int m, const std::function<bool(const LatinSquare&)>& visit)
{
    if (b < 1 || m < 1 || b * m > kMaxSearchOrder)
        throw Error(ErrorCode::BadParams, "need b, m >= 1 and b*m <= " + std::to_string(kMaxSearchOrder));
    std::vector<Grid> blocks;
    for (const auto& sq : enumerate_completions(LatinRectangle::from_rows(m, {})))
        blocks.push_back(sq.rows());
    const int cells = b * b;
    std::vector<std::size_t> choice(cells, 0);
    StepParams params;
    params.b = b;
    params.m = m;
    params.blocks.assign(b, std::vector<Grid>(b));
    for (;;) {
        for (int i = 0; i < cells; ++i)
            params.blocks[i / b][i % b] = blocks[choice[i]];
        if (!visit(build_step_type(params)))
            return;
        int i = cells - 1;
        while (i >= 0 && ++choice[i] == blocks.size())
            choice[i--] = 0;
        if (i < 0)
            return;
    }
}

LatinSquare random_completion(const LatinRectangle& rect, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::optional<LatinSquare> found;
    Completer(rect, &rng).run([&](const LatinSquare& sq) {
        found = sq;
        return false;
    });
    if (!found)
        throw Error(ErrorCode::NotFound, "rectangle has no completion");
    return *found;
}

LatinSquare find_order6_example()
{
    constexpr int n = 6;
    std::vector<int> identity(n);
    std::iota(identity.begin(), identity.end(), 0);
    std::optional<LatinSquare> found;
    for_each_completion(LatinRectangle::from_rows(n, {identity}), [&](const LatinSquare& sq) {
        if (count_transversals(sq).count.value_or(1) != 0)
            return true;
        if (find_plex(sq, 3).status != SearchStatus::Found)
            return true;
        found = sq;
        return false;
    });
    if (!found)
        throw Error(ErrorCode::NotFound, "no order-6 square with a triplex and no transversal");
    return *found;
}

} // namespace plexforge
