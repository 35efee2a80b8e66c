#include "plexforge/species.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "plexforge/analyze.hpp"
#include "plexforge/error.hpp"

namespace plexforge {

LatinSquare conjugate(const LatinSquare& square, const std::array<int, 3>& perm)
{
    std::vector<Entry> out;
    out.reserve(static_cast<std::size_t>(square.order()) * square.order());
    for (const auto& e : square.entries()) {
        const int t[3] = {e.row, e.col, e.sym};
        out.push_back({t[perm[0]], t[perm[1]], t[perm[2]]});
    }
    return LatinSquare::from_entries(square.order(), out);
}

std::vector<LatinSquare> conjugates(const LatinSquare& square)
{
    std::vector<LatinSquare> out;
    for (const auto& p : kConjugatePerms)
        out.push_back(conjugate(square, p));
    return out;
}

LatinSquare relabel(const LatinSquare& square, const std::vector<int>& rows, const std::vector<int>& cols,
                    const std::vector<int>& syms)
{
    const int n = square.order();
    auto is_perm = [n](const std::vector<int>& p) {
        if (static_cast<int>(p.size()) != n)
            return false;
        std::vector<char> seen(n, 0);
        for (int v : p) {
            if (v < 0 || v >= n || seen[v])
                return false;
            seen[v] = 1;
        }
        return true;
    };
    if (!is_perm(rows) || !is_perm(cols) || !is_perm(syms))
        throw Error(ErrorCode::BadParams, "relabeling is not a permutation of N_" + std::to_string(n));
    std::vector<std::vector<int>> grid(n, std::vector<int>(n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            grid[rows[r]][cols[c]] = syms[square.at(r, c)];
    return LatinSquare::from_grid(n, grid);
}

std::string SpeciesKey::hex() const
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 15]);
    }
    return out;
}

LatinSquare SpeciesKey::square() const
{
    if (bytes.empty())
        throw Error(ErrorCode::ParseError, "empty species key");
    const int n = bytes[0];
    if (bytes.size() != static_cast<std::size_t>(n) * n + 1)
        throw Error(ErrorCode::ParseError, "species key length does not match its order");
    std::vector<std::vector<int>> grid(n, std::vector<int>(n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            grid[r][c] = bytes[1 + static_cast<std::size_t>(r) * n + c];
    return LatinSquare::from_grid(n, grid);
}

namespace {

// Least isotope of one square, as a row-major string. Row 0 can always be
// made the identity. For the row placed second, say old row r1 under old
// row r0, the column permutation pi(c) = column of L[r1][c] in row r0
// becomes tau pi tau^-1, whose least form lays the cycles of pi out on
// consecutive positions in ascending length. Every tau achieving that is
// tried; symbols then follow from row 0 and the remaining rows from
// sorting on column 0.
class IsotopeMinimizer {
public:
    explicit IsotopeMinimizer(const LatinSquare& square)
        : n_(square.order()), g_(static_cast<std::size_t>(n_) * n_), col_of_(g_.size())
    {
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c) {
                g_[idx(r, c)] = static_cast<std::uint8_t>(square.at(r, c));
                col_of_[idx(r, square.at(r, c))] = c;
            }
    }

    // Lowers `best` (empty = none yet) to this square's least isotope.
    void minimize(std::vector<std::uint8_t>& best)
    {
        best_ = &best;
        if (n_ == 1) {
            if (best.empty())
                best.assign(1, 0);
            return;
        }
        std::vector<std::pair<int, int>> pairs;
        std::vector<int> least_type;
        for (int r0 = 0; r0 < n_; ++r0)
            for (int r1 = 0; r1 < n_; ++r1) {
                if (r0 == r1)
                    continue;
                auto type = cycle_type(r0, r1);
                // Shorter cycles first means a smaller second row, so the
                // sorted type compares the same way the row does.
                if (pairs.empty() || type < least_type) {
                    least_type = type;
                    pairs.clear();
                }
                if (type == least_type)
                    pairs.push_back({r0, r1});
            }
        row1_.assign(n_, 0);
        int pos = 0;
        for (int len : least_type) {
            for (int i = 0; i < len; ++i)
                row1_[pos + i] = static_cast<std::uint8_t>(pos + (i + 1) % len);
            pos += len;
        }
        for (auto [r0, r1] : pairs) {
            r0_ = r0;
            r1_ = r1;
            build_cycles();
            tau_inv_.assign(n_, -1);
            used_.assign(cycles_.size(), 0);
            place_cycles(0);
        }
    }

private:
    std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * n_ + b; }

    int pi(int c) const { return col_of_[idx(r0_, g_[idx(r1_, c)])]; }

    std::vector<int> cycle_type(int r0, int r1)
    {
        r0_ = r0;
        r1_ = r1;
        build_cycles();
        std::vector<int> out;
        for (const auto& cyc : cycles_)
            out.push_back(static_cast<int>(cyc.size()));
        std::sort(out.begin(), out.end());
        return out;
    }

    void build_cycles()
    {
        cycles_.clear();
        std::vector<char> seen(n_, 0);
        for (int c = 0; c < n_; ++c) {
            if (seen[c])
                continue;
            std::vector<int> cyc;
            for (int x = c; !seen[x]; x = pi(x)) {
                seen[x] = 1;
                cyc.push_back(x);
            }
            cycles_.push_back(std::move(cyc));
        }
        std::stable_sort(cycles_.begin(), cycles_.end(),
                         [](const auto& a, const auto& b) { return a.size() < b.size(); });
    }

    void place_cycles(int pos)
    {
        if (pos == n_) {
            evaluate();
            return;
        }
        // Next cycle: any unused one of the shortest remaining length.
        std::size_t len = 0;
        for (std::size_t i = 0; i < cycles_.size(); ++i)
            if (!used_[i]) {
                len = cycles_[i].size();
                break;
            }
        for (std::size_t i = 0; i < cycles_.size(); ++i) {
            if (used_[i] || cycles_[i].size() != len)
                continue;
            used_[i] = 1;
            for (std::size_t start = 0; start < len; ++start) {
                for (std::size_t j = 0; j < len; ++j)
                    tau_inv_[pos + j] = cycles_[i][(start + j) % len];
                place_cycles(pos + static_cast<int>(len));
            }
            used_[i] = 0;
        }
    }

    void evaluate()
    {
        std::vector<std::uint8_t>& best = *best_;
        std::vector<std::uint8_t> sigma(n_);
        for (int j = 0; j < n_; ++j)
            sigma[g_[idx(r0_, tau_inv_[j])]] = static_cast<std::uint8_t>(j);
        std::vector<int> row_at(n_, -1);
        for (int r = 0; r < n_; ++r)
            if (r != r0_ && r != r1_)
                row_at[sigma[g_[idx(r, tau_inv_[0])]]] = r;
        // Rows 0 and 1 equal the incumbent's whenever one exists.
        const bool fresh = best.empty();
        if (fresh) {
            best.assign(static_cast<std::size_t>(n_) * n_, 0);
            for (int j = 0; j < n_; ++j) {
                best[j] = static_cast<std::uint8_t>(j);
                best[n_ + j] = row1_[j];
            }
        }
        int state = fresh ? -1 : 0; // -1: writing, 0: tied so far
        int pos = 2;
        for (int v = 0; v < n_; ++v) {
            const int r = row_at[v];
            if (r < 0)
                continue;
            for (int j = 0; j < n_; ++j) {
                const std::uint8_t x = sigma[g_[idx(r, tau_inv_[j])]];
                std::uint8_t& slot = best[idx(pos, j)];
                if (state == 0) {
                    if (x > slot)
                        return;
                    if (x < slot)
                        state = -1;
                }
                if (state == -1)
                    slot = x;
            }
            ++pos;
        }
    }

    int n_;
    std::vector<std::uint8_t> g_;
    std::vector<int> col_of_;
    int r0_ = 0;
    int r1_ = 0;
    std::vector<std::vector<int>> cycles_;
    std::vector<int> tau_inv_;
    std::vector<char> used_;
    std::vector<std::uint8_t> row1_;
    std::vector<std::uint8_t>* best_ = nullptr;
};

} // namespace

SpeciesKey canonical_key(const LatinSquare& square)
{
    const int n = square.order();
    if (n > kMaxSpeciesOrder)
        throw Error(ErrorCode::OrderTooLarge,
                    "canonical keys support n <= " + std::to_string(kMaxSpeciesOrder) + ", got " + std::to_string(n));
    std::vector<std::uint8_t> least;
    for (const auto& conj : conjugates(square)) {
        std::vector<std::uint8_t> cur;
        IsotopeMinimizer(conj).minimize(cur);
        if (least.empty() || cur < least)
            least = std::move(cur);
    }
    SpeciesKey key;
    key.bytes.reserve(least.size() + 1);
    key.bytes.push_back(static_cast<std::uint8_t>(n));
    key.bytes.insert(key.bytes.end(), least.begin(), least.end());
    return key;
}

std::vector<SpeciesClass> classify(const std::vector<LatinSquare>& squares)
{
    if (!squares.empty())
        for (const auto& sq : squares)
            if (sq.order() != squares.front().order())
                throw Error(ErrorCode::OrderMismatch, "classify needs squares of one order");
    std::map<SpeciesKey, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < squares.size(); ++i)
        groups[canonical_key(squares[i])].push_back(i);
    std::vector<SpeciesClass> out;
    for (auto& [key, members] : groups)
        out.push_back({key, std::move(members), key.square()});
    return out;
}

std::string DeltaSignature::to_text() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        for (std::size_t j = 0; j < matrix[i].size(); ++j) {
            if (j)
                os << ' ';
            if (matrix[i][j] == 0)
                os << '.';
            else
                os << matrix[i][j];
        }
        os << '\n';
    }
    return os.str();
}

DeltaSignature delta_signature(const LatinSquare& square, const std::vector<int>& rows)
{
    const int n = square.order();
    DeltaSignature out;
    out.rows = rows;
    for (int r : rows) {
        if (r < 0 || r >= n)
            throw Error(ErrorCode::BadParams, "row " + std::to_string(r) + " outside N_" + std::to_string(n));
        std::vector<int> line(n);
        for (int c = 0; c < n; ++c)
            line[c] = delta({r, c, square.at(r, c)}, n, 1);
        out.matrix.push_back(std::move(line));
    }
    return out;
}

} // namespace plexforge
