#include "calabikit/multi_index.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace calabikit {

MultiIndex::MultiIndex(std::vector<int> exponents) : exp_(std::move(exponents)) {
    for (int e : exp_)
        if (e < 0) throw std::invalid_argument("MultiIndex: negative exponent");
}

MultiIndex MultiIndex::zero(int nvars) { return MultiIndex(std::vector<int>(static_cast<size_t>(nvars), 0)); }

MultiIndex MultiIndex::unit(int nvars, int var) {
    std::vector<int> e(static_cast<size_t>(nvars), 0);
    e.at(static_cast<size_t>(var)) = 1;
    return MultiIndex(std::move(e));
}

int MultiIndex::degree() const { return std::accumulate(exp_.begin(), exp_.end(), 0); }

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
    if (nvars() != other.nvars()) throw std::invalid_argument("MultiIndex: mismatched nvars");
    std::vector<int> e(exp_);
    for (size_t i = 0; i < e.size(); ++i) e[i] += other.exp_[i];
    return MultiIndex(std::move(e));
}

bool MultiIndex::operator<(const MultiIndex& other) const {
    const int da = degree(), db = other.degree();
    if (da != db) return da < db;
    // within a degree, earlier variables with higher exponents come first
    return exp_ > other.exp_;
}

std::string MultiIndex::to_string() const {
    std::string s;
    for (int i = 0; i < nvars(); ++i) {
        const int e = exp_[static_cast<size_t>(i)];
        if (e == 0) continue;
        if (!s.empty()) s += '*';
        s += "z" + std::to_string(i + 1);
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

namespace {

void enumerate(int nvars, int max_degree, std::vector<int>& cur, int pos, std::vector<MultiIndex>& out) {
    if (pos == nvars) {
        out.emplace_back(cur);
        return;
    }
    const int used = std::accumulate(cur.begin(), cur.begin() + pos, 0);
    for (int e = 0; e <= max_degree - used; ++e) {
        cur[static_cast<size_t>(pos)] = e;
        enumerate(nvars, max_degree, cur, pos + 1, out);
    }
    cur[static_cast<size_t>(pos)] = 0;
}

}  // namespace

MonomialBasis::MonomialBasis(int nvars, int max_degree) : nvars_(nvars), max_degree_(max_degree) {
    if (nvars < 1 || nvars > 4) throw std::invalid_argument("MonomialBasis: nvars must be in [1,4]");
    if (max_degree < 0) throw std::invalid_argument("MonomialBasis: negative degree");
    std::vector<int> cur(static_cast<size_t>(nvars), 0);
    enumerate(nvars, max_degree, cur, 0, list_);
    std::sort(list_.begin(), list_.end());

    const size_t n = list_.size();
    sum_.assign(n * n, -1);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (list_[i].degree() + list_[j].degree() > max_degree) continue;
            sum_[i * n + j] = index_of(list_[i] + list_[j]);
        }

    prev_idx_.assign(n, -1);
    prev_var_.assign(n, -1);
    for (size_t j = 1; j < n; ++j) {
        for (int v = 0; v < nvars; ++v) {
            if (list_[j][v] == 0) continue;
            std::vector<int> e = list_[j].exponents();
            e[static_cast<size_t>(v)] -= 1;
            prev_idx_[j] = index_of(MultiIndex(std::move(e)));
            prev_var_[j] = v;
            break;
        }
    }
}

int MonomialBasis::index_of(const MultiIndex& m) const {
    auto it = std::lower_bound(list_.begin(), list_.end(), m);
    if (it == list_.end() || !(*it == m)) return -1;
    return static_cast<int>(it - list_.begin());
}

std::shared_ptr<const MonomialBasis> MonomialBasis::shared(int nvars, int max_degree) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const MonomialBasis>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{nvars, max_degree}];
    if (!slot) slot = std::make_shared<MonomialBasis>(nvars, max_degree);
    return slot;
}

}  // namespace calabikit
